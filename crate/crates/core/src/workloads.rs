//! Seeded benchmark document generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::doc::{Arena, Doc};
use crate::formatters::{sexp_tree_to_doc, value_to_doc, Sexp, StyleConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// A left-nested chain of one-character texts.
    Concat,
    /// Word wrapping over random words.
    FillSep,
    /// Groups nested inside each other, each flattening everything beneath.
    Flatten,
    /// A complete binary tree printed as an S-expression; size is the depth.
    SexpFull,
    /// Random trees whose all-vertical layout fits the page width.
    RandFit,
    /// Random trees whose all-vertical layout does not fit.
    RandOver,
    /// Nested JSON with the given number of scalar leaves.
    Json,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Concat,
        Family::FillSep,
        Family::Flatten,
        Family::SexpFull,
        Family::RandFit,
        Family::RandOver,
        Family::Json,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Concat => "concat",
            Family::FillSep => "fillsep",
            Family::Flatten => "flatten",
            Family::SexpFull => "sexpfull",
            Family::RandFit => "randfit",
            Family::RandOver => "randover",
            Family::Json => "json",
        }
    }

    /// Largest accepted size.
    pub fn max_size(self) -> usize {
        match self {
            Family::SexpFull => 22,
            Family::Concat | Family::Flatten => 10_000_000,
            _ => 1_000_000,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown benchmark family `{0}`")]
pub struct UnknownFamily(pub String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| UnknownFamily(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkloadError {
    #[error("size must be positive")]
    ZeroSize,
    #[error("size {size} exceeds the limit {max} for {family}")]
    TooLarge { family: Family, size: usize, max: usize },
}

/// A generated document.
pub struct Workload<C> {
    pub arena: Arena<C>,
    pub doc: Doc,
    /// For the filtered random families: whether a tree satisfying the
    /// filter was found within the attempt budget.
    pub filter_met: Option<bool>,
}

/// Random trees tried before the filtered families give up.
pub const FILTER_ATTEMPTS: usize = 200;

pub fn generate<C: Clone>(
    family: Family,
    size: usize,
    seed: u64,
    page_width: usize,
) -> Result<Workload<C>, WorkloadError> {
    if size == 0 {
        return Err(WorkloadError::ZeroSize);
    }
    if size > family.max_size() {
        return Err(WorkloadError::TooLarge { family, size, max: family.max_size() });
    }
    let mut arena = Arena::new();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let style = StyleConfig::default();
    let mut filter_met = None;
    let doc = match family {
        Family::Concat => concat_chain(&mut arena, size),
        Family::FillSep => {
            let words: Vec<String> = (0..size).map(|_| random_word(&mut rng)).collect();
            arena.fill_sep(&words).expect("generated words are valid")
        }
        Family::Flatten => nested_groups(&mut arena, size),
        Family::SexpFull => sexp_tree_to_doc(&Sexp::full_tree(size as u32), &style, &mut arena),
        Family::RandFit | Family::RandOver => {
            let want_fit = family == Family::RandFit;
            let mut tree = random_tree(&mut rng, size);
            let mut met = (vertical_width(&tree) <= page_width) == want_fit;
            for _ in 1..FILTER_ATTEMPTS {
                if met {
                    break;
                }
                tree = random_tree(&mut rng, size);
                met = (vertical_width(&tree) <= page_width) == want_fit;
            }
            filter_met = Some(met);
            sexp_tree_to_doc(&tree, &style, &mut arena)
        }
        Family::Json => value_to_doc(&random_json(&mut rng, size), &style, &mut arena),
    };
    Ok(Workload { arena, doc, filter_met })
}

fn concat_chain<C>(arena: &mut Arena<C>, n: usize) -> Doc {
    let mut d = arena.text("x").unwrap();
    for _ in 1..n {
        let x = arena.text("x").unwrap();
        d = arena.concat(d, x);
    }
    d
}

/// `d₁ = text "line"`, `dₖ = group(dₖ₋₁ <> nl <> text "line")`.
fn nested_groups<C: Clone>(arena: &mut Arena<C>, n: usize) -> Doc {
    let mut d = arena.text("line").unwrap();
    for _ in 1..n {
        let nl = arena.nl();
        let word = arena.text("line").unwrap();
        let body = arena.concat_all([d, nl, word]).unwrap();
        d = arena.group(body);
    }
    d
}

fn random_word(rng: &mut SplitMix64) -> String {
    let len = rng.gen_range(1..=8);
    (0..len).map(|_| rng.gen_range(b'a'..=b'z') as char).collect()
}

/// A uniformly random ordered tree with `n` nodes, via a random balanced
/// parenthesis sequence. Leaves become atoms and inner nodes lists.
fn random_tree(rng: &mut SplitMix64, n: usize) -> Sexp {
    let mut steps: Vec<i8> = std::iter::repeat_n(1, n).chain(std::iter::repeat_n(-1, n)).collect();
    steps.shuffle(rng);
    // rotate after the first minimum prefix sum (cycle lemma), giving a Dyck path
    let mut depth = 0i64;
    let (mut min, mut at) = (0i64, 0usize);
    for (k, s) in steps.iter().enumerate() {
        depth += *s as i64;
        if depth < min {
            min = depth;
            at = k + 1;
        }
    }
    let len = steps.len();
    steps.rotate_left(at % len);

    let mut stack: Vec<Vec<Sexp>> = vec![Vec::new()];
    let mut atoms = 0usize;
    for s in steps {
        if s > 0 {
            stack.push(Vec::new());
        } else {
            let children = stack.pop().expect("balanced");
            let node = if children.is_empty() {
                atoms += 1;
                Sexp::Atom(format!("a{}", atoms % 100))
            } else {
                Sexp::List(children)
            };
            stack.last_mut().expect("balanced").push(node);
        }
    }
    let mut roots = stack.pop().expect("root");
    if roots.len() == 1 {
        roots.pop().unwrap()
    } else {
        Sexp::List(roots)
    }
}

/// Widest column of the layout where every list is vertical.
pub fn vertical_width(s: &Sexp) -> usize {
    // (widest column, column after the last character), placed at `col`
    fn go(s: &Sexp, col: usize) -> (usize, usize) {
        stacker::maybe_grow(64 * 1024, 1024 * 1024, || match s {
            Sexp::Atom(a) => {
                let end = col + a.chars().count();
                (end, end)
            }
            Sexp::List(items) if items.is_empty() => (col + 2, col + 2),
            Sexp::List(items) => {
                let mut widest = 0;
                let mut last = 0;
                for item in items {
                    let (w, l) = go(item, col + 1);
                    widest = widest.max(w);
                    last = l;
                }
                (widest.max(last + 1), last + 1)
            }
        })
    }
    go(s, 0).0
}

fn random_json(rng: &mut SplitMix64, leaves: usize) -> Value {
    if leaves == 1 {
        return match rng.gen_range(0..4) {
            0 => Value::Number(Number::from(rng.gen_range(0..100_000))),
            1 => Value::String(random_word(rng)),
            2 => Value::Bool(rng.gen_bool(0.5)),
            _ => Value::Null,
        };
    }
    let parts = rng.gen_range(2..=leaves.min(6));
    let mut sizes = vec![1usize; parts];
    for _ in parts..leaves {
        let k = rng.gen_range(0..parts);
        sizes[k] += 1;
    }
    let children: Vec<Value> = sizes.into_iter().map(|n| random_json(rng, n)).collect();
    if rng.gen_bool(0.5) {
        Value::Array(children)
    } else {
        let mut m = Map::new();
        for (k, v) in children.into_iter().enumerate() {
            m.insert(format!("{}{k}", random_word(rng)), v);
        }
        Value::Object(m)
    }
}

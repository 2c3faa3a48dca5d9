//! Executable reference semantics.
//!
//! Everything here follows the defining rules directly and makes no attempt
//! at efficiency: widening is exponential in the number of choices. The
//! functions serve as ground truth for testing the resolver.

use std::collections::HashMap;
use std::hash::Hash;
use std::rc::Rc;

use indexmap::IndexSet;

use crate::cost::{layout_cost, CostFactory};
use crate::doc::{Arena, Doc, DocKind};
use crate::error::PrintError;
use crate::layout::Layout;

/// A document without choices, as an owned tree with structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Choiceless<C> {
    Text(Rc<str>),
    Newline(Option<Rc<str>>),
    Fail,
    Concat(Rc<Choiceless<C>>, Rc<Choiceless<C>>),
    Nest(usize, Rc<Choiceless<C>>),
    Align(Rc<Choiceless<C>>),
    Reset(Rc<Choiceless<C>>),
    WithCost(C, Rc<Choiceless<C>>),
}

impl<C: Clone> Choiceless<C> {
    /// Converts an arena document, or returns `None` if it contains a choice.
    pub fn from_doc(arena: &Arena<C>, d: Doc) -> Option<Rc<Self>> {
        fn go<C: Clone>(
            arena: &Arena<C>,
            d: Doc,
            memo: &mut HashMap<Doc, Rc<Choiceless<C>>>,
        ) -> Option<Rc<Choiceless<C>>> {
            if let Some(x) = memo.get(&d) {
                return Some(x.clone());
            }
            let out = Rc::new(match arena.kind(d) {
                DocKind::Text(s) => Choiceless::Text(Rc::from(&**s)),
                DocKind::Newline(alt) => Choiceless::Newline(alt.as_deref().map(Rc::from)),
                DocKind::Fail => Choiceless::Fail,
                DocKind::Concat(a, b) => Choiceless::Concat(go(arena, *a, memo)?, go(arena, *b, memo)?),
                DocKind::Nest(n, x) => Choiceless::Nest(*n, go(arena, *x, memo)?),
                DocKind::Align(x) => Choiceless::Align(go(arena, *x, memo)?),
                DocKind::Reset(x) => Choiceless::Reset(go(arena, *x, memo)?),
                DocKind::WithCost(c, x) => Choiceless::WithCost(c.clone(), go(arena, *x, memo)?),
                DocKind::Alt(..) => return None,
            });
            memo.insert(d, out.clone());
            Some(out)
        }
        go(arena, d, &mut HashMap::new())
    }
}

/// Where a document is placed: column, indentation level and whether
/// line breaks are flattened.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PrintContext {
    pub column: usize,
    pub indent: usize,
    pub flat: bool,
}

impl PrintContext {
    pub fn new(column: usize, indent: usize, flat: bool) -> Self {
        PrintContext { column, indent, flat }
    }
}

struct Renderer {
    lines: Vec<String>,
    indents: Vec<usize>,
    column: usize,
}

impl Renderer {
    fn run<C>(&mut self, d: &Choiceless<C>, indent: usize, flat: bool) -> Option<()> {
        match d {
            Choiceless::Text(s) => self.push(s),
            Choiceless::Newline(alt) => {
                if flat {
                    self.push(alt.as_deref()?);
                } else {
                    self.lines.push(" ".repeat(indent));
                    self.indents.push(indent);
                    self.column = indent;
                }
            }
            Choiceless::Fail => return None,
            Choiceless::Concat(a, b) => {
                self.run(a, indent, flat)?;
                self.run(b, indent, flat)?;
            }
            Choiceless::Nest(n, x) => self.run(x, indent + n, flat)?,
            Choiceless::Align(x) => self.run(x, self.column, flat)?,
            Choiceless::Reset(x) => self.run(x, 0, flat)?,
            Choiceless::WithCost(_, x) => self.run(x, indent, flat)?,
        }
        Some(())
    }

    fn push(&mut self, s: &str) {
        self.lines.last_mut().expect("non-empty").push_str(s);
        self.column += s.chars().count();
    }
}

/// Renders a choiceless document. `None` stands for an impossible
/// rendering: `fail`, or a flattened hard line break.
pub fn render<C>(d: &Choiceless<C>, ctx: PrintContext) -> Option<Layout> {
    let mut r = Renderer { lines: vec![String::new()], indents: vec![0], column: ctx.column };
    r.run(d, ctx.indent, ctx.flat)?;
    Some(Layout::from_parts(r.lines, r.indents))
}

/// Every choiceless document a document denotes, without duplicates,
/// in first-occurrence order (left branches first).
pub fn widen<C: Clone + Eq + Hash>(arena: &Arena<C>, d: Doc) -> Vec<Rc<Choiceless<C>>> {
    let mut memo = HashMap::new();
    widen_memo(arena, d, &mut memo).as_ref().clone()
}

type WidenMemo<C> = HashMap<Doc, Rc<Vec<Rc<Choiceless<C>>>>>;

fn widen_memo<C: Clone + Eq + Hash>(arena: &Arena<C>, d: Doc, memo: &mut WidenMemo<C>) -> Rc<Vec<Rc<Choiceless<C>>>> {
    if let Some(x) = memo.get(&d) {
        return x.clone();
    }
    let wrap = |xs: &[Rc<Choiceless<C>>], f: &dyn Fn(Rc<Choiceless<C>>) -> Choiceless<C>| {
        dedup(xs.iter().map(|x| Rc::new(f(x.clone()))))
    };
    let out = match arena.kind(d) {
        DocKind::Text(s) => vec![Rc::new(Choiceless::Text(Rc::from(&**s)))],
        DocKind::Newline(alt) => vec![Rc::new(Choiceless::Newline(alt.as_deref().map(Rc::from)))],
        DocKind::Fail => Vec::new(),
        DocKind::Concat(a, b) => {
            let xs = widen_memo(arena, *a, memo);
            let ys = widen_memo(arena, *b, memo);
            dedup(xs.iter().flat_map(|x| ys.iter().map(move |y| Rc::new(Choiceless::Concat(x.clone(), y.clone())))))
        }
        DocKind::Alt(a, b) => {
            let xs = widen_memo(arena, *a, memo);
            let ys = widen_memo(arena, *b, memo);
            dedup(xs.iter().chain(ys.iter()).cloned())
        }
        DocKind::Nest(n, x) => {
            let n = *n;
            wrap(&widen_memo(arena, *x, memo), &|x| Choiceless::Nest(n, x))
        }
        DocKind::Align(x) => wrap(&widen_memo(arena, *x, memo), &Choiceless::Align),
        DocKind::Reset(x) => wrap(&widen_memo(arena, *x, memo), &Choiceless::Reset),
        DocKind::WithCost(c, x) => {
            let c = c.clone();
            wrap(&widen_memo(arena, *x, memo), &|x| Choiceless::WithCost(c.clone(), x))
        }
    };
    let out = Rc::new(out);
    memo.insert(d, out.clone());
    out
}

fn dedup<T: Eq + Hash>(xs: impl IntoIterator<Item = T>) -> Vec<T> {
    xs.into_iter().collect::<IndexSet<T>>().into_iter().collect()
}

/// All layouts of a document placed at column 0 with indentation 0.
pub fn eval<C: Clone + Eq + Hash>(arena: &Arena<C>, d: Doc) -> Vec<Layout> {
    dedup(widen(arena, d).iter().filter_map(|x| render(x, PrintContext::default())))
}

/// Summary of one rendering: final column, cost, widest column and
/// deepest indentation level reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMeasure<T> {
    pub last: usize,
    pub cost: T,
    pub max_column: usize,
    pub max_indent: usize,
}

/// The measure of a choiceless document placed at column `c` with
/// indentation level `i`, or `None` if it cannot be rendered.
pub fn measure_oracle<F: CostFactory>(
    d: &Choiceless<F::Cost>,
    c: usize,
    i: usize,
    f: &F,
) -> Option<OracleMeasure<F::Cost>> {
    Some(match d {
        Choiceless::Text(s) => {
            let end = c + s.chars().count();
            OracleMeasure { last: end, cost: f.text_cost(c, end - c), max_column: end, max_indent: i }
        }
        Choiceless::Newline(_) => OracleMeasure { last: i, cost: f.nl_cost(i), max_column: c.max(i), max_indent: i },
        Choiceless::Fail => return None,
        Choiceless::Concat(a, b) => {
            let ma = measure_oracle(a, c, i, f)?;
            let mb = measure_oracle(b, ma.last, i, f)?;
            OracleMeasure {
                last: mb.last,
                cost: f.add(&ma.cost, &mb.cost),
                max_column: ma.max_column.max(mb.max_column),
                max_indent: ma.max_indent.max(mb.max_indent),
            }
        }
        Choiceless::Nest(n, x) => measure_oracle(x, c, i + n, f)?,
        Choiceless::Align(x) => {
            let m = measure_oracle(x, c, c, f)?;
            OracleMeasure { max_indent: m.max_indent.max(i), ..m }
        }
        Choiceless::Reset(x) => {
            let m = measure_oracle(x, c, 0, f)?;
            OracleMeasure { max_indent: m.max_indent.max(i), ..m }
        }
        Choiceless::WithCost(extra, x) => {
            let m = measure_oracle(x, c, i, f)?;
            OracleMeasure { cost: f.add(extra, &m.cost), ..m }
        }
    })
}

/// Result of exhaustive search.
#[derive(Clone, Debug)]
pub struct BruteForce<C> {
    pub layout: Layout,
    pub cost: C,
    /// The choiceless document that was picked.
    pub doc: Rc<Choiceless<C>>,
    /// Whether some widening stays within the computation width limit.
    pub within_limit: bool,
}

type Best<C> = Option<(Rc<Choiceless<C>>, C)>;

/// Minimum-cost layout over all widenings.
///
/// Only widenings whose widest column and deepest indentation stay within
/// `width_limit` are eligible; if there are none, the minimum is taken over
/// every widening and `within_limit` is false. Ties go to the earliest
/// widening.
pub fn brute_force_print<F: CostFactory>(
    arena: &Arena<F::Cost>,
    d: Doc,
    f: &F,
    width_limit: usize,
) -> Result<BruteForce<F::Cost>, PrintError> {
    let mut within: Best<F::Cost> = None;
    let mut any: Best<F::Cost> = None;
    let better = |best: &Best<F::Cost>, cost: &F::Cost| match best {
        None => true,
        Some((_, b)) => !f.le(b, cost),
    };
    for x in widen(arena, d) {
        let Some(m) = measure_oracle(&x, 0, 0, f) else { continue };
        if m.max_column <= width_limit && m.max_indent <= width_limit && better(&within, &m.cost) {
            within = Some((x.clone(), m.cost.clone()));
        }
        if better(&any, &m.cost) {
            any = Some((x, m.cost));
        }
    }
    let within_limit = within.is_some();
    let (doc, cost) = within.or(any).ok_or(PrintError::NoLayout)?;
    let layout = render(&doc, PrintContext::default()).expect("measured documents render");
    debug_assert!(layout_cost(f, &layout, 0) == cost || has_extra_cost(&doc));
    Ok(BruteForce { layout, cost, doc, within_limit })
}

fn has_extra_cost<C>(d: &Choiceless<C>) -> bool {
    match d {
        Choiceless::WithCost(..) => true,
        Choiceless::Concat(a, b) => has_extra_cost(a) || has_extra_cost(b),
        Choiceless::Nest(_, x) | Choiceless::Align(x) | Choiceless::Reset(x) => has_extra_cost(x),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{Linear, Quadratic};

    type A = Arena<(u64, u64)>;

    fn cl(a: &A, d: Doc) -> Rc<Choiceless<(u64, u64)>> {
        Choiceless::from_doc(a, d).expect("choiceless")
    }

    fn func_call(a: &mut A) -> Doc {
        let open = a.text("= func(").unwrap();
        let n1 = a.nl();
        let p = a.text("pretty,").unwrap();
        let n2 = a.nl();
        let q = a.text("print").unwrap();
        let inner = a.concat_all([n1, p, n2, q]).unwrap();
        let nested = a.nest(2, inner);
        let n3 = a.nl();
        let close = a.text(")").unwrap();
        a.concat_all([open, nested, n3, close]).unwrap()
    }

    #[test]
    fn nest_under_align_is_overridden() {
        let mut a = A::new();
        let ta = a.text("a").unwrap();
        let tb = a.text("b").unwrap();
        let tc = a.text("c").unwrap();
        let nl = a.nl();
        let inner = a.concat_all([tb, nl, tc]).unwrap();
        let al = a.align(inner);
        let ne = a.nest(42, al);
        let d = a.concat(ta, ne);
        let l = render(&cl(&a, d), PrintContext::default()).unwrap();
        assert_eq!(l.lines(), ["ab", " c"]);
    }

    #[test]
    fn newline_renders_indentation() {
        let mut a = A::new();
        let nl = a.nl();
        let l = render(&cl(&a, nl), PrintContext::new(5, 2, false)).unwrap();
        assert_eq!(l.lines(), ["", "  "]);
        let flat = render(&cl(&a, nl), PrintContext::new(5, 2, true)).unwrap();
        assert_eq!(flat.lines(), [" "]);
        let h = a.hard_nl();
        assert!(render(&cl(&a, h), PrintContext::new(0, 0, true)).is_none());
    }

    #[test]
    fn func_call_layout_and_measure() {
        let mut a = A::new();
        let d = func_call(&mut a);
        let c = cl(&a, d);
        let l = render(&c, PrintContext::new(3, 0, false)).unwrap();
        let lens: Vec<usize> = l.lines().iter().map(|s| s.chars().count()).collect();
        assert_eq!(lens, [7, 9, 7, 1]);
        let m = measure_oracle(&c, 3, 0, &Linear { page_width: 6 }).unwrap();
        assert_eq!(m, OracleMeasure { last: 1, cost: (8, 3), max_column: 10, max_indent: 2 });
    }

    #[test]
    fn widen_counts() {
        let mut a = A::new();
        let [x, y, z, w] = ["a", "b", "c", "d"].map(|s| a.text(s).unwrap());
        let l = a.alt(x, y);
        let r = a.alt(z, w);
        let d = a.concat(l, r);
        assert_eq!(widen(&a, d).len(), 4);
        let mut layouts: Vec<String> = eval(&a, d).iter().map(Layout::to_text).collect();
        layouts.sort();
        assert_eq!(layouts, ["ac", "ad", "bc", "bd"]);

        let f = a.fail();
        let with_fail = a.alt(x, f);
        assert_eq!(widen(&a, with_fail), widen(&a, x));
        assert!(widen(&a, f).is_empty());
    }

    #[test]
    fn eval_of_derived_forms() {
        let mut a = A::new();
        let x = a.text("a").unwrap();
        let y = a.text("b").unwrap();
        let v = a.vcat(x, y);
        assert_eq!(eval(&a, v), [Layout::from_lines(["a", "b"])]);

        let aa = a.text("aa").unwrap();
        let c = a.text("c").unwrap();
        let bc = a.vcat(y, c);
        let ac = a.acat(aa, bc);
        assert_eq!(eval(&a, ac), [Layout::from_lines(["aab", "  c"])]);

        let a2 = a.text("a").unwrap();
        let v2 = a.vcat(x, a2);
        let g = a.group(v2);
        assert_eq!(eval(&a, g), [Layout::from_lines(["a", "a"]), Layout::single("a a")]);
    }

    #[test]
    fn text_measure_rule() {
        let t: Choiceless<(u64, u64)> = Choiceless::Text("ab".into());
        let f = Quadratic { page_width: 3 };
        let m = measure_oracle(&t, 2, 9, &f).unwrap();
        assert_eq!(m, OracleMeasure { last: 4, cost: f.text_cost(2, 2), max_column: 4, max_indent: 9 });
    }

    #[test]
    fn brute_force_examples() {
        let mut a = A::new();
        let f = Quadratic { page_width: 2 };
        let aaa = a.text("aaa").unwrap();
        let x = a.text("a").unwrap();
        let v = a.vcat(x, x);
        let d = a.alt(aaa, v);
        let r = brute_force_print(&a, d, &f, 10).unwrap();
        assert_eq!(r.layout.lines(), ["a", "a"]);
        assert_eq!(r.cost, (0, 1));
        assert!(r.within_limit);

        let t = a.text("x").unwrap();
        assert!(!brute_force_print(&a, t, &f, 0).unwrap().within_limit);

        let words = a.fill_sep(&["a", "bb", "ccc"]).unwrap();
        let r = brute_force_print(&a, words, &Quadratic { page_width: 5 }, 20).unwrap();
        assert_eq!(r.layout.lines(), ["a bb", "ccc"]);

        let long = a.fill_sep(&["aaaaa", "bbbbb"]).unwrap();
        let r = brute_force_print(&a, long, &Quadratic { page_width: 5 }, 20).unwrap();
        assert_eq!(r.layout.lines(), ["aaaaa", "bbbbb"]);

        let fl = a.fail();
        assert!(matches!(brute_force_print(&a, fl, &f, 10), Err(PrintError::NoLayout)));
    }
}

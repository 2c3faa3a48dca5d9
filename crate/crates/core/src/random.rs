//! Seeded random documents for differential testing against the reference
//! semantics.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cost::CostFactory;
use crate::doc::{Arena, Doc, DocKind};

/// Bounds for [`random_small_doc`].
#[derive(Clone, Debug)]
pub struct SmallDocParams {
    /// Maximum number of distinct reachable nodes.
    pub max_nodes: usize,
    /// Maximum number of reachable choice nodes.
    pub max_alts: usize,
    pub max_text_len: usize,
    pub max_nest: usize,
    /// Also generate `fail`, hard line breaks, `reset` and cost nodes.
    pub extensions: bool,
}

impl Default for SmallDocParams {
    fn default() -> Self {
        SmallDocParams { max_nodes: 40, max_alts: 6, max_text_len: 8, max_nest: 6, extensions: true }
    }
}

struct Gen<'a, F: CostFactory, R> {
    arena: &'a mut Arena<F::Cost>,
    factory: &'a F,
    rng: &'a mut R,
    params: &'a SmallDocParams,
    budget: usize,
    alts: usize,
    pool: Vec<Doc>,
}

impl<F: CostFactory, R: Rng> Gen<'_, F, R> {
    fn text(&mut self) -> Doc {
        let len = self.rng.gen_range(0..=self.params.max_text_len);
        let s: String = (0..len).map(|_| *b"abcxyz".choose(self.rng).unwrap() as char).collect();
        self.arena.text(s).unwrap()
    }

    fn leaf(&mut self) -> Doc {
        let roll = self.rng.gen_range(0..100);
        let ext = self.params.extensions;
        match roll {
            0..=49 => self.text(),
            50..=69 => self.arena.nl(),
            70..=79 => self.arena.brk(),
            80..=86 => self.arena.newline(Some("--")).unwrap(),
            87..=93 if ext => self.arena.hard_nl(),
            94..=96 if ext => self.arena.fail(),
            _ => self.text(),
        }
    }

    fn doc(&mut self, depth: u32) -> Doc {
        self.budget = self.budget.saturating_sub(1);
        if self.budget == 0 || depth >= 7 || self.rng.gen_bool(0.25) {
            let d = if !self.pool.is_empty() && self.rng.gen_bool(0.1) {
                *self.pool.choose(self.rng).unwrap()
            } else {
                self.leaf()
            };
            self.pool.push(d);
            return d;
        }
        let ext = self.params.extensions;
        let d = match self.rng.gen_range(0..100) {
            0..=39 => {
                let a = self.doc(depth + 1);
                let b = self.doc(depth + 1);
                self.arena.concat(a, b)
            }
            40..=54 if self.alts > 0 => {
                self.alts -= 1;
                let a = self.doc(depth + 1);
                let b = self.doc(depth + 1);
                self.arena.alt(a, b)
            }
            55..=62 if self.alts > 0 => {
                self.alts -= 1;
                let a = self.doc(depth + 1);
                self.arena.group(a)
            }
            63..=74 => {
                let n = self.rng.gen_range(0..=self.params.max_nest);
                let a = self.doc(depth + 1);
                self.arena.nest(n, a)
            }
            75..=86 => {
                let a = self.doc(depth + 1);
                self.arena.align(a)
            }
            87..=91 if ext => {
                let a = self.doc(depth + 1);
                self.arena.reset(a)
            }
            92..=96 if ext => {
                let extra = if self.rng.gen_bool(0.5) {
                    self.factory.text_cost(self.rng.gen_range(0..12), self.rng.gen_range(0..6))
                } else {
                    self.factory.nl_cost(self.rng.gen_range(0..6))
                };
                let a = self.doc(depth + 1);
                self.arena.with_cost(extra, a)
            }
            _ => {
                let a = self.doc(depth + 1);
                let b = self.doc(depth + 1);
                self.arena.concat(a, b)
            }
        };
        self.pool.push(d);
        d
    }
}

/// A random document within `params`. Nodes are occasionally reused, so
/// the result may be a DAG rather than a tree.
pub fn random_small_doc<F: CostFactory, R: Rng>(
    arena: &mut Arena<F::Cost>,
    factory: &F,
    rng: &mut R,
    params: &SmallDocParams,
) -> Doc {
    loop {
        let mut g = Gen {
            arena: &mut *arena,
            factory,
            rng: &mut *rng,
            params,
            budget: params.max_nodes / 2,
            alts: params.max_alts,
            pool: Vec::new(),
        };
        let d = g.doc(0);
        let reachable = arena.reachable(d);
        let alts = reachable.iter().filter(|x| matches!(arena.kind(**x), DocKind::Alt(..))).count();
        if reachable.len() <= params.max_nodes && alts <= params.max_alts {
            return d;
        }
    }
}

/// A random document without choices whose line breaks all have a
/// flattened alternative.
pub fn random_soft_choiceless<C: Clone, R: Rng>(arena: &mut Arena<C>, rng: &mut R, max_nodes: usize) -> Doc {
    fn go<C: Clone, R: Rng>(arena: &mut Arena<C>, rng: &mut R, budget: &mut usize, depth: u32) -> Doc {
        *budget = budget.saturating_sub(1);
        if *budget == 0 || depth >= 7 || rng.gen_bool(0.3) {
            return match rng.gen_range(0..10) {
                0..=4 => {
                    let len = rng.gen_range(0..=5);
                    arena.text("abcde"[..len].to_owned()).unwrap()
                }
                5..=6 => arena.nl(),
                7 => arena.brk(),
                _ => arena.newline(Some("~~")).unwrap(),
            };
        }
        match rng.gen_range(0..10) {
            0..=4 => {
                let a = go(arena, rng, budget, depth + 1);
                let b = go(arena, rng, budget, depth + 1);
                arena.concat(a, b)
            }
            5..=6 => {
                let n = rng.gen_range(0..=4);
                let a = go(arena, rng, budget, depth + 1);
                arena.nest(n, a)
            }
            7..=8 => {
                let a = go(arena, rng, budget, depth + 1);
                arena.align(a)
            }
            _ => {
                let a = go(arena, rng, budget, depth + 1);
                arena.reset(a)
            }
        }
    }
    let mut budget = max_nodes;
    go(arena, rng, &mut budget, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Quadratic;
    use rand::SeedableRng;
    use rand_xoshiro::SplitMix64;

    #[test]
    fn respects_bounds_and_is_seeded() {
        let f = Quadratic { page_width: 6 };
        let params = SmallDocParams::default();
        let mut dumps = Vec::new();
        for _ in 0..2 {
            let mut rng = SplitMix64::seed_from_u64(7);
            let mut a = Arena::new();
            let docs: Vec<Doc> = (0..50).map(|_| random_small_doc(&mut a, &f, &mut rng, &params)).collect();
            for &d in &docs {
                assert!(a.reachable(d).len() <= params.max_nodes);
            }
            dumps.push(docs.iter().map(|d| crate::formatters::to_doc_ir(&a, *d)).collect::<Vec<_>>());
        }
        assert_eq!(dumps[0], dumps[1]);
    }
}

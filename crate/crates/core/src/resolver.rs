//! The optimal printer: resolves the choices of a document into a small
//! Pareto frontier of measures, then renders the cheapest one.
//!
//! Results for placements beyond the computation width limit are *tainted*:
//! they are represented by a deferred computation (a promise) that is forced
//! only if nothing untainted is available. Promises live in a per-print
//! arena and are forced at most once.

use std::rc::Rc;

use rustc_hash::FxHashMap;

use crate::cost::CostFactory;
use crate::doc::{Arena, Doc, DocKind, DEFAULT_MEMO_WEIGHT_LIMIT};
use crate::error::PrintError;
use crate::layout::Layout;
use crate::reference::Choiceless;

pub const DEFAULT_WIDTH_LIMIT: usize = 100;

const STACK_RED_ZONE: usize = 128 * 1024;
const STACK_GROWTH: usize = 4 * 1024 * 1024;

#[derive(Clone, Debug)]
pub struct ResolverConfig<F> {
    /// Computation width limit: optimality is guaranteed only for layouts
    /// whose columns and indentation levels stay within it.
    pub width_limit: usize,
    pub factory: F,
    /// Record line breaks with their indentation directly in the payload
    /// instead of rebuilding the wrapper nodes.
    pub fused: bool,
    pub memoize: bool,
    /// Nodes are memoized once this many unmemoized levels accumulate
    /// beneath them; zero memoizes every node.
    pub memo_weight_limit: usize,
    /// Maintain the widest column and deepest indentation of each measure.
    pub track_ghosts: bool,
    /// Resolve the branch with more estimated lines first, so that
    /// unavoidable overflow prefers vertical styles.
    pub bias_heuristic: bool,
    /// Check frontier and tainting invariants while resolving.
    pub audit: bool,
}

impl<F> ResolverConfig<F> {
    pub fn new(factory: F) -> Self {
        ResolverConfig {
            width_limit: DEFAULT_WIDTH_LIMIT,
            factory,
            fused: false,
            memoize: true,
            memo_weight_limit: DEFAULT_MEMO_WEIGHT_LIMIT,
            track_ghosts: false,
            bias_heuristic: false,
            audit: false,
        }
    }

    pub fn with_width_limit(mut self, width_limit: usize) -> Self {
        self.width_limit = width_limit;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PayloadId(u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PromiseId(u32);

/// Widest column and deepest indentation level of a rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ghost {
    pub max_column: usize,
    pub max_indent: usize,
}

/// Summary of one rendering of a choiceless document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure<C> {
    /// Column after the last character.
    pub last: usize,
    pub cost: C,
    pub payload: PayloadId,
    pub ghost: Option<Ghost>,
}

#[derive(Clone, Debug)]
pub enum MeasureSet<C> {
    /// The document has no layout.
    Empty,
    Tainted(PromiseId),
    /// Sorted by strictly decreasing `last` and strictly increasing cost.
    Frontier(Rc<[Measure<C>]>),
}

impl<C> MeasureSet<C> {
    pub fn is_tainted(&self) -> bool {
        matches!(self, MeasureSet::Tainted(_))
    }

    pub fn frontier(&self) -> Option<&[Measure<C>]> {
        match self {
            MeasureSet::Frontier(ms) => Some(ms),
            _ => None,
        }
    }
}

/// `a` is no worse than `b` in both last-line length and cost.
pub fn dominates<F: CostFactory>(f: &F, a: &Measure<F::Cost>, b: &Measure<F::Cost>) -> bool {
    a.last <= b.last && f.le(&a.cost, &b.cost)
}

/// Drops every measure dominated by its successor.
///
/// Expects `last` strictly decreasing and cost non-strictly increasing.
pub fn dedup<F: CostFactory>(f: &F, ms: Vec<Measure<F::Cost>>) -> Vec<Measure<F::Cost>> {
    let keep: Vec<bool> = (0..ms.len()).map(|k| k + 1 == ms.len() || !dominates(f, &ms[k + 1], &ms[k])).collect();
    ms.into_iter().zip(keep).filter_map(|(m, k)| k.then_some(m)).collect()
}

/// Merges two frontiers, pruning dominated measures. Ties go to `a`.
pub fn merge_frontiers<F: CostFactory>(f: &F, a: &[Measure<F::Cost>], b: &[Measure<F::Cost>]) -> Vec<Measure<F::Cost>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if dominates(f, &a[i], &b[j]) {
            j += 1;
        } else if dominates(f, &b[j], &a[i]) {
            i += 1;
        } else if a[i].last > b[j].last {
            out.push(a[i].clone());
            i += 1;
        } else {
            out.push(b[j].clone());
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Merges measure sets. A frontier wins over a tainted set, and of two
/// tainted sets the left one wins.
pub fn merge<F: CostFactory>(f: &F, a: MeasureSet<F::Cost>, b: MeasureSet<F::Cost>) -> MeasureSet<F::Cost> {
    match (a, b) {
        (MeasureSet::Empty, x) | (x, MeasureSet::Empty) => x,
        (x, MeasureSet::Tainted(_)) => x,
        (MeasureSet::Tainted(_), x) => x,
        (MeasureSet::Frontier(xs), MeasureSet::Frontier(ys)) => {
            MeasureSet::Frontier(merge_frontiers(f, &xs, &ys).into())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PayloadNode {
    /// A text or line break node of the source document.
    Leaf(Doc),
    /// A nest, align, reset or cost node around a choiceless payload.
    Wrap(Doc, PayloadId),
    Concat(PayloadId, PayloadId),
    /// A line break followed by this much indentation.
    Break(usize),
}

/// A wrapper node applied to measures of its child, together with the
/// indentation level the wrapper itself was placed at.
#[derive(Clone, Copy, Debug)]
struct Adjust {
    wrapper: Doc,
    outer_indent: usize,
}

#[derive(Clone, Debug)]
enum Deferred<C> {
    Resolve { doc: Doc, col: usize, indent: usize },
    ConcatTainted { left: PromiseId, right: Doc, indent: usize },
    Compose { left: Measure<C>, right: PromiseId },
    Lift { inner: PromiseId, adjust: Adjust },
}

#[derive(Clone, Debug)]
enum Promise<C> {
    Pending(Deferred<C>),
    Running,
    Done(Measure<C>),
}

/// Counters describing one resolution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResolveStats {
    pub resolve_calls: u64,
    pub memo_hits: u64,
    pub deferred: u64,
    pub promises_forced: u64,
    pub max_frontier_len: usize,
    pub frontiers_audited: u64,
}

/// State of one print invocation: memo table, payloads and promises.
pub struct Resolver<'a, F: CostFactory> {
    arena: &'a Arena<F::Cost>,
    cfg: &'a ResolverConfig<F>,
    memo_points: Vec<bool>,
    memo: FxHashMap<(u32, u32, u32), MeasureSet<F::Cost>>,
    payloads: Vec<PayloadNode>,
    promises: Vec<Promise<F::Cost>>,
    stats: ResolveStats,
    violations: Vec<String>,
}

impl<'a, F: CostFactory> Resolver<'a, F> {
    pub fn new(arena: &'a Arena<F::Cost>, cfg: &'a ResolverConfig<F>) -> Self {
        let memo_points = if cfg.memoize { arena.memo_points(cfg.memo_weight_limit) } else { Vec::new() };
        Resolver {
            arena,
            cfg,
            memo_points,
            memo: FxHashMap::default(),
            payloads: Vec::new(),
            promises: Vec::new(),
            stats: ResolveStats::default(),
            violations: Vec::new(),
        }
    }

    pub fn stats(&self) -> &ResolveStats {
        &self.stats
    }

    /// Invariant violations found so far; always empty unless auditing.
    pub fn violations(&self) -> &[String] {
        &self.violations
    }

    /// Whether the promise's computation has run.
    pub fn is_forced(&self, p: PromiseId) -> bool {
        matches!(self.promises[p.0 as usize], Promise::Done(_))
    }

    fn factory(&self) -> &'a F {
        &self.cfg.factory
    }

    /// Resolves `d` placed at column `col` with indentation level `indent`.
    pub fn resolve(&mut self, d: Doc, col: usize, indent: usize) -> MeasureSet<F::Cost> {
        self.stats.resolve_calls += 1;
        if self.arena.is_fail(d) {
            return MeasureSet::Empty;
        }
        let w = self.cfg.width_limit;
        if col > w || indent > w {
            self.stats.deferred += 1;
            let p = self.promise(Promise::Pending(Deferred::Resolve { doc: d, col, indent }));
            return MeasureSet::Tainted(p);
        }
        let key = (d.id() as u32, col as u32, indent as u32);
        let memoized = self.cfg.memoize && self.memo_points[d.id()];
        if memoized {
            if let Some(s) = self.memo.get(&key) {
                self.stats.memo_hits += 1;
                return s.clone();
            }
        }
        let s = stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.resolve_now(d, col, indent));
        if let MeasureSet::Frontier(ms) = &s {
            self.stats.max_frontier_len = self.stats.max_frontier_len.max(ms.len());
            if self.cfg.audit {
                self.audit_frontier(d, col, indent, ms);
            }
        }
        if memoized {
            self.memo.insert(key, s.clone());
        }
        s
    }

    fn resolve_now(&mut self, d: Doc, col: usize, indent: usize) -> MeasureSet<F::Cost> {
        let w = self.cfg.width_limit;
        let f = self.factory();
        match self.arena.kind(d) {
            DocKind::Text(_) => {
                let end = col + self.arena.text_width(d);
                let m = Measure {
                    last: end,
                    cost: f.text_cost(col, end - col),
                    payload: self.payload(PayloadNode::Leaf(d)),
                    ghost: self.ghost(end, indent),
                };
                self.single(m, end > w || indent > w)
            }
            DocKind::Newline(_) => {
                let node = if self.cfg.fused { PayloadNode::Break(indent) } else { PayloadNode::Leaf(d) };
                let m = Measure {
                    last: indent,
                    cost: f.nl_cost(indent),
                    payload: self.payload(node),
                    ghost: self.ghost(col.max(indent), indent),
                };
                self.single(m, col > w || indent > w)
            }
            DocKind::Fail => MeasureSet::Empty,
            &DocKind::Nest(n, x) => {
                let s = self.resolve(x, col, indent + n);
                self.lift(s, Adjust { wrapper: d, outer_indent: indent })
            }
            &DocKind::Align(x) => {
                let s = self.resolve(x, col, col);
                let s = if indent > w { self.taint(s) } else { s };
                self.lift(s, Adjust { wrapper: d, outer_indent: indent })
            }
            &DocKind::Reset(x) => {
                let s = self.resolve(x, col, 0);
                let s = if indent > w { self.taint(s) } else { s };
                self.lift(s, Adjust { wrapper: d, outer_indent: indent })
            }
            DocKind::WithCost(_, x) => {
                let s = self.resolve(*x, col, indent);
                // adding a constant can make distinct costs equal
                match self.lift(s, Adjust { wrapper: d, outer_indent: indent }) {
                    MeasureSet::Frontier(ms) => MeasureSet::Frontier(dedup(f, ms.to_vec()).into()),
                    s => s,
                }
            }
            &DocKind::Alt(a, b) => {
                let (l, r) = if self.cfg.bias_heuristic && self.arena.lines_estimate(b) > self.arena.lines_estimate(a) {
                    (b, a)
                } else {
                    (a, b)
                };
                let sl = self.resolve(l, col, indent);
                let sr = self.resolve(r, col, indent);
                merge(f, sl, sr)
            }
            &DocKind::Concat(a, b) => match self.resolve(a, col, indent) {
                MeasureSet::Empty => MeasureSet::Empty,
                MeasureSet::Tainted(left) => {
                    let p = self.promise(Promise::Pending(Deferred::ConcatTainted { left, right: b, indent }));
                    MeasureSet::Tainted(p)
                }
                MeasureSet::Frontier(ms) => {
                    let mut acc = MeasureSet::Empty;
                    for m in ms.iter() {
                        let s = self.resolve_after(m, b, indent);
                        acc = merge(f, acc, s);
                    }
                    acc
                }
            },
        }
    }

    /// Resolves `b` right after the rendering summarized by `m`.
    fn resolve_after(&mut self, m: &Measure<F::Cost>, b: Doc, indent: usize) -> MeasureSet<F::Cost> {
        match self.resolve(b, m.last, indent) {
            MeasureSet::Empty => MeasureSet::Empty,
            MeasureSet::Tainted(right) => {
                let p = self.promise(Promise::Pending(Deferred::Compose { left: m.clone(), right }));
                MeasureSet::Tainted(p)
            }
            MeasureSet::Frontier(ns) => {
                let joined: Vec<_> = ns.iter().map(|n| self.concat(m, n)).collect();
                MeasureSet::Frontier(dedup(self.factory(), joined).into())
            }
        }
    }

    /// The measure of rendering `b` right after `a`.
    pub fn concat(&mut self, a: &Measure<F::Cost>, b: &Measure<F::Cost>) -> Measure<F::Cost> {
        Measure {
            last: b.last,
            cost: self.factory().add(&a.cost, &b.cost),
            payload: self.payload(PayloadNode::Concat(a.payload, b.payload)),
            ghost: match (a.ghost, b.ghost) {
                (Some(x), Some(y)) => Some(Ghost {
                    max_column: x.max_column.max(y.max_column),
                    max_indent: x.max_indent.max(y.max_indent),
                }),
                _ => None,
            },
        }
    }

    /// Keeps only the cheapest measure, as a tainted set.
    pub fn taint(&mut self, s: MeasureSet<F::Cost>) -> MeasureSet<F::Cost> {
        match s {
            MeasureSet::Frontier(ms) => MeasureSet::Tainted(self.promise(Promise::Done(ms[0].clone()))),
            s => s,
        }
    }

    fn lift(&mut self, s: MeasureSet<F::Cost>, adjust: Adjust) -> MeasureSet<F::Cost> {
        match s {
            MeasureSet::Empty => MeasureSet::Empty,
            MeasureSet::Tainted(inner) => {
                MeasureSet::Tainted(self.promise(Promise::Pending(Deferred::Lift { inner, adjust })))
            }
            MeasureSet::Frontier(ms) => {
                MeasureSet::Frontier(ms.iter().map(|m| self.apply(adjust, m.clone())).collect())
            }
        }
    }

    fn apply(&mut self, adjust: Adjust, mut m: Measure<F::Cost>) -> Measure<F::Cost> {
        if !self.cfg.fused {
            m.payload = self.payload(PayloadNode::Wrap(adjust.wrapper, m.payload));
        }
        match self.arena.kind(adjust.wrapper) {
            DocKind::Align(_) | DocKind::Reset(_) => {
                if let Some(g) = &mut m.ghost {
                    g.max_indent = g.max_indent.max(adjust.outer_indent);
                }
            }
            DocKind::WithCost(extra, _) => m.cost = self.factory().add(extra, &m.cost),
            _ => {}
        }
        m
    }

    fn single(&mut self, m: Measure<F::Cost>, tainted: bool) -> MeasureSet<F::Cost> {
        if tainted {
            MeasureSet::Tainted(self.promise(Promise::Done(m)))
        } else {
            MeasureSet::Frontier(Rc::from([m]))
        }
    }

    fn ghost(&self, max_column: usize, max_indent: usize) -> Option<Ghost> {
        self.cfg.track_ghosts.then_some(Ghost { max_column, max_indent })
    }

    fn payload(&mut self, node: PayloadNode) -> PayloadId {
        let id = u32::try_from(self.payloads.len()).expect("payload arena exceeds u32::MAX nodes");
        self.payloads.push(node);
        PayloadId(id)
    }

    fn promise(&mut self, p: Promise<F::Cost>) -> PromiseId {
        let id = u32::try_from(self.promises.len()).expect("promise arena exceeds u32::MAX entries");
        self.promises.push(p);
        PromiseId(id)
    }

    /// Runs a promise's computation, once.
    pub fn force(&mut self, p: PromiseId) -> Measure<F::Cost> {
        let slot = p.0 as usize;
        match std::mem::replace(&mut self.promises[slot], Promise::Running) {
            Promise::Done(m) => {
                self.promises[slot] = Promise::Done(m.clone());
                m
            }
            Promise::Running => panic!("promise {slot} depends on itself"),
            Promise::Pending(def) => {
                self.stats.promises_forced += 1;
                let m = stacker::maybe_grow(STACK_RED_ZONE, STACK_GROWTH, || self.run(def));
                self.promises[slot] = Promise::Done(m.clone());
                m
            }
        }
    }

    fn run(&mut self, def: Deferred<F::Cost>) -> Measure<F::Cost> {
        match def {
            Deferred::Resolve { doc, col, indent } => {
                let s = self.resolve_now(doc, col, indent);
                if self.cfg.audit && !s.is_tainted() {
                    self.violations
                        .push(format!("{doc:?} at ({col}, {indent}) beyond the width limit resolved untainted"));
                }
                self.first(s)
            }
            Deferred::ConcatTainted { left, right, indent } => {
                let ma = self.force(left);
                let s = self.resolve(right, ma.last, indent);
                let mb = self.first(s);
                self.concat(&ma, &mb)
            }
            Deferred::Compose { left, right } => {
                let mb = self.force(right);
                self.concat(&left, &mb)
            }
            Deferred::Lift { inner, adjust } => {
                let m = self.force(inner);
                self.apply(adjust, m)
            }
        }
    }

    /// The cheapest measure of a non-empty set, forcing if tainted.
    fn first(&mut self, s: MeasureSet<F::Cost>) -> Measure<F::Cost> {
        match s {
            MeasureSet::Frontier(ms) => ms[0].clone(),
            MeasureSet::Tainted(p) => self.force(p),
            MeasureSet::Empty => unreachable!("non-empty documents never resolve to the empty set"),
        }
    }

    fn audit_frontier(&mut self, d: Doc, col: usize, indent: usize, ms: &[Measure<F::Cost>]) {
        let f = self.factory();
        self.stats.frontiers_audited += 1;
        let w = self.cfg.width_limit;
        let mut problems = Vec::new();
        if ms.is_empty() {
            problems.push("empty frontier".to_owned());
        }
        if ms.len() > w + 1 {
            problems.push(format!("{} measures exceed the bound {}", ms.len(), w + 1));
        }
        for pair in ms.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.last <= b.last {
                problems.push(format!("last not strictly decreasing: {} then {}", a.last, b.last));
            }
            if !f.le(&a.cost, &b.cost) || f.le(&b.cost, &a.cost) {
                problems.push(format!("cost not strictly increasing: {:?} then {:?}", a.cost, b.cost));
            }
        }
        for (x, a) in ms.iter().enumerate() {
            for (y, b) in ms.iter().enumerate() {
                if x != y && dominates(f, a, b) {
                    problems.push(format!("measure {x} dominates measure {y}"));
                }
            }
        }
        for p in problems {
            self.violations.push(format!("{d:?} at ({col}, {indent}): {p}"));
        }
    }

    /// Renders a payload placed at column 0 with indentation level 0.
    pub fn render(&self, root: PayloadId) -> Layout {
        let mut lines = vec![String::new()];
        let mut indents = vec![0];
        let mut col = 0usize;
        let mut stack = vec![(root, 0usize)];
        while let Some((p, indent)) = stack.pop() {
            let mut line_break = |lines: &mut Vec<String>, k: usize| {
                lines.push(" ".repeat(k));
                indents.push(k);
                col = k;
            };
            match self.payloads[p.0 as usize] {
                PayloadNode::Leaf(d) => match self.arena.kind(d) {
                    DocKind::Text(s) => {
                        lines.last_mut().expect("non-empty").push_str(s);
                        col += self.arena.text_width(d);
                    }
                    DocKind::Newline(_) => line_break(&mut lines, indent),
                    k => unreachable!("payload leaf {k:?}"),
                },
                PayloadNode::Break(k) => line_break(&mut lines, k),
                PayloadNode::Concat(a, b) => {
                    stack.push((b, indent));
                    stack.push((a, indent));
                }
                PayloadNode::Wrap(w, x) => {
                    let inner = match self.arena.kind(w) {
                        DocKind::Nest(n, _) => indent + n,
                        DocKind::Align(_) => col,
                        DocKind::Reset(_) => 0,
                        _ => indent,
                    };
                    stack.push((x, inner));
                }
            }
        }
        Layout::from_parts(lines, indents)
    }

    /// The choiceless document a payload stands for. `None` in fused mode,
    /// where wrapper nodes are not recorded.
    pub fn to_choiceless(&self, p: PayloadId) -> Option<Rc<Choiceless<F::Cost>>> {
        let leaf = |d: Doc| Choiceless::from_doc(self.arena, d).expect("payload leaves are choiceless");
        Some(match self.payloads[p.0 as usize] {
            PayloadNode::Leaf(d) => leaf(d),
            PayloadNode::Break(_) => return None,
            PayloadNode::Concat(a, b) => Rc::new(Choiceless::Concat(self.to_choiceless(a)?, self.to_choiceless(b)?)),
            PayloadNode::Wrap(w, x) => {
                let inner = self.to_choiceless(x)?;
                Rc::new(match self.arena.kind(w) {
                    DocKind::Nest(n, _) => Choiceless::Nest(*n, inner),
                    DocKind::Align(_) => Choiceless::Align(inner),
                    DocKind::Reset(_) => Choiceless::Reset(inner),
                    DocKind::WithCost(c, _) => Choiceless::WithCost(c.clone(), inner),
                    k => unreachable!("payload wrapper {k:?}"),
                })
            }
        })
    }
}

/// Outcome of printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintResult<C> {
    pub layout: Layout,
    pub cost: C,
    /// Whether the computation width limit was exceeded, in which case the
    /// layout is not guaranteed to be optimal.
    pub tainted: bool,
}

/// Resolves `d` at column 0 and renders the cheapest measure.
pub fn print<F: CostFactory>(
    arena: &Arena<F::Cost>,
    d: Doc,
    cfg: &ResolverConfig<F>,
) -> Result<PrintResult<F::Cost>, PrintError> {
    let mut r = Resolver::new(arena, cfg);
    let s = r.resolve(d, 0, 0);
    let (m, tainted) = match s {
        MeasureSet::Empty => return Err(PrintError::NoLayout),
        MeasureSet::Frontier(ms) => (ms[0].clone(), false),
        MeasureSet::Tainted(p) => (r.force(p), true),
    };
    Ok(PrintResult { layout: r.render(m.payload), cost: m.cost, tainted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{Linear, Quadratic};

    type A = Arena<(u64, u64)>;

    fn measure(last: usize, cost: (u64, u64)) -> Measure<(u64, u64)> {
        Measure { last, cost, payload: PayloadId(0), ghost: None }
    }

    const Q: Quadratic = Quadratic { page_width: 80 };

    #[test]
    fn domination() {
        assert!(dominates(&Q, &measure(3, (2, 1)), &measure(5, (3, 1))));
        assert!(dominates(&Q, &measure(3, (2, 1)), &measure(3, (2, 1))));
        assert!(!dominates(&Q, &measure(3, (2, 1)), &measure(2, (9, 9))));
    }

    #[test]
    fn dedup_examples() {
        assert_eq!(dedup(&Q, vec![measure(5, (3, 0)), measure(4, (3, 0))]), [measure(4, (3, 0))]);
        let both = vec![measure(5, (2, 0)), measure(4, (3, 0))];
        assert_eq!(dedup(&Q, both.clone()), both);
        assert_eq!(dedup(&Q, vec![measure(1, (0, 0))]), [measure(1, (0, 0))]);
    }

    #[test]
    fn merge_examples() {
        let a = [measure(5, (1, 0))];
        assert_eq!(merge_frontiers(&Q, &a, &[measure(5, (2, 0))]), a);
        assert_eq!(merge_frontiers(&Q, &a, &[measure(3, (0, 0))]), [measure(3, (0, 0))]);
        let interleaved = merge_frontiers(&Q, &[measure(9, (0, 0)), measure(2, (5, 0))], &[measure(5, (1, 0))]);
        assert_eq!(interleaved, [measure(9, (0, 0)), measure(5, (1, 0)), measure(2, (5, 0))]);

        let x = MeasureSet::<(u64, u64)>::Tainted(PromiseId(0));
        let y = MeasureSet::Tainted(PromiseId(1));
        assert!(matches!(merge(&Q, x.clone(), y.clone()), MeasureSet::Tainted(PromiseId(0))));
        let fr = MeasureSet::Frontier(Rc::from(a.to_vec()));
        assert!(matches!(merge(&Q, x.clone(), fr.clone()), MeasureSet::Frontier(_)));
        assert!(matches!(merge(&Q, fr.clone(), y), MeasureSet::Frontier(_)));
        assert!(matches!(merge(&Q, MeasureSet::Empty, x), MeasureSet::Tainted(PromiseId(0))));
    }

    #[test]
    fn taint_keeps_cheapest_and_lift_is_lazy() {
        let a = A::new();
        let cfg = ResolverConfig::new(Q).with_width_limit(10);
        let mut r = Resolver::new(&a, &cfg);
        let fr = MeasureSet::Frontier(Rc::from([measure(3, (0, 1)), measure(1, (2, 0))]));
        let MeasureSet::Tainted(p) = r.taint(fr) else { panic!("expected tainted") };
        assert_eq!(r.force(p), measure(3, (0, 1)));
    }

    #[test]
    fn leaf_rules() {
        let mut a = A::new();
        let empty = a.text("").unwrap();
        let abc = a.text("abc").unwrap();
        let cfg = ResolverConfig::new(Q).with_width_limit(10);
        let mut r = Resolver::new(&a, &cfg);
        let s = r.resolve(empty, 0, 0);
        let fr = s.frontier().unwrap();
        assert_eq!((fr.len(), fr[0].last, fr[0].cost), (1, 0, (0, 0)));

        let MeasureSet::Tainted(p) = r.resolve(abc, 9, 0) else { panic!("expected tainted") };
        let m = r.force(p);
        assert_eq!((m.last, m.cost), (12, Q.text_cost(9, 3)));
    }

    #[test]
    fn beyond_limit_is_deferred() {
        let mut a = A::new();
        let x = a.text("x").unwrap();
        let nl = a.nl();
        let d = a.vcat(x, nl);
        let cfg = ResolverConfig::new(Q).with_width_limit(4);
        let mut r = Resolver::new(&a, &cfg);
        let MeasureSet::Tainted(p) = r.resolve(d, 5, 0) else { panic!("expected tainted") };
        assert!(!r.is_forced(p));
        assert_eq!(r.stats().promises_forced, 0);
        r.force(p);
        assert!(r.is_forced(p));
        let forced = r.stats().promises_forced;
        r.force(p);
        assert_eq!(r.stats().promises_forced, forced);
    }

    #[test]
    fn vertical_branch_dominates() {
        let mut a = A::new();
        let aaa = a.text("aaa").unwrap();
        let x = a.text("a").unwrap();
        let v = a.vcat(x, x);
        let d = a.alt(aaa, v);
        let cfg = ResolverConfig::new(Quadratic { page_width: 2 }).with_width_limit(10);
        let mut r = Resolver::new(&a, &cfg);
        let s = r.resolve(d, 0, 0);
        let fr = s.frontier().unwrap();
        assert_eq!(fr.len(), 1);
        assert_eq!((fr[0].last, fr[0].cost), (1, (0, 1)));
    }

    #[test]
    fn print_hello() {
        let mut a = A::new();
        let h = a.text("hello").unwrap();
        let r = print(&a, h, &ResolverConfig::new(Q).with_width_limit(5)).unwrap();
        assert_eq!((r.layout.lines(), r.tainted), (&["hello".to_owned()][..], false));
        let r = print(&a, h, &ResolverConfig::new(Q).with_width_limit(3)).unwrap();
        assert_eq!((r.layout.lines(), r.tainted), (&["hello".to_owned()][..], true));
        let f = a.fail();
        assert_eq!(print(&a, f, &ResolverConfig::new(Q)), Err(PrintError::NoLayout));
    }

    #[test]
    fn func_call_measure_and_ghosts() {
        let mut a = A::new();
        let pad = a.text("   ").unwrap();
        let open = a.text("= func(").unwrap();
        let n1 = a.nl();
        let p = a.text("pretty,").unwrap();
        let n2 = a.nl();
        let q = a.text("print").unwrap();
        let inner = a.concat_all([n1, p, n2, q]).unwrap();
        let nested = a.nest(2, inner);
        let n3 = a.nl();
        let close = a.text(")").unwrap();
        let call = a.concat_all([open, nested, n3, close]).unwrap();
        let mut cfg = ResolverConfig::new(Linear { page_width: 6 });
        cfg.track_ghosts = true;
        let mut r = Resolver::new(&a, &cfg);
        let s = r.resolve(call, 3, 0);
        let m = &s.frontier().unwrap()[0];
        assert_eq!((m.last, m.cost), (1, (8, 3)));
        assert_eq!(m.ghost, Some(Ghost { max_column: 10, max_indent: 2 }));

        let whole = a.concat(pad, call);
        let out = print(&a, whole, &ResolverConfig::new(Quadratic { page_width: 6 })).unwrap();
        assert!(!out.tainted);
        assert_eq!(out.cost, (26, 3));
    }

    #[test]
    fn fused_rendering_matches() {
        let mut a = A::new();
        let words = a.fill_sep(&["alpha", "beta", "gamma", "delta", "epsilon"]).unwrap();
        let head = a.text("> ").unwrap();
        let body = a.align(words);
        let d = a.concat(head, body);
        let mut cfg = ResolverConfig::new(Quadratic { page_width: 12 });
        let plain = print(&a, d, &cfg).unwrap();
        cfg.fused = true;
        let fused = print(&a, d, &cfg).unwrap();
        assert_eq!(plain, fused);
        assert_eq!(plain.layout.lines(), ["> alpha beta", "  gamma", "  delta", "  epsilon"]);
    }
}

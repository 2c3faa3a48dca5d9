//! Documents: an append-only arena of immutable nodes forming a DAG.
//!
//! A [`Doc`] is a cheap copyable handle into an [`Arena`]. Every constructor
//! allocates a fresh node, so a node's identity is its index; sharing only
//! happens when the caller reuses a handle. Children are always allocated
//! before their parents, so indices are a topological order of the DAG.

use std::fmt;

use crate::error::DocError;

/// Memoization weight at which a node becomes a memoization point.
pub const DEFAULT_MEMO_WEIGHT_LIMIT: usize = 6;

/// Handle to a node in an [`Arena`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Doc(u32);

impl Doc {
    /// The node identifier. Stable for the lifetime of the arena.
    pub fn id(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Doc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The shape of a document node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DocKind<C> {
    Text(Box<str>),
    /// A line break. When flattened it becomes the alternative text, or
    /// fails when there is none.
    Newline(Option<Box<str>>),
    Fail,
    Concat(Doc, Doc),
    Nest(usize, Doc),
    Align(Doc),
    Reset(Doc),
    Alt(Doc, Doc),
    WithCost(C, Doc),
}

impl<C> DocKind<C> {
    /// Direct sub-documents, left to right.
    pub fn children(&self) -> impl Iterator<Item = Doc> {
        let (a, b) = match *self {
            DocKind::Text(_) | DocKind::Newline(_) | DocKind::Fail => (None, None),
            DocKind::Concat(a, b) | DocKind::Alt(a, b) => (Some(a), Some(b)),
            DocKind::Nest(_, d) | DocKind::Align(d) | DocKind::Reset(d) | DocKind::WithCost(_, d) => (Some(d), None),
        };
        a.into_iter().chain(b)
    }
}

#[derive(Clone, Debug)]
struct Node<C> {
    kind: DocKind<C>,
    /// Character count of a text node, zero otherwise.
    width: usize,
    memo_weight: u8,
    memo_point: bool,
    /// True when every widening of this node contains `fail`.
    empty: bool,
    /// Over-approximation of the number of line breaks in any rendering.
    lines_estimate: u32,
    flatten_cache: Option<Doc>,
}

/// Owner of every document node.
///
/// The arena is generic over the cost type `C` carried by
/// [`DocKind::WithCost`] nodes; documents without such nodes work with any
/// cost factory whose cost type is `C`.
#[derive(Clone, Debug)]
pub struct Arena<C> {
    nodes: Vec<Node<C>>,
}

impl<C> Default for Arena<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C> Arena<C> {
    pub fn new() -> Self {
        Arena { nodes: Vec::new() }
    }

    /// Number of nodes allocated so far.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn kind(&self, d: Doc) -> &DocKind<C> {
        &self.node(d).kind
    }

    /// Character count of a text node (zero for other kinds).
    pub fn text_width(&self, d: Doc) -> usize {
        self.node(d).width
    }

    pub fn memo_weight(&self, d: Doc) -> usize {
        self.node(d).memo_weight as usize
    }

    /// Whether the node is a memoization point under the default weight limit.
    pub fn is_memo_point(&self, d: Doc) -> bool {
        self.node(d).memo_point
    }

    /// Whether the document has no layout at all, i.e. normalizes to `fail`.
    /// Emptiness does not depend on the printing context.
    pub fn is_fail(&self, d: Doc) -> bool {
        self.node(d).empty
    }

    pub fn lines_estimate(&self, d: Doc) -> u32 {
        self.node(d).lines_estimate
    }

    /// The cached flattened form, if `d` has been flattened before.
    pub fn flatten_cache(&self, d: Doc) -> Option<Doc> {
        self.node(d).flatten_cache
    }

    fn node(&self, d: Doc) -> &Node<C> {
        &self.nodes[d.id()]
    }

    fn alloc(&mut self, kind: DocKind<C>, width: usize) -> Doc {
        let id = u32::try_from(self.nodes.len()).expect("document arena exceeds u32::MAX nodes");
        let (empty, lines_estimate, child_weight) = match &kind {
            DocKind::Text(_) => (false, 0, None),
            DocKind::Newline(_) => (false, 1, None),
            DocKind::Fail => (true, 0, None),
            DocKind::Concat(a, b) => (
                self.node(*a).empty || self.node(*b).empty,
                self.node(*a).lines_estimate.saturating_add(self.node(*b).lines_estimate),
                Some(self.observed_weight(*a).max(self.observed_weight(*b))),
            ),
            DocKind::Alt(a, b) => (
                self.node(*a).empty && self.node(*b).empty,
                self.node(*a).lines_estimate.max(self.node(*b).lines_estimate),
                Some(self.observed_weight(*a).max(self.observed_weight(*b))),
            ),
            DocKind::Nest(_, d) | DocKind::Align(d) | DocKind::Reset(d) | DocKind::WithCost(_, d) => {
                (self.node(*d).empty, self.node(*d).lines_estimate, Some(self.observed_weight(*d)))
            }
        };
        let memo_weight = child_weight.map_or(0, |w| w.saturating_add(1));
        let memo_point = memo_weight as usize >= DEFAULT_MEMO_WEIGHT_LIMIT;
        self.nodes.push(Node { kind, width, memo_weight, memo_point, empty, lines_estimate, flatten_cache: None });
        Doc(id)
    }

    fn observed_weight(&self, d: Doc) -> u8 {
        let n = self.node(d);
        if n.memo_point {
            0
        } else {
            n.memo_weight
        }
    }

    /// Memoization points for an arbitrary weight limit, indexed by node id.
    /// A limit of zero marks every node.
    pub fn memo_points(&self, limit: usize) -> Vec<bool> {
        let mut observed = vec![0usize; self.nodes.len()];
        let mut points = vec![false; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            let weight = node.kind.children().map(|c| observed[c.id()]).max().map_or(0, |w| w + 1);
            points[id] = weight >= limit;
            observed[id] = if points[id] { 0 } else { weight };
        }
        points
    }

    // Leaves.

    pub fn text(&mut self, s: impl Into<String>) -> Result<Doc, DocError> {
        let s = s.into();
        check_newline_free(&s)?;
        let width = s.chars().count();
        Ok(self.alloc(DocKind::Text(s.into_boxed_str()), width))
    }

    /// A soft line break that flattens to a single space.
    pub fn nl(&mut self) -> Doc {
        self.alloc(DocKind::Newline(Some(" ".into())), 0)
    }

    /// A line break that flattens to `alt`, or to `fail` when `alt` is `None`.
    pub fn newline(&mut self, alt: Option<&str>) -> Result<Doc, DocError> {
        if let Some(s) = alt {
            check_newline_free(s)?;
        }
        Ok(self.alloc(DocKind::Newline(alt.map(Into::into)), 0))
    }

    /// A line break that flattens to nothing.
    pub fn brk(&mut self) -> Doc {
        self.alloc(DocKind::Newline(Some("".into())), 0)
    }

    /// A line break that cannot be flattened.
    pub fn hard_nl(&mut self) -> Doc {
        self.alloc(DocKind::Newline(None), 0)
    }

    pub fn fail(&mut self) -> Doc {
        self.alloc(DocKind::Fail, 0)
    }

    // Composites.

    pub fn concat(&mut self, a: Doc, b: Doc) -> Doc {
        self.alloc(DocKind::Concat(a, b), 0)
    }

    pub fn nest(&mut self, n: usize, d: Doc) -> Doc {
        self.alloc(DocKind::Nest(n, d), 0)
    }

    pub fn align(&mut self, d: Doc) -> Doc {
        self.alloc(DocKind::Align(d), 0)
    }

    /// Renders `d` with the indentation level set to zero.
    pub fn reset(&mut self, d: Doc) -> Doc {
        self.alloc(DocKind::Reset(d), 0)
    }

    pub fn alt(&mut self, a: Doc, b: Doc) -> Doc {
        self.alloc(DocKind::Alt(a, b), 0)
    }

    /// Adds `extra` to the cost of every layout of `d`.
    pub fn with_cost(&mut self, extra: C, d: Doc) -> Doc {
        self.alloc(DocKind::WithCost(extra, d), 0)
    }

    /// Concatenates a non-empty sequence left to right.
    pub fn concat_all(&mut self, docs: impl IntoIterator<Item = Doc>) -> Option<Doc> {
        docs.into_iter().reduce(|acc, d| self.concat(acc, d))
    }

    // Derived combinators.

    /// `d <|> flatten d`
    pub fn group(&mut self, d: Doc) -> Doc
    where
        C: Clone,
    {
        let flat = self.flatten(d);
        self.alt(d, flat)
    }

    /// Vertical concatenation: `a <> nl <> b`.
    pub fn vcat(&mut self, a: Doc, b: Doc) -> Doc {
        let nl = self.nl();
        let left = self.concat(a, nl);
        self.concat(left, b)
    }

    /// Aligned concatenation: `a <> align b`.
    pub fn acat(&mut self, a: Doc, b: Doc) -> Doc {
        let aligned = self.align(b);
        self.concat(a, aligned)
    }

    /// Word wrapping: consecutive words are joined by a choice between a
    /// space and a line break.
    pub fn fill_sep<S: AsRef<str>>(&mut self, words: &[S]) -> Result<Doc, DocError> {
        let (first, rest) = words.split_first().ok_or(DocError::EmptyWordList)?;
        let mut acc = self.text(first.as_ref())?;
        for w in rest {
            let word = self.text(w.as_ref())?;
            let space = self.alloc(DocKind::Text(" ".into()), 1);
            let nl = self.nl();
            let sep = self.alt(space, nl);
            let tail = self.concat(sep, word);
            acc = self.concat(acc, tail);
        }
        Ok(acc)
    }

    /// Replaces every reachable line break by its flattened alternative.
    ///
    /// The walk is memoized per node and returns `d` itself when nothing
    /// beneath it changes, so each node is flattened at most once and the
    /// sharing structure of `d` carries over to the result.
    pub fn flatten(&mut self, d: Doc) -> Doc
    where
        C: Clone,
    {
        if let Some(f) = self.node(d).flatten_cache {
            return f;
        }
        let kind = self.node(d).kind.clone();
        let flat = stacker::maybe_grow(64 * 1024, 1024 * 1024, || match kind {
            DocKind::Text(_) | DocKind::Fail => d,
            DocKind::Newline(Some(s)) => {
                let width = s.chars().count();
                self.alloc(DocKind::Text(s), width)
            }
            DocKind::Newline(None) => self.fail(),
            DocKind::Concat(a, b) => self.rebuild2(d, a, b, DocKind::Concat),
            DocKind::Alt(a, b) => self.rebuild2(d, a, b, DocKind::Alt),
            DocKind::Nest(n, x) => self.rebuild1(d, x, |x| DocKind::Nest(n, x)),
            DocKind::Align(x) => self.rebuild1(d, x, DocKind::Align),
            DocKind::Reset(x) => self.rebuild1(d, x, DocKind::Reset),
            DocKind::WithCost(c, x) => self.rebuild1(d, x, |x| DocKind::WithCost(c, x)),
        });
        self.nodes[d.id()].flatten_cache = Some(flat);
        self.nodes[flat.id()].flatten_cache = Some(flat);
        flat
    }

    fn rebuild1(&mut self, d: Doc, x: Doc, make: impl FnOnce(Doc) -> DocKind<C>) -> Doc
    where
        C: Clone,
    {
        let fx = self.flatten(x);
        if fx == x {
            d
        } else {
            self.alloc(make(fx), 0)
        }
    }

    fn rebuild2(&mut self, d: Doc, a: Doc, b: Doc, make: fn(Doc, Doc) -> DocKind<C>) -> Doc
    where
        C: Clone,
    {
        let fa = self.flatten(a);
        let fb = self.flatten(b);
        if fa == a && fb == b {
            d
        } else {
            self.alloc(make(fa, fb), 0)
        }
    }

    /// Every node reachable from `d`, in increasing id order.
    pub fn reachable(&self, d: Doc) -> Vec<Doc> {
        let mut seen = vec![false; d.id() + 1];
        let mut stack = vec![d];
        while let Some(x) = stack.pop() {
            if std::mem::replace(&mut seen[x.id()], true) {
                continue;
            }
            stack.extend(self.node(x).kind.children());
        }
        seen.iter().enumerate().filter(|(_, s)| **s).map(|(i, _)| Doc(i as u32)).collect()
    }

    /// Size of the document when its sharing is unfolded into a tree,
    /// saturating at `u64::MAX`.
    pub fn tree_size(&self, d: Doc) -> u64 {
        let mut sizes = vec![0u64; d.id() + 1];
        for x in self.reachable(d) {
            sizes[x.id()] = self.node(x).kind.children().fold(1u64, |acc, c| acc.saturating_add(sizes[c.id()]));
        }
        sizes[d.id()]
    }

    /// Whether any `Alt` node is reachable from `d`.
    pub fn has_choice(&self, d: Doc) -> bool {
        self.reachable(d).into_iter().any(|x| matches!(self.node(x).kind, DocKind::Alt(..)))
    }
}

fn check_newline_free(s: &str) -> Result<(), DocError> {
    match s.find(['\n', '\r']) {
        Some(at) => Err(DocError::EmbeddedNewline { text: s.to_owned(), at }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type A = Arena<u64>;

    #[test]
    fn text_rejects_newlines() {
        let mut a = A::new();
        assert!(a.text("abc").is_ok());
        assert!(matches!(a.text("a\nb"), Err(DocError::EmbeddedNewline { at: 1, .. })));
        assert!(a.newline(Some("x\ny")).is_err());
    }

    #[test]
    fn nl_is_soft_space_newline() {
        let mut a = A::new();
        let n = a.nl();
        assert_eq!(a.kind(n), &DocKind::Newline(Some(" ".into())));
        let h = a.hard_nl();
        assert_eq!(a.kind(h), &DocKind::Newline(None));
    }

    #[test]
    fn composites_reference_children() {
        let mut a = A::new();
        let s = a.text("x").unwrap();
        let nl = a.nl();
        let right = a.concat(s, nl);
        let choice = a.alt(s, right);
        match a.kind(choice) {
            DocKind::Alt(l, r) => {
                assert_eq!(*l, s);
                assert!(matches!(a.kind(*r), DocKind::Concat(x, _) if *x == s));
            }
            k => panic!("unexpected {k:?}"),
        }
        let n = a.nest(4, nl);
        assert_eq!(a.kind(n), &DocKind::Nest(4, nl));
    }

    #[test]
    fn flatten_leaves() {
        let mut a = A::new();
        let nl = a.nl();
        let f = a.flatten(nl);
        assert_eq!(a.kind(f), &DocKind::Text(" ".into()));
        let t = a.text("a").unwrap();
        assert_eq!(a.flatten(t), t);

        let h = a.hard_nl();
        let c = a.concat(t, h);
        let fc = a.flatten(c);
        match a.kind(fc) {
            DocKind::Concat(x, y) => {
                assert_eq!(*x, t);
                assert_eq!(a.kind(*y), &DocKind::Fail);
            }
            k => panic!("unexpected {k:?}"),
        }
        assert!(a.is_fail(fc));
        assert!(!a.is_fail(c));
    }

    #[test]
    fn flatten_is_idempotent_and_shares() {
        let mut a = A::new();
        let x = a.text("x").unwrap();
        let nl = a.nl();
        let inner = a.concat(x, nl);
        let both = a.concat(inner, inner);
        let f = a.flatten(both);
        assert_eq!(a.flatten(f), f);
        match a.kind(f) {
            DocKind::Concat(l, r) => assert_eq!(l, r),
            k => panic!("unexpected {k:?}"),
        }
        assert!(a.reachable(f).len() <= 2 * a.reachable(both).len());
    }

    #[test]
    fn derived_expansions() {
        let mut a = A::new();
        let nl = a.nl();
        let g = a.group(nl);
        match *a.kind(g) {
            DocKind::Alt(l, r) => {
                assert_eq!(l, nl);
                assert_eq!(a.kind(r), &DocKind::Text(" ".into()));
            }
            ref k => panic!("unexpected {k:?}"),
        }
        let x = a.text("a").unwrap();
        let y = a.text("b").unwrap();
        let v = a.acat(x, y);
        assert!(
            matches!(a.kind(v), DocKind::Concat(l, r) if *l == x && matches!(a.kind(*r), DocKind::Align(b) if *b == y))
        );
    }

    #[test]
    fn fill_sep_shapes() {
        let mut a = A::new();
        let one = a.fill_sep(&["a"]).unwrap();
        assert_eq!(a.kind(one), &DocKind::Text("a".into()));
        assert!(matches!(a.fill_sep::<&str>(&[]), Err(DocError::EmptyWordList)));
        let before = a.len();
        a.fill_sep(&["a"; 100]).unwrap();
        // six nodes per extra word, one for the first
        assert_eq!(a.len() - before, 1 + 6 * 99);
    }

    #[test]
    fn memo_weights() {
        let mut a = A::new();
        let mut d = a.text("x").unwrap();
        assert_eq!(a.memo_weight(d), 0);
        let mut weights = Vec::new();
        for _ in 0..8 {
            d = a.nest(1, d);
            weights.push((a.memo_weight(d), a.is_memo_point(d)));
        }
        assert_eq!(weights[4], (5, false));
        assert_eq!(weights[5], (6, true));
        assert_eq!(weights[6], (1, false));
        let all = a.memo_points(0);
        assert!(all.iter().all(|p| *p));
        let default = a.memo_points(DEFAULT_MEMO_WEIGHT_LIMIT);
        assert!((0..a.len()).all(|i| default[i] == a.is_memo_point(Doc(i as u32))));
    }

    #[test]
    fn tree_size_unfolds_sharing() {
        let mut a = A::new();
        let mut d = a.text("x").unwrap();
        for _ in 0..10 {
            d = a.concat(d, d);
        }
        assert_eq!(a.reachable(d).len(), 11);
        assert_eq!(a.tree_size(d), 2047);
    }
}

//! Cost factories: the optimization objective of the printer.
//!
//! A factory supplies a totally ordered cost type together with costs for
//! placing text and line breaks. The printer never inspects cost values; it
//! only combines them with [`CostFactory::add`] and compares them with
//! [`CostFactory::le`].

use std::fmt::{self, Debug};
use std::hash::Hash;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::layout::Layout;

/// The pluggable objective.
///
/// A *valid* factory satisfies these contracts, which the printer relies on
/// for pruning:
///
/// * `le` is a total order and is compatible with `add`
///   (`a ≤ b` and `c ≤ d` imply `a + c ≤ b + d`);
/// * `add` is associative with identity `text_cost(0, 0)`;
/// * `text_cost(c, 0)` is that identity for every column `c`;
/// * `text_cost` is monotone in the column and splits:
///   `text_cost(c, l1 + l2) = text_cost(c, l1) + text_cost(c + l1, l2)`;
/// * `nl_cost` is monotone in the indentation level.
///
/// [`check_factory_validity`] samples these contracts.
pub trait CostFactory {
    type Cost: Clone + Eq + Hash + Debug;

    fn le(&self, a: &Self::Cost, b: &Self::Cost) -> bool;
    fn add(&self, a: &Self::Cost, b: &Self::Cost) -> Self::Cost;
    /// Cost of `len` characters placed starting at column `col`.
    fn text_cost(&self, col: usize, len: usize) -> Self::Cost;
    /// Cost of a line break followed by `indent` spaces of indentation.
    fn nl_cost(&self, indent: usize) -> Self::Cost;

    fn zero(&self) -> Self::Cost {
        self.text_cost(0, 0)
    }

    /// The page width the factory's formulas use. Only consulted to bound
    /// the values sampled by the validity checker.
    fn page_width(&self) -> usize {
        80
    }
}

impl<F: CostFactory + ?Sized> CostFactory for &F {
    type Cost = F::Cost;

    fn le(&self, a: &Self::Cost, b: &Self::Cost) -> bool {
        (**self).le(a, b)
    }
    fn add(&self, a: &Self::Cost, b: &Self::Cost) -> Self::Cost {
        (**self).add(a, b)
    }
    fn text_cost(&self, col: usize, len: usize) -> Self::Cost {
        (**self).text_cost(col, len)
    }
    fn nl_cost(&self, indent: usize) -> Self::Cost {
        (**self).nl_cost(indent)
    }
    fn zero(&self) -> Self::Cost {
        (**self).zero()
    }
    fn page_width(&self) -> usize {
        (**self).page_width()
    }
}

/// Overflow and height, compared lexicographically.
pub type OverflowHeight = (u64, u64);

fn lex_le(a: &OverflowHeight, b: &OverflowHeight) -> bool {
    a <= b
}

fn pair_add(a: &OverflowHeight, b: &OverflowHeight) -> OverflowHeight {
    (a.0 + b.0, a.1 + b.1)
}

/// Sum of overflows past the page width, then the number of line breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Linear {
    pub page_width: usize,
}

impl CostFactory for Linear {
    type Cost = OverflowHeight;

    fn le(&self, a: &Self::Cost, b: &Self::Cost) -> bool {
        lex_le(a, b)
    }
    fn add(&self, a: &Self::Cost, b: &Self::Cost) -> Self::Cost {
        pair_add(a, b)
    }
    fn text_cost(&self, col: usize, len: usize) -> Self::Cost {
        let end = col + len;
        let start = self.page_width.max(col);
        (end.saturating_sub(start) as u64, 0)
    }
    fn nl_cost(&self, _indent: usize) -> Self::Cost {
        (0, 1)
    }
    fn page_width(&self) -> usize {
        self.page_width
    }
}

/// Sum of squared overflows, then the number of line breaks.
///
/// A character at column `k ≥ w` contributes `2(k - w) + 1`, so a run of
/// characters contributes the difference of two squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quadratic {
    pub page_width: usize,
}

impl CostFactory for Quadratic {
    type Cost = OverflowHeight;

    fn le(&self, a: &Self::Cost, b: &Self::Cost) -> bool {
        lex_le(a, b)
    }
    fn add(&self, a: &Self::Cost, b: &Self::Cost) -> Self::Cost {
        pair_add(a, b)
    }
    fn text_cost(&self, col: usize, len: usize) -> Self::Cost {
        let w = self.page_width;
        if col + len <= w {
            return (0, 0);
        }
        let a = (w.max(col) - w) as u64;
        let b = (col + len - w.max(col)) as u64;
        (b * (2 * a + b), 0)
    }
    fn nl_cost(&self, _indent: usize) -> Self::Cost {
        (0, 1)
    }
    fn page_width(&self) -> usize {
        self.page_width
    }
}

/// The largest overflow of any line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MaxOverflow {
    pub page_width: usize,
}

impl CostFactory for MaxOverflow {
    type Cost = u64;

    fn le(&self, a: &u64, b: &u64) -> bool {
        a <= b
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        *a.max(b)
    }
    fn text_cost(&self, col: usize, len: usize) -> u64 {
        if len == 0 {
            0
        } else {
            (col + len).saturating_sub(self.page_width) as u64
        }
    }
    fn nl_cost(&self, _indent: usize) -> u64 {
        0
    }
    fn page_width(&self) -> usize {
        self.page_width
    }
}

/// Largest overflow, then the number of line breaks.
///
/// This factory is **not** valid: taking the maximum in the first component
/// breaks compatibility of the order with addition. It exists to exercise
/// the validity checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvalidMaxLex {
    pub page_width: usize,
}

impl CostFactory for InvalidMaxLex {
    type Cost = OverflowHeight;

    fn le(&self, a: &Self::Cost, b: &Self::Cost) -> bool {
        lex_le(a, b)
    }
    fn add(&self, a: &Self::Cost, b: &Self::Cost) -> Self::Cost {
        (a.0.max(b.0), a.1 + b.1)
    }
    fn text_cost(&self, col: usize, len: usize) -> Self::Cost {
        if len == 0 {
            (0, 0)
        } else {
            ((col + len).saturating_sub(self.page_width) as u64, 0)
        }
    }
    fn nl_cost(&self, _indent: usize) -> Self::Cost {
        (0, 1)
    }
    fn page_width(&self) -> usize {
        self.page_width
    }
}

/// Names of the built-in factories, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactoryName {
    Linear,
    Quadratic,
    Max,
    InvalidMaxLex,
}

impl FactoryName {
    pub const ALL: [FactoryName; 4] =
        [FactoryName::Linear, FactoryName::Quadratic, FactoryName::Max, FactoryName::InvalidMaxLex];

    pub fn as_str(self) -> &'static str {
        match self {
            FactoryName::Linear => "linear",
            FactoryName::Quadratic => "quadratic",
            FactoryName::Max => "max",
            FactoryName::InvalidMaxLex => "invalid-maxlex",
        }
    }
}

impl fmt::Display for FactoryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown cost factory `{0}` (expected linear, quadratic, max or invalid-maxlex)")]
pub struct UnknownFactory(pub String);

impl FromStr for FactoryName {
    type Err = UnknownFactory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| UnknownFactory(s.to_owned()))
    }
}

/// Cost of a layout whose first line is placed at column `c`.
///
/// Each later line contributes the newline cost at its indentation level
/// plus the text cost of the characters after the indentation.
pub fn layout_cost<F: CostFactory>(f: &F, layout: &Layout, c: usize) -> F::Cost {
    let mut lines = layout.lines().iter().enumerate();
    let (_, first) = lines.next().expect("layouts are non-empty");
    let mut cost = f.text_cost(c, first.chars().count());
    for (k, line) in lines {
        let indent = layout.indent(k);
        let len = line.chars().count();
        cost = f.add(&cost, &f.nl_cost(indent));
        cost = f.add(&cost, &f.text_cost(indent, len.saturating_sub(indent)));
    }
    cost
}

/// A factory contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contract {
    Totality,
    Antisymmetry,
    Transitivity,
    TranslationInvariance,
    TextMonotone,
    TextSplit,
    AddAssociative,
    AddIdentity,
    TextZeroLength,
    NewlineMonotone,
}

impl fmt::Display for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Contract::Totality => "totality of le",
            Contract::Antisymmetry => "antisymmetry of le",
            Contract::Transitivity => "transitivity of le",
            Contract::TranslationInvariance => "translation invariance",
            Contract::TextMonotone => "text cost monotone in column",
            Contract::TextSplit => "text cost splitting",
            Contract::AddAssociative => "associativity of add",
            Contract::AddIdentity => "identity of add",
            Contract::TextZeroLength => "zero-length text is the identity",
            Contract::NewlineMonotone => "newline cost monotone in indentation",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub contract: Contract,
    /// The violating values, rendered with `Debug`.
    pub witnesses: Vec<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated by {}", self.contract, self.witnesses.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidityReport {
    Pass { trials: usize },
    Counterexample(Counterexample),
}

impl ValidityReport {
    pub fn passed(&self) -> bool {
        matches!(self, ValidityReport::Pass { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("the number of trials must be positive")]
    NoTrials,
}

fn cx<T: Debug>(contract: Contract, witnesses: &[&T]) -> Option<Counterexample> {
    Some(Counterexample { contract, witnesses: witnesses.iter().map(|w| format!("{w:?}")).collect() })
}

/// Checks `a ≤ b ∧ c ≤ d ⇒ a + c ≤ b + d` for one quadruple.
pub fn check_translation_invariance<F: CostFactory>(
    f: &F,
    a: &F::Cost,
    b: &F::Cost,
    c: &F::Cost,
    d: &F::Cost,
) -> Option<Counterexample> {
    if f.le(a, b) && f.le(c, d) && !f.le(&f.add(a, c), &f.add(b, d)) {
        return cx(Contract::TranslationInvariance, &[a, c, b, d]);
    }
    None
}

/// Randomized check of every factory contract.
///
/// Columns, lengths and indentation levels are drawn from `0..=2w`, and
/// costs are random sums of text and newline costs, i.e. values the printer
/// can actually produce. Returns the first counterexample found.
pub fn check_factory_validity<F: CostFactory>(f: &F, trials: usize, seed: u64) -> Result<ValidityReport, CheckError> {
    if trials == 0 {
        return Err(CheckError::NoTrials);
    }
    let bound = 2 * f.page_width().max(1);
    let mut rng = SplitMix64::seed_from_u64(seed);
    for _ in 0..trials {
        if let Some(c) = one_trial(f, &mut rng, bound) {
            return Ok(ValidityReport::Counterexample(c));
        }
    }
    Ok(ValidityReport::Pass { trials })
}

fn one_trial<F: CostFactory>(f: &F, rng: &mut SplitMix64, bound: usize) -> Option<Counterexample> {
    let nat = |rng: &mut SplitMix64| rng.gen_range(0..=bound);
    let a = reachable_cost(f, rng, bound, 3);
    let b = reachable_cost(f, rng, bound, 3);
    let c = reachable_cost(f, rng, bound, 3);
    let d = if rng.gen_bool(0.25) { c.clone() } else { reachable_cost(f, rng, bound, 3) };

    if !f.le(&a, &b) && !f.le(&b, &a) {
        return cx(Contract::Totality, &[&a, &b]);
    }
    if f.le(&a, &b) && f.le(&b, &a) && a != b {
        return cx(Contract::Antisymmetry, &[&a, &b]);
    }
    let mut sorted = [a.clone(), b.clone(), c.clone()];
    // insertion sort by le; only meaningful once totality held
    for i in 1..3 {
        let mut j = i;
        while j > 0 && !f.le(&sorted[j - 1], &sorted[j]) {
            sorted.swap(j - 1, j);
            j -= 1;
        }
    }
    if !f.le(&sorted[0], &sorted[2]) {
        return cx(Contract::Transitivity, &[&sorted[0], &sorted[1], &sorted[2]]);
    }

    let (lo1, hi1) = if f.le(&a, &b) { (&a, &b) } else { (&b, &a) };
    let (lo2, hi2) = if f.le(&c, &d) { (&c, &d) } else { (&d, &c) };
    if let Some(found) = check_translation_invariance(f, lo1, hi1, lo2, hi2) {
        return Some(found);
    }

    let (col, col2) = {
        let x = nat(rng);
        let y = nat(rng);
        (x.min(y), x.max(y))
    };
    let len = nat(rng);
    if !f.le(&f.text_cost(col, len), &f.text_cost(col2, len)) {
        return cx(Contract::TextMonotone, &[&col, &col2, &len]);
    }
    let (l1, l2) = (nat(rng), nat(rng));
    let whole = f.text_cost(col, l1 + l2);
    let split = f.add(&f.text_cost(col, l1), &f.text_cost(col + l1, l2));
    if whole != split {
        return cx(Contract::TextSplit, &[&col, &l1, &l2]);
    }
    if f.add(&f.add(&a, &b), &c) != f.add(&a, &f.add(&b, &c)) {
        return cx(Contract::AddAssociative, &[&a, &b, &c]);
    }
    let zero = f.zero();
    if f.add(&a, &zero) != a || f.add(&zero, &a) != a {
        return cx(Contract::AddIdentity, &[&a]);
    }
    if f.text_cost(col, 0) != zero {
        return cx(Contract::TextZeroLength, &[&col]);
    }
    let (i1, i2) = {
        let x = nat(rng);
        let y = nat(rng);
        (x.min(y), x.max(y))
    };
    if !f.le(&f.nl_cost(i1), &f.nl_cost(i2)) {
        return cx(Contract::NewlineMonotone, &[&i1, &i2]);
    }
    None
}

fn reachable_cost<F: CostFactory>(f: &F, rng: &mut SplitMix64, bound: usize, depth: u32) -> F::Cost {
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..3) {
            0 => f.text_cost(rng.gen_range(0..=bound), rng.gen_range(0..=bound)),
            1 => f.nl_cost(rng.gen_range(0..=bound)),
            _ => f.zero(),
        };
    }
    let l = reachable_cost(f, rng, bound, depth - 1);
    let r = reachable_cost(f, rng, bound, depth - 1);
    f.add(&l, &r)
}

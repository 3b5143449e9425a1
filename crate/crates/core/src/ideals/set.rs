//! Subsets of the positive integers in closed form.
//!
//! Exact Boolean algebra is available on the [`IntegerSet::Finite`] and
//! [`IntegerSet::Periodic`] variants, which together are closed under union,
//! intersection, complement and difference. The two sparse fixtures (powers of
//! two, perfect squares) have exact membership and counting but leave the
//! exact class under Boolean operations; combining them, or anything with a
//! [`Window`], falls back to a truncation known only on `[1, h]`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest period produced by Boolean operations.
pub const MAX_PERIOD: u64 = 1 << 20;

/// Horizon used when a sparse rule set has to be truncated.
pub const DEFAULT_HORIZON: u64 = 1 << 16;

/// A finite set of positive integers, sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSet {
    elements: Vec<u64>,
}

impl FiniteSet {
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        if elements.contains(&0) {
            return Err(Error::InvalidSet("0 is not a positive integer".into()));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(FiniteSet { elements })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    fn count_upto(&self, n: u64) -> u64 {
        self.elements.partition_point(|&e| e <= n) as u64
    }
}

/// An eventually periodic set in canonical form.
///
/// For `n >= n0` membership is `n mod period ∈ residues`; below `n0` the same
/// rule holds except at the listed exceptions. Canonical form means: the
/// period is minimal, `residues` is nonempty (otherwise the set is finite),
/// every exception actually disagrees with the periodic rule, and `n0` is one
/// past the largest exception.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicSet {
    n0: u64,
    period: u64,
    residues: Vec<u64>,
    exc_in: Vec<u64>,
    exc_out: Vec<u64>,
}

impl PeriodicSet {
    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn exceptions_in(&self) -> &[u64] {
        &self.exc_in
    }

    pub fn exceptions_out(&self) -> &[u64] {
        &self.exc_out
    }

    fn base(&self, n: u64) -> bool {
        self.residues.binary_search(&(n % self.period)).is_ok()
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        if n < self.n0 {
            if self.exc_in.binary_search(&n).is_ok() {
                return true;
            }
            if self.exc_out.binary_search(&n).is_ok() {
                return false;
            }
        }
        self.base(n)
    }

    fn base_count(&self, n: u64) -> u64 {
        self.residues
            .iter()
            .map(|&r| residue_count(r, self.period, n))
            .sum()
    }

    fn count_upto(&self, n: u64) -> u64 {
        let plus = self.exc_in.partition_point(|&e| e <= n) as u64;
        let minus = self.exc_out.partition_point(|&e| e <= n) as u64;
        self.base_count(n) + plus - minus
    }
}

/// Number of `m` in `[1, n]` with `m ≡ r (mod p)`.
fn residue_count(r: u64, p: u64, n: u64) -> u64 {
    if r == 0 {
        n / p
    } else if r > n {
        0
    } else {
        (n - r) / p + 1
    }
}

/// Closed-form sparse fixtures with zero asymptotic density.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SparseRule {
    /// `{2^k : k >= 1}`.
    PowersOfTwo,
    /// `{k^2 : k >= 1}`.
    Squares,
}

impl SparseRule {
    pub fn name(self) -> &'static str {
        match self {
            SparseRule::PowersOfTwo => "powers-of-two",
            SparseRule::Squares => "squares",
        }
    }

    fn contains(self, n: u64) -> bool {
        match self {
            SparseRule::PowersOfTwo => n >= 2 && n.is_power_of_two(),
            SparseRule::Squares => n >= 1 && {
                let r = n.sqrt();
                r * r == n
            },
        }
    }

    /// `|rule ∩ [1, n]|`.
    fn count_upto(self, n: u64) -> u64 {
        match self {
            SparseRule::PowersOfTwo => {
                if n < 2 {
                    0
                } else {
                    u64::from(63 - n.leading_zeros())
                }
            }
            SparseRule::Squares => n.sqrt(),
        }
    }

    /// The `i`-th element (1-based).
    pub fn element(self, i: u64) -> u64 {
        match self {
            SparseRule::PowersOfTwo => 1u64 << i,
            SparseRule::Squares => i * i,
        }
    }
}

/// A sparse rule set with everything up to and including `after` removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SparseSet {
    pub rule: SparseRule,
    pub after: u64,
}

impl SparseSet {
    pub fn contains(&self, n: u64) -> bool {
        n > self.after && self.rule.contains(n)
    }

    fn count_upto(&self, n: u64) -> u64 {
        if n <= self.after {
            0
        } else {
            self.rule.count_upto(n) - self.rule.count_upto(self.after)
        }
    }

    /// Index (1-based, in the untruncated rule) of the first element.
    pub fn first_index(&self) -> u64 {
        self.rule.count_upto(self.after) + 1
    }
}

/// A set known only through its elements in `[1, horizon]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    horizon: u64,
    elements: Vec<u64>,
}

impl Window {
    pub fn new(horizon: u64, mut elements: Vec<u64>) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidSet("window horizon must be positive".into()));
        }
        if elements.iter().any(|&e| e == 0 || e > horizon) {
            return Err(Error::InvalidSet(format!(
                "window elements must lie in [1, {horizon}]"
            )));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(Window { horizon, elements })
    }

    /// Truncates an arbitrary membership predicate to `[1, horizon]`.
    pub fn from_predicate(horizon: u64, pred: impl Fn(u64) -> bool) -> Self {
        let elements = (1..=horizon).filter(|&n| pred(n)).collect();
        Window { horizon, elements }
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    fn count_upto(&self, n: u64) -> u64 {
        self.elements.partition_point(|&e| e <= n) as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IntegerSet {
    Finite(FiniteSet),
    Periodic(PeriodicSet),
    Sparse(SparseSet),
    Window(Window),
}

/// Uniform working form for the exact variants: a periodic pattern plus the
/// points where the set disagrees with it.
struct General {
    period: u64,
    pattern: Vec<bool>,
    exc_in: Vec<u64>,
    exc_out: Vec<u64>,
}

impl General {
    fn base(&self, n: u64) -> bool {
        self.pattern[(n % self.period) as usize]
    }
}

impl IntegerSet {
    pub fn empty() -> Self {
        IntegerSet::Finite(FiniteSet { elements: Vec::new() })
    }

    /// All of **N**.
    pub fn naturals() -> Self {
        IntegerSet::Periodic(PeriodicSet {
            n0: 1,
            period: 1,
            residues: vec![0],
            exc_in: Vec::new(),
            exc_out: Vec::new(),
        })
    }

    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        Ok(IntegerSet::Finite(FiniteSet::new(elements.into_iter().collect())?))
    }

    /// `{1, ..., n}`.
    pub fn interval(n: u64) -> Self {
        IntegerSet::Finite(FiniteSet {
            elements: (1..=n).collect(),
        })
    }

    /// Builds an eventually periodic set from raw parts and canonicalizes it.
    ///
    /// Below `n0` the periodic rule is overridden by the exception lists; the
    /// lists must be disjoint and lie in `[1, n0)`.
    pub fn eventually_periodic(
        n0: u64,
        period: u64,
        residues: &[u64],
        exc_in: &[u64],
        exc_out: &[u64],
    ) -> Result<Self> {
        if n0 == 0 {
            return Err(Error::InvalidSet("n0 must be positive".into()));
        }
        if period == 0 {
            return Err(Error::InvalidSet("period must be positive".into()));
        }
        if period > MAX_PERIOD {
            return Err(Error::PeriodTooLarge(period));
        }
        if let Some(r) = residues.iter().find(|&&r| r >= period) {
            return Err(Error::InvalidSet(format!(
                "residue {r} out of range for period {period}"
            )));
        }
        for &e in exc_in.iter().chain(exc_out) {
            if e == 0 || e >= n0 {
                return Err(Error::InvalidSet(format!(
                    "exception {e} must lie in [1, {n0})"
                )));
            }
        }
        if exc_in.iter().any(|e| exc_out.contains(e)) {
            return Err(Error::InvalidSet("exception lists intersect".into()));
        }
        let mut pattern = vec![false; period as usize];
        for &r in residues {
            pattern[r as usize] = true;
        }
        let mut general = General {
            period,
            pattern,
            exc_in: Vec::new(),
            exc_out: Vec::new(),
        };
        for &e in exc_in {
            if !general.base(e) {
                general.exc_in.push(e);
            }
        }
        for &e in exc_out {
            if general.base(e) {
                general.exc_out.push(e);
            }
        }
        Ok(Self::canonical(general))
    }

    /// `{n : n ≡ r (mod p)}` for each `r` in `residues`.
    pub fn residue_classes(period: u64, residues: &[u64]) -> Result<Self> {
        Self::eventually_periodic(1, period, residues, &[], &[])
    }

    pub fn evens() -> Self {
        Self::residue_classes(2, &[0]).expect("valid")
    }

    pub fn odds() -> Self {
        Self::residue_classes(2, &[1]).expect("valid")
    }

    pub fn multiples_of(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSet("multiples of 0".into()));
        }
        Self::residue_classes(k, &[0])
    }

    pub fn sparse(rule: SparseRule) -> Self {
        IntegerSet::Sparse(SparseSet { rule, after: 0 })
    }

    /// `⋃_k [4^k, 2·4^k)`, truncated at `horizon`: upper density 2/3, lower 1/3.
    pub fn block_window(horizon: u64) -> Self {
        IntegerSet::Window(Window::from_predicate(horizon, |n| {
            (63 - n.leading_zeros()) % 2 == 0
        }))
    }

    pub fn window(horizon: u64, elements: Vec<u64>) -> Result<Self> {
        Ok(IntegerSet::Window(Window::new(horizon, elements)?))
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            IntegerSet::Finite(f) => f.contains(n),
            IntegerSet::Periodic(p) => p.contains(n),
            IntegerSet::Sparse(s) => s.contains(n),
            IntegerSet::Window(w) => w.contains(n),
        }
    }

    /// `|A ∩ [1, n]|`. For a window this only counts the known prefix.
    pub fn count_upto(&self, n: u64) -> u64 {
        match self {
            IntegerSet::Finite(f) => f.count_upto(n),
            IntegerSet::Periodic(p) => p.count_upto(n),
            IntegerSet::Sparse(s) => s.count_upto(n),
            IntegerSet::Window(w) => w.count_upto(n),
        }
    }

    /// Membership is decided exactly for every `n`.
    pub fn is_exact(&self) -> bool {
        !matches!(self, IntegerSet::Window(_))
    }

    /// Member of the Boolean-closed exact class (finite or eventually periodic).
    pub fn is_closed_form(&self) -> bool {
        matches!(self, IntegerSet::Finite(_) | IntegerSet::Periodic(_))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, IntegerSet::Finite(_))
    }

    pub fn is_empty(&self) -> Option<bool> {
        match self {
            IntegerSet::Finite(f) => Some(f.elements.is_empty()),
            IntegerSet::Periodic(_) | IntegerSet::Sparse(_) => Some(false),
            IntegerSet::Window(w) if !w.elements.is_empty() => Some(false),
            IntegerSet::Window(_) => None,
        }
    }

    /// Truncation horizon, if the set is only known on a prefix.
    pub fn horizon(&self) -> Option<u64> {
        match self {
            IntegerSet::Window(w) => Some(w.horizon),
            _ => None,
        }
    }

    /// Elements in `[1, h]`.
    pub fn elements_upto(&self, h: u64) -> Vec<u64> {
        match self {
            IntegerSet::Finite(f) => f.elements.iter().copied().take_while(|&e| e <= h).collect(),
            IntegerSet::Window(w) => w.elements.iter().copied().take_while(|&e| e <= h).collect(),
            IntegerSet::Sparse(s) => (s.first_index()..)
                .map(|i| s.rule.element(i))
                .take_while(|&e| e <= h)
                .collect(),
            IntegerSet::Periodic(_) => (1..=h).filter(|&n| self.contains(n)).collect(),
        }
    }

    fn to_general(&self) -> Option<General> {
        match self {
            IntegerSet::Finite(f) => Some(General {
                period: 1,
                pattern: vec![false],
                exc_in: f.elements.clone(),
                exc_out: Vec::new(),
            }),
            IntegerSet::Periodic(p) => {
                let mut pattern = vec![false; p.period as usize];
                for &r in &p.residues {
                    pattern[r as usize] = true;
                }
                Some(General {
                    period: p.period,
                    pattern,
                    exc_in: p.exc_in.clone(),
                    exc_out: p.exc_out.clone(),
                })
            }
            _ => None,
        }
    }

    fn canonical(mut g: General) -> Self {
        let period = minimal_period(&g.pattern);
        g.pattern.truncate(period as usize);
        g.period = period;
        let residues: Vec<u64> = (0..period).filter(|&r| g.pattern[r as usize]).collect();
        g.exc_in.sort_unstable();
        g.exc_in.dedup();
        g.exc_out.sort_unstable();
        g.exc_out.dedup();
        if residues.is_empty() {
            debug_assert!(g.exc_out.is_empty());
            return IntegerSet::Finite(FiniteSet { elements: g.exc_in });
        }
        let n0 = g
            .exc_in
            .last()
            .copied()
            .max(g.exc_out.last().copied())
            .map_or(1, |m| m + 1);
        IntegerSet::Periodic(PeriodicSet {
            n0,
            period,
            residues,
            exc_in: g.exc_in,
            exc_out: g.exc_out,
        })
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.to_general(), other.to_general()) {
            let period = a.period.lcm(&b.period);
            if period > MAX_PERIOD {
                return Err(Error::PeriodTooLarge(period));
            }
            let pattern: Vec<bool> = (0..period).map(|r| op(a.base(r), b.base(r))).collect();
            let mut candidates: Vec<u64> = a
                .exc_in
                .iter()
                .chain(&a.exc_out)
                .chain(&b.exc_in)
                .chain(&b.exc_out)
                .copied()
                .collect();
            candidates.sort_unstable();
            candidates.dedup();
            let mut exc_in = Vec::new();
            let mut exc_out = Vec::new();
            for c in candidates {
                let actual = op(self.contains(c), other.contains(c));
                let base = pattern[(c % period) as usize];
                match (actual, base) {
                    (true, false) => exc_in.push(c),
                    (false, true) => exc_out.push(c),
                    _ => {}
                }
            }
            return Ok(Self::canonical(General {
                period,
                pattern,
                exc_in,
                exc_out,
            }));
        }
        let horizon = match (self.horizon(), other.horizon()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(h), None) | (None, Some(h)) => h,
            (None, None) => DEFAULT_HORIZON,
        };
        Ok(IntegerSet::Window(Window::from_predicate(horizon, |n| {
            op(self.contains(n), other.contains(n))
        })))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Result<Self> {
        if self == other {
            return Ok(Self::empty());
        }
        self.combine(other, |a, b| a != b)
    }

    pub fn complement(&self) -> Self {
        match self.to_general() {
            Some(g) => Self::canonical(General {
                period: g.period,
                pattern: g.pattern.iter().map(|b| !b).collect(),
                exc_in: g.exc_out,
                exc_out: g.exc_in,
            }),
            None => {
                let horizon = self.horizon().unwrap_or(DEFAULT_HORIZON);
                IntegerSet::Window(Window::from_predicate(horizon, |n| !self.contains(n)))
            }
        }
    }

    /// `A ∖ [1, n]`.
    pub fn tail_after(&self, n: u64) -> Self {
        match self {
            IntegerSet::Finite(f) => IntegerSet::Finite(FiniteSet {
                elements: f.elements.iter().copied().filter(|&e| e > n).collect(),
            }),
            IntegerSet::Sparse(s) => IntegerSet::Sparse(SparseSet {
                rule: s.rule,
                after: s.after.max(n),
            }),
            IntegerSet::Window(w) => IntegerSet::Window(Window {
                horizon: w.horizon,
                elements: w.elements.iter().copied().filter(|&e| e > n).collect(),
            }),
            IntegerSet::Periodic(p) => {
                let g = self.to_general().expect("periodic");
                let mut exc_out: Vec<u64> = (1..=n).filter(|&m| g.base(m)).collect();
                exc_out.extend(p.exc_out.iter().copied().filter(|&e| e > n));
                let exc_in = p.exc_in.iter().copied().filter(|&e| e > n).collect();
                Self::canonical(General {
                    exc_in,
                    exc_out,
                    ..g
                })
            }
        }
    }

    /// `A ⊆ B`, decided exactly when both sets are in the closed-form class.
    pub fn is_subset_of(&self, other: &Self) -> Option<bool> {
        if self.is_closed_form() && other.is_closed_form() {
            self.difference(other).ok().map(|d| d == Self::empty())
        } else {
            None
        }
    }
}

fn minimal_period(pattern: &[bool]) -> u64 {
    let len = pattern.len();
    (1..=len)
        .filter(|d| len % d == 0)
        .find(|&d| (d..len).all(|i| pattern[i] == pattern[i % d]))
        .unwrap_or(len) as u64
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegerSet::Finite(s) => {
                let shown: Vec<String> = s.elements.iter().take(8).map(u64::to_string).collect();
                let more = if s.elements.len() > 8 { ", ..." } else { "" };
                write!(f, "{{{}{}}}", shown.join(", "), more)
            }
            IntegerSet::Periodic(p) => {
                write!(f, "{{n : n mod {} in {:?}}}", p.period, p.residues)?;
                if !p.exc_in.is_empty() || !p.exc_out.is_empty() {
                    write!(f, " +{:?} -{:?}", p.exc_in, p.exc_out)?;
                }
                Ok(())
            }
            IntegerSet::Sparse(s) if s.after == 0 => write!(f, "{}", s.rule.name()),
            IntegerSet::Sparse(s) => write!(f, "{} above {}", s.rule.name(), s.after),
            IntegerSet::Window(w) => write!(f, "window[1,{}] ({} elements)", w.horizon, w.elements.len()),
        }
    }
}

impl PartialOrd for IntegerSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.is_subset_of(other)?, other.is_subset_of(self)?) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(n0: u64, p: u64, res: &[u64], exc_in: &[u64], exc_out: &[u64]) -> IntegerSet {
        IntegerSet::eventually_periodic(n0, p, res, exc_in, exc_out).unwrap()
    }

    #[test]
    fn canonical_form_reduces_period() {
        let a = ep(1, 6, &[0, 2, 4], &[], &[]);
        assert_eq!(a, IntegerSet::evens());
        match &a {
            IntegerSet::Periodic(p) => assert_eq!(p.period(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_exceptions_are_dropped() {
        let a = ep(10, 2, &[0], &[4], &[3]);
        assert_eq!(a, IntegerSet::evens());
    }

    #[test]
    fn empty_residues_collapse_to_finite() {
        let a = ep(5, 3, &[], &[1, 4], &[]);
        assert_eq!(a, IntegerSet::finite([1, 4]).unwrap());
    }

    #[test]
    fn rejects_invalid_parts() {
        assert!(IntegerSet::eventually_periodic(5, 2, &[2], &[], &[]).is_err());
        assert!(IntegerSet::eventually_periodic(5, 2, &[0], &[5], &[]).is_err());
        assert!(IntegerSet::eventually_periodic(5, 2, &[0], &[1], &[1]).is_err());
        assert!(IntegerSet::eventually_periodic(0, 2, &[0], &[], &[]).is_err());
        assert!(IntegerSet::finite([0, 1]).is_err());
    }

    #[test]
    fn boolean_ops_on_examples() {
        let evens = IntegerSet::evens();
        let odds = IntegerSet::odds();
        assert_eq!(evens.complement(), odds);
        assert_eq!(evens.union(&odds).unwrap(), IntegerSet::naturals());
        assert_eq!(evens.intersection(&odds).unwrap(), IntegerSet::empty());
        let m4 = IntegerSet::multiples_of(4).unwrap();
        let diff = evens.difference(&m4).unwrap();
        assert_eq!(diff, IntegerSet::residue_classes(4, &[2]).unwrap());
        let with_one = evens.union(&IntegerSet::finite([1]).unwrap()).unwrap();
        assert_eq!(
            evens.symmetric_difference(&with_one).unwrap(),
            IntegerSet::finite([1]).unwrap()
        );
        assert_eq!(IntegerSet::empty().complement(), IntegerSet::naturals());
    }

    #[test]
    fn complement_of_finite_is_cofinite() {
        let a = IntegerSet::interval(10);
        let c = a.complement();
        assert!(!c.contains(10));
        assert!(c.contains(11));
        assert_eq!(c.complement(), a);
    }

    #[test]
    fn tail_after_removes_prefix() {
        let t = IntegerSet::evens().tail_after(10);
        assert!(!t.contains(10));
        assert!(t.contains(12));
        assert_eq!(t.count_upto(20), 5);
        let s = IntegerSet::sparse(SparseRule::PowersOfTwo).tail_after(10);
        assert!(!s.contains(8));
        assert!(s.contains(16));
        assert_eq!(s.count_upto(64), 3);
    }

    #[test]
    fn sparse_counts() {
        let p2 = IntegerSet::sparse(SparseRule::PowersOfTwo);
        assert_eq!(p2.count_upto(1), 0);
        assert_eq!(p2.count_upto(2), 1);
        assert_eq!(p2.count_upto(1023), 9);
        let sq = IntegerSet::sparse(SparseRule::Squares);
        assert_eq!(sq.count_upto(99), 9);
        assert_eq!(sq.count_upto(100), 10);
    }

    #[test]
    fn sparse_ops_fall_back_to_window() {
        let p2 = IntegerSet::sparse(SparseRule::PowersOfTwo);
        let u = p2.union(&IntegerSet::finite([3]).unwrap()).unwrap();
        assert_eq!(u.horizon(), Some(DEFAULT_HORIZON));
        assert!(u.contains(3) && u.contains(1024));
        assert_eq!(p2.symmetric_difference(&p2).unwrap(), IntegerSet::empty());
    }

    #[test]
    fn block_window_membership() {
        let b = IntegerSet::block_window(64);
        let expected: Vec<u64> = [1].into_iter().chain(4..8).chain(16..32).chain([64]).collect();
        assert_eq!(b.elements_upto(64), expected);
    }

    #[test]
    fn subset_order() {
        let m4 = IntegerSet::multiples_of(4).unwrap();
        assert_eq!(m4.partial_cmp(&IntegerSet::evens()), Some(Ordering::Less));
        assert_eq!(IntegerSet::evens().partial_cmp(&IntegerSet::odds()), None);
    }
}

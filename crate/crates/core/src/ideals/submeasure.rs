//! Submeasures and the "mass at infinity" `‖A‖_φ = lim_n φ(A ∖ [1, n])`.

use std::fmt;
use std::sync::Arc;

use num_traits::{Pow, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideals::density::{Estimated, HorizonSchedule};
use crate::ideals::set::{IntegerSet, SparseRule, DEFAULT_HORIZON};
use crate::rational::{self, Rational};

/// Value of a submeasure: nonnegative rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mass {
    Finite(Rational),
    Infinite,
}

impl Mass {
    pub fn zero() -> Self {
        Mass::Finite(rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Mass::Finite(v) if v.is_zero())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Mass::Finite(v) => Some(v),
            Mass::Infinite => None,
        }
    }

    pub fn add(&self, other: &Mass) -> Mass {
        match (self, other) {
            (Mass::Finite(a), Mass::Finite(b)) => Mass::Finite(a + b),
            _ => Mass::Infinite,
        }
    }
}

impl fmt::Display for Mass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mass::Finite(v) => write!(f, "{}", rational::format(v)),
            Mass::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Mass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Mass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "inf" {
            Ok(Mass::Infinite)
        } else {
            rational::parse(&text).map(Mass::Finite).map_err(de::Error::custom)
        }
    }
}

/// A monotone, subadditive set function with `φ(∅) = 0`.
///
/// Implementations promise these laws; [`check_submeasure`] samples them.
pub trait Submeasure: Send + Sync {
    fn label(&self) -> String;

    /// `φ(A)`, flagged exact when computed in closed form.
    fn measure(&self, set: &IntegerSet) -> Estimated<Mass>;

    /// `‖A‖_φ` when a closed form is known.
    fn mass_at_infinity(&self, _set: &IntegerSet) -> Option<Mass> {
        None
    }
}

/// Submeasures with closed-form evaluation on the supported set classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum BuiltinSubmeasure {
    /// `φ(A) = sup_n |A ∩ [1, n]| / n`; its mass at infinity is the upper density.
    SupDensity,
    /// `φ(A) = Σ_{a ∈ A} q^a` for `0 < q < 1`.
    Geometric {
        #[serde(with = "rational::serde_rational")]
        ratio: Rational,
    },
    /// `φ(A) = Σ_{a ∈ A} 1/a`.
    Harmonic,
}

impl BuiltinSubmeasure {
    pub fn geometric(ratio: Rational) -> Result<Self> {
        if ratio <= rational::zero() || ratio >= rational::one() {
            return Err(Error::Parse("geometric ratio must lie in (0, 1)".into()));
        }
        Ok(BuiltinSubmeasure::Geometric { ratio })
    }

    fn sup_density(set: &IntegerSet) -> Estimated<Mass> {
        let best_over = |elements: &[u64], offset: u64| {
            elements
                .iter()
                .enumerate()
                .map(|(i, &e)| rational::ratio(i as i64 + 1 + offset as i64, e as i64))
                .max()
                .unwrap_or_else(rational::zero)
        };
        match set {
            IntegerSet::Finite(f) => Estimated::exact(Mass::Finite(best_over(f.elements(), 0))),
            IntegerSet::Window(w) => Estimated::estimate(Mass::Finite(best_over(w.elements(), 0))),
            IntegerSet::Periodic(p) => {
                // Past n0 - 1 the ratio along each residue of m mod p moves
                // monotonically toward |residues|/p, so one period suffices.
                let limit = rational::ratio(p.residues().len() as i64, p.period() as i64);
                let stop = p.n0() - 1 + p.period();
                let mut count = 0u64;
                let mut best = limit;
                for m in 1..=stop {
                    if set.contains(m) {
                        count += 1;
                        let r = rational::ratio(count as i64, m as i64);
                        if r > best {
                            best = r;
                        }
                    }
                }
                Estimated::exact(Mass::Finite(best))
            }
            IntegerSet::Sparse(s) => {
                let k0 = s.first_index();
                let value = match s.rule {
                    // j / 2^(k0 + j - 1) is maximal at j = 1.
                    SparseRule::PowersOfTwo => rational::ratio(1, s.rule.element(k0) as i64),
                    // j / (k0 + j - 1)^2 peaks near j = k0 - 1.
                    SparseRule::Squares => (1..=k0)
                        .map(|j| rational::ratio(j as i64, s.rule.element(k0 + j - 1) as i64))
                        .max()
                        .expect("nonempty"),
                };
                Estimated::exact(Mass::Finite(value))
            }
        }
    }

    fn weighted(&self, set: &IntegerSet) -> Estimated<Mass> {
        let weight = |a: u64| -> Rational {
            match self {
                BuiltinSubmeasure::Geometric { ratio } => Pow::pow(ratio, a),
                BuiltinSubmeasure::Harmonic => rational::ratio(1, a as i64),
                BuiltinSubmeasure::SupDensity => unreachable!(),
            }
        };
        let sum = |elements: &[u64]| elements.iter().map(|&a| weight(a)).sum::<Rational>();
        match set {
            IntegerSet::Finite(f) => Estimated::exact(Mass::Finite(sum(f.elements()))),
            IntegerSet::Window(w) => Estimated::estimate(Mass::Finite(sum(w.elements()))),
            IntegerSet::Periodic(p) => match self {
                BuiltinSubmeasure::Harmonic => Estimated::exact(Mass::Infinite),
                BuiltinSubmeasure::Geometric { ratio } => {
                    let period = p.period();
                    let denom = rational::one() - Pow::pow(ratio, period);
                    let base: Rational = p
                        .residues()
                        .iter()
                        .map(|&r| {
                            let first = if r == 0 { period } else { r };
                            Pow::pow(ratio, first) / &denom
                        })
                        .sum();
                    let value = base + sum(p.exceptions_in()) - sum(p.exceptions_out());
                    Estimated::exact(Mass::Finite(value))
                }
                BuiltinSubmeasure::SupDensity => unreachable!(),
            },
            IntegerSet::Sparse(s) => match (self, s.rule) {
                (BuiltinSubmeasure::Harmonic, SparseRule::PowersOfTwo) => {
                    // Σ_{k >= k0} 2^-k = 2^(1 - k0).
                    let first = s.rule.element(s.first_index());
                    Estimated::exact(Mass::Finite(rational::ratio(2, first as i64)))
                }
                _ => Estimated::estimate(Mass::Finite(sum(&set.elements_upto(DEFAULT_HORIZON)))),
            },
        }
    }
}

impl Submeasure for BuiltinSubmeasure {
    fn label(&self) -> String {
        match self {
            BuiltinSubmeasure::SupDensity => "sup-density".into(),
            BuiltinSubmeasure::Geometric { ratio } => {
                format!("geometric({})", rational::format(ratio))
            }
            BuiltinSubmeasure::Harmonic => "harmonic".into(),
        }
    }

    fn measure(&self, set: &IntegerSet) -> Estimated<Mass> {
        match self {
            BuiltinSubmeasure::SupDensity => Self::sup_density(set),
            _ => self.weighted(set),
        }
    }

    fn mass_at_infinity(&self, set: &IntegerSet) -> Option<Mass> {
        match (self, set) {
            (BuiltinSubmeasure::Geometric { .. }, _) => Some(Mass::zero()),
            (_, IntegerSet::Window(_)) => None,
            (_, IntegerSet::Finite(_) | IntegerSet::Sparse(_)) => Some(Mass::zero()),
            (BuiltinSubmeasure::SupDensity, IntegerSet::Periodic(p)) => Some(Mass::Finite(
                rational::ratio(p.residues().len() as i64, p.period() as i64),
            )),
            (BuiltinSubmeasure::Harmonic, IntegerSet::Periodic(_)) => Some(Mass::Infinite),
        }
    }
}

/// A black-box submeasure evaluated on `A ∩ [1, horizon]`.
pub struct WindowedSubmeasure<F> {
    pub name: String,
    pub horizon: u64,
    pub eval: F,
}

impl<F> Submeasure for WindowedSubmeasure<F>
where
    F: Fn(&[u64]) -> Rational + Send + Sync,
{
    fn label(&self) -> String {
        self.name.clone()
    }

    fn measure(&self, set: &IntegerSet) -> Estimated<Mass> {
        let elements = set.elements_upto(self.horizon);
        let exact = matches!(set, IntegerSet::Finite(f)
            if f.elements().last().is_none_or(|&m| m <= self.horizon));
        Estimated {
            value: Mass::Finite((self.eval)(&elements)),
            exact,
        }
    }
}

/// Output of [`exh_norm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhNormReport {
    pub schedule: Vec<u64>,
    /// `φ(A ∖ [1, n])` for each `n` in the schedule.
    pub raw: Vec<Mass>,
    /// `raw / ‖N‖_φ` when `‖N‖_φ` is known, finite and positive.
    pub normalized: Option<Vec<Mass>>,
    pub estimate: Mass,
    pub exact: bool,
}

/// Evaluates `φ(A ∖ [1, n])` along `schedule`; the sequence must be non-increasing.
pub fn exh_norm(
    phi: &dyn Submeasure,
    set: &IntegerSet,
    schedule: &HorizonSchedule,
) -> Result<ExhNormReport> {
    let mut raw = Vec::with_capacity(schedule.points().len());
    let mut exact = true;
    for &n in schedule.points() {
        let value = phi.measure(&set.tail_after(n));
        exact &= value.exact;
        if let Some(prev) = raw.last() {
            if value.value > *prev {
                return Err(Error::SubmeasureViolation {
                    property: "monotonicity",
                    at: n,
                });
            }
        }
        raw.push(value.value);
    }
    let normalized = normalization_of(phi).map(|total| {
        raw.iter()
            .map(|m| match m {
                Mass::Finite(v) => Mass::Finite(v / &total),
                Mass::Infinite => Mass::Infinite,
            })
            .collect()
    });
    Ok(ExhNormReport {
        schedule: schedule.points().to_vec(),
        estimate: raw.last().cloned().expect("nonempty schedule"),
        raw,
        normalized,
        exact,
    })
}

/// `‖N‖_φ` when it is finite, positive and known in closed form.
pub fn normalization_of(phi: &dyn Submeasure) -> Option<Rational> {
    match phi.mass_at_infinity(&IntegerSet::naturals()) {
        Some(Mass::Finite(v)) if !v.is_zero() => Some(v),
        _ => None,
    }
}

/// One failed law found by [`check_submeasure`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmeasureViolation {
    pub law: &'static str,
    pub sets: Vec<String>,
}

/// Samples `φ(∅) = 0`, monotonicity and subadditivity on `samples` and their
/// pairwise unions and intersections.
pub fn check_submeasure(phi: &dyn Submeasure, samples: &[IntegerSet]) -> Vec<SubmeasureViolation> {
    let mut out = Vec::new();
    if !phi.measure(&IntegerSet::empty()).value.is_zero() {
        out.push(SubmeasureViolation {
            law: "empty set",
            sets: vec!["{}".into()],
        });
    }
    for a in samples {
        for b in samples {
            let (Ok(union), Ok(meet)) = (a.union(b), a.intersection(b)) else {
                continue;
            };
            let fa = phi.measure(a).value;
            let fb = phi.measure(b).value;
            if phi.measure(&meet).value > fa {
                out.push(SubmeasureViolation {
                    law: "monotonicity",
                    sets: vec![meet.to_string(), a.to_string()],
                });
            }
            if phi.measure(&union).value > fa.add(&fb) {
                out.push(SubmeasureViolation {
                    law: "subadditivity",
                    sets: vec![a.to_string(), b.to_string()],
                });
            }
        }
    }
    out
}

/// Shared handle used by ideal specifications.
pub type SharedSubmeasure = Arc<dyn Submeasure>;

impl fmt::Debug for dyn Submeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submeasure({})", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn schedule(points: &[u64]) -> HorizonSchedule {
        HorizonSchedule::new(points.to_vec()).unwrap()
    }

    #[test]
    fn sup_density_on_evens_tails() {
        let report = exh_norm(
            &BuiltinSubmeasure::SupDensity,
            &IntegerSet::evens(),
            &schedule(&[10, 100, 1000]),
        )
        .unwrap();
        for value in &report.raw {
            assert!(*value >= Mass::Finite(ratio(1, 2)));
        }
        assert_eq!(report.estimate, Mass::Finite(ratio(1, 2)));
        assert!(report.exact);
    }

    #[test]
    fn finite_set_mass_vanishes() {
        let report = exh_norm(
            &BuiltinSubmeasure::SupDensity,
            &IntegerSet::interval(50),
            &schedule(&[10, 100]),
        )
        .unwrap();
        assert!(report.raw[1].is_zero());
    }

    #[test]
    fn geometric_tail_of_naturals() {
        let phi = BuiltinSubmeasure::geometric(ratio(1, 2)).unwrap();
        let report = exh_norm(&phi, &IntegerSet::naturals(), &schedule(&[1, 2, 5])).unwrap();
        assert_eq!(
            report.raw,
            vec![
                Mass::Finite(ratio(1, 2)),
                Mass::Finite(ratio(1, 4)),
                Mass::Finite(ratio(1, 32))
            ]
        );
        assert!(report.normalized.is_none());
    }

    #[test]
    fn harmonic_masses() {
        let phi = BuiltinSubmeasure::Harmonic;
        assert_eq!(phi.measure(&IntegerSet::odds()).value, Mass::Infinite);
        let p2 = IntegerSet::sparse(SparseRule::PowersOfTwo);
        assert_eq!(phi.measure(&p2).value, Mass::Finite(ratio(1, 1)));
        assert_eq!(phi.mass_at_infinity(&p2), Some(Mass::zero()));
        assert_eq!(phi.mass_at_infinity(&IntegerSet::odds()), Some(Mass::Infinite));
    }

    #[test]
    fn sup_density_of_sparse_sets() {
        let phi = BuiltinSubmeasure::SupDensity;
        let p2 = IntegerSet::sparse(SparseRule::PowersOfTwo);
        assert_eq!(phi.measure(&p2).value, Mass::Finite(ratio(1, 2)));
        let sq = IntegerSet::sparse(SparseRule::Squares);
        assert_eq!(phi.measure(&sq).value, Mass::Finite(ratio(1, 1)));
        // Squares above 10: 16, 25, 36, 49, ... ratios 1/16, 2/25, 3/36, 4/49, ...
        assert_eq!(phi.measure(&sq.tail_after(10)).value, Mass::Finite(ratio(1, 12)));
    }

    #[test]
    fn non_monotone_oracle_is_rejected() {
        let bad = WindowedSubmeasure {
            name: "count-inverted".into(),
            horizon: 100,
            eval: |els: &[u64]| ratio(100 - els.len() as i64, 1),
        };
        let err = exh_norm(&bad, &IntegerSet::evens(), &schedule(&[10, 20])).unwrap_err();
        assert!(matches!(err, Error::SubmeasureViolation { .. }));
    }

    #[test]
    fn builtins_satisfy_submeasure_laws() {
        let samples = vec![
            IntegerSet::evens(),
            IntegerSet::odds(),
            IntegerSet::multiples_of(3).unwrap(),
            IntegerSet::interval(7),
            IntegerSet::finite([2, 9, 30]).unwrap(),
        ];
        for phi in [
            BuiltinSubmeasure::SupDensity,
            BuiltinSubmeasure::Harmonic,
            BuiltinSubmeasure::geometric(ratio(1, 3)).unwrap(),
        ] {
            assert!(check_submeasure(&phi, &samples).is_empty(), "{}", phi.label());
        }
    }

    #[test]
    fn mass_ordering() {
        assert!(Mass::Infinite > Mass::Finite(ratio(10, 1)));
        assert!(Mass::zero() < Mass::Finite(ratio(1, 10)));
    }
}

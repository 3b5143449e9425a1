//! Ideals on the positive integers and their membership verdicts.
//!
//! Every ideal here contains `Fin`. Verdicts are exact on the closed-form set
//! classes and fall back to an estimate with horizon data on truncations.
//!
//! Summable ideals and eventually periodic sets: an eventually periodic set
//! with a nonempty residue class `r mod p` contains all large `r + kp`, and
//! `Σ_k 1/(r + kp)` diverges by comparison with the harmonic series. So such a
//! set is never summable, and a canonical eventually periodic set (whose
//! residue set is nonempty by construction) is outside every summable ideal.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::density::{self, HorizonSchedule};
use crate::ideals::set::{IntegerSet, SparseRule};
use crate::ideals::submeasure::{exh_norm, Mass, SharedSubmeasure, Submeasure};
use crate::rational::{self, Rational};

/// Weight rule `w(a) = 1 / a^power` of a summable ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SummableWeights {
    pub power: u32,
}

impl SummableWeights {
    pub const HARMONIC: SummableWeights = SummableWeights { power: 1 };

    /// Powers above one make **N** itself summable, which is not an ideal.
    pub fn new(power: u32) -> Result<Self> {
        if power > 1 {
            return Err(Error::NotAnIdeal(format!(
                "weights 1/a^{power} are summable on all of N"
            )));
        }
        Ok(SummableWeights { power })
    }

    fn weight(&self, a: u64) -> Rational {
        match self.power {
            0 => rational::one(),
            _ => rational::ratio(1, a as i64),
        }
    }

    fn sparse_converges(&self, rule: SparseRule) -> bool {
        match (self.power, rule) {
            (0, _) => false,
            // Σ 2^-k and Σ 1/k^2 both converge.
            (_, SparseRule::PowersOfTwo | SparseRule::Squares) => true,
        }
    }
}

#[derive(Clone)]
pub enum IdealSpec {
    Fin,
    DensityZero,
    Summable(SummableWeights),
    Exh {
        phi: SharedSubmeasure,
        /// `‖N‖_φ`, when finite.
        normalization: Option<Rational>,
    },
}

impl fmt::Debug for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealSpec::Fin => write!(f, "Fin"),
            IdealSpec::DensityZero => write!(f, "DensityZero"),
            IdealSpec::Summable(w) => write!(f, "Summable(1/a^{})", w.power),
            IdealSpec::Exh { phi, .. } => write!(f, "Exh({})", phi.label()),
        }
    }
}

impl IdealSpec {
    pub fn summable_harmonic() -> Self {
        IdealSpec::Summable(SummableWeights::HARMONIC)
    }

    /// `Exh(φ)`; rejected when `‖N‖_φ = 0`, since then **N** would belong to it.
    pub fn exh(phi: SharedSubmeasure) -> Result<Self> {
        let normalization = match phi.mass_at_infinity(&IntegerSet::naturals()) {
            Some(m) if m.is_zero() => {
                return Err(Error::NotAnIdeal(format!(
                    "‖N‖ = 0 for {}, so Exh contains N",
                    phi.label()
                )))
            }
            Some(Mass::Finite(v)) => Some(v),
            _ => None,
        };
        Ok(IdealSpec::Exh { phi, normalization })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            IdealSpec::Fin => "fin",
            IdealSpec::DensityZero => "density",
            IdealSpec::Summable(_) => "summable",
            IdealSpec::Exh { .. } => "exh",
        }
    }
}

/// Data backing a membership estimate on a truncated set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EstimateData {
    pub horizon: u64,
    /// What `statistic` measures (count, density, partial sum, tail mass).
    pub statistic_kind: &'static str,
    #[serde(with = "rational::serde_rational")]
    pub statistic: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    In,
    Out,
    EstimateOnly(EstimateData),
}

impl Verdict {
    pub fn from_bool(member: bool) -> Self {
        if member {
            Verdict::In
        } else {
            Verdict::Out
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Verdict::EstimateOnly(_))
    }

    pub fn exact(&self) -> Option<bool> {
        match self {
            Verdict::In => Some(true),
            Verdict::Out => Some(false),
            Verdict::EstimateOnly(_) => None,
        }
    }
}

/// Decides `A ∈ I`.
pub fn member(ideal: &IdealSpec, set: &IntegerSet) -> Result<Verdict> {
    if set.is_finite() {
        return Ok(Verdict::In);
    }
    match (ideal, set) {
        (IdealSpec::Fin, IntegerSet::Periodic(_) | IntegerSet::Sparse(_)) => Ok(Verdict::Out),
        (IdealSpec::DensityZero, IntegerSet::Periodic(_)) => Ok(Verdict::Out),
        (IdealSpec::DensityZero, IntegerSet::Sparse(_)) => Ok(Verdict::In),
        (IdealSpec::Summable(_), IntegerSet::Periodic(_)) => Ok(Verdict::Out),
        (IdealSpec::Summable(w), IntegerSet::Sparse(s)) => {
            Ok(Verdict::from_bool(w.sparse_converges(s.rule)))
        }
        (IdealSpec::Exh { phi, .. }, _) => match phi.mass_at_infinity(set) {
            Some(mass) => Ok(Verdict::from_bool(mass.is_zero())),
            None => exh_estimate(phi.as_ref(), set),
        },
        (_, IntegerSet::Window(w)) => {
            let horizon = w.horizon();
            let data = match ideal {
                IdealSpec::Fin => EstimateData {
                    horizon,
                    statistic_kind: "count",
                    statistic: rational::from_u64(w.elements().len() as u64),
                },
                IdealSpec::DensityZero => EstimateData {
                    horizon,
                    statistic_kind: "upper-density",
                    statistic: density::upper_density(set, horizon)?.value,
                },
                IdealSpec::Summable(weights) => EstimateData {
                    horizon,
                    statistic_kind: "partial-sum",
                    statistic: w.elements().iter().map(|&a| weights.weight(a)).sum(),
                },
                IdealSpec::Exh { .. } => unreachable!(),
            };
            Ok(Verdict::EstimateOnly(data))
        }
        (_, IntegerSet::Finite(_)) => unreachable!(),
    }
}

fn exh_estimate(phi: &dyn Submeasure, set: &IntegerSet) -> Result<Verdict> {
    let horizon = set.horizon().unwrap_or(crate::ideals::set::DEFAULT_HORIZON);
    let schedule = HorizonSchedule::geometric(horizon)?;
    let report = exh_norm(phi, set, &schedule)?;
    let statistic = match report.estimate {
        Mass::Finite(v) => v,
        Mass::Infinite => {
            return Err(Error::NotExact(format!(
                "tail mass of {set} is unbounded at horizon {horizon}"
            )))
        }
    };
    Ok(Verdict::EstimateOnly(EstimateData {
        horizon,
        statistic_kind: "tail-mass",
        statistic,
    }))
}

/// Decides `A △ B ∈ I`.
pub fn symm_diff_in_ideal(ideal: &IdealSpec, a: &IntegerSet, b: &IntegerSet) -> Result<Verdict> {
    member(ideal, &a.symmetric_difference(b)?)
}

/// Decides `A ∈ I⋆`, the dual filter `{A : Aᶜ ∈ I}`.
pub fn dual_filter_member(ideal: &IdealSpec, set: &IntegerSet) -> Result<Verdict> {
    member(ideal, &set.complement())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::ideals::submeasure::BuiltinSubmeasure;
    use crate::rational::ratio;

    fn all_ideals() -> Vec<IdealSpec> {
        vec![
            IdealSpec::Fin,
            IdealSpec::DensityZero,
            IdealSpec::summable_harmonic(),
            IdealSpec::Summable(SummableWeights::new(0).unwrap()),
            IdealSpec::exh(Arc::new(BuiltinSubmeasure::SupDensity)).unwrap(),
            IdealSpec::exh(Arc::new(BuiltinSubmeasure::Harmonic)).unwrap(),
        ]
    }

    #[test]
    fn spec_examples() {
        let p2 = IntegerSet::sparse(SparseRule::PowersOfTwo);
        assert_eq!(member(&IdealSpec::summable_harmonic(), &p2).unwrap(), Verdict::In);
        assert_eq!(member(&IdealSpec::DensityZero, &IntegerSet::evens()).unwrap(), Verdict::Out);
        assert_eq!(member(&IdealSpec::Fin, &IntegerSet::interval(10)).unwrap(), Verdict::In);
    }

    #[test]
    fn finite_sets_belong_to_every_ideal() {
        for ideal in all_ideals() {
            for set in [IntegerSet::empty(), IntegerSet::interval(10), IntegerSet::finite([7, 1000]).unwrap()] {
                assert_eq!(member(&ideal, &set).unwrap(), Verdict::In, "{ideal:?}");
            }
        }
    }

    #[test]
    fn naturals_belong_to_no_ideal() {
        for ideal in all_ideals() {
            assert_eq!(member(&ideal, &IntegerSet::naturals()).unwrap(), Verdict::Out);
        }
    }

    #[test]
    fn sparse_fixtures_separate_the_ideals() {
        let sq = IntegerSet::sparse(SparseRule::Squares);
        assert_eq!(member(&IdealSpec::Fin, &sq).unwrap(), Verdict::Out);
        assert_eq!(member(&IdealSpec::DensityZero, &sq).unwrap(), Verdict::In);
        assert_eq!(member(&IdealSpec::summable_harmonic(), &sq).unwrap(), Verdict::In);
        let constant = IdealSpec::Summable(SummableWeights::new(0).unwrap());
        assert_eq!(member(&constant, &sq).unwrap(), Verdict::Out);
        let exh = IdealSpec::exh(Arc::new(BuiltinSubmeasure::SupDensity)).unwrap();
        assert_eq!(member(&exh, &sq).unwrap(), Verdict::In);
    }

    #[test]
    fn symmetric_difference_examples() {
        let evens = IntegerSet::evens();
        let evens_and_one = evens.union(&IntegerSet::finite([1]).unwrap()).unwrap();
        assert_eq!(symm_diff_in_ideal(&IdealSpec::Fin, &evens, &evens_and_one).unwrap(), Verdict::In);
        assert_eq!(
            symm_diff_in_ideal(&IdealSpec::DensityZero, &evens, &IntegerSet::odds()).unwrap(),
            Verdict::Out
        );
        let p2 = IntegerSet::sparse(SparseRule::PowersOfTwo);
        for ideal in all_ideals() {
            assert_eq!(symm_diff_in_ideal(&ideal, &p2, &p2).unwrap(), Verdict::In);
        }
    }

    #[test]
    fn dual_filter_examples() {
        let cofinite = IntegerSet::finite([1]).unwrap().complement();
        assert_eq!(dual_filter_member(&IdealSpec::Fin, &cofinite).unwrap(), Verdict::In);
        assert_eq!(
            dual_filter_member(&IdealSpec::DensityZero, &IntegerSet::evens()).unwrap(),
            Verdict::Out
        );
        for ideal in all_ideals() {
            assert_eq!(dual_filter_member(&ideal, &IntegerSet::empty()).unwrap(), Verdict::Out);
        }
    }

    #[test]
    fn window_verdicts_are_estimates() {
        let b = IntegerSet::block_window(1 << 10);
        match member(&IdealSpec::DensityZero, &b).unwrap() {
            Verdict::EstimateOnly(data) => {
                assert_eq!(data.horizon, 1 << 10);
                assert!(data.statistic > ratio(1, 2));
            }
            other => panic!("{other:?}"),
        }
        assert!(!member(&IdealSpec::Fin, &b).unwrap().is_exact());
        assert!(!member(&IdealSpec::summable_harmonic(), &b).unwrap().is_exact());
        let exh = IdealSpec::exh(Arc::new(BuiltinSubmeasure::SupDensity)).unwrap();
        assert!(!member(&exh, &b).unwrap().is_exact());
    }

    #[test]
    fn invalid_ideals_rejected() {
        assert!(SummableWeights::new(2).is_err());
        let geo = BuiltinSubmeasure::geometric(ratio(1, 2)).unwrap();
        assert!(IdealSpec::exh(Arc::new(geo)).is_err());
    }

    #[test]
    fn exh_sup_density_normalization() {
        match IdealSpec::exh(Arc::new(BuiltinSubmeasure::SupDensity)).unwrap() {
            IdealSpec::Exh { normalization, .. } => assert_eq!(normalization, Some(ratio(1, 1))),
            _ => unreachable!(),
        }
    }
}

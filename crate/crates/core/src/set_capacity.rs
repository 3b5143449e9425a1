//! Capacities defined on sets of positive integers.

use std::sync::Arc;

use serde::Serialize;

use crate::capacity::FiniteCapacity;
use crate::error::{Error, Result};
use crate::ideals::submeasure::{exh_norm, Mass, SharedSubmeasure};
use crate::ideals::{
    self, lower_density, upper_density, Estimated, HorizonSchedule, IdealSpec, IntegerSet,
    Verdict, DEFAULT_HORIZON,
};
use crate::rational::{self, Rational};
use crate::representation::Subalgebra;

/// A normalized capacity `ν : P(N) → [0, 1]`, evaluated exactly where the set
/// class allows and flagged as an estimate otherwise.
pub trait SetCapacity: Send + Sync {
    fn label(&self) -> String;

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>>;
}

/// Upper asymptotic density `d*(A) = limsup |A ∩ [1, n]| / n`.
#[derive(Clone, Copy, Debug)]
pub struct UpperDensity {
    pub horizon: u64,
}

impl Default for UpperDensity {
    fn default() -> Self {
        UpperDensity {
            horizon: DEFAULT_HORIZON,
        }
    }
}

impl SetCapacity for UpperDensity {
    fn label(&self) -> String {
        "upper-density".into()
    }

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>> {
        upper_density(set, self.horizon)
    }
}

/// Lower asymptotic density `d_*(A) = liminf |A ∩ [1, n]| / n`. Not
/// subadditive, but still invariant under density-zero modifications.
#[derive(Clone, Copy, Debug)]
pub struct LowerDensity {
    pub horizon: u64,
}

impl Default for LowerDensity {
    fn default() -> Self {
        LowerDensity {
            horizon: DEFAULT_HORIZON,
        }
    }
}

impl SetCapacity for LowerDensity {
    fn label(&self) -> String {
        "lower-density".into()
    }

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>> {
        lower_density(set, self.horizon)
    }
}

/// `ν(A) = 1` iff `A ∉ I`.
#[derive(Clone, Debug)]
pub struct IdealIndicator(pub IdealSpec);

impl SetCapacity for IdealIndicator {
    fn label(&self) -> String {
        format!("ideal-indicator({})", self.0.kind())
    }

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>> {
        match ideals::member(&self.0, set)? {
            Verdict::In => Ok(Estimated::exact(rational::zero())),
            Verdict::Out => Ok(Estimated::exact(rational::one())),
            Verdict::EstimateOnly(_) => Err(Error::NotExact(format!(
                "membership of {set} in {:?}",
                self.0
            ))),
        }
    }
}

/// `‖A‖_φ / ‖N‖_φ`.
#[derive(Clone, Debug)]
pub struct ExhNormCapacity {
    phi: SharedSubmeasure,
    normalization: Rational,
}

impl ExhNormCapacity {
    /// Requires `‖N‖_φ` to be finite, positive and known in closed form.
    pub fn new(phi: SharedSubmeasure) -> Result<Self> {
        let normalization = ideals::submeasure::normalization_of(phi.as_ref()).ok_or_else(|| {
            Error::NotNormalized(format!("‖N‖ is not finite and positive for {}", phi.label()))
        })?;
        Ok(ExhNormCapacity { phi, normalization })
    }
}

impl SetCapacity for ExhNormCapacity {
    fn label(&self) -> String {
        format!("exh-norm({})", self.phi.label())
    }

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>> {
        let (mass, exact) = match self.phi.mass_at_infinity(set) {
            Some(mass) => (mass, true),
            None => {
                let horizon = set.horizon().unwrap_or(DEFAULT_HORIZON);
                let report = exh_norm(self.phi.as_ref(), set, &HorizonSchedule::geometric(horizon)?)?;
                (report.estimate, false)
            }
        };
        match mass {
            Mass::Finite(v) => Ok(Estimated {
                value: v / &self.normalization,
                exact,
            }),
            Mass::Infinite => Err(Error::NotNormalized(format!("‖{set}‖ is infinite"))),
        }
    }
}

/// `μ(A) = 1` iff `m ∈ A`: the measure of the principal ultrafilter at `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrincipalMu {
    pub point: u64,
}

impl SetCapacity for PrincipalMu {
    fn label(&self) -> String {
        format!("principal({})", self.point)
    }

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>> {
        if set.horizon().is_some_and(|h| self.point > h) {
            return Err(Error::NotExact(format!("{} lies beyond the window", self.point)));
        }
        Ok(Estimated::exact(rational::int(i64::from(set.contains(self.point)))))
    }
}

/// Convex combination `Σ w_i ν_i`.
pub struct Mixture {
    parts: Vec<(Rational, Arc<dyn SetCapacity>)>,
}

impl Mixture {
    pub fn new(parts: Vec<(Rational, Arc<dyn SetCapacity>)>) -> Result<Self> {
        let total: Rational = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < rational::zero()) || total != rational::one() {
            return Err(Error::NotNormalized("mixture weights must be nonnegative and sum to 1".into()));
        }
        Ok(Mixture { parts })
    }
}

impl SetCapacity for Mixture {
    fn label(&self) -> String {
        let inner: Vec<String> = self
            .parts
            .iter()
            .map(|(w, nu)| format!("{}*{}", rational::format(w), nu.label()))
            .collect();
        format!("mixture({})", inner.join(" + "))
    }

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>> {
        let mut value = rational::zero();
        let mut exact = true;
        for (w, nu) in &self.parts {
            let part = nu.evaluate(set)?;
            exact &= part.exact;
            value += w * part.value;
        }
        Ok(Estimated { value, exact })
    }
}

/// A capacity given by a table over the atoms of a subalgebra; defined only
/// on unions of atoms.
#[derive(Clone, Debug)]
pub struct AtomTable {
    algebra: Arc<Subalgebra>,
    table: FiniteCapacity,
}

impl AtomTable {
    pub fn new(algebra: Arc<Subalgebra>, table: FiniteCapacity) -> Result<Self> {
        if table.n() != algebra.atoms().len() {
            return Err(Error::DimensionMismatch {
                expected: algebra.atoms().len(),
                got: table.n(),
            });
        }
        Ok(AtomTable { algebra, table })
    }

    pub fn table(&self) -> &FiniteCapacity {
        &self.table
    }
}

impl SetCapacity for AtomTable {
    fn label(&self) -> String {
        "atom-table".into()
    }

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>> {
        let mask = self.algebra.atom_mask_of(set)?;
        Ok(Estimated::exact(self.table.value(mask).clone()))
    }
}

/// Closure-backed capacity on sets.
pub struct FnCapacity<F> {
    pub name: String,
    pub eval: F,
}

impl<F> SetCapacity for FnCapacity<F>
where
    F: Fn(&IntegerSet) -> Result<Estimated<Rational>> + Send + Sync,
{
    fn label(&self) -> String {
        self.name.clone()
    }

    fn evaluate(&self, set: &IntegerSet) -> Result<Estimated<Rational>> {
        (self.eval)(set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacityViolation {
    pub law: &'static str,
    pub sets: Vec<String>,
}

/// Samples normalization and monotonicity of `nu` on `samples` and their
/// pairwise intersections.
pub fn check_set_capacity(nu: &dyn SetCapacity, samples: &[IntegerSet]) -> Result<Vec<CapacityViolation>> {
    let mut out = Vec::new();
    if nu.evaluate(&IntegerSet::empty())?.value != rational::zero() {
        out.push(CapacityViolation {
            law: "empty set",
            sets: vec!["{}".into()],
        });
    }
    if nu.evaluate(&IntegerSet::naturals())?.value != rational::one() {
        out.push(CapacityViolation {
            law: "normalization",
            sets: vec!["N".into()],
        });
    }
    for a in samples {
        for b in samples {
            let meet = a.intersection(b)?;
            if nu.evaluate(&meet)?.value > nu.evaluate(a)?.value {
                out.push(CapacityViolation {
                    law: "monotonicity",
                    sets: vec![meet.to_string(), a.to_string()],
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::submeasure::BuiltinSubmeasure;
    use crate::rational::ratio;

    fn samples() -> Vec<IntegerSet> {
        vec![
            IntegerSet::evens(),
            IntegerSet::odds(),
            IntegerSet::multiples_of(3).unwrap(),
            IntegerSet::multiples_of(4).unwrap(),
            IntegerSet::interval(10),
            IntegerSet::finite([1, 3, 99]).unwrap().complement(),
        ]
    }

    #[test]
    fn builtins_are_capacities_on_samples() {
        let caps: Vec<Box<dyn SetCapacity>> = vec![
            Box::new(UpperDensity::default()),
            Box::new(LowerDensity::default()),
            Box::new(IdealIndicator(IdealSpec::DensityZero)),
            Box::new(ExhNormCapacity::new(Arc::new(BuiltinSubmeasure::SupDensity)).unwrap()),
            Box::new(PrincipalMu { point: 3 }),
        ];
        for nu in &caps {
            assert!(check_set_capacity(nu.as_ref(), &samples()).unwrap().is_empty(), "{}", nu.label());
        }
    }

    #[test]
    fn exh_norm_capacity_matches_upper_density() {
        let nu = ExhNormCapacity::new(Arc::new(BuiltinSubmeasure::SupDensity)).unwrap();
        for set in samples() {
            assert_eq!(nu.evaluate(&set).unwrap(), upper_density(&set, 1024).unwrap());
        }
        assert!(ExhNormCapacity::new(Arc::new(BuiltinSubmeasure::Harmonic)).is_err());
    }

    #[test]
    fn principal_measure() {
        let mu = PrincipalMu { point: 3 };
        assert_eq!(mu.evaluate(&IntegerSet::finite([3]).unwrap()).unwrap().value, ratio(1, 1));
        assert_eq!(mu.evaluate(&IntegerSet::evens()).unwrap().value, ratio(0, 1));
    }

    #[test]
    fn mixture_weights_checked() {
        let up: Arc<dyn SetCapacity> = Arc::new(UpperDensity::default());
        assert!(Mixture::new(vec![(ratio(1, 2), up.clone())]).is_err());
        let mix = Mixture::new(vec![(ratio(1, 2), up.clone()), (ratio(1, 2), up)]).unwrap();
        assert_eq!(mix.evaluate(&IntegerSet::evens()).unwrap().value, ratio(1, 2));
    }

    #[test]
    fn indicator_refuses_estimates() {
        let nu = IdealIndicator(IdealSpec::DensityZero);
        assert!(nu.evaluate(&IntegerSet::block_window(256)).is_err());
    }
}

//! Choquet integration.
//!
//! For a capacity `ν` and a bounded `x`, the Choquet integral is
//! `∫_0^∞ ν(x ≥ t) dt + ∫_{-∞}^0 [ν(x ≥ t) − ν(S)] dt`. The integrand is a
//! step function of `t` that only changes at the values of `x`, so the
//! integral is the finite sum
//! `Σ_k x_{σ(k)} · (ν(S_k) − ν(S_{k−1}))` where `σ` sorts `x` decreasingly
//! and `S_k` holds the `k` largest coordinates.

pub mod harness;

use num_traits::Zero;

use crate::capacity::FiniteCapacity;
use crate::error::{Error, Result};
use crate::ideals::Estimated;
use crate::rational::Rational;
use crate::representation::Subalgebra;
use crate::set_capacity::SetCapacity;
use crate::vector::Vector;

pub use harness::{
    functional_properties, Functional, HarnessConfig, Property, PropertyReport, PropertyResult,
    Witness,
};

/// Coordinates sorted by decreasing value; ties keep increasing index.
fn decreasing_order(x: &Vector) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x.get(b).cmp(x.get(a)));
    order
}

/// Exact Choquet integral of `x` with respect to `nu`.
pub fn choquet_integral(x: &Vector, nu: &FiniteCapacity) -> Result<Rational> {
    x.check_dim(nu.n())?;
    Ok(choquet_with_order(x, nu, &decreasing_order(x)))
}

/// The sorted-levels sum for an arbitrary decreasing order of `x`.
///
/// Any order that sorts `x` decreasingly, whatever it does on ties, yields
/// the same value.
pub fn choquet_with_order(x: &Vector, nu: &FiniteCapacity, order: &[usize]) -> Rational {
    let mut mask = 0u64;
    let mut previous = nu.value(0);
    let mut total = Rational::zero();
    for &i in order {
        mask |= 1 << i;
        let current = nu.value(mask);
        if current != previous {
            total += x.get(i) * (current - previous);
        }
        previous = current;
    }
    total
}

/// `(x_i − x_j)(y_i − y_j) ≥ 0` for all `i, j`.
pub fn comonotone(x: &Vector, y: &Vector) -> Result<bool> {
    y.check_dim(x.len())?;
    let n = x.len();
    Ok((0..n).all(|i| {
        (i + 1..n).all(|j| {
            let dx = x.get(i) - x.get(j);
            let dy = y.get(i) - y.get(j);
            dx * dy >= Rational::zero()
        })
    }))
}

/// A function that is constant on each atom of a subalgebra.
#[derive(Clone, Debug)]
pub struct StepSequence<'a> {
    algebra: &'a Subalgebra,
    values: Vec<Rational>,
}

impl<'a> StepSequence<'a> {
    /// One value per atom, in the subalgebra's atom order.
    pub fn new(algebra: &'a Subalgebra, values: Vec<Rational>) -> Result<Self> {
        if values.len() != algebra.atoms().len() {
            return Err(Error::DimensionMismatch {
                expected: algebra.atoms().len(),
                got: values.len(),
            });
        }
        Ok(StepSequence { algebra, values })
    }

    /// `λ` on every atom.
    pub fn constant(algebra: &'a Subalgebra, value: &Rational) -> Self {
        StepSequence {
            algebra,
            values: vec![value.clone(); algebra.atoms().len()],
        }
    }

    /// Indicator of the union of the atoms in `mask`.
    pub fn indicator(algebra: &'a Subalgebra, mask: u64) -> Self {
        let values = (0..algebra.atoms().len())
            .map(|i| crate::rational::int((mask >> i & 1) as i64))
            .collect();
        StepSequence { algebra, values }
    }

    pub fn algebra(&self) -> &Subalgebra {
        self.algebra
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Atoms where the sequence is at least `level`.
    pub fn level_mask(&self, level: &Rational) -> u64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| *v >= level)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Pointwise sum with another step sequence on the same subalgebra.
    pub fn add(&self, other: &StepSequence<'_>) -> Result<StepSequence<'a>> {
        if other.values.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                got: other.values.len(),
            });
        }
        Ok(StepSequence {
            algebra: self.algebra,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }
}

/// Choquet integral of a step sequence against a capacity on sets of integers.
///
/// Uses the level-set form over the finitely many values: with distinct
/// values `v_1 > ... > v_m`, the integral is
/// `v_m · ν(N) + Σ_{j<m} (v_j − v_{j+1}) · ν({x ≥ v_j})`.
pub fn choquet_step(x: &StepSequence<'_>, nu: &dyn SetCapacity) -> Result<Estimated<Rational>> {
    let mut levels: Vec<&Rational> = x.values.iter().collect();
    levels.sort_by(|a, b| b.cmp(a));
    levels.dedup();
    let mut exact = true;
    let mut total = Rational::zero();
    for pair in levels.windows(2) {
        let upper = x.algebra.union_of(x.level_mask(pair[0]))?;
        let value = nu.evaluate(&upper)?;
        exact &= value.exact;
        total += (pair[0] - pair[1]) * value.value;
    }
    if let Some(lowest) = levels.last() {
        let whole = nu.evaluate(&crate::ideals::IntegerSet::naturals())?;
        exact &= whole.exact;
        total += *lowest * whole.value;
    }
    Ok(Estimated {
        value: total,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::random_capacity;
    use crate::rational::{int, ratio};

    #[test]
    fn constant_vector_integrates_to_constant() {
        for seed in 0..10 {
            let nu = random_capacity(4, seed).unwrap();
            let lambda = ratio(-7, 3);
            let x = Vector::constant(4, &lambda);
            assert_eq!(choquet_integral(&x, &nu).unwrap(), lambda);
        }
    }

    #[test]
    fn additive_uniform_on_two_points() {
        let nu = FiniteCapacity::uniform(2).unwrap();
        assert_eq!(choquet_integral(&Vector::from_ints(&[0, 1]), &nu).unwrap(), ratio(1, 2));
    }

    #[test]
    fn dirac_on_first_coordinate() {
        // ν({1}) = 1, ν({2}) = 0.
        let nu = FiniteCapacity::dirac(2, 0).unwrap();
        assert_eq!(choquet_integral(&Vector::from_ints(&[3, 7]), &nu).unwrap(), int(3));
    }

    #[test]
    fn dimension_mismatch() {
        let nu = FiniteCapacity::uniform(2).unwrap();
        assert!(choquet_integral(&Vector::from_ints(&[1, 2, 3]), &nu).is_err());
        assert!(comonotone(&Vector::from_ints(&[1]), &Vector::from_ints(&[1, 2])).is_err());
    }

    #[test]
    fn comonotone_examples() {
        let x = Vector::from_ints(&[3, 1, 2]);
        assert!(comonotone(&x, &x).unwrap());
        assert!(comonotone(&x, &Vector::from_ints(&[5, 5, 5])).unwrap());
        assert!(!comonotone(&Vector::from_ints(&[1, 2]), &Vector::from_ints(&[2, 1])).unwrap());
    }

    #[test]
    fn ties_do_not_matter() {
        let nu = random_capacity(4, 5).unwrap();
        let x = Vector::from_ints(&[2, 5, 2, 5]);
        let a = choquet_with_order(&x, &nu, &[1, 3, 0, 2]);
        let b = choquet_with_order(&x, &nu, &[3, 1, 2, 0]);
        assert_eq!(a, b);
        assert_eq!(a, choquet_integral(&x, &nu).unwrap());
    }
}

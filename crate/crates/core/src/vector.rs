//! Rational vectors with the componentwise lattice order.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Vector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![rational::zero(); n])
    }

    pub fn constant(n: usize, value: &Rational) -> Self {
        Vector(vec![value.clone(); n])
    }

    /// The unit `e = (1, ..., 1)`.
    pub fn unit(n: usize) -> Self {
        Self::constant(n, &rational::one())
    }

    /// Indicator of the coordinates selected by `mask`.
    pub fn indicator(n: usize, mask: u64) -> Self {
        Vector((0..n).map(|i| rational::int((mask >> i & 1) as i64)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: self.len(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(&Rational, &Rational) -> Rational) -> Vector {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }

    pub fn join(&self, other: &Vector) -> Vector {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    pub fn meet(&self, other: &Vector) -> Vector {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a * factor).collect())
    }

    /// `x + λe`.
    pub fn shift(&self, lambda: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a + lambda).collect())
    }

    /// `x ∨ λe`.
    pub fn join_scalar(&self, lambda: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a.max(lambda).clone()).collect())
    }

    /// `x ∧ λe`.
    pub fn meet_scalar(&self, lambda: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a.min(lambda).clone()).collect())
    }

    pub fn abs(&self) -> Vector {
        Vector(self.0.iter().map(Signed::abs).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Vector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `max_i |x_i|` (zero for the empty vector).
    pub fn sup_norm(&self) -> Rational {
        self.0.iter().map(Signed::abs).max().unwrap_or_else(rational::zero)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.0.iter().max()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.0.iter().min()
    }

    /// Entries at the given coordinates, in the given order.
    pub fn select(&self, coords: &[usize]) -> Vector {
        Vector(coords.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl From<Vec<Rational>> for Vector {
    fn from(entries: Vec<Rational>) -> Self {
        Vector(entries)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn lattice_ops() {
        let x = Vector::from_ints(&[1, -2, 3]);
        let y = Vector::from_ints(&[0, 5, 3]);
        assert_eq!(x.join(&y), Vector::from_ints(&[1, 5, 3]));
        assert_eq!(x.meet(&y), Vector::from_ints(&[0, -2, 3]));
        assert_eq!(x.abs(), Vector::from_ints(&[1, 2, 3]));
        assert_eq!(x.join_scalar(&int(0)), Vector::from_ints(&[1, 0, 3]));
        assert_eq!(x.sup_norm(), int(3));
        assert!(x.meet(&y).le(&x));
        assert_eq!(x.shift(&ratio(1, 2)).get(1), &ratio(-3, 2));
    }

    #[test]
    fn indicator_bits() {
        assert_eq!(Vector::indicator(3, 0b101), Vector::from_ints(&[1, 0, 1]));
    }
}

//! Normalized capacities on a finite ground set `{0, ..., n-1}`.
//!
//! Subsets are little-endian bitmasks: bit `i` set means element `i` belongs
//! to the subset. The inclusion order used for construction sweeps is
//! increasing popcount, then increasing numeric value.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Storage limit for the `2^n` table.
pub const MAX_GROUND: usize = 20;

/// Limit for [`random_capacity`], which feeds exhaustive sweeps.
pub const MAX_RANDOM_GROUND: usize = 12;

/// Resolution of the uniform draws in [`random_capacity`].
const RANDOM_GRID: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCapacity {
    n: usize,
    values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Normalization {
        subset: u64,
        #[serde(with = "rational::serde_rational")]
        expected: Rational,
        #[serde(with = "rational::serde_rational")]
        found: Rational,
    },
    Monotonicity {
        subset: u64,
        superset: u64,
        #[serde(with = "rational::serde_rational")]
        subset_value: Rational,
        #[serde(with = "rational::serde_rational")]
        superset_value: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Subsets of an `n`-element ground set in inclusion order.
pub fn inclusion_order(n: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

fn check_ground(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSize(n));
    }
    Ok(())
}

impl FiniteCapacity {
    /// Wraps a table indexed by bitmask. The table is not validated.
    pub fn from_table(n: usize, values: Vec<Rational>) -> Result<Self> {
        check_ground(n)?;
        if values.len() != 1 << n {
            return Err(Error::MissingSubset(values.len() as u64));
        }
        Ok(FiniteCapacity { n, values })
    }

    /// Table from sparse entries; every subset must be present.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        check_ground(n)?;
        let mut values: Vec<Option<Rational>> = vec![None; 1 << n];
        for (mask, value) in entries {
            let slot = values
                .get_mut(mask as usize)
                .ok_or_else(|| Error::Parse(format!("subset {mask} outside ground set of size {n}")))?;
            *slot = Some(value);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(mask, v)| v.ok_or(Error::MissingSubset(mask as u64)))
            .collect::<Result<_>>()?;
        Ok(FiniteCapacity { n, values })
    }

    pub fn from_fn(n: usize, f: impl FnMut(u64) -> Rational) -> Result<Self> {
        check_ground(n)?;
        Ok(FiniteCapacity {
            n,
            values: (0..1u64 << n).map(f).collect(),
        })
    }

    /// `ν(A) = Σ_{i ∈ A} w_i / Σ w`. Weights must be nonnegative with positive sum.
    pub fn additive(weights: &[Rational]) -> Result<Self> {
        let total: Rational = weights.iter().sum();
        if weights.iter().any(|w| *w < rational::zero()) || total.is_zero() {
            return Err(Error::NotNormalized("additive weights must be nonnegative with positive sum".into()));
        }
        Self::from_fn(weights.len(), |mask| {
            (0..weights.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &weights[i])
                .sum::<Rational>()
                / &total
        })
    }

    /// `|A| / n`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::from_fn(n, |mask| rational::ratio(i64::from(mask.count_ones()), n as i64))
    }

    /// One only on the full set.
    pub fn min_capacity(n: usize) -> Result<Self> {
        let full = (1u64 << n) - 1;
        Self::from_fn(n, |mask| rational::int(i64::from(mask == full)))
    }

    /// One on every nonempty set.
    pub fn max_capacity(n: usize) -> Result<Self> {
        Self::from_fn(n, |mask| rational::int(i64::from(mask != 0)))
    }

    /// Point mass at element `i`.
    pub fn dirac(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::DimensionMismatch { expected: n, got: i + 1 });
        }
        Self::from_fn(n, |mask| rational::int((mask >> i & 1) as i64))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn value(&self, mask: u64) -> &Rational {
        &self.values[mask as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Lists every normalization failure and every monotonicity failure on a
    /// covering pair `(A, A ∪ {i})`.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (mask, expected) in [(0, rational::zero()), (self.full_mask(), rational::one())] {
            if self.values[mask as usize] != expected {
                violations.push(Violation::Normalization {
                    subset: mask,
                    expected,
                    found: self.values[mask as usize].clone(),
                });
            }
        }
        for mask in 0..=self.full_mask() {
            for i in 0..self.n {
                let bit = 1u64 << i;
                if mask & bit != 0 {
                    continue;
                }
                let sup = mask | bit;
                if self.values[mask as usize] > self.values[sup as usize] {
                    violations.push(Violation::Monotonicity {
                        subset: mask,
                        superset: sup,
                        subset_value: self.values[mask as usize].clone(),
                        superset_value: self.values[sup as usize].clone(),
                    });
                }
            }
        }
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().ok
    }

    /// `ν̄(A) = 1 − ν(Aᶜ)`.
    pub fn conjugate(&self) -> FiniteCapacity {
        let full = self.full_mask();
        FiniteCapacity {
            n: self.n,
            values: (0..=full)
                .map(|mask| rational::one() - &self.values[(full & !mask) as usize])
                .collect(),
        }
    }

    /// `ν(A ∪ B) = ν(A) + ν(B)` for all disjoint `A, B`.
    pub fn is_additive(&self) -> bool {
        let singles: Vec<&Rational> = (0..self.n).map(|i| self.value(1 << i)).collect();
        (0..=self.full_mask()).all(|mask| {
            let sum: Rational = (0..self.n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| singles[i])
                .sum();
            sum == self.values[mask as usize]
        })
    }

    /// Restriction to the elements selected by `keep` (re-indexed in order).
    pub fn restrict(&self, keep: &[usize]) -> Result<FiniteCapacity> {
        FiniteCapacity::from_fn(keep.len(), |sub| {
            let mask = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| sub >> j & 1 == 1)
                .fold(0u64, |acc, (_, &i)| acc | 1 << i);
            self.values[mask as usize].clone()
        })
    }
}

fn check_random_ground(n: usize) -> Result<()> {
    if n == 0 || n > MAX_RANDOM_GROUND {
        return Err(Error::GroundSize(n));
    }
    Ok(())
}

/// A seeded random normalized capacity.
///
/// Independent uniform draws per subset are made monotone by a running
/// maximum over immediate subsets in inclusion order, then rescaled so the
/// full set has value one.
pub fn random_capacity(n: usize, seed: u64) -> Result<FiniteCapacity> {
    check_random_ground(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = vec![0u32; 1 << n];
    for mask in inclusion_order(n) {
        if mask == 0 {
            continue;
        }
        let draw = rng.gen_range(0..=RANDOM_GRID);
        let below = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| raw[(mask & !(1 << i)) as usize])
            .max()
            .unwrap_or(0);
        raw[mask as usize] = draw.max(below);
    }
    let full = (1usize << n) - 1;
    if raw[full] == 0 {
        return FiniteCapacity::min_capacity(n);
    }
    let top = i64::from(raw[full]);
    FiniteCapacity::from_fn(n, |mask| rational::ratio(i64::from(raw[mask as usize]), top))
}

/// A seeded random additive capacity with positive integer weights.
pub fn random_additive_capacity(n: usize, seed: u64) -> Result<FiniteCapacity> {
    check_random_ground(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<Rational> = (0..n).map(|_| rational::int(rng.gen_range(1..=100))).collect();
    FiniteCapacity::additive(&weights)
}

//! The `n`-dimensional Riesz space `Q^n` with componentwise order and unit
//! `e = (1, ..., 1)`.
//!
//! Its proper closed order ideals are the coordinate subspaces
//! `N_K = {x : x_i = 0 for i ∈ K}` with `K` nonempty. The positive unit
//! functionals annihilating `N_K` form the simplex over `K`, whose extreme
//! points are the coordinate evaluations `δ_i`, `i ∈ K`. A functional that is
//! normalized, monotone, unit-additive, unit-modular and constant on cosets
//! of `N_K` is the Choquet integral of `x|_K` against `ν(A) = V(1_A)`.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::capacity::{FiniteCapacity, ValidationReport, MAX_GROUND};
use crate::choquet::{choquet_integral, functional_properties, Functional, HarnessConfig, PropertyReport};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::vector::Vector;

/// `N = {x : x_i = 0 for all i ∈ K}`. Coordinates are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateIdeal {
    n: usize,
    zero_set: Vec<usize>,
}

impl CoordinateIdeal {
    pub fn new(n: usize, zero_set: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut zero_set: Vec<usize> = zero_set.into_iter().collect();
        zero_set.sort_unstable();
        zero_set.dedup();
        if zero_set.is_empty() {
            return Err(Error::InvalidIdeal("K must be nonempty".into()));
        }
        if let Some(&i) = zero_set.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidIdeal(format!("coordinate {i} out of range for n = {n}")));
        }
        if zero_set.len() > MAX_GROUND {
            return Err(Error::GroundSize(zero_set.len()));
        }
        Ok(CoordinateIdeal { n, zero_set })
    }

    /// From a bitmask over `{0, ..., n-1}`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        Self::new(n, (0..n).filter(|i| mask >> i & 1 == 1))
    }

    /// Every coordinate ideal of `Q^n`.
    pub fn all(n: usize) -> Vec<CoordinateIdeal> {
        (1..1u64 << n)
            .map(|mask| Self::from_mask(n, mask).expect("nonempty mask in range"))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zero_set(&self) -> &[usize] {
        &self.zero_set
    }

    /// Coordinates outside `K`, where members of `N` may be nonzero.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.n).filter(|i| self.zero_set.binary_search(i).is_err()).collect()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        x.len() == self.n && self.zero_set.iter().all(|&i| x.get(i).is_zero())
    }

    /// Embeds a subset of `K` (bit `j` = `j`-th element of `K`) as an
    /// indicator vector of length `n`.
    pub fn embed_indicator(&self, mask: u64) -> Vector {
        let mut entries = vec![rational::zero(); self.n];
        for (j, &i) in self.zero_set.iter().enumerate() {
            if mask >> j & 1 == 1 {
                entries[i] = rational::one();
            }
        }
        Vector::new(entries)
    }
}

/// A positive functional `ξ` with `⟨e, ξ⟩ = 1`, given by its weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositiveUnitFunctional {
    weights: Vec<Rational>,
}

impl PositiveUnitFunctional {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidFunctional("negative weight".into()));
        }
        let total: Rational = weights.iter().sum();
        if total != rational::one() {
            return Err(Error::InvalidFunctional(format!(
                "weights sum to {}",
                rational::format(&total)
            )));
        }
        Ok(PositiveUnitFunctional { weights })
    }

    /// Evaluation at coordinate `i`.
    pub fn delta(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::InvalidFunctional(format!("coordinate {i} out of range for n = {n}")));
        }
        let mut weights = vec![rational::zero(); n];
        weights[i] = rational::one();
        Ok(PositiveUnitFunctional { weights })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFunctional("empty weight vector".into()));
        }
        Self::new(vec![rational::ratio(1, n as i64); n])
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| !self.weights[i].is_zero()).collect()
    }

    pub fn pair(&self, x: &Vector) -> Result<Rational> {
        x.check_dim(self.weights.len())?;
        Ok(self.weights.iter().zip(x.entries()).map(|(w, v)| w * v).sum())
    }

    /// `ξ(N) = 0`, i.e. the support lies inside `K`.
    pub fn annihilates(&self, ideal: &CoordinateIdeal) -> bool {
        self.n() == ideal.n() && self.support().iter().all(|i| ideal.zero_set.binary_search(i).is_ok())
    }
}

/// `inf {λ ≥ 0 : |x| ≤ λe} = max |x_i|`.
pub fn unit_norm(x: &Vector) -> Rational {
    x.sup_norm()
}

/// The face `Δ_N` of the simplex and its vertex set `ℰ_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaN {
    ideal: CoordinateIdeal,
    vertices: Vec<PositiveUnitFunctional>,
}

impl DeltaN {
    pub fn ideal(&self) -> &CoordinateIdeal {
        &self.ideal
    }

    /// `δ_i` for `i ∈ K`, in increasing `i`.
    pub fn vertices(&self) -> &[PositiveUnitFunctional] {
        &self.vertices
    }

    pub fn contains(&self, xi: &PositiveUnitFunctional) -> bool {
        xi.annihilates(&self.ideal)
    }

    /// Coefficients `c` with `ξ = Σ c_j δ_{K_j}`, one per vertex; checked by
    /// recombination.
    pub fn decompose(&self, xi: &PositiveUnitFunctional) -> Result<Vec<Rational>> {
        if !self.contains(xi) {
            return Err(Error::InvalidFunctional("ξ does not annihilate N".into()));
        }
        let coefficients: Vec<Rational> = self.ideal.zero_set.iter().map(|&i| xi.weights[i].clone()).collect();
        let mut recombined = vec![rational::zero(); self.ideal.n];
        for (c, vertex) in coefficients.iter().zip(&self.vertices) {
            for (r, w) in recombined.iter_mut().zip(&vertex.weights) {
                *r += c * w;
            }
        }
        debug_assert_eq!(recombined, xi.weights);
        Ok(coefficients)
    }

    /// A seeded random point of `Δ_N`.
    pub fn sample(&self, rng: &mut impl Rng) -> PositiveUnitFunctional {
        let draws: Vec<i64> = self.ideal.zero_set.iter().map(|_| rng.gen_range(0..=16)).collect();
        let total: i64 = draws.iter().sum();
        let mut weights = vec![rational::zero(); self.ideal.n];
        for (&i, &d) in self.ideal.zero_set.iter().zip(&draws) {
            weights[i] = if total == 0 {
                rational::ratio(1, draws.len() as i64)
            } else {
                rational::ratio(d, total)
            };
        }
        PositiveUnitFunctional { weights }
    }
}

#[allow(non_snake_case)]
pub fn delta_N(ideal: &CoordinateIdeal) -> DeltaN {
    let vertices = ideal
        .zero_set
        .iter()
        .map(|&i| PositiveUnitFunctional::delta(ideal.n, i).expect("coordinate in range"))
        .collect();
    DeltaN {
        ideal: ideal.clone(),
        vertices,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealChecks {
    pub subspace: bool,
    pub solid: bool,
    pub closed: bool,
}

impl IdealChecks {
    pub fn all(&self) -> bool {
        self.subspace && self.solid && self.closed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NXi {
    pub ideal: CoordinateIdeal,
    pub checks: IdealChecks,
}

const NXI_SAMPLES: usize = 32;

fn random_vector(n: usize, rng: &mut impl Rng, lo: i64, hi: i64) -> Vector {
    Vector::new((0..n).map(|_| rational::ratio(rng.gen_range(lo..=hi), 4)).collect())
}

/// `N_ξ = {x : ξ(|x|) = 0}`, which is the coordinate ideal on the support
/// of `ξ`.
///
/// The checks run on seeded samples: closure under linear combinations,
/// solidity under `|y| ≤ |x|`, and closedness through the support
/// characterization `ξ(|x|) = 0 ⟺ x|_supp ξ = 0`, which makes `N_ξ` an
/// intersection of kernels of continuous coordinate maps.
pub fn n_xi(xi: &PositiveUnitFunctional) -> NXi {
    let n = xi.n();
    let ideal = CoordinateIdeal {
        n,
        zero_set: xi.support(),
    };
    let in_kernel = |x: &Vector| xi.pair(&x.abs()).map(|v| v.is_zero()).unwrap_or(false);
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let free = ideal.free_coordinates();
    let member = |rng: &mut ChaCha8Rng| {
        let mut entries = vec![rational::zero(); n];
        for &i in &free {
            entries[i] = rational::ratio(rng.gen_range(-40..=40), 4);
        }
        Vector::new(entries)
    };
    let mut checks = IdealChecks {
        subspace: true,
        solid: true,
        closed: true,
    };
    for _ in 0..NXI_SAMPLES {
        let x = member(&mut rng);
        let y = member(&mut rng);
        let a = rational::ratio(rng.gen_range(-8..=8), 3);
        let b = rational::ratio(rng.gen_range(-8..=8), 5);
        checks.subspace &= in_kernel(&x) && in_kernel(&x.scale(&a).add(&y.scale(&b)));
        let shrink = Vector::new(
            x.entries()
                .iter()
                .map(|v| v * rational::ratio(rng.gen_range(-4..=4), 4))
                .collect(),
        );
        checks.solid &= in_kernel(&shrink);
        let z = random_vector(n, &mut rng, -2, 2);
        checks.closed &= in_kernel(&z) == ideal.contains(&z);
    }
    NXi { ideal, checks }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub samples: usize,
    /// Sampled `z ∈ N`, each checked against every sampled `ξ ∈ Δ_N`.
    pub inside: usize,
    /// Sampled `z ∉ N`, each separated by some `δ_i`.
    pub separated: usize,
    pub failures: usize,
}

impl IntersectionReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// `δ_i` for the first `i ∈ K` with `z_i ≠ 0`, or `None` when `z ∈ N`.
pub fn separator(ideal: &CoordinateIdeal, z: &Vector) -> Option<usize> {
    ideal.zero_set.iter().copied().find(|&i| !z.get(i).is_zero())
}

/// Checks `N = ⋂_{ξ ∈ Δ_N} N_ξ` on seeded samples: members of `N` lie in
/// `N_ξ` for every sampled `ξ`, and each non-member is separated by an
/// explicit vertex `δ_i` of `Δ_N` with `δ_i(|z|) > 0`.
pub fn ideal_intersection_identity(ideal: &CoordinateIdeal, samples: usize, seed: u64) -> IntersectionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = delta_N(ideal);
    let xis: Vec<PositiveUnitFunctional> = (0..8).map(|_| delta.sample(&mut rng)).chain(delta.vertices.iter().cloned()).collect();
    let free = ideal.free_coordinates();
    let mut report = IntersectionReport {
        samples,
        inside: 0,
        separated: 0,
        failures: 0,
    };
    for s in 0..samples {
        let z = if s % 2 == 0 {
            let mut entries = vec![rational::zero(); ideal.n];
            for &i in &free {
                entries[i] = rational::ratio(rng.gen_range(-40..=40), 4);
            }
            Vector::new(entries)
        } else {
            random_vector(ideal.n, &mut rng, -2, 2)
        };
        let abs = z.abs();
        match separator(ideal, &z) {
            None => {
                report.inside += 1;
                let ok = ideal.contains(&z)
                    && xis.iter().all(|xi| xi.pair(&abs).map(|v| v.is_zero()).unwrap_or(false));
                report.failures += usize::from(!ok);
            }
            Some(i) => {
                report.separated += 1;
                let bar = PositiveUnitFunctional::delta(ideal.n, i).expect("coordinate in range");
                let ok = !ideal.contains(&z)
                    && delta.contains(&bar)
                    && bar.pair(&abs).map(|v| v.is_positive()).unwrap_or(false);
                report.failures += usize::from(!ok);
            }
        }
    }
    report
}

/// `π(x) = x|_K`, the canonical map onto `Q^n / N ≅ Q^K`.
pub fn quotient_project(ideal: &CoordinateIdeal, x: &Vector) -> Result<Vector> {
    x.check_dim(ideal.n)?;
    Ok(x.select(&ideal.zero_set))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundtripConfig {
    pub trials: usize,
    pub seed: u64,
    /// Run the functional-property harness before reconstructing.
    pub check_properties: bool,
    pub parallel: bool,
}

impl Default for RoundtripConfig {
    fn default() -> Self {
        RoundtripConfig {
            trials: crate::choquet::harness::DEFAULT_TRIALS,
            seed: 0,
            check_properties: true,
            parallel: false,
        }
    }
}

/// A pair with `x − y ∈ N` on which `V` differs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetWitness {
    #[serde(with = "rational::serde_rational_vec")]
    pub x: Vec<Rational>,
    #[serde(with = "rational::serde_rational_vec")]
    pub y: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub vx: Rational,
    #[serde(with = "rational::serde_rational")]
    pub vy: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub ideal: CoordinateIdeal,
    pub properties: Option<PropertyReport>,
    pub coset_witness: Option<CosetWitness>,
    /// `ν(A) = V(1_A)` for `A ⊆ K`, indexed by position within `K`.
    pub capacity: FiniteCapacity,
    pub validation: ValidationReport,
    pub trials: usize,
    pub max_residual: Rational,
}

impl RoundtripReport {
    pub fn pass(&self) -> bool {
        self.properties.as_ref().is_none_or(|p| p.all_pass())
            && self.coset_witness.is_none()
            && self.validation.ok
            && self.max_residual.is_zero()
    }
}

/// Recovers `ν(A) = V(1_A)` on subsets of `K` and measures
/// `max |V(x) − ∫ x|_K dν|` over seeded trial vectors.
///
/// Fails only when `ν` is not normalized; every other defect is reported.
pub fn schmeidler_roundtrip(v: &dyn Functional, ideal: &CoordinateIdeal, config: &RoundtripConfig) -> Result<RoundtripReport> {
    let n = ideal.n;
    let properties = config.check_properties.then(|| {
        functional_properties(
            v,
            n,
            &HarnessConfig {
                trials: config.trials,
                seed: config.seed,
                parallel: config.parallel,
            },
        )
    });
    let capacity = FiniteCapacity::from_fn(ideal.zero_set.len(), |mask| v.eval(&ideal.embed_indicator(mask)))?;
    let validation = capacity.validate();
    if validation
        .violations
        .iter()
        .any(|v| matches!(v, crate::capacity::Violation::Normalization { .. }))
    {
        return Err(Error::NotNormalized(format!(
            "V(0) = {}, V(1_K) = {}",
            rational::format(capacity.value(0)),
            rational::format(capacity.value(capacity.full_mask()))
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    let free = ideal.free_coordinates();
    let mut coset_witness = None;
    let mut max_residual = rational::zero();
    for t in 0..config.trials {
        let x = if t == 0 { Vector::unit(n) } else { random_vector(n, &mut rng, -40, 40) };
        let vx = v.eval(&x);
        let integral = choquet_integral(&quotient_project(ideal, &x)?, &capacity)?;
        let residual = (&vx - integral).abs();
        if residual > max_residual {
            max_residual = residual;
        }
        if coset_witness.is_none() && !free.is_empty() {
            let mut y = x.clone().into_entries();
            for &i in &free {
                y[i] += rational::ratio(rng.gen_range(-40..=40), 4);
            }
            let y = Vector::new(y);
            let vy = v.eval(&y);
            if vy != vx {
                coset_witness = Some(CosetWitness {
                    x: x.into_entries(),
                    y: y.into_entries(),
                    vx,
                    vy,
                });
            }
        }
    }
    Ok(RoundtripReport {
        ideal: ideal.clone(),
        properties,
        coset_witness,
        capacity,
        validation,
        trials: config.trials,
        max_residual,
    })
}

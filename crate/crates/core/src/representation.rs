//! Finite subalgebras of `P(N)` modulo an ideal, and the representation of
//! ideal-invariant capacities as Choquet averages of `{0,1}`-valued measures.
//!
//! A subalgebra generated by `k` sets has at most `2^k` atoms. An atom is
//! null when it lies in the ideal. On such a subalgebra a capacity `ν` is
//! `I`-invariant exactly when `ν(A) = ν(A ∖ null)` for every union of atoms
//! `A`, and then `ρ(T) := ν(⋃T)` on sets `T` of non-null atoms satisfies
//! `ν(A) = ∫ μ(A) dρ` where `μ` ranges over the point masses at non-null atoms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::capacity::{FiniteCapacity, MAX_GROUND};
use crate::choquet::{choquet_integral, choquet_step, StepSequence};
use crate::error::{Error, Result};
use crate::ideals::{self, IdealSpec, IntegerSet, Verdict};
use crate::rational::{self, Rational};
use crate::set_capacity::{PrincipalMu, SetCapacity};
use crate::vector::Vector;

pub const MAX_GENERATORS: usize = 10;

/// Atoms are addressed by `u64` masks.
pub const MAX_ATOMS: usize = 64;

/// Up to this many atoms every union is visited.
pub const EXHAUSTIVE_ATOMS: usize = 10;

/// Unions drawn when the atoms are too many to enumerate.
pub const SAMPLED_UNIONS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AtomStatus {
    Null,
    NonNull,
    Estimate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    /// Bit `i` set when the atom lies inside generator `i`.
    pub signs: u64,
    pub set: IntegerSet,
    pub status: AtomStatus,
}

#[derive(Clone, Debug)]
pub struct Subalgebra {
    generators: Vec<IntegerSet>,
    atoms: Vec<Atom>,
    approximate: bool,
}

impl Subalgebra {
    pub fn generators(&self) -> &[IntegerSet] {
        &self.generators
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Some atom is a truncation or has an estimated membership verdict.
    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    pub fn full_mask(&self) -> u64 {
        low_bits(self.atoms.len())
    }

    pub fn null_mask(&self) -> u64 {
        self.mask_where(|a| a.status == AtomStatus::Null)
    }

    pub fn non_null(&self) -> Vec<usize> {
        (0..self.atoms.len())
            .filter(|&i| self.atoms[i].status != AtomStatus::Null)
            .collect()
    }

    fn mask_where(&self, pred: impl Fn(&Atom) -> bool) -> u64 {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| pred(a))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// The union of the atoms selected by `mask`.
    pub fn union_of(&self, mask: u64) -> Result<IntegerSet> {
        if mask & !self.full_mask() != 0 {
            return Err(Error::DimensionMismatch {
                expected: self.atoms.len(),
                got: 64 - mask.leading_zeros() as usize,
            });
        }
        let mut out = IntegerSet::empty();
        for (i, atom) in self.atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out = out.union(&atom.set)?;
            }
        }
        Ok(out)
    }

    /// Mask of the atoms making up `set`; fails unless `set` is a union of
    /// atoms.
    pub fn atom_mask_of(&self, set: &IntegerSet) -> Result<u64> {
        let mut mask = 0;
        for (i, atom) in self.atoms.iter().enumerate() {
            let common = atom.set.intersection(set)?;
            if common == atom.set {
                mask |= 1 << i;
            } else if common.is_empty() != Some(true) {
                return Err(Error::InvalidSet(format!("{set} is not a union of atoms")));
            }
        }
        Ok(mask)
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Atoms of the algebra generated by `generators`, ordered by sign mask from
/// "inside every generator" down to "outside every generator", each flagged
/// by its membership in `ideal`.
pub fn build_subalgebra(generators: Vec<IntegerSet>, ideal: &IdealSpec) -> Result<Subalgebra> {
    let k = generators.len();
    if k > MAX_GENERATORS {
        return Err(Error::InvalidSet(format!(
            "{k} generators, at most {MAX_GENERATORS} supported"
        )));
    }
    let complements: Vec<IntegerSet> = generators.iter().map(IntegerSet::complement).collect();
    let mut atoms = Vec::new();
    let mut approximate = false;
    for signs in (0..1u64 << k).rev() {
        let mut cell = IntegerSet::naturals();
        for i in 0..k {
            let side = if signs >> i & 1 == 1 {
                &generators[i]
            } else {
                &complements[i]
            };
            cell = cell.intersection(side)?;
        }
        if cell.is_empty() == Some(true) {
            continue;
        }
        let status = match ideals::member(ideal, &cell)? {
            Verdict::In => AtomStatus::Null,
            Verdict::Out => AtomStatus::NonNull,
            Verdict::EstimateOnly(_) => AtomStatus::Estimate,
        };
        approximate |= status == AtomStatus::Estimate || !cell.is_exact();
        atoms.push(Atom { signs, set: cell, status });
    }
    if atoms.len() > MAX_ATOMS {
        return Err(Error::TooManyAtoms(atoms.len()));
    }
    Ok(Subalgebra {
        generators,
        atoms,
        approximate,
    })
}

/// `ν` on every union of atoms, indexed by mask.
struct UnionValues {
    masks: Vec<u64>,
    values: Vec<Rational>,
    exact: bool,
    exhaustive: bool,
}

impl UnionValues {
    fn compute(nu: &dyn SetCapacity, algebra: &Subalgebra, seed: u64) -> Result<Self> {
        let m = algebra.atoms.len();
        let exhaustive = m <= EXHAUSTIVE_ATOMS;
        let masks: Vec<u64> = if exhaustive {
            (0..1u64 << m).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let full = algebra.full_mask();
            let mut masks = vec![0, full, algebra.null_mask(), full & !algebra.null_mask()];
            masks.extend((0..SAMPLED_UNIONS).map(|_| rng.gen::<u64>() & full));
            masks
        };
        let mut values = Vec::with_capacity(masks.len());
        let mut exact = !algebra.approximate;
        for &mask in &masks {
            let v = nu.evaluate(&algebra.union_of(mask)?)?;
            exact &= v.exact;
            values.push(v.value);
        }
        Ok(UnionValues {
            masks,
            values,
            exact,
            exhaustive,
        })
    }
}

/// Two unions of atoms whose symmetric difference is null but whose
/// capacities differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexamplePair {
    pub a_mask: u64,
    pub b_mask: u64,
    #[serde(skip)]
    pub a: IntegerSet,
    #[serde(skip)]
    pub b: IntegerSet,
    #[serde(with = "rational::serde_rational")]
    pub nu_a: Rational,
    #[serde(with = "rational::serde_rational")]
    pub nu_b: Rational,
}

impl CounterexamplePair {
    /// Re-derives both halves of the claim: `A △ B ∈ I` and `ν(A) ≠ ν(B)`.
    pub fn verify(&self, nu: &dyn SetCapacity, ideal: &IdealSpec) -> Result<bool> {
        let null = ideals::symm_diff_in_ideal(ideal, &self.a, &self.b)? == Verdict::In;
        let differ = nu.evaluate(&self.a)?.value != nu.evaluate(&self.b)?.value;
        Ok(null && differ)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Invariance {
    Invariant {
        unions_checked: usize,
        exhaustive: bool,
    },
    Counterexample(CounterexamplePair),
    /// No violation found, but some atom or value was only estimated.
    Estimate {
        unions_checked: usize,
    },
}

impl Invariance {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Invariance::Invariant { .. })
    }

    pub fn counterexample(&self) -> Option<&CounterexamplePair> {
        match self {
            Invariance::Counterexample(pair) => Some(pair),
            _ => None,
        }
    }
}

/// Checks `ν(A) = ν(B)` for all unions of atoms with `A △ B` null.
///
/// Such a pair has `ν(A) = ν(A ∪ B) = ν(B)` under invariance, so it suffices
/// to compare each union `A` with `A` minus its null atoms. Unions are
/// visited in increasing mask order and the first disagreement is returned.
pub fn check_invariance(nu: &dyn SetCapacity, ideal: &IdealSpec, algebra: &Subalgebra) -> Result<Invariance> {
    let table = UnionValues::compute(nu, algebra, 0)?;
    let null = algebra.null_mask();
    for (i, &a_mask) in table.masks.iter().enumerate() {
        let b_mask = a_mask & !null;
        if b_mask == a_mask {
            continue;
        }
        let nu_b = match table.masks.binary_search(&b_mask) {
            Ok(j) if table.exhaustive => table.values[j].clone(),
            _ => nu.evaluate(&algebra.union_of(b_mask)?)?.value,
        };
        if nu_b != table.values[i] {
            let a = algebra.union_of(a_mask)?;
            let b = algebra.union_of(b_mask)?;
            if ideals::symm_diff_in_ideal(ideal, &a, &b)? != Verdict::In {
                return Err(Error::NotAnIdeal(format!(
                    "atoms flagged null are not null under {}",
                    ideal.kind()
                )));
            }
            return Ok(Invariance::Counterexample(CounterexamplePair {
                a_mask,
                b_mask,
                a,
                b,
                nu_a: table.values[i].clone(),
                nu_b,
            }));
        }
    }
    let unions_checked = table.masks.len();
    if table.exact {
        Ok(Invariance::Invariant {
            unions_checked,
            exhaustive: table.exhaustive,
        })
    } else {
        Ok(Invariance::Estimate { unions_checked })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoCertificate {
    /// Atom indices forming the ground set of `ρ`, in atom order.
    pub non_null: Vec<usize>,
    pub rho: FiniteCapacity,
    pub residual_max: Rational,
    pub unions_checked: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepresentationCertificate {
    Rho(RhoCertificate),
    Counterexample {
        pair: CounterexamplePair,
        residual_max: Rational,
    },
}

impl RepresentationCertificate {
    pub fn residual_max(&self) -> &Rational {
        match self {
            RepresentationCertificate::Rho(c) => &c.residual_max,
            RepresentationCertificate::Counterexample { residual_max, .. } => residual_max,
        }
    }

    pub fn rho(&self) -> Option<&RhoCertificate> {
        match self {
            RepresentationCertificate::Rho(c) => Some(c),
            RepresentationCertificate::Counterexample { .. } => None,
        }
    }

    pub fn counterexample(&self) -> Option<&CounterexamplePair> {
        match self {
            RepresentationCertificate::Rho(_) => None,
            RepresentationCertificate::Counterexample { pair, .. } => Some(pair),
        }
    }
}

/// Projects an atom mask onto the positions of `non_null`.
fn compress(mask: u64, non_null: &[usize]) -> u64 {
    non_null
        .iter()
        .enumerate()
        .filter(|(_, &atom)| mask >> atom & 1 == 1)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// Builds `ρ(T) = ν(⋃T)` on the non-null atoms and measures
/// `|ν(A) − ∫ 1_A dρ|` over the unions of atoms, where the integrand is the
/// indicator of the non-null atoms inside `A`. A zero residual certifies
/// the representation; otherwise a counterexample pair is returned.
pub fn represent(nu: &dyn SetCapacity, ideal: &IdealSpec, algebra: &Subalgebra) -> Result<RepresentationCertificate> {
    let table = UnionValues::compute(nu, algebra, 0)?;
    if !table.exact {
        return Err(Error::NotExact("subalgebra or capacity values are estimates".into()));
    }
    let non_null = algebra.non_null();
    if non_null.is_empty() {
        return Err(Error::NotAnIdeal("every atom is null".into()));
    }
    if non_null.len() > MAX_GROUND {
        return Err(Error::TooManyAtoms(non_null.len()));
    }
    let rho = FiniteCapacity::from_fn(non_null.len(), |t| {
        let mask = non_null
            .iter()
            .enumerate()
            .filter(|(j, _)| t >> j & 1 == 1)
            .fold(0u64, |acc, (_, &atom)| acc | 1 << atom);
        match table.masks.binary_search(&mask) {
            Ok(i) if table.exhaustive => table.values[i].clone(),
            _ => algebra
                .union_of(mask)
                .and_then(|set| nu.evaluate(&set))
                .map(|v| v.value)
                .unwrap_or_else(|_| rational::zero()),
        }
    })?;
    let mut residual_max = rational::zero();
    for (i, &mask) in table.masks.iter().enumerate() {
        let x = Vector::indicator(non_null.len(), compress(mask, &non_null));
        let integral = choquet_integral(&x, &rho)?;
        let residual = rational::abs(&(&table.values[i] - integral));
        if residual > residual_max {
            residual_max = residual;
        }
    }
    if residual_max == rational::zero() && rho.is_valid() {
        return Ok(RepresentationCertificate::Rho(RhoCertificate {
            non_null,
            rho,
            residual_max,
            unions_checked: table.masks.len(),
            exhaustive: table.exhaustive,
        }));
    }
    match check_invariance(nu, ideal, algebra)? {
        Invariance::Counterexample(pair) => Ok(RepresentationCertificate::Counterexample { pair, residual_max }),
        _ => Err(Error::NotRepresentable(format!(
            "residual {} without a counterexample pair",
            rational::format(&residual_max)
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionReport {
    /// `∫ x dν` over the integers.
    #[serde(with = "rational::serde_rational")]
    pub lhs: Rational,
    /// `∫ x dρ` over the non-null atoms.
    #[serde(with = "rational::serde_rational")]
    pub rhs: Rational,
    pub equal: bool,
    pub exact: bool,
}

/// Compares `∫ x dν` with `∫ x dρ` for a step sequence `x`, where `x` is
/// read off on the non-null atoms.
pub fn represent_function(
    x: &StepSequence<'_>,
    nu: &dyn SetCapacity,
    ideal: &IdealSpec,
) -> Result<FunctionReport> {
    let algebra = x.algebra();
    let cert = match represent(nu, ideal, algebra)? {
        RepresentationCertificate::Rho(c) => c,
        RepresentationCertificate::Counterexample { .. } => {
            return Err(Error::NotRepresentable("capacity is not invariant".into()))
        }
    };
    let lhs = choquet_step(x, nu)?;
    let atom_values = Vector::new(cert.non_null.iter().map(|&i| x.values()[i].clone()).collect());
    let rhs = choquet_integral(&atom_values, &cert.rho)?;
    Ok(FunctionReport {
        equal: lhs.value == rhs,
        exact: lhs.exact,
        lhs: lhs.value,
        rhs,
    })
}

/// The point mass at `m`.
pub fn principal_mu(m: u64) -> Result<PrincipalMu> {
    if m == 0 {
        return Err(Error::InvalidSet("0 is not a positive integer".into()));
    }
    Ok(PrincipalMu { point: m })
}

/// `μ(A ∪ B) = μ(A) + μ(B)` on each disjoint pair; pairs that meet are skipped.
pub fn is_additive_on(mu: &dyn SetCapacity, pairs: &[(IntegerSet, IntegerSet)]) -> Result<bool> {
    for (a, b) in pairs {
        if a.intersection(b)?.is_empty() != Some(true) {
            continue;
        }
        let joint = mu.evaluate(&a.union(b)?)?.value;
        if joint != mu.evaluate(a)?.value + mu.evaluate(b)?.value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{0,1}`-valued capacity on the atoms: a union of atoms has value 0
/// exactly when it lies in the ideal.
pub fn ideal_indicator_capacity(algebra: &Subalgebra) -> Result<FiniteCapacity> {
    if algebra.atoms.iter().any(|a| a.status == AtomStatus::Estimate) {
        return Err(Error::NotExact("atom membership is only estimated".into()));
    }
    let n = algebra.atoms.len();
    if n > MAX_GROUND {
        return Err(Error::TooManyAtoms(n));
    }
    let non_null = algebra.full_mask() & !algebra.null_mask();
    FiniteCapacity::from_fn(n, |mask| rational::int(i64::from(mask & non_null != 0)))
}

use std::sync::Arc;

use capideal::capacity::{random_additive_capacity, random_capacity, FiniteCapacity};
use capideal::choquet::{choquet_integral, choquet_step, choquet_with_order, comonotone, StepSequence};
use capideal::ideals::{
    exh_norm, lower_density, member, upper_density, BuiltinSubmeasure, HorizonSchedule, IdealSpec,
    IntegerSet, Verdict,
};
use capideal::rational::{int, ratio, Rational};
use capideal::representation::{build_subalgebra, check_invariance, represent, AtomStatus};
use capideal::riesz::{delta_N, n_xi, quotient_project, unit_norm, CoordinateIdeal, PositiveUnitFunctional};
use capideal::set_capacity::{ExhNormCapacity, LowerDensity, Mixture, SetCapacity, UpperDensity};
use capideal::vector::Vector;
use num_integer::Integer;
use proptest::prelude::*;

/// Parts of a random eventually periodic set.
#[derive(Clone, Debug)]
struct Parts {
    n0: u64,
    period: u64,
    residues: Vec<u64>,
    exc_in: Vec<u64>,
    exc_out: Vec<u64>,
}

impl Parts {
    fn build(&self) -> IntegerSet {
        IntegerSet::eventually_periodic(self.n0, self.period, &self.residues, &self.exc_in, &self.exc_out).unwrap()
    }

    fn contains(&self, n: u64) -> bool {
        if self.exc_in.contains(&n) {
            true
        } else if self.exc_out.contains(&n) {
            false
        } else {
            self.residues.contains(&(n % self.period))
        }
    }
}

fn parts() -> impl Strategy<Value = Parts> {
    (1u64..12, 1u64..9).prop_flat_map(|(n0, period)| {
        (
            Just(n0),
            Just(period),
            prop::collection::vec(any::<bool>(), period as usize),
            prop::collection::vec(0u8..3, (n0 - 1) as usize),
        )
            .prop_map(|(n0, period, picks, marks)| Parts {
                n0,
                period,
                residues: (0..period).filter(|&r| picks[r as usize]).collect(),
                exc_in: (1..n0).filter(|&e| marks[e as usize - 1] == 1).collect(),
                exc_out: (1..n0).filter(|&e| marks[e as usize - 1] == 2).collect(),
            })
    })
}

fn finite_set() -> impl Strategy<Value = IntegerSet> {
    prop::collection::vec(1u64..40, 0..6).prop_map(|v| IntegerSet::finite(v).unwrap())
}

fn ideals() -> Vec<IdealSpec> {
    vec![
        IdealSpec::Fin,
        IdealSpec::DensityZero,
        IdealSpec::summable_harmonic(),
        IdealSpec::exh(Arc::new(BuiltinSubmeasure::SupDensity)).unwrap(),
    ]
}

fn grid_vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-20i64..=20, n).prop_map(|v| Vector::new(v.into_iter().map(|k| ratio(k, 2)).collect()))
}

fn capacity() -> impl Strategy<Value = FiniteCapacity> {
    (1usize..=6, any::<u64>()).prop_map(|(n, seed)| random_capacity(n, seed).unwrap())
}

fn capacity_and_vectors() -> impl Strategy<Value = (FiniteCapacity, Vector, Vector)> {
    capacity().prop_flat_map(|nu| {
        let n = nu.n();
        (Just(nu), grid_vector(n), grid_vector(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boolean_closure_is_pointwise(a in parts(), b in parts()) {
        let (sa, sb) = (a.build(), b.build());
        let bound = 10 * a.period.lcm(&b.period) * a.n0.max(b.n0);
        let union = sa.union(&sb).unwrap();
        let inter = sa.intersection(&sb).unwrap();
        let diff = sa.difference(&sb).unwrap();
        let sym = sa.symmetric_difference(&sb).unwrap();
        let comp = sa.complement();
        for x in [&union, &inter, &diff, &sym, &comp] {
            prop_assert!(x.is_closed_form());
        }
        for n in 1..=bound {
            let (p, q) = (a.contains(n), b.contains(n));
            prop_assert_eq!(sa.contains(n), p);
            prop_assert_eq!(union.contains(n), p || q);
            prop_assert_eq!(inter.contains(n), p && q);
            prop_assert_eq!(diff.contains(n), p && !q);
            prop_assert_eq!(sym.contains(n), p != q);
            prop_assert_eq!(comp.contains(n), !p);
        }
    }

    #[test]
    fn finite_sets_belong_to_every_ideal(f in finite_set()) {
        for ideal in ideals() {
            prop_assert_eq!(member(&ideal, &f).unwrap(), Verdict::In);
        }
    }

    #[test]
    fn ideal_laws_on_periodic_sets(a in parts(), b in parts()) {
        let (sa, sb) = (a.build(), b.build());
        for ideal in ideals() {
            let in_a = member(&ideal, &sa).unwrap() == Verdict::In;
            let in_b = member(&ideal, &sb).unwrap() == Verdict::In;
            let sub = sa.intersection(&sb).unwrap();
            if in_a {
                prop_assert_eq!(member(&ideal, &sub).unwrap(), Verdict::In);
            }
            if in_a && in_b {
                prop_assert_eq!(member(&ideal, &sa.union(&sb).unwrap()).unwrap(), Verdict::In);
            }
            prop_assert_eq!(member(&ideal, &IntegerSet::naturals()).unwrap(), Verdict::Out);
        }
    }

    #[test]
    fn density_laws(a in parts(), f in finite_set()) {
        let s = a.build();
        let up = upper_density(&s, 1 << 10).unwrap();
        let low = lower_density(&s, 1 << 10).unwrap();
        prop_assert!(up.exact && low.exact);
        prop_assert!(up.value >= low.value);
        prop_assert!(low.value >= int(0) && up.value <= int(1));
        let modified = s.symmetric_difference(&f).unwrap();
        prop_assert_eq!(upper_density(&modified, 1 << 10).unwrap(), up.clone());
        prop_assert_eq!(lower_density(&modified, 1 << 10).unwrap(), low.clone());
        let up_c = upper_density(&s.complement(), 1 << 10).unwrap();
        prop_assert_eq!(low.value, int(1) - up_c.value);
    }

    #[test]
    fn exh_norm_is_non_increasing(a in parts()) {
        let s = a.build();
        let schedule = HorizonSchedule::new(vec![1, 3, 10, 30, 100]).unwrap();
        for phi in [BuiltinSubmeasure::SupDensity, BuiltinSubmeasure::geometric(ratio(2, 3)).unwrap()] {
            let report = exh_norm(&phi, &s, &schedule).unwrap();
            prop_assert!(report.raw.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn comonotonic_additivity((nu, x, _) in capacity_and_vectors(), shift in -5i64..5, scale in 0i64..4) {
        // y is a nondecreasing transform of x, hence comonotone with it.
        let y = Vector::new(x.entries().iter().map(|v| v * int(scale) + int(shift)).collect());
        prop_assert!(comonotone(&x, &y).unwrap());
        let lhs = choquet_integral(&x.add(&y), &nu).unwrap();
        prop_assert_eq!(lhs, choquet_integral(&x, &nu).unwrap() + choquet_integral(&y, &nu).unwrap());
    }

    #[test]
    fn monotone_and_homogeneous((nu, x, y) in capacity_and_vectors(), num in 0i64..7, den in 1i64..5) {
        let above = x.join(&y);
        prop_assert!(choquet_integral(&x, &nu).unwrap() <= choquet_integral(&above, &nu).unwrap());
        let alpha = ratio(num, den);
        prop_assert_eq!(
            choquet_integral(&x.scale(&alpha), &nu).unwrap(),
            alpha * choquet_integral(&x, &nu).unwrap()
        );
    }

    #[test]
    fn tie_breaks_do_not_matter((nu, x, _) in capacity_and_vectors(), seed in any::<u64>()) {
        // Coarsen x so ties are common, then sort with a random order on ties.
        let x = Vector::new(x.entries().iter().map(|v| v.floor() / int(3)).map(|v| v.floor()).collect());
        let mut order: Vec<usize> = (0..x.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(x.get(i).clone()), (i as u64).wrapping_mul(seed | 1) % 97));
        prop_assert_eq!(choquet_with_order(&x, &nu, &order), choquet_integral(&x, &nu).unwrap());
    }

    #[test]
    fn conjugate_duality((nu, x, _) in capacity_and_vectors()) {
        let conj = nu.conjugate();
        prop_assert!(conj.is_valid());
        prop_assert_eq!(conj.conjugate(), nu.clone());
        prop_assert_eq!(choquet_integral(&x, &conj).unwrap(), -choquet_integral(&x.neg(), &nu).unwrap());
    }

    #[test]
    fn additive_agreement(n in 1usize..8, seed in any::<u64>(), raw in prop::collection::vec(-20i64..20, 8)) {
        let nu = random_additive_capacity(n, seed).unwrap();
        let x = Vector::from_ints(&raw[..n]);
        let linear: Rational = (0..n).map(|i| x.get(i) * nu.value(1 << i)).sum();
        prop_assert_eq!(choquet_integral(&x, &nu).unwrap(), linear);
    }

    #[test]
    fn validate_matches_definition(n in 1usize..=4, seed in any::<u64>(), slot in any::<u64>(), bump in -3i64..=3) {
        let mut values = random_capacity(n, seed).unwrap().values().to_vec();
        let slot = (slot % values.len() as u64) as usize;
        values[slot] += ratio(bump, 4);
        let table = FiniteCapacity::from_table(n, values.clone()).unwrap();
        let full = values.len() - 1;
        let monotone = (0..=full).all(|a| (0..=full).filter(|b| a & b == a).all(|b| values[a] <= values[b]));
        let normalized = values[0] == int(0) && values[full] == int(1);
        prop_assert_eq!(table.validate().ok, monotone && normalized);
    }
}

fn step_fixture(generators: Vec<IntegerSet>, ideal: &IdealSpec, nu: &dyn SetCapacity, values: &[i64], noise: &[i64]) -> Result<(), TestCaseError> {
    let algebra = build_subalgebra(generators, ideal).unwrap();
    let m = algebra.atoms().len();
    let x = StepSequence::new(&algebra, (0..m).map(|i| int(values[i % values.len()])).collect()).unwrap();
    // z vanishes off the null atoms.
    let z_values = (0..m)
        .map(|i| match algebra.atoms()[i].status {
            AtomStatus::Null => int(noise[i % noise.len()]),
            _ => int(0),
        })
        .collect();
    let z = StepSequence::new(&algebra, z_values).unwrap();
    let base = choquet_step(&x, nu).unwrap();
    let moved = choquet_step(&x.add(&z).unwrap(), nu).unwrap();
    prop_assert!(base.exact && moved.exact);
    prop_assert_eq!(base.value, moved.value);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn null_perturbations_leave_step_integrals_unchanged(
        a in parts(),
        cut in 1u64..30,
        values in prop::collection::vec(-6i64..6, 1..6),
        noise in prop::collection::vec(-6i64..6, 1..6),
    ) {
        let generators = vec![a.build(), IntegerSet::evens(), IntegerSet::interval(cut)];
        step_fixture(generators.clone(), &IdealSpec::DensityZero, &UpperDensity::default(), &values, &noise)?;
        step_fixture(generators.clone(), &IdealSpec::DensityZero, &LowerDensity::default(), &values, &noise)?;
        step_fixture(generators, &IdealSpec::Fin, &UpperDensity::default(), &values, &noise)?;
    }

    #[test]
    fn abstract_upper_densities_are_representable(a in parts(), b in parts(), w in 0i64..=6) {
        // A convex mix of upper densities is diffuse and subadditive, and its
        // null sets on the exact class are the density-zero sets.
        let up: Arc<dyn SetCapacity> = Arc::new(UpperDensity::default());
        let tail: Arc<dyn SetCapacity> = Arc::new(ExhNormCapacity::new(Arc::new(BuiltinSubmeasure::SupDensity)).unwrap());
        let mix = Mixture::new(vec![(ratio(w, 6), up), (ratio(6 - w, 6), tail)]).unwrap();
        let algebra = build_subalgebra(vec![a.build(), b.build(), IntegerSet::interval(5)], &IdealSpec::DensityZero).unwrap();
        prop_assert!(check_invariance(&mix, &IdealSpec::DensityZero, &algebra).unwrap().is_invariant());
        let cert = represent(&mix, &IdealSpec::DensityZero, &algebra).unwrap();
        prop_assert!(cert.rho().is_some_and(|c| c.residual_max == int(0) && c.rho.is_valid()));
    }

    #[test]
    fn exh_norm_is_exh_invariant(a in parts(), b in parts()) {
        let phi = Arc::new(BuiltinSubmeasure::SupDensity);
        let ideal = IdealSpec::exh(phi.clone()).unwrap();
        let nu = ExhNormCapacity::new(phi).unwrap();
        let algebra = build_subalgebra(vec![a.build(), b.build(), IntegerSet::finite([2, 3]).unwrap()], &ideal).unwrap();
        prop_assert!(check_invariance(&nu, &ideal, &algebra).unwrap().is_invariant());
        for mask in 0..=algebra.full_mask() {
            let set = algebra.union_of(mask).unwrap();
            prop_assert_eq!(nu.evaluate(&set).unwrap(), UpperDensity::default().evaluate(&set).unwrap());
        }
    }

    #[test]
    fn invariance_iff_representation(a in parts(), b in parts(), point in 1u64..8) {
        let generators = vec![a.build(), b.build(), IntegerSet::finite([point]).unwrap()];
        let candidates: Vec<Box<dyn SetCapacity>> = vec![
            Box::new(UpperDensity::default()),
            Box::new(capideal::representation::principal_mu(point).unwrap()),
        ];
        for ideal in [IdealSpec::Fin, IdealSpec::DensityZero] {
            let algebra = build_subalgebra(generators.clone(), &ideal).unwrap();
            for nu in &candidates {
                let invariant = check_invariance(nu.as_ref(), &ideal, &algebra).unwrap().is_invariant();
                let cert = represent(nu.as_ref(), &ideal, &algebra).unwrap();
                let represented = cert.rho().is_some_and(|c| c.residual_max == int(0));
                prop_assert_eq!(invariant, represented);
                if let Some(pair) = cert.counterexample() {
                    prop_assert!(pair.verify(nu.as_ref(), &ideal).unwrap());
                }
            }
        }
    }

    #[test]
    fn refinement_restricts_rho(a in parts(), b in parts()) {
        let coarse = build_subalgebra(vec![a.build()], &IdealSpec::DensityZero).unwrap();
        let fine = build_subalgebra(vec![a.build(), b.build()], &IdealSpec::DensityZero).unwrap();
        let nu = UpperDensity::default();
        let rc = represent(&nu, &IdealSpec::DensityZero, &coarse).unwrap();
        let rf = represent(&nu, &IdealSpec::DensityZero, &fine).unwrap();
        let (rc, rf) = (rc.rho().unwrap(), rf.rho().unwrap());
        for t in 0..=rc.rho.full_mask() {
            let atoms: u64 = rc.non_null.iter().enumerate().filter(|(j, _)| t >> j & 1 == 1).fold(0, |m, (_, &i)| m | 1 << i);
            let fine_mask = fine.atom_mask_of(&coarse.union_of(atoms).unwrap()).unwrap();
            let t_fine = rf.non_null.iter().enumerate().filter(|(_, &i)| fine_mask >> i & 1 == 1).fold(0u64, |m, (j, _)| m | 1 << j);
            prop_assert_eq!(rc.rho.value(t), rf.rho.value(t_fine));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unit_norm_is_a_riesz_norm(x in grid_vector(4), y in grid_vector(4)) {
        // |x ∧ y| ≤ |x| ∨ |y| componentwise.
        let small = x.meet(&y).abs();
        let big = x.abs().join(&y.abs());
        prop_assert!(small.le(&big));
        prop_assert!(unit_norm(&small) <= unit_norm(&big));
        prop_assert!(unit_norm(&x.add(&y)) <= unit_norm(&x) + unit_norm(&y));
    }

    #[test]
    fn quotient_is_a_lattice_homomorphism(mask in 1u64..16, x in grid_vector(4), y in grid_vector(4)) {
        let k = CoordinateIdeal::from_mask(4, mask).unwrap();
        let p = |v: &Vector| quotient_project(&k, v).unwrap();
        prop_assert_eq!(p(&x.join(&y)), p(&x).join(&p(&y)));
        prop_assert_eq!(p(&x.meet(&y)), p(&x).meet(&p(&y)));
        prop_assert_eq!(p(&x.add(&y)), p(&x).add(&p(&y)));
        prop_assert_ne!(p(&Vector::unit(4)), Vector::zeros(k.zero_set().len()));
    }

    #[test]
    fn face_points_annihilate_the_ideal(mask in 1u64..16, weights in prop::collection::vec(0i64..5, 4), x in grid_vector(4)) {
        let k = CoordinateIdeal::from_mask(4, mask).unwrap();
        let face = delta_N(&k);
        let mut w: Vec<i64> = k.zero_set().iter().map(|&i| weights[i]).collect();
        if w.iter().all(|&v| v == 0) {
            w[0] = 1;
        }
        let total: i64 = w.iter().sum();
        let mut xi = vec![int(0); 4];
        for (vertex, c) in face.vertices().iter().zip(&w) {
            for (slot, v) in xi.iter_mut().zip(vertex.weights()) {
                *slot += ratio(*c, total) * v;
            }
        }
        let xi = PositiveUnitFunctional::new(xi).unwrap();
        prop_assert!(face.contains(&xi));
        // Any vector zeroed on K lies in N.
        let mut z = x.into_entries();
        for &i in k.zero_set() {
            z[i] = int(0);
        }
        let z = Vector::new(z);
        prop_assert!(k.contains(&z));
        prop_assert_eq!(xi.pair(&z).unwrap(), int(0));
    }
}

#[test]
fn kernels_satisfy_ideal_checks_exhaustively() {
    for n in 1..=4usize {
        for mask in 1u64..1 << n {
            let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let mut weights = vec![int(0); n];
            for &i in &support {
                weights[i] = ratio(1, support.len() as i64);
            }
            let nx = n_xi(&PositiveUnitFunctional::new(weights).unwrap());
            assert_eq!(nx.ideal.zero_set(), support.as_slice());
            assert!(nx.checks.all(), "n={n} support={support:?}");
        }
    }
}

//! Randomized checks of the functional properties characterizing Choquet
//! functionals on `Q^n` with unit `e = (1, ..., 1)`:
//!
//! - normalized: `V(λe) = λ`
//! - monotone: `x ≤ y ⇒ V(x) ≤ V(y)`
//! - unit-additive: `V(x + λe) = V(x) + λ` for `λ ≥ 0`
//! - unit-modular: `V(x ∨ λe) + V(x ∧ λe) = V(x) + λ`
//! - Lipschitz of order one: `|V(x) − V(y)| ≤ ‖x − y‖_∞`
//!
//! Trial inputs are drawn up front from a seeded generator on the grid
//! `{k/4 : −40 ≤ k ≤ 40}`, so a report is a pure function of the functional,
//! the dimension and the configuration.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::rational::{self, Rational};
use crate::vector::Vector;

pub const DEFAULT_TRIALS: usize = 256;

/// A black-box functional on rational vectors.
pub trait Functional: Sync {
    fn eval(&self, x: &Vector) -> Rational;
}

impl<F> Functional for F
where
    F: Fn(&Vector) -> Rational + Sync,
{
    fn eval(&self, x: &Vector) -> Rational {
        self(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Normalized,
    Monotone,
    UnitAdditive,
    UnitModular,
    Lipschitz,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Normalized,
        Property::Monotone,
        Property::UnitAdditive,
        Property::UnitModular,
        Property::Lipschitz,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub trial: usize,
    #[serde(with = "rational::serde_rational_vec")]
    pub x: Vec<Rational>,
    #[serde(with = "rational::serde_rational_vec", skip_serializing_if = "Vec::is_empty")]
    pub y: Vec<Rational>,
    #[serde(with = "rational::serde_rational_opt", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_rational")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: Property,
    pub pass: bool,
    pub trials: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub n: usize,
    pub seed: u64,
    pub results: Vec<PropertyResult>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn get(&self, property: Property) -> &PropertyResult {
        self.results
            .iter()
            .find(|r| r.property == property)
            .expect("every property is reported")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub trials: usize,
    pub seed: u64,
    /// Evaluate trials on the rayon pool; the functional must tolerate
    /// concurrent calls.
    pub parallel: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            trials: DEFAULT_TRIALS,
            seed: 0,
            parallel: false,
        }
    }
}

struct Trial {
    x: Vector,
    above: Vector,
    other: Vector,
    shift: Rational,
    level: Rational,
}

fn grid_value(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    rational::ratio(rng.gen_range(lo..=hi), 4)
}

fn draw_trials(n: usize, config: &HarnessConfig) -> Vec<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.trials)
        .map(|t| {
            let x = match t {
                0 => Vector::zeros(n),
                1 => Vector::unit(n),
                _ => Vector::new((0..n).map(|_| grid_value(&mut rng, -40, 40)).collect()),
            };
            let noise = Vector::new((0..n).map(|_| grid_value(&mut rng, 0, 8)).collect());
            let above = x.add(&noise);
            let other = Vector::new((0..n).map(|_| grid_value(&mut rng, -40, 40)).collect());
            let shift = grid_value(&mut rng, 0, 40);
            // Half the time cut exactly at an entry of x.
            let level = if n > 0 && rng.gen_bool(0.5) {
                x.get(rng.gen_range(0..n)).clone()
            } else {
                grid_value(&mut rng, -40, 40)
            };
            Trial {
                x,
                above,
                other,
                shift,
                level,
            }
        })
        .collect()
}

fn check_trial(v: &dyn Functional, n: usize, index: usize, trial: &Trial) -> [Option<Witness>; 5] {
    let witness = |y: &Vector, lambda: Option<&Rational>, lhs: Rational, rhs: Rational| Witness {
        trial: index,
        x: trial.x.entries().to_vec(),
        y: y.entries().to_vec(),
        lambda: lambda.cloned(),
        lhs,
        rhs,
    };
    let none = Vector::new(Vec::new());
    let vx = v.eval(&trial.x);

    let at_level = v.eval(&Vector::constant(n, &trial.level));
    let normalized = (at_level != trial.level)
        .then(|| witness(&none, Some(&trial.level), at_level, trial.level.clone()));

    let v_above = v.eval(&trial.above);
    let monotone = (vx > v_above).then(|| witness(&trial.above, None, vx.clone(), v_above));

    let shifted = v.eval(&trial.x.shift(&trial.shift));
    let expected = &vx + &trial.shift;
    let unit_additive =
        (shifted != expected).then(|| witness(&none, Some(&trial.shift), shifted, expected));

    let lhs = v.eval(&trial.x.join_scalar(&trial.level)) + v.eval(&trial.x.meet_scalar(&trial.level));
    let rhs = &vx + &trial.level;
    let unit_modular = (lhs != rhs).then(|| witness(&none, Some(&trial.level), lhs, rhs));

    let gap = (&vx - v.eval(&trial.other)).abs();
    let bound = trial.x.sub(&trial.other).sup_norm();
    let lipschitz = (gap > bound).then(|| witness(&trial.other, None, gap, bound));

    [normalized, monotone, unit_additive, unit_modular, lipschitz]
}

/// Runs every property check on `config.trials` seeded trials.
pub fn functional_properties(v: &dyn Functional, n: usize, config: &HarnessConfig) -> PropertyReport {
    let trials = draw_trials(n, config);
    let outcomes: Vec<[Option<Witness>; 5]> = if config.parallel {
        trials
            .par_iter()
            .enumerate()
            .map(|(i, t)| check_trial(v, n, i, t))
            .collect()
    } else {
        trials
            .iter()
            .enumerate()
            .map(|(i, t)| check_trial(v, n, i, t))
            .collect()
    };
    let results = Property::ALL
        .iter()
        .enumerate()
        .map(|(slot, &property)| {
            let witness = outcomes.iter().find_map(|o| o[slot].clone());
            PropertyResult {
                property,
                pass: witness.is_none(),
                trials: config.trials,
                witness,
            }
        })
        .collect();
    PropertyReport {
        n,
        seed: config.seed,
        results,
    }
}

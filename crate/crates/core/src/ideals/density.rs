//! Upper and lower asymptotic density.
//!
//! Exact for every set whose membership is given in closed form; for a
//! truncated [`Window`](super::set::Window) the limit superior (inferior) is
//! estimated by the extreme prefix ratio over the trailing half of a horizon
//! schedule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::set::IntegerSet;
use crate::rational::{self, Rational};

/// Largest exponent of the default geometric schedule.
pub const DEFAULT_SCHEDULE_EXPONENT: u32 = 16;

/// A value together with whether it was computed exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Estimated<T> {
    pub value: T,
    pub exact: bool,
}

impl<T> Estimated<T> {
    pub fn exact(value: T) -> Self {
        Estimated { value, exact: true }
    }

    pub fn estimate(value: T) -> Self {
        Estimated { value, exact: false }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Estimated<U> {
        Estimated {
            value: f(self.value),
            exact: self.exact,
        }
    }
}

/// Strictly increasing list of positive horizons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizonSchedule(Vec<u64>);

impl HorizonSchedule {
    pub fn new(points: Vec<u64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSchedule("empty".into()));
        }
        if points[0] == 0 {
            return Err(Error::InvalidSchedule("horizons must be positive".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSchedule("not strictly increasing".into()));
        }
        Ok(HorizonSchedule(points))
    }

    /// Powers of two `1, 2, 4, ...` not exceeding `horizon`.
    pub fn geometric(horizon: u64) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidSchedule("horizon must be positive".into()));
        }
        Ok(HorizonSchedule(
            (0..64)
                .map(|k| 1u64 << k)
                .take_while(|&p| p <= horizon)
                .collect(),
        ))
    }

    pub fn points(&self) -> &[u64] {
        &self.0
    }

    pub fn last(&self) -> u64 {
        *self.0.last().expect("nonempty")
    }

    /// Points not exceeding `cap`, trailing half (rounded up). Never empty
    /// when the first point is at most `cap`.
    fn tail(&self, cap: u64) -> &[u64] {
        let usable = self.0.partition_point(|&p| p <= cap);
        let keep = usable.div_ceil(2);
        &self.0[usable - keep..usable]
    }
}

impl Default for HorizonSchedule {
    fn default() -> Self {
        HorizonSchedule::geometric(1 << DEFAULT_SCHEDULE_EXPONENT).expect("valid")
    }
}

/// `|A ∩ [1, n]| / n`.
pub fn prefix_ratio(set: &IntegerSet, n: u64) -> Rational {
    rational::ratio(set.count_upto(n) as i64, n as i64)
}

fn exact_density(set: &IntegerSet) -> Option<Rational> {
    match set {
        IntegerSet::Finite(_) | IntegerSet::Sparse(_) => Some(rational::zero()),
        IntegerSet::Periodic(p) => Some(rational::ratio(
            p.residues().len() as i64,
            p.period() as i64,
        )),
        IntegerSet::Window(_) => None,
    }
}

fn schedule_extreme(
    set: &IntegerSet,
    schedule: &HorizonSchedule,
    cap: u64,
    pick_max: bool,
) -> Result<Rational> {
    let cap = cap.min(set.horizon().unwrap_or(u64::MAX));
    let tail = schedule.tail(cap);
    let ratios = tail.iter().map(|&n| prefix_ratio(set, n));
    let best = if pick_max { ratios.max() } else { ratios.min() };
    best.ok_or_else(|| Error::InvalidSchedule(format!("no schedule point within horizon {cap}")))
}

/// Upper asymptotic density with the default geometric schedule up to `horizon`.
pub fn upper_density(set: &IntegerSet, horizon: u64) -> Result<Estimated<Rational>> {
    upper_density_with(set, &HorizonSchedule::geometric(horizon)?, horizon)
}

pub fn upper_density_with(
    set: &IntegerSet,
    schedule: &HorizonSchedule,
    horizon: u64,
) -> Result<Estimated<Rational>> {
    if horizon == 0 {
        return Err(Error::InvalidSchedule("horizon must be positive".into()));
    }
    match exact_density(set) {
        Some(d) => Ok(Estimated::exact(d)),
        None => Ok(Estimated::estimate(schedule_extreme(set, schedule, horizon, true)?)),
    }
}

/// Lower asymptotic density with the default geometric schedule up to `horizon`.
pub fn lower_density(set: &IntegerSet, horizon: u64) -> Result<Estimated<Rational>> {
    lower_density_with(set, &HorizonSchedule::geometric(horizon)?, horizon)
}

pub fn lower_density_with(
    set: &IntegerSet,
    schedule: &HorizonSchedule,
    horizon: u64,
) -> Result<Estimated<Rational>> {
    if horizon == 0 {
        return Err(Error::InvalidSchedule("horizon must be positive".into()));
    }
    match exact_density(set) {
        Some(d) => Ok(Estimated::exact(d)),
        None => Ok(Estimated::estimate(schedule_extreme(set, schedule, horizon, false)?)),
    }
}

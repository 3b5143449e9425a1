//! Named fixtures: sets, ideals, submeasures, capacities and functionals.

use std::path::Path;
use std::sync::Arc;

use capideal::capacity::{random_capacity, FiniteCapacity};
use capideal::choquet::{choquet_integral, Functional};
use capideal::ideals::{BuiltinSubmeasure, IdealSpec, IntegerSet, SparseRule};
use capideal::rational::{self, Rational};
use capideal::representation::principal_mu;
use capideal::set_capacity::{ExhNormCapacity, IdealIndicator, LowerDensity, SetCapacity, UpperDensity};
use capideal::vector::Vector;
use capideal::{wire, Error, Result};
use serde_json::Value;

fn read_json(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[', '"']) {
        arg.to_string()
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?
    } else {
        return Err(Error::Parse(format!("unknown name or missing file {arg:?}")));
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn suffix<'a>(arg: &'a str, prefix: &str) -> Option<&'a str> {
    arg.strip_prefix(prefix)
}

fn number(text: &str, what: &str) -> Result<u64> {
    text.parse()
        .map_err(|_| Error::Parse(format!("invalid {what} {text:?}")))
}

/// A set by registry name, inline JSON or JSON file.
pub fn set(arg: &str, horizon: u64) -> Result<IntegerSet> {
    match arg {
        "evens" => return Ok(IntegerSet::evens()),
        "odds" => return Ok(IntegerSet::odds()),
        "naturals" => return Ok(IntegerSet::naturals()),
        "empty" => return Ok(IntegerSet::empty()),
        "block" => return Ok(IntegerSet::block_window(horizon)),
        "powers-of-two" => return Ok(IntegerSet::sparse(SparseRule::PowersOfTwo)),
        "squares" => return Ok(IntegerSet::sparse(SparseRule::Squares)),
        _ => {}
    }
    if let Some(k) = suffix(arg, "multiples-of-") {
        return IntegerSet::multiples_of(number(k, "modulus")?);
    }
    if let Some(n) = suffix(arg, "interval-") {
        return Ok(IntegerSet::interval(number(n, "length")?));
    }
    if let Some(m) = suffix(arg, "point-") {
        return IntegerSet::finite([number(m, "point")?]);
    }
    if let Some(h) = suffix(arg, "block-") {
        let h = number(h, "horizon")?;
        if h == 0 {
            return Err(Error::InvalidSet("horizon must be positive".into()));
        }
        return Ok(IntegerSet::block_window(h));
    }
    wire::decode_set(read_json(arg)?)
}

/// Generators as a JSON array of sets or a comma-separated list of names.
pub fn generators(arg: &str, horizon: u64) -> Result<Vec<IntegerSet>> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || Path::new(arg).is_file() {
        match read_json(arg)? {
            Value::Array(items) => items.into_iter().map(wire::decode_set).collect(),
            _ => Err(Error::Parse("generators must be a JSON array of sets".into())),
        }
    } else {
        arg.split(',').map(|name| set(name.trim(), horizon)).collect()
    }
}

pub fn ideal(arg: &str) -> Result<IdealSpec> {
    match arg {
        "fin" => Ok(IdealSpec::Fin),
        "density" => Ok(IdealSpec::DensityZero),
        "summable" => Ok(IdealSpec::summable_harmonic()),
        "exh-sup-density" => IdealSpec::exh(Arc::new(BuiltinSubmeasure::SupDensity)),
        _ => wire::decode_ideal(read_json(arg)?),
    }
}

pub fn submeasure(arg: &str) -> Result<BuiltinSubmeasure> {
    match arg {
        "sup-density" => Ok(BuiltinSubmeasure::SupDensity),
        "harmonic" => Ok(BuiltinSubmeasure::Harmonic),
        _ => match suffix(arg, "geometric-") {
            Some(q) => BuiltinSubmeasure::geometric(rational::parse(q)?),
            None => serde_json::from_value(read_json(arg)?).map_err(|e| Error::Parse(e.to_string())),
        },
    }
}

/// A finite capacity by name, inline JSON or JSON file. `random-N` uses `seed`.
pub fn finite_capacity(arg: &str, seed: u64) -> Result<FiniteCapacity> {
    let sized = |prefix: &str| suffix(arg, prefix).map(|n| number(n, "ground size").map(|n| n as usize));
    if let Some(n) = sized("uniform-") {
        return FiniteCapacity::uniform(n?);
    }
    if let Some(n) = sized("min-") {
        return FiniteCapacity::min_capacity(n?);
    }
    if let Some(n) = sized("max-") {
        return FiniteCapacity::max_capacity(n?);
    }
    if let Some(n) = sized("random-") {
        return random_capacity(n?, seed);
    }
    if let Some(rest) = suffix(arg, "dirac-") {
        let (n, i) = rest
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("expected dirac-N-I, got {arg:?}")))?;
        let i = number(i, "coordinate")? as usize;
        if i == 0 {
            return Err(Error::Parse("dirac coordinate is 1-based".into()));
        }
        return FiniteCapacity::dirac(number(n, "ground size")? as usize, i - 1);
    }
    wire::decode_capacity(read_json(arg)?)
}

pub const SET_CAPACITY_NAMES: &str =
    "upper-density, lower-density, ideal-indicator, exh-sup-density, principal-M";

/// A capacity on sets of integers. `ideal-indicator` is the indicator of
/// the complement of `ideal`.
pub fn set_capacity(arg: &str, ideal: &IdealSpec, horizon: u64) -> Result<Box<dyn SetCapacity>> {
    match arg {
        "upper-density" => Ok(Box::new(UpperDensity { horizon })),
        "lower-density" => Ok(Box::new(LowerDensity { horizon })),
        "ideal-indicator" => Ok(Box::new(IdealIndicator(ideal.clone()))),
        "exh-sup-density" => Ok(Box::new(ExhNormCapacity::new(Arc::new(BuiltinSubmeasure::SupDensity))?)),
        _ => match suffix(arg, "principal-") {
            Some(m) => Ok(Box::new(principal_mu(number(m, "point")?)?)),
            None => Err(Error::Parse(format!(
                "unknown capacity {arg:?}; expected one of {SET_CAPACITY_NAMES}"
            ))),
        },
    }
}

pub fn vector(arg: &str) -> Result<Vector> {
    wire::decode_vector(read_json(arg)?)
}

pub const FUNCTIONAL_NAMES: &str = "choquet-random, min, max, dirac-J, linear, midrange-counterexample";

enum Kind {
    Choquet(FiniteCapacity),
    Min,
    Max,
    Dirac(usize),
    Linear,
    Midrange,
}

/// A registered functional acting on the coordinates in `support`.
pub struct NamedFunctional {
    kind: Kind,
    support: Vec<usize>,
}

impl NamedFunctional {
    /// `dirac-J` is 1-based. `choquet-random` draws a capacity on the support
    /// from `seed`.
    pub fn new(name: &str, n: usize, support: Vec<usize>, seed: u64) -> Result<Self> {
        let kind = match name {
            "choquet-random" => Kind::Choquet(random_capacity(support.len(), seed)?),
            "min" => Kind::Min,
            "max" => Kind::Max,
            "linear" => Kind::Linear,
            "midrange-counterexample" => Kind::Midrange,
            "dirac" => Kind::Dirac(0),
            _ => match suffix(name, "dirac-") {
                Some(j) => {
                    let j = number(j, "coordinate")? as usize;
                    if j == 0 || j > n {
                        return Err(Error::Parse(format!("dirac coordinate {j} out of range 1..={n}")));
                    }
                    Kind::Dirac(j - 1)
                }
                None => {
                    return Err(Error::Parse(format!(
                        "unknown functional {name:?}; expected one of {FUNCTIONAL_NAMES}"
                    )))
                }
            },
        };
        if support.is_empty() || support.iter().any(|&i| i >= n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: support.iter().max().map_or(0, |i| i + 1),
            });
        }
        Ok(NamedFunctional { kind, support })
    }

    /// Expected to satisfy every property checked by the harness.
    pub fn conforming(&self) -> bool {
        !matches!(self.kind, Kind::Midrange)
    }
}

impl Functional for NamedFunctional {
    fn eval(&self, x: &Vector) -> Rational {
        let y = x.select(&self.support);
        match &self.kind {
            Kind::Choquet(nu) => choquet_integral(&y, nu).expect("support matches capacity"),
            Kind::Min => y.min().expect("nonempty support").clone(),
            Kind::Max => y.max().expect("nonempty support").clone(),
            Kind::Dirac(j) => x.get(*j).clone(),
            Kind::Linear => y.entries().iter().sum::<Rational>() / rational::int(y.len() as i64),
            Kind::Midrange => y.max().expect("nonempty support") + y.min().expect("nonempty support"),
        }
    }
}

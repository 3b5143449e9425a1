//! JSON encodings.
//!
//! ```text
//! set       {"finite": [..]}
//!           {"ep": {"n0": .., "p": .., "res": [..], "exc_in": [..], "exc_out": [..]}}
//!           {"rule": {"name": "powers-of-two" | "squares", "after": ..}}
//!           {"window": {"h": .., "elements": [..]}}
//! ideal     {"kind": "fin" | "density"}
//!           {"kind": "summable", "power": 0 | 1}
//!           {"kind": "exh", "phi": {"type": "sup-density" | "harmonic"}}
//!           {"kind": "exh", "phi": {"type": "geometric", "ratio": "p/q"}}
//! capacity  {"n": .., "values": {"<mask>": "p/q", ..}}
//! vector    ["p/q", ..]
//! coords    {"n": .., "K": [..]}      K is 1-based
//! ```
//!
//! Rationals are strings in lowest terms with the sign on the numerator.
//! Capacity entries are written in increasing mask order and every mask must
//! be present on input.

use std::collections::HashMap;
use std::sync::Arc;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::capacity::{FiniteCapacity, ValidationReport};
use crate::choquet::PropertyReport;
use crate::error::{Error, Result};
use crate::ideals::set::{PeriodicSet, SparseSet};
use crate::ideals::{BuiltinSubmeasure, IdealSpec, IntegerSet, SparseRule, SummableWeights};
use crate::rational::{self, Rational};
use crate::representation::{AtomStatus, CounterexamplePair, RepresentationCertificate, Subalgebra};
use crate::riesz::{CoordinateIdeal, CosetWitness, RoundtripReport};
use crate::vector::Vector;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum SetWire {
    Finite(Vec<u64>),
    Ep(EpWire),
    Rule(RuleWire),
    Window(WindowWire),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EpWire {
    n0: u64,
    p: u64,
    res: Vec<u64>,
    #[serde(default)]
    exc_in: Vec<u64>,
    #[serde(default)]
    exc_out: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleWire {
    name: SparseRule,
    #[serde(default)]
    after: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WindowWire {
    h: u64,
    elements: Vec<u64>,
}

fn parse_error(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn periodic_wire(p: &PeriodicSet) -> EpWire {
    EpWire {
        n0: p.n0(),
        p: p.period(),
        res: p.residues().to_vec(),
        exc_in: p.exceptions_in().to_vec(),
        exc_out: p.exceptions_out().to_vec(),
    }
}

fn sparse_wire(s: &SparseSet) -> RuleWire {
    RuleWire {
        name: s.rule,
        after: s.after,
    }
}

/// Serializes an [`IntegerSet`] in its canonical form.
pub struct SetJson<'a>(pub &'a IntegerSet);

impl Serialize for SetJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match self.0 {
            IntegerSet::Finite(f) => SetWire::Finite(f.elements().to_vec()),
            IntegerSet::Periodic(p) => SetWire::Ep(periodic_wire(p)),
            IntegerSet::Sparse(sp) => SetWire::Rule(sparse_wire(sp)),
            IntegerSet::Window(w) => SetWire::Window(WindowWire {
                h: w.horizon(),
                elements: w.elements().to_vec(),
            }),
        };
        wire.serialize(s)
    }
}

pub fn decode_set(value: Value) -> Result<IntegerSet> {
    match serde_json::from_value::<SetWire>(value).map_err(parse_error)? {
        SetWire::Finite(elements) => IntegerSet::finite(elements),
        SetWire::Ep(ep) => IntegerSet::eventually_periodic(ep.n0, ep.p, &ep.res, &ep.exc_in, &ep.exc_out),
        SetWire::Rule(rule) => Ok(IntegerSet::sparse(rule.name).tail_after(rule.after)),
        SetWire::Window(w) => IntegerSet::window(w.h, w.elements),
    }
}

pub fn parse_set(text: &str) -> Result<IntegerSet> {
    decode_set(serde_json::from_str(text).map_err(parse_error)?)
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum IdealWire {
    Fin,
    Density,
    Summable {
        #[serde(default = "harmonic_power")]
        power: u32,
    },
    Exh {
        phi: BuiltinSubmeasure,
    },
}

fn harmonic_power() -> u32 {
    1
}

/// Serializes an [`IdealSpec`]. Black-box submeasures are written by label.
pub struct IdealJson<'a>(pub &'a IdealSpec);

impl Serialize for IdealJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Ideal", 3)?;
        st.serialize_field("kind", self.0.kind())?;
        match self.0 {
            IdealSpec::Fin | IdealSpec::DensityZero => {}
            IdealSpec::Summable(w) => st.serialize_field("power", &w.power)?,
            IdealSpec::Exh { phi, normalization } => {
                st.serialize_field("phi", &phi.label())?;
                st.serialize_field("normalization", &normalization.as_ref().map(rational::format))?;
            }
        }
        st.end()
    }
}

pub fn decode_ideal(value: Value) -> Result<IdealSpec> {
    match serde_json::from_value::<IdealWire>(value).map_err(parse_error)? {
        IdealWire::Fin => Ok(IdealSpec::Fin),
        IdealWire::Density => Ok(IdealSpec::DensityZero),
        IdealWire::Summable { power } => Ok(IdealSpec::Summable(SummableWeights::new(power)?)),
        IdealWire::Exh { phi } => {
            if let BuiltinSubmeasure::Geometric { ratio } = &phi {
                BuiltinSubmeasure::geometric(ratio.clone())?;
            }
            IdealSpec::exh(Arc::new(phi))
        }
    }
}

/// Serializes a [`FiniteCapacity`] with entries in increasing mask order.
pub struct CapacityJson<'a>(pub &'a FiniteCapacity);

struct CapacityValues<'a>(&'a FiniteCapacity);

impl Serialize for CapacityValues<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.values().len()))?;
        for (mask, value) in self.0.values().iter().enumerate() {
            map.serialize_entry(&mask.to_string(), &rational::format(value))?;
        }
        map.end()
    }
}

impl Serialize for CapacityJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Capacity", 2)?;
        st.serialize_field("n", &self.0.n())?;
        st.serialize_field("values", &CapacityValues(self.0))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CapacityWire {
    n: usize,
    values: HashMap<String, String>,
}

/// Decodes a capacity table. The table is not validated.
pub fn decode_capacity(value: Value) -> Result<FiniteCapacity> {
    let wire: CapacityWire = serde_json::from_value(value).map_err(parse_error)?;
    let entries = wire
        .values
        .iter()
        .map(|(k, v)| {
            let mask = k
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("subset key {k:?} is not a bitmask")))?;
            Ok((mask, rational::parse(v)?))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteCapacity::from_entries(wire.n, entries)
}

pub fn decode_rational(value: &Value) -> Result<Rational> {
    match value {
        Value::String(s) => rational::parse(s),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().expect("checked"))),
        other => Err(Error::Parse(format!("expected a rational string, got {other}"))),
    }
}

/// Accepts rational strings or JSON integers.
pub fn decode_vector(value: Value) -> Result<Vector> {
    match value {
        Value::Array(items) => Ok(Vector::new(items.iter().map(decode_rational).collect::<Result<_>>()?)),
        other => Err(Error::Parse(format!("expected an array, got {other}"))),
    }
}

pub struct VectorJson<'a>(pub &'a [Rational]);

impl Serialize for VectorJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(rational::format))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoordsWire {
    n: usize,
    #[serde(rename = "K")]
    k: Vec<usize>,
}

pub fn decode_coordinate_ideal(value: Value) -> Result<CoordinateIdeal> {
    let wire: CoordsWire = serde_json::from_value(value).map_err(parse_error)?;
    if wire.k.contains(&0) {
        return Err(Error::InvalidIdeal("K is 1-based".into()));
    }
    CoordinateIdeal::new(wire.n, wire.k.iter().map(|i| i - 1))
}

pub struct CoordinateIdealJson<'a>(pub &'a CoordinateIdeal);

impl Serialize for CoordinateIdealJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CoordinateIdeal", 2)?;
        st.serialize_field("n", &self.0.n())?;
        let k: Vec<usize> = self.0.zero_set().iter().map(|i| i + 1).collect();
        st.serialize_field("K", &k)?;
        st.end()
    }
}

#[derive(Serialize)]
struct AtomJson<'a> {
    set: SetJson<'a>,
    null: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    estimate: bool,
}

#[derive(Serialize)]
struct PairJson<'a>(SetJson<'a>, SetJson<'a>);

/// `{"atoms": [..], "rho": .. | null, "counterexample": [A, B] | null,
/// "residual_max": ..}`; `rho` is indexed by position among the non-null
/// atoms, listed in `"non_null"`.
#[derive(Serialize)]
pub struct RepresentJson<'a> {
    atoms: Vec<AtomJson<'a>>,
    non_null: Vec<usize>,
    rho: Option<CapacityJson<'a>>,
    counterexample: Option<PairJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample_values: Option<[String; 2]>,
    residual_max: String,
    unions_checked: Option<usize>,
}

impl<'a> RepresentJson<'a> {
    pub fn new(algebra: &'a Subalgebra, cert: &'a RepresentationCertificate) -> Self {
        let atoms = algebra
            .atoms()
            .iter()
            .map(|a| AtomJson {
                set: SetJson(&a.set),
                null: a.status == AtomStatus::Null,
                estimate: a.status == AtomStatus::Estimate,
            })
            .collect();
        let rho = cert.rho();
        RepresentJson {
            atoms,
            non_null: algebra.non_null(),
            rho: rho.map(|r| CapacityJson(&r.rho)),
            counterexample: cert.counterexample().map(|p| PairJson(SetJson(&p.a), SetJson(&p.b))),
            counterexample_values: cert
                .counterexample()
                .map(|p: &CounterexamplePair| [rational::format(&p.nu_a), rational::format(&p.nu_b)]),
            residual_max: rational::format(cert.residual_max()),
            unions_checked: rho.map(|r| r.unions_checked),
        }
    }
}

#[derive(Serialize)]
pub struct RoundtripJson<'a> {
    ideal: CoordinateIdealJson<'a>,
    pass: bool,
    properties: Option<&'a PropertyReport>,
    coset_witness: Option<&'a CosetWitness>,
    capacity: CapacityJson<'a>,
    validation: &'a ValidationReport,
    trials: usize,
    max_residual: String,
}

impl<'a> RoundtripJson<'a> {
    pub fn new(report: &'a RoundtripReport) -> Self {
        RoundtripJson {
            ideal: CoordinateIdealJson(&report.ideal),
            pass: report.pass(),
            properties: report.properties.as_ref(),
            coset_witness: report.coset_witness.as_ref(),
            capacity: CapacityJson(&report.capacity),
            validation: &report.validation,
            trials: report.trials,
            max_residual: rational::format(&report.max_residual),
        }
    }
}

#[cfg(test)]
mod tests {
    use serde_json::json;

    use super::*;
    use crate::rational::ratio;

    fn roundtrip(set: &IntegerSet) -> IntegerSet {
        decode_set(serde_json::to_value(SetJson(set)).unwrap()).unwrap()
    }

    #[test]
    fn sets_roundtrip() {
        let sets = vec![
            IntegerSet::empty(),
            IntegerSet::finite([1, 5, 9]).unwrap(),
            IntegerSet::evens(),
            IntegerSet::eventually_periodic(10, 3, &[1], &[2, 6], &[7]).unwrap(),
            IntegerSet::sparse(SparseRule::Squares).tail_after(20),
            IntegerSet::block_window(64),
        ];
        for set in &sets {
            assert_eq!(&roundtrip(set), set);
        }
    }

    #[test]
    fn set_encoding_is_canonical() {
        let set = parse_set(r#"{"ep":{"n0":5,"p":4,"res":[0,2],"exc_in":[1],"exc_out":[]}}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&SetJson(&set)).unwrap(),
            r#"{"ep":{"n0":2,"p":2,"res":[0],"exc_in":[1],"exc_out":[]}}"#
        );
        assert_eq!(serde_json::to_string(&SetJson(&IntegerSet::interval(3))).unwrap(), r#"{"finite":[1,2,3]}"#);
    }

    #[test]
    fn bad_sets_rejected() {
        assert!(parse_set(r#"{"finite":[0]}"#).is_err());
        assert!(parse_set(r#"{"ep":{"n0":1,"p":2,"res":[2]}}"#).is_err());
        assert!(parse_set(r#"{"ep":{"n0":3,"p":2,"res":[0],"exc_in":[1],"exc_out":[1]}}"#).is_err());
        assert!(parse_set(r#"{"cofinite":[1]}"#).is_err());
    }

    #[test]
    fn ideals_decode() {
        assert_eq!(decode_ideal(json!({"kind":"fin"})).unwrap().kind(), "fin");
        assert_eq!(decode_ideal(json!({"kind":"summable"})).unwrap().kind(), "summable");
        assert!(decode_ideal(json!({"kind":"summable","power":2})).is_err());
        assert!(decode_ideal(json!({"kind":"exh","phi":{"type":"sup-density"}})).is_ok());
        assert!(decode_ideal(json!({"kind":"exh","phi":{"type":"geometric","ratio":"1/2"}})).is_err());
        assert!(decode_ideal(json!({"kind":"exh","phi":{"type":"geometric","ratio":"3/2"}})).is_err());
    }

    #[test]
    fn capacity_roundtrip_in_mask_order() {
        let nu = FiniteCapacity::uniform(4).unwrap();
        let text = serde_json::to_string(&CapacityJson(&nu)).unwrap();
        assert!(text.starts_with(r#"{"n":4,"values":{"0":"0","1":"1/4","2":"1/4","3":"1/2","4":"1/4""#));
        assert!(text.find(r#""10""#).unwrap() > text.find(r#""9""#).unwrap());
        assert_eq!(decode_capacity(serde_json::from_str(&text).unwrap()).unwrap(), nu);
    }

    #[test]
    fn capacity_missing_entry() {
        let value = json!({"n": 2, "values": {"0": "0", "1": "1/2", "3": "1"}});
        assert_eq!(decode_capacity(value), Err(Error::MissingSubset(2)));
    }

    #[test]
    fn vectors_and_coordinates() {
        let v = decode_vector(json!(["1/2", 3, "-4/6"])).unwrap();
        assert_eq!(v.entries(), &[ratio(1, 2), ratio(3, 1), ratio(-2, 3)]);
        assert_eq!(serde_json::to_string(&VectorJson(v.entries())).unwrap(), r#"["1/2","3","-2/3"]"#);
        let k = decode_coordinate_ideal(json!({"n": 3, "K": [1, 3]})).unwrap();
        assert_eq!(k.zero_set(), &[0, 2]);
        assert_eq!(serde_json::to_string(&CoordinateIdealJson(&k)).unwrap(), r#"{"n":3,"K":[1,3]}"#);
        assert!(decode_coordinate_ideal(json!({"n": 3, "K": [0]})).is_err());
    }
}

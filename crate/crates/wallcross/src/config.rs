//! Declarative JSON ingestion for surface descriptions and invariants, and
//! exact serialization helpers.
//!
//! Rationals travel as `"p/q"` strings (or plain JSON integers); floating
//! point input is rejected so that round trips are exact.  Surface files
//! look like:
//!
//! ```json
//! {
//!   "g": 0,
//!   "e_chi": 1,
//!   "multiple_fibers": [2, 2],
//!   "gram": [[-1, 1], [1, 0]],
//!   "f": [0, 1],
//!   "H": [1, 3],
//!   "sigma": [1, 0],
//!   "fiber_lattices": [
//!     {
//!       "fiber_id": "I2",
//!       "multiplicity": 1,
//!       "components": [[0, 0, 1]],
//!       "comp_multiplicities": [1]
//!     }
//!   ],
//!   "h11": 10,
//!   "kodaira_dimension_one": false
//! }
//! ```
//!
//! `sigma`, `fiber_lattices`, `h11`, `multiple_fibers` and
//! `kodaira_dimension_one` are optional.  Chern vectors are
//! `{"r": int, "xi": [rationals], "a": int}`.

use crate::chern::ChernVector;
use crate::error::Error;
use crate::lattice::{DivisorClass, FiberComponentLattice, SurfaceGeometry};
use crate::rat::{self, Rat};
use crate::Result;
use serde_json::{Map, Value};

/// Parse a JSON value into an exact rational: integers or `"p/q"` strings.
pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat::ratio_int(i as i128))
            } else {
                Err(Error::Parse(format!(
                    "non-integral JSON number `{n}`; write rationals as \"p/q\" strings"
                )))
            }
        }
        Value::String(s) => rat::rat_from_str(s)
            .ok_or_else(|| Error::Parse(format!("cannot parse rational from `{s}`"))),
        other => Err(Error::Parse(format!(
            "expected rational (integer or \"p/q\"), got {other}"
        ))),
    }
}

/// Emit a rational as its canonical JSON form: a number when integral and
/// small enough, otherwise a `"p/q"` string.
pub fn rat_to_json(r: &Rat) -> Value {
    if rat::is_integer(r) {
        if let Ok(small) = i64::try_from(*r.numer()) {
            return Value::from(small);
        }
    }
    Value::String(rat::rat_to_string(r))
}

fn rat_vec_from_json(v: &Value, what: &str) -> Result<Vec<Rat>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?;
    arr.iter().map(rat_from_json).collect()
}

pub fn divisor_to_json(d: &DivisorClass) -> Value {
    Value::Array(d.0.iter().map(rat_to_json).collect())
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn get_u32(obj: &Map<String, Value>, key: &str) -> Result<u32> {
    get(obj, key)?
        .as_u64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::Parse(format!("field `{key}` must be a small nonnegative integer")))
}

fn get_i128(obj: &Map<String, Value>, key: &str) -> Result<i128> {
    get(obj, key)?
        .as_i64()
        .map(|v| v as i128)
        .ok_or_else(|| Error::Parse(format!("field `{key}` must be an integer")))
}

/// Parse and validate a surface description.
pub fn surface_from_json(v: &Value) -> Result<SurfaceGeometry> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("surface description must be a JSON object".into()))?;
    let g = get_u32(obj, "g")?;
    let e_chi = get_u32(obj, "e_chi")?;
    let multiple_fibers = match obj.get("multiple_fibers") {
        None | Some(Value::Null) => vec![],
        Some(Value::Array(arr)) => arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|v| u32::try_from(v).ok())
                    .ok_or_else(|| Error::Parse("multiple_fibers entries must be integers".into()))
            })
            .collect::<Result<Vec<u32>>>()?,
        Some(other) => {
            return Err(Error::Parse(format!(
                "multiple_fibers must be an array, got {other}"
            )))
        }
    };
    let gram_val = get(obj, "gram")?
        .as_array()
        .ok_or_else(|| Error::Parse("gram must be an array of rows".into()))?;
    let gram: Vec<Vec<Rat>> = gram_val
        .iter()
        .enumerate()
        .map(|(i, row)| rat_vec_from_json(row, &format!("gram row {i}")))
        .collect::<Result<_>>()?;
    let f = DivisorClass(rat_vec_from_json(get(obj, "f")?, "f")?);
    let h = DivisorClass(rat_vec_from_json(get(obj, "H")?, "H")?);
    let sigma = match obj.get("sigma") {
        None | Some(Value::Null) => None,
        Some(v) => Some(DivisorClass(rat_vec_from_json(v, "sigma")?)),
    };
    let fiber_lattices = match obj.get("fiber_lattices") {
        None | Some(Value::Null) => vec![],
        Some(Value::Array(arr)) => arr
            .iter()
            .map(fiber_lattice_from_json)
            .collect::<Result<Vec<_>>>()?,
        Some(other) => {
            return Err(Error::Parse(format!(
                "fiber_lattices must be an array, got {other}"
            )))
        }
    };
    let h11 = match obj.get("h11") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(
            || Error::Parse("h11 must be a nonnegative integer".into()),
        )?),
    };
    let kodaira = match obj.get("kodaira_dimension_one") {
        None | Some(Value::Null) => false,
        Some(Value::Bool(b)) => *b,
        Some(other) => {
            return Err(Error::Parse(format!(
                "kodaira_dimension_one must be a boolean, got {other}"
            )))
        }
    };
    SurfaceGeometry::new(
        g,
        e_chi,
        multiple_fibers,
        gram,
        f,
        h,
        sigma,
        fiber_lattices,
        h11,
        kodaira,
    )
}

fn fiber_lattice_from_json(v: &Value) -> Result<FiberComponentLattice> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("fiber lattice must be a JSON object".into()))?;
    let fiber_id = get(obj, "fiber_id")?
        .as_str()
        .ok_or_else(|| Error::Parse("fiber_id must be a string".into()))?
        .to_string();
    let multiplicity = match obj.get("multiplicity") {
        None => 1,
        Some(v) => v
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| Error::Parse("multiplicity must be an integer".into()))?,
    };
    let components = match get(obj, "components")? {
        Value::Array(arr) => arr
            .iter()
            .enumerate()
            .map(|(i, row)| {
                rat_vec_from_json(row, &format!("component {i} of `{fiber_id}`")).map(DivisorClass)
            })
            .collect::<Result<Vec<_>>>()?,
        other => {
            return Err(Error::Parse(format!(
                "components must be an array, got {other}"
            )))
        }
    };
    let comp_multiplicities = match get(obj, "comp_multiplicities")? {
        Value::Array(arr) => arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|v| u32::try_from(v).ok())
                    .ok_or_else(|| {
                        Error::Parse("comp_multiplicities entries must be integers".into())
                    })
            })
            .collect::<Result<Vec<u32>>>()?,
        other => {
            return Err(Error::Parse(format!(
                "comp_multiplicities must be an array, got {other}"
            )))
        }
    };
    Ok(FiberComponentLattice {
        fiber_id,
        multiplicity,
        components,
        comp_multiplicities,
    })
}

/// Canonical JSON for a surface; re-ingesting yields the identical value.
pub fn surface_to_json(s: &SurfaceGeometry) -> Value {
    let mut obj = Map::new();
    obj.insert("g".into(), Value::from(s.g));
    obj.insert("e_chi".into(), Value::from(s.e_chi));
    obj.insert(
        "multiple_fibers".into(),
        Value::Array(s.multiple_fibers.iter().map(|&m| Value::from(m)).collect()),
    );
    obj.insert(
        "gram".into(),
        Value::Array(
            s.gram
                .iter()
                .map(|row| Value::Array(row.iter().map(rat_to_json).collect()))
                .collect(),
        ),
    );
    obj.insert("f".into(), divisor_to_json(&s.f));
    obj.insert("H".into(), divisor_to_json(&s.h));
    if let Some(sigma) = &s.sigma {
        obj.insert("sigma".into(), divisor_to_json(sigma));
    }
    obj.insert(
        "fiber_lattices".into(),
        Value::Array(
            s.fiber_lattices
                .iter()
                .map(|lat| {
                    let mut o = Map::new();
                    o.insert("fiber_id".into(), Value::from(lat.fiber_id.clone()));
                    o.insert("multiplicity".into(), Value::from(lat.multiplicity));
                    o.insert(
                        "components".into(),
                        Value::Array(lat.components.iter().map(divisor_to_json).collect()),
                    );
                    o.insert(
                        "comp_multiplicities".into(),
                        Value::Array(
                            lat.comp_multiplicities
                                .iter()
                                .map(|&a| Value::from(a))
                                .collect(),
                        ),
                    );
                    Value::Object(o)
                })
                .collect(),
        ),
    );
    if let Some(h11) = s.h11 {
        obj.insert("h11".into(), Value::from(h11));
    }
    obj.insert(
        "kodaira_dimension_one".into(),
        Value::from(s.kodaira_dimension_one),
    );
    Value::Object(obj)
}

/// Parse `{"r": int, "xi": [rationals], "a": int}`.
pub fn chern_from_json(v: &Value) -> Result<ChernVector> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("chern vector must be a JSON object".into()))?;
    let r = get_i128(obj, "r")?;
    let a = get_i128(obj, "a")?;
    let xi = DivisorClass(rat_vec_from_json(get(obj, "xi")?, "xi")?);
    Ok(ChernVector { r, xi, a })
}

pub fn chern_to_json(e: &ChernVector) -> Value {
    let mut obj = Map::new();
    obj.insert("r".into(), Value::from(e.r as i64));
    obj.insert("xi".into(), divisor_to_json(&e.xi));
    obj.insert("a".into(), Value::from(e.a as i64));
    Value::Object(obj)
}

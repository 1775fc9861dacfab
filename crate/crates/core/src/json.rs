//! JSON forms of exact numbers, polynomials and families.
//!
//! Numbers are written as `{"num": "...", "den": "...", "decimal": 1.25}`.
//! On input, plain JSON numbers (read from their literal text, so `7.6657` is
//! exactly 76657/10000), strings like `"1/3"` and the object form are all
//! accepted. Polynomials are read either from an ascending coefficient array or
//! from descending text such as `"s^4+89s^3+56s^2+88s+1"`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Result, SprError};
use crate::families::{IntervalQuartic, Segment};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// Exact rational wrapper with the dual rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactNumber(pub Rational);

impl Serialize for ExactNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        exact::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for ExactNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        exact::deserialize(d).map(ExactNumber)
    }
}

pub fn rational_to_value(r: &Rational) -> Value {
    // decimal is a rounded float rendering, for humans only
    let decimal: Value =
        serde_json::from_str(&format_f64(rational::to_f64(r))).unwrap_or(Value::Null);
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "decimal": decimal,
    })
}

fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        "null".to_string()
    }
}

pub fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => rational::parse_rational(&n.to_string()),
        Value::String(s) => rational::parse_rational(s),
        Value::Object(map) => {
            let part = |key: &str| -> Result<Rational> {
                map.get(key)
                    .ok_or_else(|| SprError::Parse(format!("exact number is missing '{key}'")))
                    .and_then(rational_from_value)
            };
            if map.contains_key("num") {
                let num = part("num")?;
                let den = match map.get("den") {
                    Some(_) => part("den")?,
                    None => Rational::from_integer(1.into()),
                };
                if num_traits::Zero::is_zero(&den) {
                    return Err(SprError::Parse("zero denominator".into()));
                }
                Ok(num / den)
            } else if let Some(d) = map.get("decimal") {
                rational_from_value(d)
            } else {
                Err(SprError::Parse(format!("not an exact number: {v}")))
            }
        }
        other => Err(SprError::Parse(format!("expected a number, got {other}"))),
    }
}

/// `#[serde(with = "crate::json::exact")]` for `Rational` fields.
pub mod exact {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_to_value(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_value(&v).map_err(D::Error::custom)
    }
}

pub fn polynomial_to_value(p: &Polynomial) -> Value {
    json!({
        "text": p.to_string(),
        "ascending": p.coeffs().iter().map(rational_to_value).collect::<Vec<_>>(),
    })
}

pub fn polynomial_from_value(v: &Value) -> Result<Polynomial> {
    match v {
        Value::String(s) => s.parse(),
        Value::Array(items) => items
            .iter()
            .map(rational_from_value)
            .collect::<Result<Vec<_>>>()
            .map(Polynomial::new),
        Value::Object(map) => {
            if let Some(a) = map.get("ascending") {
                polynomial_from_value(a)
            } else if let Some(t) = map.get("text") {
                polynomial_from_value(t)
            } else {
                Err(SprError::Parse(format!("not a polynomial: {v}")))
            }
        }
        other => Err(SprError::Parse(format!(
            "expected a polynomial, got {other}"
        ))),
    }
}

/// `#[serde(with = "crate::json::poly")]` for `Polynomial` fields.
pub mod poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
        polynomial_to_value(p).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Polynomial, D::Error> {
        let v = Value::deserialize(d)?;
        polynomial_from_value(&v).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "crate::json::poly_vec")]` for `Vec<Polynomial>` fields.
pub mod poly_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        ps: &[Polynomial],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ps.iter()
            .map(polynomial_to_value)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Polynomial>, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        v.iter()
            .map(polynomial_from_value)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)
    }
}

fn four(v: &Value, key: &str) -> Result<[Rational; 4]> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| SprError::Parse(format!("missing array '{key}'")))?;
    if arr.len() != 4 {
        return Err(SprError::InvalidInput(format!(
            "'{key}' must hold four bounds [a1, a2, a3, a4], got {}",
            arr.len()
        )));
    }
    let vals = arr
        .iter()
        .map(rational_from_value)
        .collect::<Result<Vec<_>>>()?;
    Ok(vals.try_into().expect("length checked"))
}

/// `{"degree": 4, "lower": [a1, a2, a3, a4], "upper": [...]}`.
pub fn interval_from_value(v: &Value) -> Result<IntervalQuartic> {
    if let Some(d) = v.get("degree") {
        if d.as_u64() != Some(4) {
            return Err(SprError::InvalidInput(format!(
                "only degree-4 interval families are supported, got degree {d}"
            )));
        }
    }
    IntervalQuartic::new(four(v, "lower")?, four(v, "upper")?)
}

pub fn interval_to_value(k: &IntervalQuartic) -> Value {
    json!({
        "degree": 4,
        "lower": k.lower().iter().map(rational_to_value).collect::<Vec<_>>(),
        "upper": k.upper().iter().map(rational_to_value).collect::<Vec<_>>(),
    })
}

/// `{"endA": [...], "endB": [...]}` with ascending coefficient arrays.
pub fn segment_from_value(v: &Value) -> Result<Segment> {
    let end = |key: &str| -> Result<Polynomial> {
        v.get(key)
            .ok_or_else(|| SprError::Parse(format!("segment is missing '{key}'")))
            .and_then(polynomial_from_value)
    };
    Segment::new(end("endA")?, end("endB")?)
}

pub fn segment_to_value(seg: &Segment) -> Value {
    json!({
        "endA": seg.end_a().coeffs().iter().map(rational_to_value).collect::<Vec<_>>(),
        "endB": seg.end_b().coeffs().iter().map(rational_to_value).collect::<Vec<_>>(),
    })
}

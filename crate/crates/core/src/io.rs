//! JSON formats.
//!
//! Functions on R/Z:
//! `{"f": "1/2", "breakpoints": ["0", ...], "values": ["0", ...]}`.
//! Functions on a cyclic group:
//! `{"N": 8, "f_index": 4, "values": ["0", "1/2", ...]}`.
//! Rationals are always strings of the form `"p/q"` or `"n"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::FiniteGroupFunction;
use crate::pwl::PwlPeriodic;
use crate::rational::{format_rational, parse_rational, Rational};

/// Serde adapter for a single rational string.
pub mod rational_str {
    use super::*;
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter for a list of rational strings.
pub mod rational_vec {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionJson {
    #[serde(with = "rational_str")]
    pub f: Rational,
    #[serde(with = "rational_vec")]
    pub breakpoints: Vec<Rational>,
    #[serde(with = "rational_vec")]
    pub values: Vec<Rational>,
}

impl From<&PwlPeriodic> for FunctionJson {
    fn from(pi: &PwlPeriodic) -> Self {
        FunctionJson {
            f: pi.f().clone(),
            breakpoints: pi.breakpoints().to_vec(),
            values: pi.values().to_vec(),
        }
    }
}

impl TryFrom<FunctionJson> for PwlPeriodic {
    type Error = Error;

    fn try_from(j: FunctionJson) -> Result<Self> {
        PwlPeriodic::from_breakpoints(j.breakpoints, j.values, j.f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub f_index: usize,
    #[serde(with = "rational_vec")]
    pub values: Vec<Rational>,
}

impl From<&FiniteGroupFunction> for GroupJson {
    fn from(h: &FiniteGroupFunction) -> Self {
        GroupJson {
            n: h.order(),
            f_index: h.f_index(),
            values: h.values().to_vec(),
        }
    }
}

impl TryFrom<GroupJson> for FiniteGroupFunction {
    type Error = Error;

    fn try_from(j: GroupJson) -> Result<Self> {
        if j.values.len() != j.n {
            return Err(Error::InvalidGroupFunction(format!(
                "N = {} but {} values given",
                j.n,
                j.values.len()
            )));
        }
        FiniteGroupFunction::new(j.values, j.f_index)
    }
}

pub fn function_to_json(pi: &PwlPeriodic) -> String {
    serde_json::to_string_pretty(&FunctionJson::from(pi)).expect("serializable")
}

pub fn function_from_json(s: &str) -> Result<PwlPeriodic> {
    let j: FunctionJson = serde_json::from_str(s)?;
    j.try_into()
}

pub fn group_to_json(h: &FiniteGroupFunction) -> String {
    serde_json::to_string_pretty(&GroupJson::from(h)).expect("serializable")
}

pub fn group_from_json(s: &str) -> Result<FiniteGroupFunction> {
    let j: GroupJson = serde_json::from_str(s)?;
    j.try_into()
}

/// Either kind of function, told apart by the keys present.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyFunction {
    Infinite(PwlPeriodic),
    Finite(FiniteGroupFunction),
}

pub fn any_from_json(s: &str) -> Result<AnyFunction> {
    let v: serde_json::Value = serde_json::from_str(s)?;
    if v.get("breakpoints").is_some() {
        let j: FunctionJson = serde_json::from_value(v)?;
        Ok(AnyFunction::Infinite(j.try_into()?))
    } else {
        let j: GroupJson = serde_json::from_value(v)?;
        Ok(AnyFunction::Finite(j.try_into()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    const GJ: &str = r#"{"f": "1/2", "breakpoints": ["0","1/6","1/3","1/2","1"], "values": ["0","2/3","1/3","1","0"]}"#;

    #[test]
    fn parses_documented_example() {
        let pi = function_from_json(GJ).unwrap();
        assert_eq!(pi.breakpoints()[1], rat(1, 6));
        assert_eq!(pi.values()[3], int(1));
        let again = function_from_json(&function_to_json(&pi)).unwrap();
        assert_eq!(again, pi);
    }

    #[test]
    fn field_order_is_f_breakpoints_values() {
        let pi = function_from_json(GJ).unwrap();
        let s = serde_json::to_string(&FunctionJson::from(&pi)).unwrap();
        assert_eq!(
            s,
            r#"{"f":"1/2","breakpoints":["0","1/6","1/3","1/2","1"],"values":["0","2/3","1/3","1","0"]}"#
        );
    }

    #[test]
    fn rejects_floats_and_numbers() {
        let bad = GJ.replace("\"1/6\"", "\"0.1666\"");
        assert!(function_from_json(&bad).is_err());
        let bad = GJ.replace("\"1/6\"", "0.25");
        assert!(function_from_json(&bad).is_err());
    }

    #[test]
    fn group_json_round_trip() {
        let s = r#"{"N": 2, "f_index": 1, "values": ["0", "1"]}"#;
        let h = group_from_json(s).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(group_from_json(&group_to_json(&h)).unwrap(), h);
        assert!(group_from_json(r#"{"N": 3, "f_index": 1, "values": ["0", "1"]}"#).is_err());
        assert!(matches!(any_from_json(s).unwrap(), AnyFunction::Finite(_)));
        assert!(matches!(any_from_json(GJ).unwrap(), AnyFunction::Infinite(_)));
    }
}

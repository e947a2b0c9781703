//! Typed parameter schemas for every subcommand.

use crate::error::{CliError, CliResult};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy)]
pub enum Kind {
    Int { min: i64, max: i64 },
    /// Inclusive bounds unless `open` is set, in which case the lower bound
    /// is exclusive.
    Real { min: f64, max: f64, open: bool },
    IntList { len: Option<usize> },
    RealList { min: f64, max: f64 },
    Choice(&'static [&'static str]),
    Text,
}

#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub name: &'static str,
    pub kind: Kind,
    pub default: Option<&'static str>,
    pub help: &'static str,
}

pub const fn int(name: &'static str, min: i64, max: i64, default: Option<&'static str>, help: &'static str) -> Param {
    Param {
        name,
        kind: Kind::Int { min, max },
        default,
        help,
    }
}

pub const fn real(name: &'static str, min: f64, max: f64, default: Option<&'static str>, help: &'static str) -> Param {
    Param {
        name,
        kind: Kind::Real { min, max, open: false },
        default,
        help,
    }
}

/// Real parameter that must be strictly above `min`.
pub const fn positive(name: &'static str, max: f64, default: Option<&'static str>, help: &'static str) -> Param {
    Param {
        name,
        kind: Kind::Real {
            min: 0.0,
            max,
            open: true,
        },
        default,
        help,
    }
}

pub const fn choice(
    name: &'static str,
    options: &'static [&'static str],
    default: Option<&'static str>,
    help: &'static str,
) -> Param {
    Param {
        name,
        kind: Kind::Choice(options),
        default,
        help,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    IntList(Vec<i64>),
    RealList(Vec<f64>),
    Text(String),
}

impl Value {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Int(v) => (*v).into(),
            Value::Real(v) => (*v).into(),
            Value::IntList(v) => v.clone().into(),
            Value::RealList(v) => v.clone().into(),
            Value::Text(v) => v.clone().into(),
        }
    }
}

fn parse_list<T: std::str::FromStr>(name: &str, raw: &str) -> CliResult<Vec<T>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Schema(format!("{name}: cannot parse list element {s:?}")))
        })
        .collect()
}

impl Param {
    pub fn parse(&self, raw: &str) -> CliResult<Value> {
        let name = self.name;
        let bad = |what: &str| CliError::Schema(format!("{name}: {what} (got {raw:?})"));
        match self.kind {
            Kind::Int { min, max } => {
                let v: i64 = raw.trim().parse().map_err(|_| bad("expected an integer"))?;
                if v < min || v > max {
                    return Err(bad(&format!("must lie in [{min}, {max}]")));
                }
                Ok(Value::Int(v))
            }
            Kind::Real { min, max, open } => {
                let v: f64 = raw.trim().parse().map_err(|_| bad("expected a number"))?;
                let low_ok = if open { v > min } else { v >= min };
                if !v.is_finite() || !low_ok || v > max {
                    let lo = if open { "(" } else { "[" };
                    return Err(bad(&format!("must lie in {lo}{min}, {max}]")));
                }
                Ok(Value::Real(v))
            }
            Kind::IntList { len } => {
                let v: Vec<i64> = parse_list(name, raw)?;
                match len {
                    Some(l) if v.len() != l => Err(bad(&format!("expected {l} comma-separated integers"))),
                    _ if v.is_empty() => Err(bad("expected at least one value")),
                    _ => Ok(Value::IntList(v)),
                }
            }
            Kind::RealList { min, max } => {
                let v: Vec<f64> = parse_list(name, raw)?;
                if v.is_empty() || v.iter().any(|x| !(x.is_finite() && *x >= min && *x <= max)) {
                    return Err(bad(&format!("expected comma-separated numbers in [{min}, {max}]")));
                }
                Ok(Value::RealList(v))
            }
            Kind::Choice(options) => {
                if options.contains(&raw) {
                    Ok(Value::Text(raw.to_string()))
                } else {
                    Err(bad(&format!("expected one of {}", options.join(", "))))
                }
            }
            Kind::Text => Ok(Value::Text(raw.to_string())),
        }
    }
}

/// Validated parameter values.
#[derive(Debug, Clone, Default)]
pub struct Params {
    values: BTreeMap<String, Value>,
}

impl Params {
    /// Validates raw strings against `schema`; unknown keys and missing
    /// required values are schema errors.
    pub fn validate(schema: &[Param], raw: &BTreeMap<String, String>) -> CliResult<Params> {
        for key in raw.keys() {
            if !schema.iter().any(|p| p.name == key) {
                return Err(CliError::Schema(format!("unknown parameter {key:?}")));
            }
        }
        let mut values = BTreeMap::new();
        for p in schema {
            match raw.get(p.name).map(String::as_str).or(p.default) {
                Some(s) => {
                    values.insert(p.name.to_string(), p.parse(s)?);
                }
                None if matches!(p.kind, Kind::Text) => {}
                None => return Err(CliError::Schema(format!("missing required parameter {:?}", p.name))),
            }
        }
        Ok(Params { values })
    }

    pub fn int(&self, name: &str) -> i64 {
        match self.values.get(name) {
            Some(Value::Int(v)) => *v,
            other => panic!("parameter {name} is not an integer: {other:?}"),
        }
    }

    pub fn usize(&self, name: &str) -> usize {
        self.int(name) as usize
    }

    pub fn real(&self, name: &str) -> f64 {
        match self.values.get(name) {
            Some(Value::Real(v)) => *v,
            other => panic!("parameter {name} is not a real: {other:?}"),
        }
    }

    pub fn ints(&self, name: &str) -> &[i64] {
        match self.values.get(name) {
            Some(Value::IntList(v)) => v,
            other => panic!("parameter {name} is not an integer list: {other:?}"),
        }
    }

    pub fn reals(&self, name: &str) -> &[f64] {
        match self.values.get(name) {
            Some(Value::RealList(v)) => v,
            other => panic!("parameter {name} is not a real list: {other:?}"),
        }
    }

    pub fn text(&self, name: &str) -> Option<&str> {
        match self.values.get(name) {
            Some(Value::Text(v)) => Some(v),
            None => None,
            other => panic!("parameter {name} is not text: {other:?}"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.values.iter().map(|(k, v)| (k.clone(), v.to_json())).collect::<serde_json::Map<_, _>>().into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_bounds() {
        let p = int("n", 1, 10, None, "");
        assert_eq!(p.parse("4").unwrap(), Value::Int(4));
        assert!(p.parse("0").is_err());
        assert!(p.parse("x").is_err());
        let q = positive("mu", 100.0, None, "");
        assert!(q.parse("0").is_err());
        assert_eq!(q.parse("2.5").unwrap(), Value::Real(2.5));
        assert!(q.parse("nan").is_err());
        let l = Param {
            name: "z",
            kind: Kind::IntList { len: Some(2) },
            default: None,
            help: "",
        };
        assert_eq!(l.parse("-2,2").unwrap(), Value::IntList(vec![-2, 2]));
        assert!(l.parse("1,2,3").is_err());
    }

    #[test]
    fn unknown_and_missing_keys() {
        let schema = [int("n", 1, 10, None, ""), int("k", 1, 10, Some("1"), "")];
        let mut raw = BTreeMap::new();
        assert!(Params::validate(&schema, &raw).is_err());
        raw.insert("n".to_string(), "3".to_string());
        let p = Params::validate(&schema, &raw).unwrap();
        assert_eq!((p.int("n"), p.int("k")), (3, 1));
        raw.insert("bogus".to_string(), "1".to_string());
        assert!(matches!(Params::validate(&schema, &raw), Err(CliError::Schema(_))));
    }
}

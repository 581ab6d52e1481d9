//! Exact values as JSON: rationals are `{num, den}` string pairs, never floats.

use jetres_core::exactalg::{DPoly, MultiPoly, Rational};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::CliError;

pub fn rational(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn bigint(b: &BigInt) -> Value {
    Value::String(b.to_string())
}

pub fn poly(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| json!({ "exponents": m.exponents(), "coeff": rational(c) }))
        .collect();
    let mut doc = json!({
        "text": p.to_string(),
        "variables": p.ctx().names(),
        "terms": terms,
    });
    if let Some(c) = p.as_constant() {
        doc["constant"] = rational(&c);
    }
    doc
}

pub fn dpoly(p: &DPoly) -> Value {
    json!({
        "variable": "d",
        "text": p.to_string(),
        "coefficients": p.coeffs().iter().map(rational).collect::<Vec<_>>(),
    })
}

/// A number in a job file: a JSON integer, a string `p` or `p/q`, or a `{num, den}` pair.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
    Pair { num: String, den: String },
}

fn parse_int(s: &str) -> Result<BigInt, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Job(format!("`{s}` is not an integer")))
}

impl Number {
    pub fn rational(&self) -> Result<Rational, CliError> {
        let (num, den) = match self {
            Number::Int(v) => return Ok(Rational::from_integer(BigInt::from(*v))),
            Number::Text(s) => match s.split_once('/') {
                Some((p, q)) => (parse_int(p)?, parse_int(q)?),
                None => (parse_int(s)?, BigInt::from(1)),
            },
            Number::Pair { num, den } => (parse_int(num)?, parse_int(den)?),
        };
        if den == BigInt::from(0) {
            return Err(CliError::Job("zero denominator".into()));
        }
        Ok(Rational::new(num, den))
    }

    pub fn integer(&self) -> Result<BigInt, CliError> {
        let r = self.rational()?;
        if !r.is_integer() {
            return Err(CliError::Job(format!("expected an integer, got {r}")));
        }
        Ok(r.to_integer())
    }
}

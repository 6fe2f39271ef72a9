use serde::{Deserialize, Serialize};

use super::laurent::{LaurentPoly, Vars};
use super::Rational;
use crate::error::{Error, Result};

/// Wire form of a polynomial:
/// `{"vars":["q"],"terms":[{"e":[k],"c":"num/den"}]}`, terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<i32>,
    pub c: String,
}

fn coeff_string(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn parse_coeff(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == 0.into() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            vars: p.vars().names().to_vec(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson { e: e.to_vec(), c: coeff_string(c) })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for LaurentPoly {
    type Error = Error;

    fn try_from(j: &PolyJson) -> Result<Self> {
        if j.vars.is_empty() || j.vars.len() > super::MAX_VARS {
            return Err(Error::Parse(format!("unsupported variable count {}", j.vars.len())));
        }
        let vars = Vars::new(&j.vars);
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.e.len() != vars.len() {
                return Err(Error::Parse("exponent length differs from variable count".into()));
            }
            terms.push((t.e.clone(), parse_coeff(&t.c)?));
        }
        Ok(LaurentPoly::from_terms(&vars, terms))
    }
}

pub fn poly_to_json(p: &LaurentPoly) -> serde_json::Value {
    serde_json::to_value(PolyJson::from(p)).expect("plain data serializes")
}

pub fn poly_from_json(v: &serde_json::Value) -> Result<LaurentPoly> {
    let j: PolyJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    LaurentPoly::try_from(&j)
}

/// A series is a JSON list of polynomial objects indexed by the power of T.
pub fn series_to_json(coeffs: &[LaurentPoly]) -> serde_json::Value {
    serde_json::Value::Array(coeffs.iter().map(poly_to_json).collect())
}

pub fn series_from_json(v: &serde_json::Value) -> Result<Vec<LaurentPoly>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("series must be a JSON array".into()))?
        .iter()
        .map(poly_from_json)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_shape() {
        let v = Vars::new(&["q"]);
        let p = LaurentPoly::from_terms(
            &v,
            vec![(vec![2], Rational::new(3.into(), 2.into())), (vec![-1], Rational::from_integer((-4).into()))],
        );
        let j = poly_to_json(&p);
        assert_eq!(
            j.to_string(),
            r#"{"vars":["q"],"terms":[{"e":[-1],"c":"-4"},{"e":[2],"c":"3/2"}]}"#
        );
        assert_eq!(poly_from_json(&j).unwrap(), p);
    }

    #[test]
    fn rejects_malformed() {
        let j: serde_json::Value =
            serde_json::from_str(r#"{"vars":["q"],"terms":[{"e":[1,2],"c":"1"}]}"#).unwrap();
        assert!(poly_from_json(&j).is_err());
        let j: serde_json::Value =
            serde_json::from_str(r#"{"vars":["q"],"terms":[{"e":[1],"c":"1/0"}]}"#).unwrap();
        assert!(poly_from_json(&j).is_err());
    }
}

//! Poly-JSON: a univariate polynomial is an ascending array of `"num/den"`
//! strings; a Laurent polynomial is an array of `[i, j, re, im]` quadruples
//! sorted by `(i, j)`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Number, Value};

use super::{GaussInt, LaurentBiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

pub fn rational_to_string(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn rational_from_str(s: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn big_to_json(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal is a JSON number"))
}

/// Serde adapter: a rational as a `"num/den"` string.
pub fn serialize_rational<S: serde::Serializer>(c: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(c))
}

/// Serde adapter: a big integer as an exact JSON number.
pub fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&big_to_json(v), s)
}

pub fn serialize_opt_bigint<S: serde::Serializer>(
    v: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_bigint(v, s),
        None => s.serialize_none(),
    }
}

/// Serde adapter: a polynomial in poly-JSON form.
pub fn serialize_poly<S: serde::Serializer>(p: &UniPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&poly_to_json(p), s)
}

pub fn poly_to_json(p: &UniPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(rational_to_string(c)))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<UniPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Malformed("polynomial must be a JSON array".into()))?;
    let coeffs = arr
        .iter()
        .map(|c| match c {
            Value::String(s) => rational_from_str(s),
            Value::Number(n) => rational_from_str(&n.to_string()),
            _ => Err(Error::Malformed(format!("bad coefficient {c}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::from_rationals(&coeffs))
}

pub fn laurent_to_json(p: &LaurentBiPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(&(i, j), c)| {
                Value::Array(vec![
                    Value::from(i),
                    Value::from(j),
                    big_to_json(&c.re),
                    big_to_json(&c.im),
                ])
            })
            .collect(),
    )
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentBiPoly> {
    let bad = || Error::Malformed("Laurent polynomial must be [[i,j,re,im],...]".into());
    let arr = v.as_array().ok_or_else(bad)?;
    let mut out = LaurentBiPoly::zero();
    for t in arr {
        let q = t.as_array().filter(|q| q.len() == 4).ok_or_else(bad)?;
        let i = q[0].as_i64().ok_or_else(bad)?;
        let j = q[1].as_i64().ok_or_else(bad)?;
        let re = BigInt::from_str(&q[2].to_string()).map_err(|_| bad())?;
        let im = BigInt::from_str(&q[3].to_string()).map_err(|_| bad())?;
        out.add_term(i, j, GaussInt { re, im });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_roundtrip() {
        let p = UniPoly::from_rationals(&[
            Rational::new(1.into(), 2.into()),
            Rational::from_integer(0.into()),
            Rational::from_integer((-3).into()),
        ]);
        let v = poly_to_json(&p);
        assert_eq!(v.to_string(), r#"["1/2","0/1","-3/1"]"#);
        assert_eq!(poly_from_json(&v).unwrap(), p);
        assert_eq!(poly_to_json(&UniPoly::zero()).to_string(), "[]");
    }

    #[test]
    fn laurent_roundtrip() {
        let q = LaurentBiPoly::from_int_terms(&[(2, 1, 1), (-2, -1, -1)]);
        let v = laurent_to_json(&q);
        assert_eq!(v.to_string(), "[[-2,-1,-1,0],[2,1,1,0]]");
        assert_eq!(laurent_from_json(&v).unwrap(), q);
    }

    #[test]
    fn huge_integers_stay_exact() {
        let big = BigInt::from(7).pow(80);
        let v = big_to_json(&big);
        assert_eq!(v.to_string(), big.to_string());
    }
}

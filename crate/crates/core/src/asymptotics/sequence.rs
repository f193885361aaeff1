use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::limit::{LimitAlgebra, SeedMatrix};
use super::verlinde::verlinde_dim;
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::frobenius::{build_algebra, signature};

/// The reciprocal-pair route is run alongside the direct one up to this p_n.
pub const RECIPROCAL_CHECK_MAX_P: i64 = 150;

/// σ_g(q_n/p_n) = Tr_{V(p_n,d)}((Ω·𝒫_{q_n−1}⁻²)^{g−1}).
pub fn signature_reciprocal(m: &SeedMatrix, n: i64, g: u32) -> Result<BigInt> {
    let (p, q) = m.check_n(n)?;
    if g == 0 {
        return Err(Error::InvalidParams("genus must be >= 1".into()));
    }
    let v = build_algebra(p, m.d)?;
    let pq = &v.pbasis()[(q - 1) as usize];
    let base = v.omega() * &pq.square().invert()?;
    let t = base.pow((g - 1) as u64).trace();
    if !t.is_integer() {
        return Err(Error::IntegralityViolation {
            p,
            q,
            g,
            value: t.to_string(),
        });
    }
    Ok(t.to_integer())
}

pub fn signature_direct(m: &SeedMatrix, n: i64, g: u32) -> Result<BigInt> {
    let (p, q) = m.check_n(n)?;
    signature(p, q, g)
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureRow {
    pub n: i64,
    pub p: i64,
    pub q: i64,
    #[serde(serialize_with = "crate::exactalg::json::serialize_bigint")]
    pub sigma: BigInt,
    /// Value from the reciprocal-pair route when it was run.
    #[serde(serialize_with = "crate::exactalg::json::serialize_opt_bigint")]
    pub reciprocal: Option<BigInt>,
}

/// σ_g(q_n/p_n) for each n, cross-checked by the reciprocal route for small p_n.
pub fn signature_sequence(m: &SeedMatrix, g: u32, n_list: &[i64]) -> Result<Vec<SignatureRow>> {
    signature_sequence_with(m, g, n_list, &signature)
}

/// As [`signature_sequence`], with the direct route σ_g(p, q) supplied by the caller.
pub fn signature_sequence_with(
    m: &SeedMatrix,
    g: u32,
    n_list: &[i64],
    direct: &(dyn Fn(i64, i64, u32) -> Result<BigInt> + Sync),
) -> Result<Vec<SignatureRow>> {
    for &n in n_list {
        m.check_n(n)?;
    }
    n_list
        .par_iter()
        .map(|&n| {
            let (p, q) = m.pq(n);
            let sigma = direct(p, q, g)?;
            let reciprocal = if p <= RECIPROCAL_CHECK_MAX_P {
                let r = signature_reciprocal(m, n, g)?;
                if r != sigma {
                    return Err(Error::InternalInconsistency(format!(
                        "M={m}, n={n}: direct sigma {sigma} != reciprocal {r}"
                    )));
                }
                Some(r)
            } else {
                None
            };
            Ok(SignatureRow {
                n,
                p,
                q,
                sigma,
                reciprocal,
            })
        })
        .collect()
}

/// k-th forward differences of a sequence.
pub fn finite_differences(values: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut cur = values.to_vec();
    for _ in 0..order {
        if cur.is_empty() {
            break;
        }
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    cur
}

/// Smallest k whose (k+1)-th differences exist and vanish identically.
pub fn polynomial_degree_of(values: &[BigInt]) -> Option<usize> {
    (0..values.len().saturating_sub(1)).find(|&k| {
        let d = finite_differences(values, k + 1);
        !d.is_empty() && d.iter().all(Zero::is_zero)
    })
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let vals: Vec<serde_json::Value> = v.iter().map(crate::exactalg::json::big_to_json).collect();
    serde::Serialize::serialize(&vals, s)
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialityReport {
    pub n_values: Vec<i64>,
    #[serde(serialize_with = "serialize_bigints")]
    pub sigmas: Vec<BigInt>,
    /// Observed degree, `None` if no difference order vanishes.
    pub degree: Option<usize>,
    /// Differences of order 3g−2 vanish.
    pub ok: bool,
    /// Smallest starting offset from which the remaining values have
    /// vanishing differences of order 3g−2.
    pub first_window: Option<usize>,
}

/// σ_g at `count` consecutive odd n from `n0`, tested for polynomial growth.
pub fn polynomiality_check(m: &SeedMatrix, g: u32, n0: i64, count: usize) -> Result<PolynomialityReport> {
    if n0 % 2 == 0 {
        return Err(Error::InvalidParams(format!("n0 = {n0} must be odd")));
    }
    let order = 3 * g as usize - 2;
    if count < order + 1 {
        return Err(Error::InvalidParams(format!(
            "count = {count} is too small for differences of order {order}"
        )));
    }
    let n_values: Vec<i64> = (0..count as i64).map(|i| n0 + 2 * i).collect();
    let rows = signature_sequence(m, g, &n_values)?;
    let sigmas: Vec<BigInt> = rows.into_iter().map(|r| r.sigma).collect();
    Ok(polynomiality_of(n_values, sigmas, order))
}

pub fn polynomiality_of(n_values: Vec<i64>, sigmas: Vec<BigInt>, order: usize) -> PolynomialityReport {
    let vanish = |s: &[BigInt]| {
        let d = finite_differences(s, order);
        !d.is_empty() && d.iter().all(Zero::is_zero)
    };
    let ok = vanish(&sigmas);
    let first_window = (0..sigmas.len()).find(|&i| vanish(&sigmas[i..]));
    PolynomialityReport {
        degree: polynomial_degree_of(&sigmas),
        ok,
        first_window,
        n_values,
        sigmas,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub n: i64,
    pub p: i64,
    pub q: i64,
    #[serde(serialize_with = "crate::exactalg::json::serialize_bigint")]
    pub sigma: BigInt,
    #[serde(serialize_with = "crate::exactalg::json::serialize_bigint")]
    pub dim: BigInt,
    /// σ_g / dim.
    #[serde(serialize_with = "crate::exactalg::json::serialize_rational")]
    pub ratio: Rational,
    /// Tr(Ω_W^{g−1})/d^{3(g−1)}.
    #[serde(serialize_with = "crate::exactalg::json::serialize_rational")]
    pub limit: Rational,
    /// |ratio/limit − 1| in double precision.
    pub rel_error: f64,
}

pub fn ratio_table(m: &SeedMatrix, g: u32, n_list: &[i64]) -> Result<Vec<RatioRow>> {
    ratio_table_with(m, g, n_list, &signature)
}

pub fn ratio_table_with(
    m: &SeedMatrix,
    g: u32,
    n_list: &[i64],
    direct: &(dyn Fn(i64, i64, u32) -> Result<BigInt> + Sync),
) -> Result<Vec<RatioRow>> {
    if g < 2 {
        return Err(Error::InvalidParams("ratio table needs g >= 2".into()));
    }
    let w = LimitAlgebra::new(m)?;
    let limit = w.limit_ratio(g)?;
    let rows = signature_sequence_with(m, g, n_list, direct)?;
    rows.into_par_iter()
        .map(|r| {
            let dim = verlinde_dim(r.p, g)?;
            let ratio = Rational::new(r.sigma.clone(), dim.clone());
            let rel = (&ratio / &limit - Rational::from_integer(1.into())).abs();
            Ok(RatioRow {
                n: r.n,
                p: r.p,
                q: r.q,
                sigma: r.sigma,
                dim,
                ratio,
                limit: limit.clone(),
                rel_error: rel.to_f64().unwrap_or(f64::NAN),
            })
        })
        .collect()
}

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;
const MAX_BITS: usize = 1 << 16;

/// dim 𝒱_p(S_g) = (p/2)^{g−1}·Σ_{k=1}^{p−1} sin(kπ/p)^{2−2g}.
///
/// Evaluated in binary floating point; the precision is doubled until two
/// consecutive evaluations round to the same integer with a residue below 10⁻⁶.
pub fn verlinde_dim(p: i64, g: u32) -> Result<BigInt> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidParams(format!("p = {p} must be odd and >= 3")));
    }
    if g == 0 {
        return Err(Error::InvalidParams("genus must be >= 1".into()));
    }
    if g == 1 {
        return Ok(BigInt::from(p - 1));
    }
    let size_bits = (3 * g as usize) * (64 - (p as u64).leading_zeros() as usize);
    let mut bits = (size_bits + 128).next_multiple_of(WORD_BIT_SIZE);
    let mut cc = Consts::new().map_err(|_| Error::PrecisionExhausted { bits })?;
    let mut prev: Option<BigInt> = None;
    while bits <= MAX_BITS {
        let value = verlinde_float(p, g, bits, &mut cc);
        if let Some(n) = round_certified(&value, bits) {
            if prev.as_ref() == Some(&n) {
                return Ok(n);
            }
            prev = Some(n);
        } else {
            prev = None;
        }
        bits *= 2;
    }
    Err(Error::PrecisionExhausted { bits: bits / 2 })
}

fn verlinde_float(p: i64, g: u32, bits: usize, cc: &mut Consts) -> BigFloat {
    let pi = cc.pi(bits, RM);
    let pf = BigFloat::from_i64(p, bits);
    let e = 2 * (g as usize - 1);
    let mut sum = BigFloat::from_i64(0, bits);
    for k in 1..=(p - 1) / 2 {
        let arg = pi.mul(&BigFloat::from_i64(k, bits), bits, RM).div(&pf, bits, RM);
        let s = arg.sin(bits, RM, cc);
        sum = sum.add(&s.powi(e, bits, RM).reciprocal(bits, RM), bits, RM);
    }
    sum = sum.mul(&BigFloat::from_i64(2, bits), bits, RM);
    let half_p = pf.div(&BigFloat::from_i64(2, bits), bits, RM);
    half_p.powi(g as usize - 1, bits, RM).mul(&sum, bits, RM)
}

/// Nearest integer to `v` if `v` lies within 2⁻²⁰ of it.
fn round_certified(v: &BigFloat, bits: usize) -> Option<BigInt> {
    if v.is_nan() || v.is_inf() {
        return None;
    }
    let half = BigFloat::from_f64(0.5, bits);
    let r = v.add(&half, bits, RM).floor();
    let resid = v.sub(&r, bits, RM).abs();
    let tol = BigFloat::from_f64(2f64.powi(-20), bits);
    if resid.cmp(&tol)? >= 0 {
        return None;
    }
    to_bigint(&r)
}

fn to_bigint(v: &BigFloat) -> Option<BigInt> {
    if v.is_zero() {
        return Some(BigInt::zero());
    }
    let (words, _, sign, exp, _) = v.as_raw_parts()?;
    let mut bytes = Vec::with_capacity(words.len() * WORD_BIT_SIZE / 8);
    for w in words {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    let m = BigUint::from_bytes_le(&bytes);
    let shift = exp as i64 - (words.len() * WORD_BIT_SIZE) as i64;
    let mag = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
    let n = BigInt::from(mag);
    Some(if sign == Sign::Neg { -n } else { n })
}

/// Closed form of the genus-two dimension, p(p²−1)/6.
pub fn verlinde_genus_two(p: i64) -> BigInt {
    BigInt::from(p) * BigInt::from(p * p - 1) / 6
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dimension of the degree-(g−1) power of the fusion-ring canonical element,
    /// computed exactly with the SU(2) level p−2 fusion rules.
    fn fusion_oracle(p: i64, g: u32) -> BigInt {
        let n = (p - 1) as usize;
        let fuse = |a: usize, b: usize| -> Vec<usize> {
            let lo = a.abs_diff(b);
            let hi = (a + b).min(2 * (n - 1) - a - b);
            (lo..=hi).step_by(2).collect()
        };
        // Ω = Σ_λ λ⊗λ* acting on the regular representation; dim = Tr(Ω^{g−1}).
        let mut omega = vec![vec![BigInt::zero(); n]; n];
        for lam in 0..n {
            let mut sq = vec![BigInt::zero(); n];
            for c in fuse(lam, lam) {
                sq[c] += 1;
            }
            for (b, row) in omega.iter_mut().enumerate() {
                for (c, coeff) in sq.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    for e in fuse(c, b) {
                        row[e] += coeff;
                    }
                }
            }
        }
        let mut acc: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        for _ in 1..g {
            let mut next = vec![vec![BigInt::zero(); n]; n];
            for i in 0..n {
                for k in 0..n {
                    if acc[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        next[i][j] += &acc[i][k] * &omega[k][j];
                    }
                }
            }
            acc = next;
        }
        (0..n).map(|i| acc[i][i].clone()).sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(verlinde_dim(5, 2).unwrap(), BigInt::from(20));
        for g in 1..=10 {
            assert_eq!(verlinde_dim(3, g).unwrap(), BigInt::from(1u64 << g));
        }
        for p in [3, 5, 7, 11, 31] {
            assert_eq!(verlinde_dim(p, 1).unwrap(), BigInt::from(p - 1));
        }
    }

    #[test]
    fn genus_two_closed_form() {
        for p in (3..200).step_by(2) {
            assert_eq!(verlinde_dim(p, 2).unwrap(), verlinde_genus_two(p), "p={p}");
        }
        assert_eq!(verlinde_dim(607, 2).unwrap(), verlinde_genus_two(607));
    }

    #[test]
    fn matches_fusion_ring() {
        for p in [3, 5, 7, 9, 13] {
            for g in 1..=6 {
                assert_eq!(verlinde_dim(p, g).unwrap(), fusion_oracle(p, g), "p={p} g={g}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(verlinde_dim(4, 2).is_err());
        assert!(verlinde_dim(1, 2).is_err());
        assert!(verlinde_dim(5, 0).is_err());
    }
}

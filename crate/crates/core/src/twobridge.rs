//! The pair (p, q) of a two-bridge knot: ε-sequence, continuants and the
//! Riley polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{intpoly, is_squarefree, Rational, UniPoly};

/// Parameters of K(p, q) together with the reciprocal residues ℓ, ℓ′.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoBridgeParams {
    pub p: i64,
    pub q: i64,
    /// Odd, in (0, p), with q·ℓ ≡ ±1 mod p.
    pub ell: i64,
    /// Odd, in (0, 2p), with q·ℓ′ ≡ −1 mod 2p.
    pub ell_prime: i64,
    /// ε₁ … ε_{p−1}.
    pub eps: Vec<i8>,
}

pub fn make_params(p: i64, q: i64) -> Result<TwoBridgeParams> {
    if p <= 0 || p % 2 == 0 {
        return Err(Error::InvalidParams(format!("p = {p} must be a positive odd integer")));
    }
    if q <= 0 || q >= p || q % 2 == 0 {
        return Err(Error::InvalidParams(format!("q = {q} must be odd with 0 < q < p = {p}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidParams(format!("p = {p} and q = {q} are not coprime")));
    }
    let ell = (1..p)
        .step_by(2)
        .find(|&l| {
            let r = (q * l).rem_euclid(p);
            r == 1 || r == p - 1
        })
        .ok_or_else(|| Error::InternalInconsistency(format!("no ell for ({p},{q})")))?;
    let ell_prime = (1..2 * p)
        .step_by(2)
        .find(|&l| (q * l).rem_euclid(2 * p) == 2 * p - 1)
        .ok_or_else(|| Error::InternalInconsistency(format!("no ell' for ({p},{q})")))?;
    let eps = (1..p).map(|k| eps_formula(p, q, k)).collect();
    Ok(TwoBridgeParams {
        p,
        q,
        ell,
        ell_prime,
        eps,
    })
}

fn eps_formula(p: i64, q: i64, k: i64) -> i8 {
    if (k * q).div_euclid(p).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl TwoBridgeParams {
    /// ε_k = (−1)^⌊kq/p⌋ for any integer k, floor division throughout.
    /// For p ∤ k this satisfies ε_{k+p} = −ε_k and ε_{−k} = −ε_k.
    pub fn eps_at(&self, k: i64) -> i8 {
        if (1..self.p).contains(&k) {
            self.eps[(k - 1) as usize]
        } else {
            eps_formula(self.p, self.q, k)
        }
    }

    /// +1 when q·ℓ ≡ 1 mod p, −1 when q·ℓ ≡ −1 mod p.
    pub fn ell_class(&self) -> i8 {
        if (self.q * self.ell).rem_euclid(self.p) == 1 {
            1
        } else {
            -1
        }
    }

    /// The knot K(p, ℓ), isomorphic to K(p, q).
    pub fn reciprocal(&self) -> Result<TwoBridgeParams> {
        make_params(self.p, self.ell)
    }
}

/// (X_{last−1}, X_last) for X_k = ε_k X·X_{k−1} + X_{k−2}, updated in place.
fn int_continuant_pair(
    eps: impl Fn(i64) -> i8,
    last: i64,
    start: (Vec<BigInt>, Vec<BigInt>),
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (mut a, mut b) = start;
    for k in 1..=last {
        if a.len() < b.len() + 1 {
            a.resize(b.len() + 1, BigInt::zero());
        }
        let neg = eps(k) < 0;
        for (i, c) in b.iter().enumerate() {
            if neg {
                a[i + 1] -= c;
            } else {
                a[i + 1] += c;
            }
        }
        intpoly::trim(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    (a, b)
}

/// P_{−1} … P_{p−1} (index k stored at k+1) as integer coefficient vectors.
pub(crate) fn int_continuants(
    eps: impl Fn(i64) -> i8,
    last: i64,
    start: (Vec<BigInt>, Vec<BigInt>),
) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity((last + 2).max(2) as usize);
    out.push(start.0);
    out.push(start.1);
    for k in 1..=last {
        let prev = &out[(k) as usize];
        let mut next = out[(k - 1) as usize].clone();
        if next.len() < prev.len() + 1 {
            next.resize(prev.len() + 1, BigInt::zero());
        }
        let neg = eps(k) < 0;
        for (i, c) in prev.iter().enumerate() {
            if neg {
                next[i + 1] -= c;
            } else {
                next[i + 1] += c;
            }
        }
        while next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        out.push(next);
    }
    out
}

fn p_start() -> (Vec<BigInt>, Vec<BigInt>) {
    (Vec::new(), vec![BigInt::one()])
}

fn q_start() -> (Vec<BigInt>, Vec<BigInt>) {
    (vec![BigInt::one()], Vec::new())
}

/// Whole sequences P_{−1..p−1} and Q_{−1..p−1}.
#[derive(Clone, Debug)]
pub struct Continuants {
    p: Vec<UniPoly>,
    q: Vec<UniPoly>,
}

impl Continuants {
    pub fn new(params: &TwoBridgeParams) -> Self {
        Continuants {
            p: sequence_p(params, params.p - 1),
            q: sequence_q(params, params.p - 1),
        }
    }

    /// P_k, −1 ≤ k ≤ p−1.
    pub fn p(&self, k: i64) -> &UniPoly {
        &self.p[(k + 1) as usize]
    }

    /// Q_k, −1 ≤ k ≤ p−1.
    pub fn q(&self, k: i64) -> &UniPoly {
        &self.q[(k + 1) as usize]
    }
}

/// P_{−1} … P_{last}; element k+1 is P_k.
pub fn sequence_p(params: &TwoBridgeParams, last: i64) -> Vec<UniPoly> {
    int_continuants(|k| params.eps_at(k), last, p_start())
        .into_iter()
        .map(UniPoly::from_int_coeffs)
        .collect()
}

/// Q_{−1} … Q_{last}; element k+1 is Q_k.
pub fn sequence_q(params: &TwoBridgeParams, last: i64) -> Vec<UniPoly> {
    int_continuants(|k| params.eps_at(k), last, q_start())
        .into_iter()
        .map(UniPoly::from_int_coeffs)
        .collect()
}

fn check_index(params: &TwoBridgeParams, k: i64) -> Result<()> {
    if !(-1..=params.p - 1).contains(&k) {
        return Err(Error::IndexOutOfRange {
            index: k,
            lo: -1,
            hi: params.p - 1,
        });
    }
    Ok(())
}

/// P_k = K(ε₁X, …, ε_kX).
pub fn continuant_p(params: &TwoBridgeParams, k: i64) -> Result<UniPoly> {
    check_index(params, k)?;
    let (prev, cur) = int_continuant_pair(|j| params.eps_at(j), k.max(0), p_start());
    Ok(UniPoly::from_int_coeffs(if k < 0 { prev } else { cur }))
}

/// Q_k = K(ε₂X, …, ε_kX).
pub fn continuant_q(params: &TwoBridgeParams, k: i64) -> Result<UniPoly> {
    check_index(params, k)?;
    let (prev, cur) = int_continuant_pair(|j| params.eps_at(j), k.max(0), q_start());
    Ok(UniPoly::from_int_coeffs(if k < 0 { prev } else { cur }))
}

/// The Riley polynomial P_{p−1}, checked squarefree.
pub fn riley(params: &TwoBridgeParams) -> Result<UniPoly> {
    let r = continuant_p(params, params.p - 1)?;
    if !is_squarefree(&r)? {
        return Err(Error::InternalInconsistency(format!(
            "Riley polynomial of ({},{}) is not squarefree",
            params.p, params.q
        )));
    }
    Ok(r)
}

/// Exact check of P_{p−2}² + 1 = P_{p−1}·Q_{p−2} in Z[X], which gives
/// P_{p−2}² ≡ −1 mod P_{p−1}.
pub fn iota_identity_holds(params: &TwoBridgeParams) -> bool {
    let last = params.p - 1;
    let (pk, riley) = int_continuant_pair(|k| params.eps_at(k), last, p_start());
    let (_, qk) = int_continuant_pair(|k| params.eps_at(k), last - 1, q_start());
    let mut lhs = intpoly::mul(&pk, &pk);
    lhs = intpoly::add(&lhs, &[BigInt::one()]);
    let mut rhs = intpoly::mul(&riley, &qk);
    intpoly::trim(&mut lhs);
    intpoly::trim(&mut rhs);
    lhs == rhs
}

/// Continuant K(X₁, …, X_k) of rational entries.
pub fn continuant(xs: &[Rational]) -> Rational {
    let mut prev = Rational::zero();
    let mut cur = Rational::one();
    for x in xs {
        let next = x * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Product of (ε_kX, 1; 1, 0) over k = 1 … m.
pub fn transfer_product(params: &TwoBridgeParams, m: i64) -> [[UniPoly; 2]; 2] {
    let mut acc = [
        [UniPoly::one(), UniPoly::zero()],
        [UniPoly::zero(), UniPoly::one()],
    ];
    for k in 1..=m {
        let ex = UniPoly::from_i64s(&[0, params.eps_at(k) as i64]);
        let f = [[ex, UniPoly::one()], [UniPoly::one(), UniPoly::zero()]];
        let mut out = [
            [UniPoly::zero(), UniPoly::zero()],
            [UniPoly::zero(), UniPoly::zero()],
        ];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = &(&acc[i][0] * &f[0][j]) + &(&acc[i][1] * &f[1][j]);
            }
        }
        acc = out;
    }
    acc
}

//! The Frobenius algebra V = Q[x]/(P_{p−1}) of a two-bridge knot and its TQFT
//! signatures.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::asymptotics::verlinde_dim;
use crate::error::{Error, Result};
use crate::exactalg::{coprime, is_squarefree, QuotientElem, QuotientRing, Rational, UniPoly};
use crate::twobridge::{make_params, Continuants, TwoBridgeParams};

/// V with its basis 𝒫₀ … 𝒫_{p−2}, ι = 𝒫_{p−2} and Ω.
#[derive(Clone, Debug)]
pub struct ParabolicAlgebra {
    params: TwoBridgeParams,
    ring: Arc<QuotientRing>,
    cont: Arc<Continuants>,
    pbasis: Vec<QuotientElem>,
    iota: QuotientElem,
    omega: QuotientElem,
    omega_inv: OnceLock<QuotientElem>,
}

pub fn build_algebra(p: i64, q: i64) -> Result<ParabolicAlgebra> {
    ParabolicAlgebra::new(make_params(p, q)?)
}

impl ParabolicAlgebra {
    pub fn new(params: TwoBridgeParams) -> Result<Self> {
        Self::assemble(params, None)
    }

    /// Build with a precomputed Ω representative (e.g. from an on-disk cache).
    pub fn with_omega(params: TwoBridgeParams, omega: &UniPoly) -> Result<Self> {
        Self::assemble(params, Some(omega))
    }

    fn assemble(params: TwoBridgeParams, omega: Option<&UniPoly>) -> Result<Self> {
        let p = params.p;
        let cont = Arc::new(Continuants::new(&params));
        let riley = cont.p(p - 1).clone();
        if !is_squarefree(&riley)? {
            return Err(inconsistent(&params, "Riley polynomial is not squarefree"));
        }
        let ring = QuotientRing::new(riley)?;
        let pbasis: Vec<QuotientElem> = (0..=p - 2)
            .map(|k| QuotientElem::new(&ring, cont.p(k)))
            .collect();
        let iota = pbasis[(p - 2) as usize].clone();
        if !(&iota * &iota + QuotientElem::one(&ring)).is_zero() {
            return Err(inconsistent(&params, "iota^2 != -1"));
        }
        let omega = match omega {
            Some(o) => QuotientElem::new(&ring, o),
            None => {
                let mut acc = UniPoly::zero();
                for k in 0..=p - 2 {
                    let pk = cont.p(k);
                    let sq = pk * pk;
                    let sign = if k % 2 == 0 { 1 } else { -1 } * params.eps_at(k + 1) as i64;
                    acc = if sign > 0 { &acc + &sq } else { &acc - &sq };
                }
                QuotientElem::new(&ring, &acc)
            }
        };
        if !coprime(omega.rep(), ring.modulus()) {
            return Err(inconsistent(&params, "Omega is not invertible"));
        }
        Ok(ParabolicAlgebra {
            params,
            ring,
            cont,
            pbasis,
            iota,
            omega,
            omega_inv: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &TwoBridgeParams {
        &self.params
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn riley(&self) -> &UniPoly {
        self.ring.modulus()
    }

    pub fn dim(&self) -> usize {
        self.ring.degree()
    }

    pub fn continuants(&self) -> &Continuants {
        &self.cont
    }

    pub fn x(&self) -> QuotientElem {
        QuotientElem::x(&self.ring)
    }

    pub fn one(&self) -> QuotientElem {
        QuotientElem::one(&self.ring)
    }

    pub fn elem(&self, p: &UniPoly) -> QuotientElem {
        QuotientElem::new(&self.ring, p)
    }

    /// 𝒫_k for 0 ≤ k ≤ p−2.
    pub fn pbasis(&self) -> &[QuotientElem] {
        &self.pbasis
    }

    pub fn iota(&self) -> &QuotientElem {
        &self.iota
    }

    pub fn omega(&self) -> &QuotientElem {
        &self.omega
    }

    pub fn omega_inverse(&self) -> Result<&QuotientElem> {
        if let Some(v) = self.omega_inv.get() {
            return Ok(v);
        }
        let inv = self.omega.invert()?;
        Ok(self.omega_inv.get_or_init(|| inv))
    }

    /// Ω⁺ = Σ_{k=1}^{(p−1)/2} −ε_{2k}·𝒫²_{2k−1}.
    pub fn omega_plus(&self) -> QuotientElem {
        let mut acc = UniPoly::zero();
        for k in 1..=(self.params.p - 1) / 2 {
            let pk = self.cont.p(2 * k - 1);
            let sq = pk * pk;
            acc = if self.params.eps_at(2 * k) > 0 { &acc - &sq } else { &acc + &sq };
        }
        self.elem(&acc)
    }

    /// 𝒫_k for lo ≤ k ≤ hi with the recursion run inside V in both directions.
    pub fn p_extended(&self, lo: i64, hi: i64) -> Vec<QuotientElem> {
        self.extended(lo, hi, QuotientElem::zero(&self.ring), self.one())
    }

    /// 𝒬_k for lo ≤ k ≤ hi, same convention.
    pub fn q_extended(&self, lo: i64, hi: i64) -> Vec<QuotientElem> {
        self.extended(lo, hi, self.one(), QuotientElem::zero(&self.ring))
    }

    fn extended(&self, lo: i64, hi: i64, m1: QuotientElem, z0: QuotientElem) -> Vec<QuotientElem> {
        assert!(lo <= hi);
        let eps = |k: i64| self.params.eps_at(k) as i64;
        // upward from (k=-1, k=0)
        let mut up = vec![m1.clone(), z0.clone()];
        for k in 1..=hi.max(0) {
            let a = &up[up.len() - 1];
            let b = &up[up.len() - 2];
            let next = &a.mul_x().scale_int(eps(k)) + b;
            up.push(next);
        }
        // downward: 𝒫_{k−2} = 𝒫_k − ε_k·x·𝒫_{k−1}
        let mut down: Vec<QuotientElem> = Vec::new();
        let (mut hi_k, mut lo_k) = (z0, m1);
        let mut k = 0;
        while k - 2 >= lo {
            let next = &hi_k - &lo_k.mul_x().scale_int(eps(k));
            down.push(next.clone());
            hi_k = std::mem::replace(&mut lo_k, next);
            k -= 1;
        }
        (lo..=hi)
            .map(|j| {
                if j >= -1 {
                    up[(j + 1) as usize].clone()
                } else {
                    down[(-2 - j) as usize].clone()
                }
            })
            .collect()
    }

    /// Coordinates of `e` in the basis 𝒫₀ … 𝒫_{p−2}.
    pub fn to_pbasis(&self, e: &QuotientElem) -> Vec<Rational> {
        let n = self.dim();
        let mut w: Vec<BigInt> = e.rep().numerators().to_vec();
        w.resize(n, BigInt::zero());
        let den = e.rep().denominator().clone();
        let mut out = vec![Rational::zero(); n];
        for k in (0..n).rev() {
            if w[k].is_zero() {
                continue;
            }
            let pk = self.cont.p(k as i64).numerators();
            let c = if pk[k].is_negative() { -&w[k] } else { w[k].clone() };
            for (wi, pi) in w.iter_mut().zip(pk.iter()) {
                if !pi.is_zero() {
                    *wi -= &c * pi;
                }
            }
            out[k] = Rational::new(c, den.clone());
        }
        out
    }

    /// ε(e): the 𝒫₀-coordinate of e.
    pub fn epsilon_form(&self, e: &QuotientElem) -> Rational {
        self.to_pbasis(e).swap_remove(0)
    }

    /// η(a, b) = ε(ab).
    pub fn eta(&self, a: &QuotientElem, b: &QuotientElem) -> Rational {
        self.epsilon_form(&(a * b))
    }

    /// Tr(Ω⁻¹·e), equal to ε(e).
    pub fn epsilon_via_trace(&self, e: &QuotientElem) -> Result<Rational> {
        Ok((self.omega_inverse()? * e).trace())
    }

    /// η(𝒫_k, 𝒫_k) = (−1)^k ε_{k+1} for k = 0 … p−2.
    pub fn eta_diagonal(&self) -> Vec<i8> {
        (0..self.params.p - 1)
            .map(|k| if k % 2 == 0 { 1 } else { -1 } * self.params.eps_at(k + 1))
            .collect()
    }

    /// σ_g = Tr(Ω^{g−1}).
    pub fn signature(&self, g: u32) -> Result<BigInt> {
        if g == 0 {
            return Err(Error::InvalidParams("genus must be >= 1".into()));
        }
        let t = self.omega.pow((g - 1) as u64).trace();
        let (p, q) = (self.params.p, self.params.q);
        if !t.is_integer() {
            return Err(Error::IntegralityViolation {
                p,
                q,
                g,
                value: t.to_string(),
            });
        }
        let sigma = t.to_integer();
        let dim = verlinde_dim(p, g)?;
        if sigma.abs() > dim {
            return Err(inconsistent(
                &self.params,
                &format!("|sigma_{g}| = {} exceeds the Verlinde dimension {dim}", sigma.abs()),
            ));
        }
        Ok(sigma)
    }

    /// ε(Ω^g·Π𝒫_λ), cross-checked against Tr(Ω^{g−1}·Π𝒫_λ) when g ≥ 1.
    pub fn colored_signature(&self, g: u32, lambda: &[i64]) -> Result<Rational> {
        let max = self.params.p - 2;
        let mut prod = self.one();
        for &c in lambda {
            if !(0..=max).contains(&c) {
                return Err(Error::ColorOutOfRange { color: c, max });
            }
            prod = &prod * &self.pbasis[c as usize];
        }
        let value = self.epsilon_form(&(&self.omega.pow(g as u64) * &prod));
        if g >= 1 {
            let tr = (&self.omega.pow((g - 1) as u64) * &prod).trace();
            if tr != value {
                return Err(inconsistent(
                    &self.params,
                    &format!("colored signature routes disagree: {value} vs {tr}"),
                ));
            }
        }
        Ok(value)
    }
}

fn inconsistent(params: &TwoBridgeParams, what: &str) -> Error {
    Error::InternalInconsistency(format!("({},{}): {what}", params.p, params.q))
}

pub fn epsilon_form(v: &ParabolicAlgebra, e: &QuotientElem) -> Rational {
    v.epsilon_form(e)
}

pub fn eta(v: &ParabolicAlgebra, a: &QuotientElem, b: &QuotientElem) -> Rational {
    v.eta(a, b)
}

pub fn epsilon_via_trace(v: &ParabolicAlgebra, e: &QuotientElem) -> Result<Rational> {
    v.epsilon_via_trace(e)
}

/// σ_g(q/p) = Tr_{V/Q}(Ω^{g−1}).
pub fn signature(p: i64, q: i64, g: u32) -> Result<BigInt> {
    build_algebra(p, q)?.signature(g)
}

/// σ_g(q/p; λ).
pub fn colored_signature(p: i64, q: i64, g: u32, lambda: &[i64]) -> Result<Rational> {
    build_algebra(p, q)?.colored_signature(g, lambda)
}

/// Ω from the identity Ω ≡ −𝒫_{p−2}·P′_{p−1}.
pub fn omega_via_derivative(v: &ParabolicAlgebra) -> QuotientElem {
    let d = v.elem(&v.riley().derivative());
    -(v.iota() * &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn alg(p: i64, q: i64) -> ParabolicAlgebra {
        build_algebra(p, q).unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(alg(3, 1).omega().rep(), &UniPoly::from_i64s(&[2]));
        assert_eq!(alg(5, 3).omega().rep(), &UniPoly::from_i64s(&[2, 0, 2]));
        let v = alg(11, 7);
        assert_eq!(v.omega().pow(0).trace(), rat(10, 1));
    }

    #[test]
    fn epsilon_examples() {
        let v = alg(5, 3);
        assert_eq!(v.epsilon_form(&v.pbasis()[0]), rat(1, 1));
        for k in 1..4 {
            assert_eq!(v.epsilon_form(&v.pbasis()[k]), rat(0, 1));
        }
        assert_eq!(v.epsilon_form(&v.x().pow(2)), rat(1, 1));
        assert_eq!(v.eta(&v.pbasis()[1], &v.pbasis()[1]), rat(1, 1));
        assert_eq!(v.eta(&v.pbasis()[0], &v.pbasis()[0]), rat(1, 1));
        let w = alg(3, 1);
        assert_eq!(w.epsilon_via_trace(&w.pbasis()[0]).unwrap(), rat(1, 1));
        assert_eq!(w.epsilon_via_trace(&w.pbasis()[1]).unwrap(), rat(0, 1));
    }

    #[test]
    fn signature_examples() {
        for g in 1..=10u32 {
            assert_eq!(signature(3, 1, g).unwrap(), BigInt::from(1u64 << g));
        }
        assert_eq!(signature(5, 3, 2).unwrap(), BigInt::from(12));
        assert_eq!(signature(13, 5, 1).unwrap(), BigInt::from(12));
        assert!(signature(5, 3, 0).is_err());
    }

    #[test]
    fn colored_examples() {
        let v = alg(7, 3);
        for j in 0..6 {
            for k in 0..6 {
                let want = if j == k {
                    rat(v.eta_diagonal()[j as usize] as i64, 1)
                } else {
                    rat(0, 1)
                };
                assert_eq!(v.colored_signature(0, &[j, k]).unwrap(), want);
            }
        }
        assert_eq!(
            Rational::from_integer(v.signature(3).unwrap()),
            v.colored_signature(3, &[0]).unwrap()
        );
        assert_eq!(colored_signature(3, 1, 1, &[]).unwrap(), rat(2, 1));
        assert!(matches!(
            v.colored_signature(1, &[6]),
            Err(Error::ColorOutOfRange { .. })
        ));
    }

    #[test]
    fn extended_recursion_matches_polynomials() {
        let v = alg(9, 5);
        let ext = v.p_extended(-1, 7);
        for k in -1..=7 {
            assert_eq!(ext[(k + 1) as usize], v.elem(v.continuants().p(k)));
        }
        let qext = v.q_extended(-1, 8);
        for k in -1..=8 {
            assert_eq!(qext[(k + 1) as usize], v.elem(v.continuants().q(k)));
        }
        let both = v.p_extended(-5, 12);
        assert_eq!(both.len(), 18);
        assert_eq!(both[5 - 2], v.one());
    }

    #[test]
    fn omega_identities_small() {
        for (p, q) in [(3, 1), (5, 3), (7, 3), (9, 5), (11, 3), (13, 7)] {
            let v = alg(p, q);
            assert_eq!(v.omega_plus().scale_int(2), *v.omega());
            assert_eq!(omega_via_derivative(&v), *v.omega());
        }
    }
}

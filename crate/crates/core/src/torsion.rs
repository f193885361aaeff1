//! Reidemeister torsions τ₁, τ₂ as elements of V, inverse torsion sums,
//! reciprocity between K(p, q) and K(p, ℓ), and the cusp shape.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{rat, QuotientElem, Rational, UniPoly};
use crate::frobenius::{build_algebra, ParabolicAlgebra};
use crate::twobridge::{sequence_p, sequence_q};

/// Sign relating the displayed adjoint-torsion sum to the pinned τ₂.
pub const TAU2_ORIENTATION: i64 = -1;

fn half_odd_range(p: i64) -> std::ops::RangeInclusive<i64> {
    1..=(p - 1) / 2
}

/// 𝒫_k for −1 ≤ k ≤ p−1, indexed by k+1.
fn pseq(v: &ParabolicAlgebra) -> Vec<QuotientElem> {
    v.p_extended(-1, v.params().p - 1)
}

fn at(seq: &[QuotientElem], k: i64) -> &QuotientElem {
    &seq[(k + 1) as usize]
}

fn x_squared_inverse(v: &ParabolicAlgebra) -> Result<QuotientElem> {
    v.x().square().invert()
}

fn p_ell_minus_one(v: &ParabolicAlgebra) -> QuotientElem {
    v.pbasis()[(v.params().ell - 1) as usize].clone()
}

/// τ₁ = x⁻²·(𝒬_{p−2} − x·Σ ε_{2k−1}(𝒫_{2k−1} + 𝒫_{2k−3})).
pub fn tau1_raw(v: &ParabolicAlgebra) -> Result<QuotientElem> {
    let p = v.params().p;
    let ps = pseq(v);
    let mut sum = QuotientElem::zero(v.ring());
    for k in half_odd_range(p) {
        let term = at(&ps, 2 * k - 1) + at(&ps, 2 * k - 3);
        sum = &sum + &term.scale_int(v.params().eps_at(2 * k - 1) as i64);
    }
    let qlast = v.elem(v.continuants().q(p - 2));
    let inner = &qlast - &sum.mul_x();
    Ok(&inner * &x_squared_inverse(v)?)
}

/// τ₁ = 2/(x²·𝒫_{ℓ−1}).
pub fn tau1_simple(v: &ParabolicAlgebra) -> Result<QuotientElem> {
    let d = &v.x().square() * &p_ell_minus_one(v);
    Ok(d.invert()?.scale_int(2))
}

/// The entries D¹₁ … D¹₄ of the second differential.
pub fn d1_entries(v: &ParabolicAlgebra) -> [QuotientElem; 4] {
    let p = v.params().p;
    let ps = pseq(v);
    let mut s3 = QuotientElem::zero(v.ring());
    let mut s4 = QuotientElem::zero(v.ring());
    for k in half_odd_range(p) {
        let e_odd = v.params().eps_at(2 * k - 1) as i64;
        let e_even = v.params().eps_at(2 * k) as i64;
        s3 = &s3 + &at(&ps, 2 * k - 2 - e_odd).scale_int(e_odd);
        s4 = &s4 + &at(&ps, 2 * k - 1 - e_even).scale_int(e_even);
    }
    let d11 = v.iota().clone();
    let d12 = QuotientElem::from_int(v.ring(), -1);
    let d13 = &v.elem(v.continuants().q(p - 2)) - &s3.mul_x();
    let d14 = -s4.mul_x();
    [d11, d12, d13, d14]
}

/// Δ₁ = D¹₁D¹₄ − D¹₂D¹₃.
pub fn delta1(v: &ParabolicAlgebra) -> QuotientElem {
    let [d11, d12, d13, d14] = d1_entries(v);
    &(&d11 * &d14) - &(&d12 * &d13)
}

/// The displayed adjoint-torsion sum (1/(2x²𝒫²_{ℓ−1}))·Σ ε_{2k}𝒫²_{2k−1},
/// before the orientation sign.
pub fn tau2_displayed(v: &ParabolicAlgebra) -> Result<QuotientElem> {
    let p = v.params().p;
    let ps = pseq(v);
    let mut sum = QuotientElem::zero(v.ring());
    for k in half_odd_range(p) {
        let sq = at(&ps, 2 * k - 1).square();
        sum = &sum + &sq.scale_int(v.params().eps_at(2 * k) as i64);
    }
    let pl = p_ell_minus_one(v);
    let d = (&v.x().square() * &pl.square()).scale_int(2);
    Ok(&sum * &d.invert()?)
}

/// τ₂ = Ω⁺/(2x²𝒫²_{ℓ−1}), the displayed sum with the pinned orientation sign.
pub fn tau2_raw(v: &ParabolicAlgebra) -> Result<QuotientElem> {
    Ok(tau2_displayed(v)?.scale_int(TAU2_ORIENTATION))
}

/// τ₂ = Ω/(4x²𝒫²_{ℓ−1}).
pub fn tau2_simple(v: &ParabolicAlgebra) -> Result<QuotientElem> {
    let pl = p_ell_minus_one(v);
    let d = (&v.x().square() * &pl.square()).scale_int(4);
    Ok(v.omega() * &d.invert()?)
}

/// ½·Tr(τ⁻¹) = Σ over the parabolic representations of 1/τ.
fn half_trace_inverse(t: &QuotientElem) -> Result<Rational> {
    Ok(t.invert()?.trace() * rat(1, 2))
}

/// Σ 1/τ₂ over 𝒳 (requires q ≠ 1).
pub fn inverse_sum_tau2(p: i64, q: i64) -> Result<Rational> {
    if q == 1 {
        return Err(Error::InvalidParams(
            "the inverse tau_2 sum is only defined for q != 1".into(),
        ));
    }
    let v = build_algebra(p, q)?;
    half_trace_inverse(&tau2_raw(&v)?)
}

/// Σ 1/τ₁ over 𝒳.
pub fn inverse_sum_tau1(p: i64, q: i64) -> Result<Rational> {
    let v = build_algebra(p, q)?;
    half_trace_inverse(&tau1_raw(&v)?)
}

/// ε_{(ℓ′−1)/2} for q > 1 and (2−p)/2 for q = 1.
pub fn expected_inverse_sum_tau1(v: &ParabolicAlgebra) -> Rational {
    let pr = v.params();
    if pr.q == 1 {
        rat(2 - pr.p, 2)
    } else {
        rat(pr.eps_at((pr.ell_prime - 1) / 2) as i64, 1)
    }
}

/// Both routes of both torsions and the inverse sums.
#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub tau1_raw: QuotientElem,
    pub tau1_simple: QuotientElem,
    pub tau2_raw: QuotientElem,
    pub tau2_simple: QuotientElem,
    pub delta1: QuotientElem,
    pub invsum_tau1: Rational,
    /// `None` when q = 1.
    pub invsum_tau2: Option<Rational>,
    pub expected_invsum_tau1: Rational,
}

impl TorsionReport {
    pub fn tau1_match(&self) -> bool {
        self.tau1_raw == self.tau1_simple
    }

    pub fn tau2_match(&self) -> bool {
        self.tau2_raw == self.tau2_simple
    }

    /// Δ₁ = x²·τ₁.
    pub fn delta1_match(&self) -> bool {
        self.delta1 == &QuotientElem::x(self.tau1_simple.ring()).square() * &self.tau1_simple
    }

    pub fn sums_match(&self) -> bool {
        self.invsum_tau1 == self.expected_invsum_tau1
            && self.invsum_tau2.as_ref().is_none_or(|s| *s == Rational::from_integer(0.into()))
    }

    pub fn all_ok(&self) -> bool {
        self.tau1_match() && self.tau2_match() && self.delta1_match() && self.sums_match()
    }
}

pub fn torsion_report(v: &ParabolicAlgebra) -> Result<TorsionReport> {
    let t1r = tau1_raw(v)?;
    let t2r = tau2_raw(v)?;
    let invsum_tau1 = half_trace_inverse(&t1r)?;
    let invsum_tau2 = if v.params().q == 1 {
        None
    } else {
        Some(half_trace_inverse(&t2r)?)
    };
    Ok(TorsionReport {
        tau1_simple: tau1_simple(v)?,
        tau2_simple: tau2_simple(v)?,
        delta1: delta1(v),
        tau1_raw: t1r,
        tau2_raw: t2r,
        invsum_tau1,
        invsum_tau2,
        expected_invsum_tau1: expected_inverse_sum_tau1(v),
    })
}

/// Outcome of the four reciprocity congruences between V(p,q) and V(p,ℓ).
#[derive(Clone, Debug, Serialize)]
pub struct ReciprocityReport {
    pub p: i64,
    pub q: i64,
    pub ell: i64,
    /// +1 when qℓ ≡ 1 mod p, −1 when qℓ ≡ −1.
    pub ell_class: i8,
    /// P*_{p−1}(y) ≡ 0 for y = x·𝒫_{ℓ−1}.
    pub ring_hom: bool,
    /// y·P*_{q−1}(y) ≡ x.
    pub inverse: bool,
    /// Q*_{p−2}(y) ≡ 𝒬_{p−2}·𝒫_{ℓ−1}.
    pub cusp: bool,
    /// Ω*(y) ≡ Ω·𝒫_{ℓ−1}⁻² exactly as displayed.
    pub omega_literal: bool,
    /// Ω*(y) ≡ ell_class·Ω·𝒫_{ℓ−1}⁻².
    pub omega_signed: bool,
    /// Residual polynomials of failed checks.
    #[serde(skip)]
    pub residuals: Vec<(String, UniPoly)>,
}

impl ReciprocityReport {
    pub fn all_signed_ok(&self) -> bool {
        self.ring_hom && self.inverse && self.cusp && self.omega_signed
    }
}

pub fn reciprocity_check(p: i64, q: i64) -> Result<ReciprocityReport> {
    let v = build_algebra(p, q)?;
    reciprocity_in(&v)
}

pub fn reciprocity_in(v: &ParabolicAlgebra) -> Result<ReciprocityReport> {
    let pr = v.params().clone();
    let star = pr.reciprocal()?;
    let pstar = sequence_p(&star, pr.p - 1);
    let qstar = sequence_q(&star, pr.p - 2);
    let vstar = ParabolicAlgebra::new(star)?;
    let omega_star = vstar.omega().rep().clone();
    let pl = p_ell_minus_one(v);
    let y = &v.x() * &pl;
    let fs: [&UniPoly; 4] = [
        &pstar[pr.p as usize],
        &pstar[pr.q as usize],
        &qstar[(pr.p - 1) as usize],
        &omega_star,
    ];
    let [riley_y, pq_y, qq_y, omega_y]: [QuotientElem; 4] = QuotientElem::compose_many(&fs, &y)
        .try_into()
        .expect("four compositions");
    let mut residuals = Vec::new();
    let mut check = |name: &str, r: QuotientElem| -> bool {
        let ok = r.is_zero();
        if !ok {
            residuals.push((name.to_string(), r.rep().clone()));
        }
        ok
    };
    let ring_hom = check("ring_hom", riley_y);
    let inverse = check("inverse", &(&y * &pq_y) - &v.x());
    let qlast = v.elem(v.continuants().q(pr.p - 2));
    let cusp = check("cusp", &qq_y - &(&qlast * &pl));
    let lhs = &omega_y * &pl.square();
    let omega_literal = check("omega_literal", &lhs - v.omega());
    let s = pr.ell_class() as i64;
    let omega_signed = check("omega_signed", &lhs - &v.omega().scale_int(s));
    Ok(ReciprocityReport {
        p: pr.p,
        q: pr.q,
        ell: pr.ell,
        ell_class: pr.ell_class(),
        ring_hom,
        inverse,
        cusp,
        omega_literal,
        omega_signed,
        residuals,
    })
}

/// c = 2ι𝒬_{p−2}/x − 2Σ_{k=1}^{p−1} ε_k.
pub fn cusp_shape(v: &ParabolicAlgebra) -> Result<QuotientElem> {
    let pr = v.params();
    let qlast = v.elem(v.continuants().q(pr.p - 2));
    let xinv = v.x().invert()?;
    let eps_sum: i64 = pr.eps.iter().map(|&e| e as i64).sum();
    let main = (&(v.iota() * &qlast) * &xinv).scale_int(2);
    Ok(&main - &QuotientElem::from_int(v.ring(), 2 * eps_sum))
}

/// The V-level identities behind the torsion simplifications.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    /// 𝒫_{k+p} = (−1)^k ι𝒫_k and 𝒫_{k+2p} = 𝒫_k for −p ≤ k ≤ p.
    pub shift_by_p: bool,
    /// 𝒫_{−2−k} = 𝒫_k for −p ≤ k ≤ p.
    pub reflection: bool,
    /// 𝒫_{ℓ′−1}𝒬_{p−2} = −ι(𝒫_{ℓ′} + 𝒫_{ℓ′−2}).
    pub omega_relation: bool,
    /// (𝒫_{ℓ′} − 𝒫_{ℓ′−2})𝒫_k = ±(𝒫_{ℓ′+k} − 𝒫_{ℓ′−k−2}), + for −1 ≤ k < p,
    /// − for −p < k < 0.
    pub sum_of_two: bool,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn all_ok(&self) -> bool {
        self.shift_by_p && self.reflection && self.omega_relation && self.sum_of_two
    }
}

pub fn lemma_report(v: &ParabolicAlgebra) -> LemmaReport {
    let pr = v.params();
    let p = pr.p;
    let lp = pr.ell_prime;
    let lo = -3 * p - 2;
    let hi = 3 * p;
    let seq = v.p_extended(lo, hi);
    let pk = |k: i64| &seq[(k - lo) as usize];
    let iota = v.iota();
    let mut rep = LemmaReport {
        shift_by_p: true,
        reflection: true,
        omega_relation: true,
        sum_of_two: true,
        failures: Vec::new(),
    };
    for k in -p..=p {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        if *pk(k + p) != (iota * pk(k)).scale_int(sign) || pk(k + 2 * p) != pk(k) {
            rep.shift_by_p = false;
            rep.failures.push(format!("shift_by_p k={k}"));
        }
        if pk(-2 - k) != pk(k) {
            rep.reflection = false;
            rep.failures.push(format!("reflection k={k}"));
        }
    }
    let qlast = v.elem(v.continuants().q(p - 2));
    let lhs = pk(lp - 1) * &qlast;
    let rhs = -(iota * &(pk(lp) + pk(lp - 2)));
    if lhs != rhs {
        rep.omega_relation = false;
        rep.failures.push("omega_relation".into());
    }
    let diff = pk(lp) - pk(lp - 2);
    for k in (1 - p)..p {
        let l = &diff * pk(k);
        let r = pk(lp + k) - pk(lp - k - 2);
        let ok = if k >= -1 { l == r } else { l == -r };
        if !ok {
            rep.sum_of_two = false;
            rep.failures.push(format!("sum_of_two k={k}"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: i64, q: i64) -> ParabolicAlgebra {
        build_algebra(p, q).unwrap()
    }

    #[test]
    fn tau1_examples() {
        let v = alg(3, 1);
        assert_eq!(tau1_raw(&v).unwrap(), QuotientElem::from_int(v.ring(), -2));
        assert_eq!(tau1_simple(&v).unwrap(), QuotientElem::from_int(v.ring(), -2));
        let w = alg(5, 3);
        let x2p2 = &w.x().square() * &w.pbasis()[2];
        let want = x2p2.invert().unwrap().scale_int(2);
        assert_eq!(tau1_raw(&w).unwrap(), want);
        assert_eq!(tau1_simple(&w).unwrap(), want);
        let z = alg(7, 3);
        assert_eq!(tau1_raw(&z).unwrap(), tau1_simple(&z).unwrap());
    }

    #[test]
    fn tau2_sign_convention() {
        let v = alg(3, 1);
        let half = QuotientElem::from_rational(v.ring(), rat(1, 2));
        assert_eq!(tau2_displayed(&v).unwrap(), half);
        assert_eq!(tau2_raw(&v).unwrap(), -&half);
        assert_eq!(tau2_simple(&v).unwrap(), -&half);
        for (p, q) in [(5, 3), (7, 5), (9, 7), (11, 3)] {
            let w = alg(p, q);
            assert_eq!(tau2_raw(&w).unwrap(), tau2_simple(&w).unwrap());
            assert_eq!(tau2_displayed(&w).unwrap(), -tau2_simple(&w).unwrap());
        }
    }

    #[test]
    fn delta1_has_inverse_p_ell_over_two() {
        for (p, q) in [(3, 1), (5, 3), (7, 3), (9, 5), (11, 7)] {
            let v = alg(p, q);
            let d = delta1(&v);
            let prod = &d * &p_ell_minus_one(&v);
            assert_eq!(prod, QuotientElem::from_int(v.ring(), 2));
        }
    }

    #[test]
    fn inverse_sum_examples() {
        assert_eq!(inverse_sum_tau2(5, 3).unwrap(), rat(0, 1));
        assert_eq!(inverse_sum_tau2(7, 3).unwrap(), rat(0, 1));
        assert!(matches!(inverse_sum_tau2(7, 1), Err(Error::InvalidParams(_))));
        assert_eq!(inverse_sum_tau1(5, 3).unwrap(), rat(1, 1));
        assert_eq!(inverse_sum_tau1(7, 3).unwrap(), rat(-1, 1));
        for p in [3, 5, 7, 9] {
            assert_eq!(inverse_sum_tau1(p, 1).unwrap(), rat(2 - p, 2));
        }
    }

    #[test]
    fn reciprocity_examples() {
        let r = reciprocity_check(5, 3).unwrap();
        assert_eq!((r.ell, r.ell_class), (3, -1));
        assert!(r.all_signed_ok() && !r.omega_literal, "{r:?}");
        let r = reciprocity_check(7, 3).unwrap();
        assert_eq!((r.ell, r.ell_class), (5, 1));
        assert!(r.all_signed_ok() && r.omega_literal, "{r:?}");
        let r = reciprocity_check(9, 1).unwrap();
        assert!(r.all_signed_ok() && r.omega_literal);
        let r = reciprocity_check(9, 5).unwrap();
        assert_eq!((r.ell, r.ell_class), (7, -1));
        assert!(r.ring_hom && r.inverse && r.cusp && r.omega_signed);
        assert!(!r.omega_literal);
    }

    #[test]
    fn cusp_examples() {
        let v = alg(3, 1);
        // 𝒬₁ = 1 and ι = x, so c = 2 − 2·(ε₁ + ε₂) = −2
        assert_eq!(cusp_shape(&v).unwrap(), QuotientElem::from_int(v.ring(), -2));
        let w = alg(5, 3);
        let qlast = w.elem(w.continuants().q(3));
        let want = (&(w.iota() * &qlast) * &w.x().invert().unwrap()).scale_int(2);
        assert_eq!(cusp_shape(&w).unwrap(), want);
    }

    #[test]
    fn lemmas_small() {
        for (p, q) in [(3, 1), (5, 3), (7, 3), (9, 5), (11, 7), (13, 5), (15, 7)] {
            let rep = lemma_report(&alg(p, q));
            assert!(rep.all_ok(), "({p},{q}): {:?}", rep.failures);
        }
    }
}

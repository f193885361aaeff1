use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::limit::{alpha_sequence, h_polynomials, SeedMatrix};
use crate::error::{Error, Result};
use crate::exactalg::{convex_hull, GaussInt, LaurentBiPoly, Rational, UniPoly};
use crate::twobridge::{make_params, sequence_p};

/// Q_M, R_M, S_M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateTriple {
    pub qm: LaurentBiPoly,
    pub rm: LaurentBiPoly,
    pub sm: LaurentBiPoly,
}

/// κ = Σ_r (−1)^{r+1} α_r over the given prefix.
fn kappa(alpha: &[i64]) -> i64 {
    alpha
        .iter()
        .enumerate()
        .map(|(r, &a)| if r % 2 == 0 { a } else { -a })
        .sum()
}

fn mono(i: i64, j: i64, c: i64) -> LaurentBiPoly {
    LaurentBiPoly::monomial(i, j, GaussInt::new(c, 0))
}

/// U^h + U^{−h}.
fn u_sym(h: i64) -> LaurentBiPoly {
    &mono(h, 0, 1) + &mono(-h, 0, 1)
}

/// Σ_η (Πη_r)·U^{Σ η_rα_r + (η₁ξ₀ + η_dξ_d)/2}·Π_{r<d}(U^{h_r} + U^{−h_r})·V^{Ση_r},
/// h_r = (η_r + η_{r+1})/2, summed by dynamic programming over (η₁, η_r).
pub fn eta_sum(alpha: &[i64], xi0: i64, xid: i64) -> LaurentBiPoly {
    if alpha.is_empty() {
        return LaurentBiPoly::one();
    }
    let signs = [1i64, -1];
    let step = |eta: i64, a: i64| mono(eta * a, eta, eta);
    // states[first][last]
    let mut states: [[LaurentBiPoly; 2]; 2] = Default::default();
    for (s, &e) in signs.iter().enumerate() {
        states[s][s] = step(e, alpha[0]);
    }
    for &a in &alpha[1..] {
        let mut next: [[LaurentBiPoly; 2]; 2] = Default::default();
        for first in 0..2 {
            for (last, &el) in signs.iter().enumerate() {
                if states[first][last].is_zero() {
                    continue;
                }
                for (nl, &en) in signs.iter().enumerate() {
                    let f = &u_sym((el + en) / 2) * &step(en, a);
                    next[first][nl] = &next[first][nl] + &(&states[first][last] * &f);
                }
            }
        }
        states = next;
    }
    let mut out = LaurentBiPoly::zero();
    for (first, &ef) in signs.iter().enumerate() {
        for (last, &el) in signs.iter().enumerate() {
            let shift = (ef * xi0 + el * xid) / 2;
            out = &out + &(&states[first][last] * &mono(shift, 0, 1));
        }
    }
    out
}

/// Q_M, R_M, S_M from the η-sum, without the specialization check.
pub fn bivariate_unchecked(m: &SeedMatrix) -> BivariateTriple {
    let alpha = alpha_sequence(m);
    let k = kappa(&alpha);
    let pref = GaussInt::i_pow(k - 1);
    let qm = eta_sum(&alpha, 1, 1).scale(&pref);
    let rm = eta_sum(&alpha, -1, 1).scale(&pref);
    let prefix = &alpha[..m.b as usize];
    let sm = eta_sum(prefix, 1, 1).scale(&GaussInt::i_pow(kappa(prefix)));
    BivariateTriple { qm, rm, sm }
}

/// Q_M, R_M, S_M, validated against the continuants for n ∈ {3, 5, 7}
/// (the admissible ones among them).
pub fn bivariate_polys(m: &SeedMatrix) -> Result<BivariateTriple> {
    let t = bivariate_unchecked(m);
    for n in [3, 5, 7] {
        if m.admissible(n) {
            specialization_check(m, &t, n)?;
        }
    }
    Ok(t)
}

/// Product of the entry matrices (η, ξ) ↦ i^{α−1+h}(U^{α+h}V − U^{−α−h}V⁻¹),
/// conjugated at even positions; Q = −i·G₊₊, R = G₊₋, S = (first b)₊₊.
pub fn bivariate_by_matrices(m: &SeedMatrix) -> BivariateTriple {
    let alpha = alpha_sequence(m);
    let block = |a: i64, conj: bool| -> [[LaurentBiPoly; 2]; 2] {
        let entry = |eta: i64, xi: i64| {
            let h = (eta + xi) / 2;
            let mut c = GaussInt::i_pow(a - 1 + h);
            if conj {
                c = c.conj();
            }
            (&mono(a + h, 1, 1) - &mono(-a - h, -1, 1)).scale(&c)
        };
        [[entry(1, 1), entry(1, -1)], [entry(-1, 1), entry(-1, -1)]]
    };
    let id = || [[LaurentBiPoly::one(), LaurentBiPoly::zero()], [LaurentBiPoly::zero(), LaurentBiPoly::one()]];
    let mul = |x: &[[LaurentBiPoly; 2]; 2], y: &[[LaurentBiPoly; 2]; 2]| {
        let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    };
    let mut g = id();
    let mut gb = id();
    for (r, &a) in alpha.iter().enumerate() {
        g = mul(&g, &block(a, r % 2 == 1));
        if r + 1 == m.b as usize {
            gb = g.clone();
        }
    }
    BivariateTriple {
        qm: g[0][0].scale(&GaussInt::new(0, -1)),
        rm: g[0][1].clone(),
        sm: gb[0][0].clone(),
    }
}

/// f(i(t + t⁻¹))·(t − t⁻¹)^k as a Laurent polynomial in t.
fn substitute(f: &UniPoly, k: u32) -> LaurentBiPoly {
    let x = LaurentBiPoly::from_terms([((1, 0), GaussInt::new(0, 1)), ((-1, 0), GaussInt::new(0, 1))]);
    let mut acc = LaurentBiPoly::zero();
    let mut pow = LaurentBiPoly::one();
    let coeffs = f.int_coeffs().expect("continuants are integral");
    for c in coeffs {
        if !c.is_zero() {
            acc = &acc + &pow.scale(&GaussInt::new(c.clone(), 0));
        }
        pow = &pow * &x;
    }
    &acc * &(&mono(1, 0, 1) - &mono(-1, 0, 1)).pow(k)
}

/// P_{p_n−1}(it+it⁻¹)(t−t⁻¹)^d = i^{n+1}Q_M(t,tⁿ), P_{p_n−2}(…)(t−t⁻¹)^d = iⁿR_M(t,tⁿ)
/// and P_{q_n−1}(…)(t−t⁻¹)^b = S_M(t,tⁿ), continuants taken for (p_n, d).
pub fn specialization_check(m: &SeedMatrix, t: &BivariateTriple, n: i64) -> Result<()> {
    let (p, q) = m.check_n(n)?;
    let params = make_params(p, m.d)?;
    let ps = sequence_p(&params, p - 1);
    let at = |k: i64| &ps[(k + 1) as usize];
    let cases = [
        ("Q_M", at(p - 1), m.d, GaussInt::i_pow(n + 1), &t.qm),
        ("R_M", at(p - 2), m.d, GaussInt::i_pow(n), &t.rm),
        ("S_M", at(q - 1), m.b, GaussInt::one(), &t.sm),
    ];
    for (which, f, k, pref, poly) in cases {
        let lhs = substitute(f, k as u32);
        let rhs = poly.on_curve(n).scale(&pref);
        let residual = &lhs - &rhs;
        if !residual.is_zero() {
            return Err(Error::SpecializationMismatch {
                n,
                which: which.into(),
                residual: residual.to_string(),
            });
        }
    }
    Ok(())
}

/// The block-matrix-power product ((±X,1),(1,0))^{n+α_r} reproduces
/// (P_{p_n−1}, P_{p_n−2}) and, over the first b blocks, (P_{q_n−1}, P_{q_n−2}).
pub fn block_product_matches(m: &SeedMatrix, n: i64) -> Result<bool> {
    let (p, q) = m.check_n(n)?;
    let alpha = alpha_sequence(m);
    let params = make_params(p, m.d)?;
    let ps = sequence_p(&params, p - 1);
    let at = |k: i64| ps[(k + 1) as usize].clone();
    let run = |blocks: &[i64]| {
        let mut v = [UniPoly::one(), UniPoly::zero()];
        for (r, &a) in blocks.iter().enumerate() {
            let sx = UniPoly::from_i64s(&[0, if r % 2 == 0 { 1 } else { -1 }]);
            for _ in 0..n + a {
                v = [&(&sx * &v[0]) + &v[1], v[0].clone()];
            }
        }
        v
    };
    let full = run(&alpha);
    let part = run(&alpha[..m.b as usize]);
    Ok(full == [at(p - 1), at(p - 2)] && part == [at(q - 1), at(q - 2)])
}

/// One clause of the structural lemma on Q_M, R_M, S_M.
#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct QlemmaReport {
    pub seed: SeedMatrix,
    pub clauses: Vec<Clause>,
}

impl QlemmaReport {
    pub fn all_ok(&self) -> bool {
        self.clauses.iter().all(|c| c.ok)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

fn sign_match(lhs: &LaurentBiPoly, rhs: &LaurentBiPoly) -> Option<i8> {
    if lhs == rhs {
        Some(1)
    } else if *lhs == -rhs {
        Some(-1)
    } else {
        None
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Homogeneous part of degree k of P(e^u, e^v): entry m is the coefficient of
/// u^{k−m}v^m, as (real, imaginary).
pub fn homogeneous_part(poly: &LaurentBiPoly, k: u32) -> Vec<(Rational, Rational)> {
    let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
    (0..=k)
        .map(|mm| {
            let mut re = BigInt::zero();
            let mut im = BigInt::zero();
            for (&(i, j), c) in poly.terms() {
                let w = BigInt::from(i).pow(k - mm) * BigInt::from(j).pow(mm);
                re += &c.re * &w;
                im += &c.im * &w;
            }
            let b = binom(k, mm);
            (
                Rational::new(re * &b, fact.clone()),
                Rational::new(im * &b, fact.clone()),
            )
        })
        .collect()
}

/// P(e^u,e^v) has no terms of total order < k and its order-k part is 2^k·u^k·H(v/u).
fn first_order(poly: &LaurentBiPoly, h: &UniPoly, k: u32) -> (bool, String) {
    for low in 0..k {
        if homogeneous_part(poly, low).iter().any(|(r, i)| !r.is_zero() || !i.is_zero()) {
            return (false, format!("nonzero part of order {low}"));
        }
    }
    let part = homogeneous_part(poly, k);
    let two_k = Rational::from_integer(BigInt::from(2).pow(k));
    let ok = part
        .iter()
        .enumerate()
        .all(|(mm, (r, i))| i.is_zero() && *r == &two_k * h.coeff(mm));
    let detail = if ok {
        format!("order-{k} part is 2^{k} u^{k} H(v/u) with H = {h}")
    } else {
        let got: Vec<String> = part.iter().map(|(r, _)| r.to_string()).collect();
        format!("order-{k} coefficients {got:?} vs 2^{k} * ({h})")
    };
    (ok, detail)
}

pub fn qlemma_report(m: &SeedMatrix) -> Result<QlemmaReport> {
    let t = bivariate_polys(m)?;
    let h = h_polynomials(m)?;
    let q = &t.qm;
    let (c, d) = (m.c, m.d);
    let mut clauses = Vec::new();
    let mut push = |name: &str, ok: bool, detail: String| {
        clauses.push(Clause {
            name: name.into(),
            ok,
            detail,
        })
    };

    let s1 = q.flip_signs(-1, 1) == *q;
    let s2 = q.flip_signs(1, -1) == -q;
    let s3 = q.invert_vars() == -q;
    push(
        "symmetries",
        s1 && s2 && s3,
        format!("Q(-U,V)=Q: {s1}, Q(U,-V)=-Q: {s2}, Q(1/U,1/V)=-Q: {s3}"),
    );

    let core = u_sym(1).pow((d - 1) as u32);
    let top = sign_match(&q.v_slice(d), &(&core * &mono(c, 0, 1)));
    let bottom = sign_match(&q.v_slice(-d), &(&core * &mono(-c, 0, 1)));
    push(
        "extreme_v_terms",
        q.v_range() == Some((-d, d)) && top.is_some() && bottom.is_some(),
        format!("V-range {:?}, signs top {top:?} bottom {bottom:?}", q.v_range()),
    );

    let expected: Vec<(i64, i64)> = convex_hull(vec![
        (d - 1 + c, d),
        (-(d - 1) + c, d),
        (d - 1 - c, -d),
        (-(d - 1) - c, -d),
    ]);
    let hull = q.newton_polygon()?;
    push("newton_polygon", hull == expected, format!("vertices {hull:?}, expected {expected:?}"));

    let vv = (&mono(0, 1, 1) - &mono(0, -1, 1)).pow(d as u32);
    let scale = GaussInt::new(BigInt::from(2).pow((d - 1) as u32), 0);
    let target = vv.scale(&scale);
    let plus = sign_match(&q.at_u_sign(1), &target);
    let minus = sign_match(&q.at_u_sign(-1), &target);
    push(
        "at_u_pm_one",
        plus.is_some() && minus.is_some(),
        format!("Q(1,V) sign {plus:?}, Q(-1,V) sign {minus:?} against 2^(d-1)(V-1/V)^d"),
    );

    let (ok, detail) = first_order(q, &h.h1, d as u32);
    push("first_order_q", ok, detail);
    let (ok, detail) = first_order(&t.rm, &h.h2, d as u32);
    push("first_order_r", ok, detail);
    let (ok, detail) = first_order(&t.sm, &h.h3, m.b as u32);
    push("first_order_s", ok, detail);

    Ok(QlemmaReport { seed: *m, clauses })
}

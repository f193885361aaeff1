use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{coprime, is_squarefree, GaussianPoly, QuotientElem, QuotientRing, Rational, UniPoly};

/// Sign applied to the raw recipe output to obtain the normalized H₁.
pub const H1_NORMALIZATION: i8 = -1;

/// M = (a, b; c, d) in Γ_S(2), seeding q_n = a + bn, p_n = c + dn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeedMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SeedMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = SeedMatrix { a, b, c, d };
        let bad = |why: &str| Err(Error::InvalidParams(format!("M=({a},{b};{c},{d}): {why}")));
        if a * d - b * c != 1 {
            return bad("determinant is not 1");
        }
        if a % 2 == 0 || d % 2 == 0 {
            return bad("a and d must be odd");
        }
        if b % 2 != 0 || c % 2 != 0 {
            return bad("b and c must be even");
        }
        if !(0 <= b && b < d) {
            return bad("need 0 <= b < d");
        }
        if c <= 0 {
            return bad("need c > 0");
        }
        Ok(m)
    }

    /// (p_n, q_n) = (c + dn, a + bn).
    pub fn pq(&self, n: i64) -> (i64, i64) {
        (self.c + self.d * n, self.a + self.b * n)
    }

    /// n is odd and (p_n, q_n) is a valid coprime pair with 0 < q_n < p_n.
    pub fn admissible(&self, n: i64) -> bool {
        let (p, q) = self.pq(n);
        n % 2 != 0 && 0 < q && q < p && p.gcd(&q) == 1
    }

    pub fn check_n(&self, n: i64) -> Result<(i64, i64)> {
        if !self.admissible(n) {
            let (p, q) = self.pq(n);
            return Err(Error::InvalidParams(format!(
                "n = {n} gives (p,q) = ({p},{q}), not an admissible pair"
            )));
        }
        Ok(self.pq(n))
    }
}

impl std::fmt::Display for SeedMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

/// α_r = ⌊rc/d⌋ − ⌊(r−1)c/d⌋, minus one more at r = d.
pub fn alpha_sequence(m: &SeedMatrix) -> Vec<i64> {
    let (c, d) = (m.c, m.d);
    let mut alpha: Vec<i64> = (1..=d)
        .map(|r| (r * c).div_euclid(d) - ((r - 1) * c).div_euclid(d))
        .collect();
    alpha[(d - 1) as usize] -= 1;
    assert_eq!(alpha.iter().sum::<i64>(), c - 1, "alpha sum for {m}");
    alpha
}

/// H₁, H₂, H₃ of a seed matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTriple {
    /// Normalized: `recipe_sign`·(raw recipe output).
    pub h1: UniPoly,
    pub h2: UniPoly,
    pub h3: UniPoly,
    pub recipe_sign: i8,
}

impl HTriple {
    /// The unnormalized H₁ read off the matrix product.
    pub fn h1_recipe(&self) -> UniPoly {
        if self.recipe_sign < 0 {
            -&self.h1
        } else {
            self.h1.clone()
        }
    }

    /// deg H₁ = deg H₂ = d and deg H₃ = b.
    pub fn degrees_as_expected(&self, m: &SeedMatrix) -> bool {
        let d = Some(m.d as usize);
        self.h1.degree() == d && self.h2.degree() == d && self.h3.degree() == Some(m.b as usize)
    }
}

type GMat = [[GaussianPoly; 2]; 2];

/// N(α) = i^α·((α+1+x, −i(α+x)), (−i(α+x), 1−α−x)).
fn n_matrix(alpha: i64, conjugate: bool) -> GMat {
    let ax = UniPoly::from_i64s(&[alpha, 1]);
    let diag0 = GaussianPoly::real(UniPoly::from_i64s(&[alpha + 1, 1]));
    let off = GaussianPoly::new(UniPoly::zero(), -&ax);
    let diag1 = GaussianPoly::real(UniPoly::from_i64s(&[1 - alpha, -1]));
    let mut n = [[diag0, off.clone()], [off, diag1]];
    for row in n.iter_mut() {
        for e in row.iter_mut() {
            *e = e.mul_i_pow(alpha);
            if conjugate {
                *e = e.conj();
            }
        }
    }
    n
}

/// N(α₁)·N̄(α₂)·N(α₃)⋯ over the given prefix, applied to (1, 0)ᵀ.
fn product_on_e1(alpha: &[i64]) -> [GaussianPoly; 2] {
    let mut v = [GaussianPoly::one(), GaussianPoly::zero()];
    for (idx, &a) in alpha.iter().enumerate().rev() {
        let n = n_matrix(a, idx % 2 == 1);
        v = [
            &(&n[0][0] * &v[0]) + &(&n[0][1] * &v[1]),
            &(&n[1][0] * &v[0]) + &(&n[1][1] * &v[1]),
        ];
    }
    v
}

fn real_part(g: &GaussianPoly, what: &str, m: &SeedMatrix) -> Result<UniPoly> {
    if !g.im.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "{what} for M={m} has imaginary part {}",
            g.im
        )));
    }
    Ok(g.re.clone())
}

/// (−iH₁, H₂)ᵀ = N(α₁)N̄(α₂)⋯N(α_d)(1,0)ᵀ and H₃ from the first b factors.
pub fn h_polynomials(m: &SeedMatrix) -> Result<HTriple> {
    let alpha = alpha_sequence(m);
    let w = product_on_e1(&alpha);
    let h1_recipe = real_part(&w[0].mul_i_pow(1), "H1", m)?;
    let h2 = real_part(&w[1], "H2", m)?;
    let h3 = if m.b == 0 {
        UniPoly::one()
    } else {
        real_part(&product_on_e1(&alpha[..m.b as usize])[0], "H3", m)?
    };
    let h1 = if H1_NORMALIZATION < 0 { -&h1_recipe } else { h1_recipe };
    Ok(HTriple {
        h1,
        h2,
        h3,
        recipe_sign: H1_NORMALIZATION,
    })
}

/// H₁ squarefree and coprime to H₃.
pub fn condition_h_for(h: &HTriple) -> bool {
    is_squarefree(&h.h1).unwrap_or(false) && coprime(&h.h1, &h.h3)
}

pub fn condition_h(m: &SeedMatrix) -> Result<bool> {
    Ok(condition_h_for(&h_polynomials(m)?))
}

/// W_M = Q[x]/(H₁) with Ω_W = −H₁′·H₂·H₃⁻².
#[derive(Clone, Debug)]
pub struct LimitAlgebra {
    pub seed: SeedMatrix,
    pub alpha: Vec<i64>,
    pub h: HTriple,
    pub ring: Arc<QuotientRing>,
    pub omega_w: QuotientElem,
}

impl LimitAlgebra {
    pub fn new(m: &SeedMatrix) -> Result<Self> {
        let h = h_polynomials(m)?;
        if !condition_h_for(&h) {
            return Err(Error::ConditionHFails {
                a: m.a,
                b: m.b,
                c: m.c,
                d: m.d,
            });
        }
        let ring = QuotientRing::new(h.h1.clone())?;
        let h3 = QuotientElem::new(&ring, &h.h3);
        let num = QuotientElem::new(&ring, &(&h.h1.derivative() * &h.h2));
        let omega_w = -(&num * &h3.square().invert()?);
        Ok(LimitAlgebra {
            seed: *m,
            alpha: alpha_sequence(m),
            h,
            ring,
            omega_w,
        })
    }

    /// Tr_{W/Q}(Ω_W^{g−1}).
    pub fn trace(&self, g: u32) -> Result<Rational> {
        if g == 0 {
            return Err(Error::InvalidParams("genus must be >= 1".into()));
        }
        Ok(self.omega_w.pow((g - 1) as u64).trace())
    }

    /// Tr(Ω_W^{g−1})/d^{3(g−1)}, the limit of σ_g/dim.
    pub fn limit_ratio(&self, g: u32) -> Result<Rational> {
        let t = self.trace(g)?;
        let scale = num_bigint::BigInt::from(self.seed.d).pow(3 * (g - 1));
        Ok(t / Rational::from_integer(scale))
    }
}

pub fn limit_trace(m: &SeedMatrix, g: u32) -> Result<Rational> {
    LimitAlgebra::new(m)?.trace(g)
}

/// One row of the condition (H) sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub b: i64,
    pub d: i64,
    pub a: i64,
    pub c: i64,
    pub ok: bool,
}

/// Seeds with odd d < `dmax`, even 0 ≤ b < d coprime to d, c the smallest
/// even positive integer with bc ≡ −1 mod d, and a = (1 + bc)/d.
pub fn sweep_seeds(dmax: i64) -> Vec<SeedMatrix> {
    let mut out = Vec::new();
    for d in (1..dmax).step_by(2) {
        for b in (0..d).step_by(2) {
            if b.gcd(&d) != 1 {
                continue;
            }
            let c = (1..)
                .map(|k| 2 * k)
                .find(|&c| (b * c + 1).rem_euclid(d) == 0)
                .expect("an even inverse exists");
            let a = (1 + b * c) / d;
            out.push(SeedMatrix { a, b, c, d });
        }
    }
    out
}

pub fn condition_h_sweep(dmax: i64) -> Result<Vec<SweepRow>> {
    sweep_seeds(dmax)
        .par_iter()
        .map(|m| {
            let m = SeedMatrix::new(m.a, m.b, m.c, m.d)?;
            Ok(SweepRow {
                b: m.b,
                d: m.d,
                a: m.a,
                c: m.c,
                ok: condition_h(&m)?,
            })
        })
        .collect()
}

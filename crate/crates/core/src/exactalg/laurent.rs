use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::GaussInt;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in U, V over the Gaussian integers.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentBiPoly {
    terms: BTreeMap<(i64, i64), GaussInt>,
}

impl LaurentBiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, GaussInt::one())
    }

    /// `c·U^i·V^j`.
    pub fn monomial(i: i64, j: i64, c: GaussInt) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), GaussInt)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Integer-coefficient constructor from `(i, j, c)` triples.
    pub fn from_int_terms(terms: &[(i64, i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), GaussInt::new(c, 0))))
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: GaussInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), GaussInt> {
        &self.terms
    }

    pub fn coeff(&self, i: i64, j: i64) -> GaussInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All coefficients are real integers.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == BigInt::from(0))
    }

    pub fn scale(&self, k: &GaussInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c * k)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `P(s_u·U, s_v·V)` for signs `s_u, s_v ∈ {±1}`.
    pub fn flip_signs(&self, su: i8, sv: i8) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            let neg = (su < 0 && i.rem_euclid(2) == 1) ^ (sv < 0 && j.rem_euclid(2) == 1);
            ((i, j), if neg { -c } else { c.clone() })
        }))
    }

    /// `P(U⁻¹, V⁻¹)`.
    pub fn invert_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((-i, -j), c.clone())))
    }

    /// `P(u, V)` for `u = ±1`, as a polynomial in V alone (U-exponent 0).
    pub fn at_u_sign(&self, su: i8) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            let neg = su < 0 && i.rem_euclid(2) == 1;
            ((0, j), if neg { -c } else { c.clone() })
        }))
    }

    /// `P(t, t^n)` as a Laurent polynomial in `t` (stored with V-exponent 0).
    pub fn on_curve(&self, n: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((i + n * j, 0), c.clone())))
    }

    /// Coefficient of `V^j` as a Laurent polynomial in U (V-exponent 0).
    pub fn v_slice(&self, j: i64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, jj), _)| jj == j)
                .map(|(&(i, _), c)| ((i, 0), c.clone())),
        )
    }

    /// Smallest and largest V-exponent in the support.
    pub fn v_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|&(_, j)| j).min()?;
        let hi = self.terms.keys().map(|&(_, j)| j).max()?;
        Some((lo, hi))
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().copied().collect()
    }

    /// Convex hull vertices of the support, counterclockwise from the
    /// lexicographically smallest; collinear points are dropped.
    pub fn newton_polygon(&self) -> Result<Vec<(i64, i64)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(convex_hull(self.support()))
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Andrew's monotone chain on sorted, deduplicated points.
pub fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

impl Add for &LaurentBiPoly {
    type Output = LaurentBiPoly;
    fn add(self, o: &LaurentBiPoly) -> LaurentBiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &LaurentBiPoly {
    type Output = LaurentBiPoly;
    fn sub(self, o: &LaurentBiPoly) -> LaurentBiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &LaurentBiPoly {
    type Output = LaurentBiPoly;
    fn mul(self, o: &LaurentBiPoly) -> LaurentBiPoly {
        let mut out = LaurentBiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentBiPoly {
    type Output = LaurentBiPoly;
    fn neg(self) -> LaurentBiPoly {
        LaurentBiPoly::from_terms(self.terms.iter().map(|(&e, c)| (e, -c)))
    }
}

/// Product of two Laurent polynomials (sparse convolution).
pub fn laurent_mul(a: &LaurentBiPoly, b: &LaurentBiPoly) -> LaurentBiPoly {
    a * b
}

impl fmt::Display for LaurentBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if i != 0 {
                write!(f, "*U^{i}")?;
            }
            if j != 0 {
                write!(f, "*V^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mul_examples() {
        let u = LaurentBiPoly::from_int_terms(&[(1, 0, 1)]);
        let ui = LaurentBiPoly::from_int_terms(&[(-1, 0, 1)]);
        assert_eq!(laurent_mul(&u, &ui), LaurentBiPoly::one());
        let a = LaurentBiPoly::from_int_terms(&[(0, 1, 1), (0, -1, -1)]);
        let b = LaurentBiPoly::from_int_terms(&[(0, 1, 1), (0, -1, 1)]);
        assert_eq!(&a * &b, LaurentBiPoly::from_int_terms(&[(0, 2, 1), (0, -2, -1)]));
        let q = LaurentBiPoly::from_int_terms(&[(2, 1, 1), (-2, -1, -1)]);
        assert_eq!(
            &q * &q,
            LaurentBiPoly::from_int_terms(&[(4, 2, 1), (0, 0, -2), (-4, -2, 1)])
        );
    }

    #[test]
    fn polygon_examples() {
        let q = LaurentBiPoly::from_int_terms(&[(2, 1, 1), (-2, -1, -1)]);
        assert_eq!(q.newton_polygon().unwrap(), vec![(-2, -1), (2, 1)]);
        assert_eq!(LaurentBiPoly::one().newton_polygon().unwrap(), vec![(0, 0)]);
        assert!(LaurentBiPoly::zero().newton_polygon().is_err());
        let sq = LaurentBiPoly::from_int_terms(&[(0, 0, 1), (1, 0, 1), (2, 0, 1), (0, 1, 1), (2, 2, 1), (1, 1, 5)]);
        assert_eq!(sq.newton_polygon().unwrap(), vec![(0, 0), (2, 0), (2, 2), (0, 1)]);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentBiPoly> {
        prop::collection::vec((-3i64..3, -3i64..3, -4i64..4, -4i64..4), 0..6).prop_map(|v| {
            LaurentBiPoly::from_terms(v.into_iter().map(|(i, j, a, b)| ((i, j), GaussInt::new(a, b))))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(a.terms().values().all(|c| !c.is_zero()));
        }

        #[test]
        fn hull_contains_extremes(a in arb_laurent()) {
            prop_assume!(!a.is_zero());
            let hull = a.newton_polygon().unwrap();
            let min = *a.support().iter().min().unwrap();
            prop_assert_eq!(hull[0], min);
            for w in hull.windows(3) {
                prop_assert!(cross(w[0], w[1], w[2]) > 0);
            }
        }
    }
}

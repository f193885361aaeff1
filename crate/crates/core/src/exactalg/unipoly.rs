use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intpoly;
use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q.
///
/// Stored as integer numerators over one positive common denominator, kept in
/// canonical form (no trailing zeros, numerator content coprime to the
/// denominator, zero is `[] / 1`), so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

impl UniPoly {
    pub(crate) fn from_parts(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        intpoly::trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        UniPoly { num, den }
    }

    pub fn zero() -> Self {
        UniPoly {
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int_coeffs(vec![BigInt::one()])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_int_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_int_coeffs(num: Vec<BigInt>) -> Self {
        Self::from_parts(num, BigInt::one())
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_int_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(num, den)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_rationals(&[c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::from_rationals(&v)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.num.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        match self.num.get(i) {
            Some(c) => Rational::new(c.clone(), self.den.clone()),
            None => Rational::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn leading_coeff(&self) -> Rational {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => Rational::zero(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Integer numerators; the value is `numerators / denominator`.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn int_coeffs(&self) -> Option<&[BigInt]> {
        self.den.is_one().then_some(&self.num[..])
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::from_parts(intpoly::scale(&self.num, k.numer()), &self.den * k.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self::from_parts(intpoly::scale(&self.num, k), self.den.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::from_parts(intpoly::derivative(&self.num), self.den.clone())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut num = vec![BigInt::zero(); k];
        num.extend(self.num.iter().cloned());
        UniPoly {
            num,
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.num.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc / Rational::from_integer(self.den.clone())
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.num.last() {
            None => Self::zero(),
            Some(lc) => Self::from_parts(self.num.clone(), lc.clone()),
        }
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn primitive_part(&self) -> Vec<BigInt> {
        let g = intpoly::content(&self.num);
        if g.is_zero() {
            return Vec::new();
        }
        let g = if self.num.last().is_some_and(|c| c.is_negative()) {
            -g
        } else {
            g
        };
        self.num.iter().map(|c| c / &g).collect()
    }

    /// Division with remainder over Q.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (q, r, k) = intpoly::prem(&self.num, &divisor.num);
        let lc = &divisor.num[divisor.num.len() - 1];
        let ak = num_traits::pow(lc.clone(), k as usize);
        let base = &ak * &self.den;
        let quot = UniPoly::from_parts(intpoly::scale(&q, &divisor.den), base.clone());
        let rem = UniPoly::from_parts(r, base);
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact test whether `divisor` divides `self` in Q[x].
    pub fn is_divisible_by(&self, divisor: &UniPoly) -> Result<bool> {
        Ok(self.rem(divisor)?.is_zero())
    }

    /// `self(inner)` by Horner's rule.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for i in (0..self.num.len()).rev() {
            acc = &(&acc * inner) + &UniPoly::constant(self.coeff(i));
        }
        acc
    }
}

impl Default for UniPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for UniPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for UniPoly {
    fn from(c: i64) -> Self {
        Self::from_i64s(&[c])
    }
}

fn lift(a: &UniPoly, den: &BigInt) -> Vec<BigInt> {
    if &a.den == den {
        a.num.clone()
    } else {
        intpoly::scale(&a.num, &(den / &a.den))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        if self.den == rhs.den {
            return UniPoly::from_parts(intpoly::add(&self.num, &rhs.num), self.den.clone());
        }
        let den = self.den.lcm(&rhs.den);
        UniPoly::from_parts(intpoly::add(&lift(self, &den), &lift(rhs, &den)), den)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        if self.den == rhs.den {
            return UniPoly::from_parts(intpoly::sub(&self.num, &rhs.num), self.den.clone());
        }
        let den = self.den.lcm(&rhs.den);
        UniPoly::from_parts(intpoly::sub(&lift(self, &den), &lift(rhs, &den)), den)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::from_parts(intpoly::mul(&self.num, &rhs.num), &self.den * &rhs.den)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.num.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { "*" } else { "" }, i)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_form() {
        let a = UniPoly::from_rationals(&[r(1, 2), r(1, 4), r(0, 1)]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(a.denominator(), &BigInt::from(4));
        let b = UniPoly::from_parts(vec![BigInt::from(-4), BigInt::from(-2)], BigInt::from(-8));
        assert_eq!(a, b);
        assert_eq!(UniPoly::from_i64s(&[0, 0]), UniPoly::zero());
        assert_eq!(UniPoly::zero().degree(), None);
    }

    #[test]
    fn display() {
        let p = UniPoly::from_i64s(&[1, 0, -1, 0, 1]);
        assert_eq!(p.to_string(), "x^4 - x^2 + 1");
        let q = UniPoly::from_rationals(&[r(-1, 2), r(3, 1)]);
        assert_eq!(q.to_string(), "3*x - 1/2");
    }

    #[test]
    fn div_rem_known() {
        let f = UniPoly::from_i64s(&[-1, 0, 0, 1]);
        let g = UniPoly::from_i64s(&[1, 2]);
        let (q, rem) = f.div_rem(&g).unwrap();
        assert_eq!(&(&q * &g) + &rem, f);
        assert_eq!(rem, UniPoly::constant(r(-9, 8)));
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec((-30i64..30, 1i64..6), 0..8).prop_map(|v| {
            UniPoly::from_rationals(&v.iter().map(|&(n, d)| r(n, d)).collect::<Vec<_>>())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, rem) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &rem, a);
            prop_assert!(rem.len() < b.len());
        }

        #[test]
        fn eval_is_ring_hom(a in arb_poly(), b in arb_poly(), n in -5i64..5, d in 1i64..4) {
            let x = r(n, d);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
        }
    }
}

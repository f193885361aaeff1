use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::UniPoly;

/// A Gaussian integer `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            2 => Self::new(-1, 0),
            _ => Self::new(0, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GaussInt {
            re: &self.re * k,
            im: &self.im * k,
        }
    }
}

impl Add for &GaussInt {
    type Output = GaussInt;
    fn add(self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &GaussInt {
    type Output = GaussInt;
    fn sub(self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            _ => write!(f, "({}{:+}i)", self.re, self.im),
        }
    }
}

/// Polynomial in x with Gaussian-integer coefficients, `re + i·im`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianPoly {
    pub re: UniPoly,
    pub im: UniPoly,
}

impl GaussianPoly {
    pub fn new(re: UniPoly, im: UniPoly) -> Self {
        debug_assert!(re.is_integral() && im.is_integral());
        GaussianPoly { re, im }
    }

    pub fn real(re: UniPoly) -> Self {
        Self::new(re, UniPoly::zero())
    }

    pub fn zero() -> Self {
        Self::real(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::real(UniPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => Self::new(-&self.im, self.re.clone()),
            2 => Self::new(-&self.re, -&self.im),
            _ => Self::new(self.im.clone(), -&self.re),
        }
    }
}

impl Add for &GaussianPoly {
    type Output = GaussianPoly;
    fn add(self, o: &GaussianPoly) -> GaussianPoly {
        GaussianPoly::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianPoly {
    type Output = GaussianPoly;
    fn sub(self, o: &GaussianPoly) -> GaussianPoly {
        GaussianPoly::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianPoly {
    type Output = GaussianPoly;
    fn mul(self, o: &GaussianPoly) -> GaussianPoly {
        let rr = &self.re * &o.re;
        let ii = &self.im * &o.im;
        let ri = &self.re * &o.im;
        let ir = &self.im * &o.re;
        GaussianPoly::new(&rr - &ii, &ri + &ir)
    }
}

impl Neg for &GaussianPoly {
    type Output = GaussianPoly;
    fn neg(self) -> GaussianPoly {
        GaussianPoly::new(-&self.re, -&self.im)
    }
}

impl From<UniPoly> for GaussianPoly {
    fn from(p: UniPoly) -> Self {
        GaussianPoly::real(p)
    }
}

impl fmt::Display for GaussianPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + i({})", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_powers() {
        let i = GaussInt::i_pow(1);
        assert_eq!(&i * &i, GaussInt::new(-1, 0));
        assert_eq!(GaussInt::i_pow(-1), i.conj());
        let p = GaussianPoly::new(UniPoly::from_i64s(&[1, 2]), UniPoly::from_i64s(&[0, 1]));
        assert_eq!(p.mul_i_pow(4), p);
        assert_eq!(p.mul_i_pow(1).mul_i_pow(3), p);
        let q = &p * &p.conj();
        assert!(q.im.is_zero());
        assert_eq!(q.re, UniPoly::from_i64s(&[1, 4, 5]));
    }
}

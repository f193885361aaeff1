use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::intpoly;
use super::UniPoly;
use crate::error::{Error, Result};

/// Monic greatest common divisor over Q; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return UniPoly::zero(),
        (false, true) => return a.monic(),
        (true, false) => return b.monic(),
        _ => {}
    }
    let (f, g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let (last, _) = intpoly::subresultant(f.numerators(), g.numerators(), false);
    UniPoly::from_int_coeffs(last).monic()
}

/// True iff `gcd(p, p′)` is constant.
pub fn is_squarefree(p: &UniPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(coprime(p, &p.derivative()))
}

/// True iff `gcd(a, b)` is constant. A word-size modular certificate is tried
/// first; the exact gcd decides when no prime certifies.
pub fn coprime(a: &UniPoly, b: &UniPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        let other = if a.is_zero() { b } else { a };
        return other.degree() == Some(0);
    }
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return true;
    }
    for &p in PRIMES {
        if modular::certifies_coprime(a.numerators(), b.numerators(), p) {
            return true;
        }
    }
    poly_gcd(a, b).degree() == Some(0)
}

const PRIMES: &[u64] = &[
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    1_152_921_504_606_846_883,
];

mod modular {
    use super::*;

    fn reduce(c: &BigInt, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((c % &m) + &m) % &m;
        r.to_u64().unwrap_or(0)
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a, p);
            }
            a = mulmod(a, a, p);
            e >>= 1;
        }
        acc
    }

    fn inv(a: u64, p: u64) -> u64 {
        powmod(a, p - 2, p)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Degree of gcd mod p is 0 and reduction preserved both degrees.
    pub(super) fn certifies_coprime(a: &[BigInt], b: &[BigInt], p: u64) -> bool {
        let mut f: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let mut g: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        if f.last().is_none_or(|c| c.is_zero()) || g.last().is_none_or(|c| c.is_zero()) {
            return false;
        }
        trim(&mut f);
        trim(&mut g);
        if f.len() < g.len() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_empty() {
            let gl = inv(*g.last().unwrap(), p);
            while f.len() >= g.len() {
                let c = mulmod(*f.last().unwrap(), gl, p);
                let shift = f.len() - g.len();
                for (j, &gj) in g.iter().enumerate() {
                    let t = mulmod(c, gj, p);
                    let x = &mut f[shift + j];
                    *x = if *x >= t { *x - t } else { *x + p - t };
                }
                trim(&mut f);
                if f.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut f, &mut g);
        }
        f.len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        let a = UniPoly::from_i64s(&[-1, 0, 1]);
        let b = UniPoly::from_i64s(&[1, -2, 1]);
        assert_eq!(poly_gcd(&a, &b), UniPoly::from_i64s(&[-1, 1]));
        let p = UniPoly::from_i64s(&[2, 0, 4]);
        assert_eq!(poly_gcd(&p, &UniPoly::zero()), p.monic());
        assert_eq!(poly_gcd(&UniPoly::zero(), &UniPoly::zero()), UniPoly::zero());
        let h1 = UniPoly::from_i64s(&[12, 23, 16, 4]);
        assert_eq!(poly_gcd(&h1, &h1.derivative()), UniPoly::one());
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&UniPoly::from_i64s(&[1, 0, 1])).unwrap());
        assert!(!is_squarefree(&UniPoly::from_i64s(&[1, -2, 1])).unwrap());
        assert!(is_squarefree(&UniPoly::from_i64s(&[1, 0, -1, 0, 1])).unwrap());
        assert!(is_squarefree(&UniPoly::zero()).is_err());
    }

    #[test]
    fn certificate_never_lies_on_common_factor() {
        let f = UniPoly::from_i64s(&[3, 1]);
        let a = &f * &UniPoly::from_i64s(&[1, 0, 7]);
        let b = &f * &UniPoly::from_i64s(&[-5, 2]);
        assert!(!coprime(&a, &b));
    }

    fn arb_int_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-20i64..20, 0..7).prop_map(|v| UniPoly::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in arb_int_poly(), b in arb_int_poly(), c in arb_int_poly()) {
            let a = &a * &c;
            let b = &b * &c;
            let g = poly_gcd(&a, &b);
            if a.is_zero() && b.is_zero() {
                prop_assert!(g.is_zero());
            } else {
                prop_assert!(g.leading_coeff() == super::super::Rational::from_integer(1.into()));
                prop_assert!(a.is_divisible_by(&g).unwrap());
                prop_assert!(b.is_divisible_by(&g).unwrap());
                if !c.is_zero() {
                    prop_assert!(g.is_divisible_by(&c.monic()).unwrap());
                }
            }
        }

        #[test]
        fn coprime_agrees_with_gcd(a in arb_int_poly(), b in arb_int_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(coprime(&a, &b), poly_gcd(&a, &b).degree() == Some(0));
        }
    }
}

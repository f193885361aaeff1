use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::intpoly;
use super::{Rational, UniPoly};
use crate::error::{Error, Result};

const BARRETT_MIN_DEGREE: usize = 40;

/// The ring Q[x]/(modulus).
#[derive(Debug)]
pub struct QuotientRing {
    modulus: UniPoly,
    m: Vec<BigInt>,
    n: usize,
    unit_lead: bool,
    series: Option<Vec<BigInt>>,
    traces: Vec<Rational>,
}

impl QuotientRing {
    pub fn new(modulus: UniPoly) -> Result<Arc<Self>> {
        let n = match modulus.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => {
                return Err(Error::InvalidParams(
                    "quotient ring modulus must have degree >= 1".into(),
                ))
            }
            Some(n) => n,
        };
        let m = modulus.primitive_part();
        let lc = &m[n];
        let unit_lead = lc.is_one() || (-lc).is_one();
        let series = (unit_lead && n >= BARRETT_MIN_DEGREE).then(|| inverse_series(&m, n - 1));
        let traces = power_sums(&m);
        Ok(Arc::new(QuotientRing {
            modulus,
            m,
            n,
            unit_lead,
            series,
            traces,
        }))
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Tr(x^i) for 0 <= i < degree.
    pub fn trace_vector(&self) -> &[Rational] {
        &self.traces
    }

    /// Reduced representative of `p`.
    pub fn reduce(&self, p: &UniPoly) -> UniPoly {
        if p.len() <= self.n {
            return p.clone();
        }
        if self.unit_lead {
            let r = self.reduce_unit(p.numerators().to_vec());
            UniPoly::from_parts(r, p.denominator().clone())
        } else {
            let (_, r, k) = intpoly::prem(p.numerators(), &self.m);
            let ak = num_traits::pow(self.m[self.n].clone(), k as usize);
            UniPoly::from_parts(r, ak * p.denominator())
        }
    }

    fn reduce_unit(&self, mut f: Vec<BigInt>) -> Vec<BigInt> {
        intpoly::trim(&mut f);
        let n = self.n;
        while f.len() > n {
            let k = f.len() - n;
            match &self.series {
                Some(s) if k <= s.len() => {
                    f = self.barrett(&f, s);
                }
                Some(s) => {
                    // reduce the top window of 2n-1 coefficients in place
                    let cut = f.len() - (n + s.len());
                    let top = f.split_off(cut);
                    let red = self.barrett(&top, s);
                    f.extend(red);
                }
                None => {
                    self.schoolbook_unit(&mut f);
                }
            }
            intpoly::trim(&mut f);
        }
        f
    }

    fn schoolbook_unit(&self, f: &mut Vec<BigInt>) {
        let n = self.n;
        let neg = self.m[n].is_negative();
        for top in (n..f.len()).rev() {
            let mut c = std::mem::take(&mut f[top]);
            if c.is_zero() {
                continue;
            }
            if neg {
                c = -c;
            }
            let shift = top - n;
            for (j, mj) in self.m[..n].iter().enumerate() {
                if !mj.is_zero() {
                    f[shift + j] -= &c * mj;
                }
            }
        }
        f.truncate(n);
    }

    fn barrett(&self, f: &[BigInt], series: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let k = f.len() - n;
        let rev_top: Vec<BigInt> = f.iter().rev().take(k).cloned().collect();
        let mut qrev = intpoly::mul(&rev_top, &series[..k]);
        qrev.truncate(k);
        qrev.resize(k, BigInt::zero());
        qrev.reverse();
        let qm = intpoly::mul(&qrev, &self.m);
        let mut r: Vec<BigInt> = f[..n].to_vec();
        for (x, y) in r.iter_mut().zip(qm.iter()) {
            *x -= y;
        }
        r
    }

    /// `x·e` for a reduced integer numerator vector.
    fn mul_x_unit(&self, num: &[BigInt]) -> Vec<BigInt> {
        let mut f = Vec::with_capacity(num.len() + 1);
        f.push(BigInt::zero());
        f.extend(num.iter().cloned());
        if f.len() > self.n {
            self.schoolbook_unit(&mut f);
        }
        f
    }

    /// Trace computed row by row from reduced representatives of `x^k·e`.
    pub fn trace_by_rows(self: &Arc<Self>, e: &QuotientElem) -> Rational {
        let mut row = e.clone();
        let mut acc = Rational::zero();
        for k in 0..self.n {
            acc += row.rep.coeff(k);
            row = row.mul_x();
        }
        acc
    }
}

/// Inverse power series of the reversed modulus, to `len` terms.
fn inverse_series(m: &[BigInt], len: usize) -> Vec<BigInt> {
    let n = m.len() - 1;
    let lead = &m[n];
    let mut g: Vec<BigInt> = Vec::with_capacity(len);
    for j in 0..len {
        if j == 0 {
            g.push(lead.clone());
            continue;
        }
        let mut s = BigInt::zero();
        for i in 1..=j.min(n) {
            let c = &m[n - i];
            if !c.is_zero() {
                s += c * &g[j - i];
            }
        }
        g.push(-(lead * s));
    }
    g
}

/// Newton power sums Tr(x^k), k < deg, of the roots of `m`.
fn power_sums(m: &[BigInt]) -> Vec<Rational> {
    let n = m.len() - 1;
    let lead = Rational::from_integer(m[n].clone());
    let a: Vec<Rational> = m.iter().map(|c| Rational::from_integer(c.clone()) / &lead).collect();
    let mut s: Vec<Rational> = Vec::with_capacity(n);
    s.push(Rational::from_integer(BigInt::from(n)));
    for k in 1..n {
        let mut acc = &a[n - k] * Rational::from_integer(BigInt::from(k));
        for i in 1..k {
            acc += &a[n - i] * &s[k - i];
        }
        s.push(-acc);
    }
    s
}

/// A residue class in a [`QuotientRing`], held by its reduced representative.
#[derive(Clone)]
pub struct QuotientElem {
    ring: Arc<QuotientRing>,
    rep: UniPoly,
}

impl fmt::Debug for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.rep, self.ring.modulus)
    }
}

impl fmt::Display for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl PartialEq for QuotientElem {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.rep == other.rep
    }
}

impl Eq for QuotientElem {}

fn same_ring(a: &Arc<QuotientRing>, b: &Arc<QuotientRing>) -> bool {
    Arc::ptr_eq(a, b) || a.m == b.m
}

fn check_ring(a: &QuotientElem, b: &QuotientElem) {
    assert!(
        same_ring(&a.ring, &b.ring),
        "quotient ring elements from different rings"
    );
}

impl QuotientElem {
    pub fn new(ring: &Arc<QuotientRing>, p: &UniPoly) -> Self {
        QuotientElem {
            rep: ring.reduce(p),
            ring: Arc::clone(ring),
        }
    }

    pub fn from_int(ring: &Arc<QuotientRing>, c: i64) -> Self {
        Self::new(ring, &UniPoly::from(c))
    }

    pub fn from_rational(ring: &Arc<QuotientRing>, c: Rational) -> Self {
        Self::new(ring, &UniPoly::constant(c))
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> Self {
        Self::new(ring, &UniPoly::zero())
    }

    pub fn one(ring: &Arc<QuotientRing>) -> Self {
        Self::new(ring, &UniPoly::one())
    }

    /// The class of the generator x.
    pub fn x(ring: &Arc<QuotientRing>) -> Self {
        Self::new(ring, &UniPoly::x())
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rep(&self) -> &UniPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    fn with_rep(&self, rep: UniPoly) -> Self {
        QuotientElem {
            ring: Arc::clone(&self.ring),
            rep,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.with_rep(self.rep.scale(k))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.with_rep(self.rep.scale_int(&BigInt::from(k)))
    }

    /// Multiplication by x, linear in the degree.
    pub fn mul_x(&self) -> Self {
        if self.ring.unit_lead {
            let num = self.ring.mul_x_unit(self.rep.numerators());
            self.with_rep(UniPoly::from_parts(num, self.rep.denominator().clone()))
        } else {
            self.with_rep(self.ring.reduce(&self.rep.shift(1)))
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse; fails with the nontrivial gcd on a zero divisor.
    pub fn invert(&self) -> Result<Self> {
        let m = &self.ring.m;
        if self.rep.is_zero() {
            return Err(Error::NotInvertible {
                gcd: self.ring.modulus.monic(),
            });
        }
        let (last, t) = intpoly::subresultant(m, self.rep.numerators(), true);
        if last.len() != 1 {
            return Err(Error::NotInvertible {
                gcd: UniPoly::from_int_coeffs(last).monic(),
            });
        }
        let num = intpoly::scale(&t, self.rep.denominator());
        let inv = UniPoly::from_parts(num, last[0].clone());
        Ok(self.with_rep(self.ring.reduce(&inv)))
    }

    /// Trace of multiplication by `self` over Q.
    pub fn trace(&self) -> Rational {
        let mut acc = BigInt::zero();
        let mut rat = Rational::zero();
        for (c, t) in self.rep.numerators().iter().zip(self.ring.traces.iter()) {
            if c.is_zero() {
                continue;
            }
            if t.is_integer() {
                acc += c * t.numer();
            } else {
                rat += t * Rational::from_integer(c.clone());
            }
        }
        (rat + Rational::from_integer(acc)) / Rational::from_integer(self.rep.denominator().clone())
    }

    /// `f(self)` by Horner's rule in the ring.
    pub fn compose(f: &UniPoly, y: &QuotientElem) -> QuotientElem {
        let mut acc = QuotientElem::zero(&y.ring);
        for i in (0..f.len()).rev() {
            acc = &(&acc * y) + &QuotientElem::from_rational(&y.ring, f.coeff(i));
        }
        acc
    }

    /// `f(y)` for several `f` by Paterson–Stockmeyer: powers `y^0..y^{s-1}` are
    /// shared, then blocks of `s` coefficients are combined by Horner in `y^s`.
    pub fn compose_many(fs: &[&UniPoly], y: &QuotientElem) -> Vec<QuotientElem> {
        let ring = &y.ring;
        let maxlen = fs.iter().map(|f| f.len()).max().unwrap_or(0);
        if maxlen == 0 {
            return fs.iter().map(|_| QuotientElem::zero(ring)).collect();
        }
        let s = ((maxlen as f64).sqrt().ceil() as usize).max(1);
        let mut pows = Vec::with_capacity(s + 1);
        pows.push(QuotientElem::one(ring));
        for i in 1..=s {
            let next = &pows[i - 1] * y;
            pows.push(next);
        }
        let ys = pows.pop().unwrap();
        let n = ring.n;
        fs.iter()
            .map(|f| {
                let blocks = f.len().div_ceil(s);
                let mut acc = QuotientElem::zero(ring);
                for blk in (0..blocks).rev() {
                    // sum_{j<s} f_{blk*s+j} y^j, accumulated over integer numerators
                    let mut num = vec![BigInt::zero(); n];
                    let mut den = BigInt::one();
                    let mut parts: Vec<UniPoly> = Vec::new();
                    for j in 0..s {
                        let idx = blk * s + j;
                        if idx >= f.len() {
                            break;
                        }
                        let c = &f.numerators()[idx];
                        if c.is_zero() {
                            continue;
                        }
                        let pj = &pows[j].rep;
                        if pj.is_integral() {
                            for (o, v) in num.iter_mut().zip(pj.numerators()) {
                                *o += c * v;
                            }
                        } else {
                            parts.push(pj.scale_int(c));
                        }
                    }
                    den *= f.denominator();
                    let mut block = UniPoly::from_parts(num, den.clone());
                    for p in parts {
                        block = &block + &p.scale(&Rational::new(BigInt::one(), den.clone()));
                    }
                    acc = &(&acc * &ys) + &QuotientElem::new(ring, &block);
                }
                acc
            })
            .collect()
    }
}

impl<'a> Add<&'a QuotientElem> for &'a QuotientElem {
    type Output = QuotientElem;
    fn add(self, rhs: &QuotientElem) -> QuotientElem {
        check_ring(self, rhs);
        self.with_rep(&self.rep + &rhs.rep)
    }
}

impl<'a> Sub<&'a QuotientElem> for &'a QuotientElem {
    type Output = QuotientElem;
    fn sub(self, rhs: &QuotientElem) -> QuotientElem {
        check_ring(self, rhs);
        self.with_rep(&self.rep - &rhs.rep)
    }
}

impl<'a> Mul<&'a QuotientElem> for &'a QuotientElem {
    type Output = QuotientElem;
    fn mul(self, rhs: &QuotientElem) -> QuotientElem {
        check_ring(self, rhs);
        self.with_rep(self.ring.reduce(&(&self.rep * &rhs.rep)))
    }
}

impl Neg for &QuotientElem {
    type Output = QuotientElem;
    fn neg(self) -> QuotientElem {
        self.with_rep(-&self.rep)
    }
}

impl Neg for QuotientElem {
    type Output = QuotientElem;
    fn neg(self) -> QuotientElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuotientElem> for QuotientElem {
            type Output = QuotientElem;
            fn $m(self, rhs: QuotientElem) -> QuotientElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuotientElem> for QuotientElem {
            type Output = QuotientElem;
            fn $m(self, rhs: &QuotientElem) -> QuotientElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

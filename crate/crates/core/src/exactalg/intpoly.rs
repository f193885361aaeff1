//! Kernels on dense integer coefficient vectors (ascending, possibly with
//! trailing zeros unless stated otherwise).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const SCHOOLBOOK_CUTOFF: usize = 12;

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|c| c.bits()).max().unwrap_or(0)
}

fn ceil_log2(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as u64
    }
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= SCHOOLBOOK_CUTOFF {
        schoolbook(a, b)
    } else {
        kronecker(a, b)
    }
}

pub(crate) fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let bits = max_bits(a) + max_bits(b) + ceil_log2(a.len().min(b.len())) + 2;
    let bits = bits as usize;
    let pa = pack(a, bits);
    let pb = pack(b, bits);
    let prod = pa * pb;
    unpack(&prod, bits, a.len() + b.len() - 1)
}

fn pack(v: &[BigInt], bits: usize) -> BigInt {
    let words = (bits * v.len()) / 32 + 2;
    let mut pos = vec![0u32; words];
    let mut neg = vec![0u32; words];
    let mut any_neg = false;
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let buf = if c.is_negative() {
            any_neg = true;
            &mut neg
        } else {
            &mut pos
        };
        let off = bits * i;
        let (w0, sh) = (off / 32, off % 32);
        for (j, d) in c.magnitude().iter_u32_digits().enumerate() {
            let x = (d as u64) << sh;
            buf[w0 + j] |= x as u32;
            if (x >> 32) != 0 {
                buf[w0 + j + 1] |= (x >> 32) as u32;
            }
        }
    }
    let p = BigInt::from_biguint(Sign::Plus, BigUint::new(pos));
    if any_neg {
        p - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
    } else {
        p
    }
}

fn extract(words: &[u32], lo: usize, bits: usize) -> BigUint {
    let (w0, sh) = (lo / 32, lo % 32);
    let n = bits / 32 + 1;
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        let a = words.get(w0 + t).copied().unwrap_or(0) as u64;
        let b = words.get(w0 + t + 1).copied().unwrap_or(0) as u64;
        out.push((((b << 32) | a) >> sh) as u32);
    }
    let rem = bits % 32;
    if let Some(last) = out.last_mut() {
        *last &= if rem == 0 { 0 } else { (1u32 << rem) - 1 };
    }
    BigUint::new(out)
}

fn unpack(c: &BigInt, bits: usize, count: usize) -> Vec<BigInt> {
    let (sign, words) = c.to_u32_digits();
    let mut out = Vec::with_capacity(count);
    let mut carry = false;
    let full = BigInt::one() << bits;
    for i in 0..count {
        let mut v = BigInt::from_biguint(Sign::Plus, extract(&words, bits * i, bits));
        if carry {
            v += 1u32;
        }
        if v.bits() as usize >= bits {
            v -= &full;
            carry = true;
        } else {
            carry = false;
        }
        out.push(v);
    }
    if sign == Sign::Minus {
        for x in out.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    out
}

/// `a + b` elementwise, result length max(len).
pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o -= s;
    }
    out
}

pub(crate) fn scale(a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c * k).collect()
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Pseudo-division of trimmed `f` by trimmed nonzero `g`:
/// `lc(g)^k · f = q·g + r` with `k = max(deg f − deg g + 1, 0)`.
pub(crate) fn prem(f: &[BigInt], g: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, u32) {
    let n = g.len();
    assert!(n > 0, "pseudo-division by zero");
    if f.len() < n {
        return (Vec::new(), f.to_vec(), 0);
    }
    let lc = &g[n - 1];
    let k = (f.len() - n + 1) as u32;
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - n + 1];
    for top in (n - 1..f.len()).rev() {
        let c = std::mem::take(&mut r[top]);
        let shift = top + 1 - n;
        // r <- lc*r - c*x^shift*g ; q <- lc*q + c*x^shift
        for x in r.iter_mut().take(top) {
            if !x.is_zero() {
                *x *= lc;
            }
        }
        for x in q.iter_mut() {
            if !x.is_zero() {
                *x *= lc;
            }
        }
        if !c.is_zero() {
            for (j, gj) in g[..n - 1].iter().enumerate() {
                if !gj.is_zero() {
                    r[shift + j] -= &c * gj;
                }
            }
        }
        q[shift] += c;
    }
    r.truncate(n - 1);
    trim(&mut r);
    (q, r, k)
}

/// Exact division of every coefficient by `d`; panics if not exact.
pub(crate) fn exact_div(v: &mut [BigInt], d: &BigInt) {
    if d.is_one() {
        return;
    }
    for c in v.iter_mut() {
        let (q, r) = c.div_rem(d);
        assert!(r.is_zero(), "inexact division in subresultant sequence");
        *c = q;
    }
}

/// Subresultant remainder sequence. Returns the last nonzero remainder and,
/// when `track` is set, an integer cofactor `t` with `t·b ≡ last (mod a)`.
pub(crate) fn subresultant(
    a: &[BigInt],
    b: &[BigInt],
    track: bool,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut ra = a.to_vec();
    let mut rb = b.to_vec();
    trim(&mut ra);
    trim(&mut rb);
    let mut ta: Vec<BigInt> = Vec::new();
    let mut tb: Vec<BigInt> = vec![BigInt::one()];
    if rb.is_empty() {
        return (ra, Vec::new());
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        if rb.len() == 1 {
            return (rb, tb);
        }
        let delta = (ra.len() - rb.len()) as u32;
        let (q, r, k) = prem(&ra, &rb);
        if r.is_empty() {
            return (rb, tb);
        }
        let divisor = &g * num_traits::pow(h.clone(), delta as usize);
        let mut nr = r;
        exact_div(&mut nr, &divisor);
        if track {
            let lck = num_traits::pow(rb[rb.len() - 1].clone(), k as usize);
            let mut nt = sub(&scale(&ta, &lck), &mul(&q, &tb));
            trim(&mut nt);
            exact_div(&mut nt, &divisor);
            ta = std::mem::replace(&mut tb, nt);
        }
        ra = std::mem::replace(&mut rb, nr);
        g = ra[ra.len() - 1].clone();
        if delta == 0 {
            // h <- h^1 g^0 = h
        } else {
            let gd = num_traits::pow(g.clone(), delta as usize);
            let hd = num_traits::pow(h.clone(), (delta - 1) as usize);
            h = gd / hd;
        }
    }
}

pub(crate) fn derivative(v: &[BigInt]) -> Vec<BigInt> {
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

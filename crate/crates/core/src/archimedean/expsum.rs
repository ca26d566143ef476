//! Certified sign of `sum_i c_i e^{x_i}` for rational `c_i, x_i`.
//!
//! Terms with equal exponents are merged first. For distinct rational
//! exponents the values `e^{x_i}` are linearly independent over the
//! algebraic numbers (Lindemann-Weierstrass), so the sum vanishes exactly
//! when every merged coefficient does. A nonzero sum is then resolved by
//! interval bounds on `e^x` at increasing precision.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalars::Rational;

/// Precision ladder in bits; the last entry is the cap.
const PRECISIONS: [u32; 7] = [64, 128, 256, 512, 1024, 2048, 4096];

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn floor_scaled(q: &Rational, shift: i64) -> BigInt {
    // floor(q * 2^shift)
    if shift >= 0 {
        (q.numer() * pow2(shift as u64)).div_floor(q.denom())
    } else {
        q.numer().div_floor(&(q.denom() * pow2((-shift) as u64)))
    }
}

fn from_scaled(m: BigInt, shift: i64) -> Rational {
    if shift >= 0 {
        Rational::new(m, pow2(shift as u64))
    } else {
        Rational::from_integer(m * pow2((-shift) as u64))
    }
}

fn magnitude_shift(q: &Rational, prec: u32) -> i64 {
    let e = q.numer().bits() as i64 - q.denom().bits() as i64;
    prec as i64 - e
}

/// Largest dyadic with `prec` significant bits not above `q`.
pub fn round_down(q: &Rational, prec: u32) -> Rational {
    if q.is_zero() {
        return q.clone();
    }
    let shift = magnitude_shift(q, prec);
    from_scaled(floor_scaled(q, shift), shift)
}

/// Smallest dyadic with `prec` significant bits not below `q`.
pub fn round_up(q: &Rational, prec: u32) -> Rational {
    -round_down(&-q, prec)
}

/// Bounds on `e^r` for `0 <= r <= 1`.
fn exp_small(r: &Rational, prec: u32) -> (Rational, Rational) {
    let tiny = Rational::new(BigInt::one(), pow2(prec as u64 + 4));
    let (mut lo, mut hi) = (Rational::one(), Rational::one());
    let (mut t_lo, mut t_hi) = (Rational::one(), Rational::one());
    let mut i = 1u64;
    loop {
        let d = Rational::from_integer(i.into());
        t_lo = round_down(&(&t_lo * r / &d), prec + 8);
        t_hi = round_up(&(&t_hi * r / &d), prec + 8);
        lo = round_down(&(lo + &t_lo), prec + 8);
        hi = round_up(&(hi + &t_hi), prec + 8);
        if t_hi < tiny || t_hi.is_zero() {
            // tail after term i is at most 3 * t_i / (i + 1)
            hi = round_up(&(hi + &t_hi * Rational::from_integer(3.into())), prec + 8);
            return (lo, hi);
        }
        i += 1;
    }
}

fn pow_interval(lo: &Rational, hi: &Rational, k: u64, prec: u32) -> (Rational, Rational) {
    let (mut rl, mut rh) = (Rational::one(), Rational::one());
    let (mut bl, mut bh) = (lo.clone(), hi.clone());
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            rl = round_down(&(&rl * &bl), prec);
            rh = round_up(&(&rh * &bh), prec);
        }
        k >>= 1;
        if k > 0 {
            bl = round_down(&(&bl * &bl), prec);
            bh = round_up(&(&bh * &bh), prec);
        }
    }
    (rl, rh)
}

/// Rational bounds `lo <= e^x <= hi`.
pub fn exp_bounds(x: &Rational, prec: u32) -> (Rational, Rational) {
    let k = x.floor();
    let r = x - &k;
    let (rl, rh) = exp_small(&r, prec);
    let k = k.to_integer();
    if k.is_zero() {
        return (rl, rh);
    }
    let (el, eh) = exp_small(&Rational::one(), prec + 16);
    let mag = u64::try_from(k.abs()).expect("exponent fits in u64");
    let wp = prec + 16 + 64 - mag.leading_zeros();
    let (pl, ph) = pow_interval(&el, &eh, mag, wp);
    let (pl, ph) = if k.is_negative() {
        (round_down(&ph.recip(), wp), round_up(&pl.recip(), wp))
    } else {
        (pl, ph)
    };
    (round_down(&(&rl * &pl), prec + 8), round_up(&(&rh * &ph), prec + 8))
}

/// Merges equal exponents and drops vanishing coefficients.
pub fn merge_terms(terms: &[(Rational, Rational)]) -> BTreeMap<Rational, Rational> {
    let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
    for (c, x) in terms {
        *map.entry(x.clone()).or_insert_with(Rational::zero) += c;
    }
    map.retain(|_, c| !c.is_zero());
    map
}

/// Sign of `sum c_i e^{x_i}` over `(c_i, x_i)` pairs; `None` only if the
/// precision cap is reached.
pub fn sign_of_exp_sum(terms: &[(Rational, Rational)]) -> Option<Ordering> {
    let merged = merge_terms(terms);
    if merged.is_empty() {
        return Some(Ordering::Equal);
    }
    if merged.values().all(Rational::is_positive) {
        return Some(Ordering::Greater);
    }
    if merged.values().all(Rational::is_negative) {
        return Some(Ordering::Less);
    }
    for prec in PRECISIONS {
        let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
        for (x, c) in &merged {
            let (el, eh) = exp_bounds(x, prec);
            if c.is_positive() {
                lo += c * el;
                hi += c * eh;
            } else {
                lo += c * eh;
                hi += c * el;
            }
        }
        if lo.is_positive() {
            return Some(Ordering::Greater);
        }
        if hi.is_negative() {
            return Some(Ordering::Less);
        }
    }
    None
}

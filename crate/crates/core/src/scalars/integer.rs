//! Integer helpers: trial-division primality and factorization, p-adic
//! order, and logarithms of big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic primality by trial division. Inputs are desk-scale.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    if let Some(small) = n.to_u64() {
        if small < 4 {
            return true;
        }
        if small % 2 == 0 {
            return false;
        }
        let mut d = 3u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                return false;
            }
            d += 2;
        }
        return true;
    }
    if n.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization of `|n|` as ascending `(prime, exponent)` pairs.
/// Returns an empty list for 0 and ±1.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut rest = n.abs();
    let mut out = Vec::new();
    if rest.is_zero() {
        return out;
    }
    let mut push = |p: BigInt, rest: &mut BigInt| {
        let mut e = 0u32;
        while (&*rest % &p).is_zero() {
            *rest /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(BigInt::from(2), &mut rest);
    let mut d = BigInt::from(3);
    while &d * &d <= rest {
        push(d.clone(), &mut rest);
        d += 2;
    }
    if rest > BigInt::one() {
        out.push((rest, 1));
    }
    out
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn p_adic_order(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut k = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        rest = q;
        k += 1;
    }
}

/// Natural logarithm of `|n|` for nonzero `n`, robust to values beyond `f64` range.
pub fn ln_abs(n: &BigInt) -> f64 {
    let (_, mag) = n.clone().into_parts();
    let bits = mag.bits();
    if bits <= 1000 {
        return mag.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// All positive divisors of `|n|` (n nonzero), ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_by_trial_division() {
        let primes: Vec<u32> = (0..40).filter(|&k| is_prime(&BigInt::from(k))).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(&BigInt::from(1_000_003)));
        assert!(!is_prime(&BigInt::from(-7)));
    }

    #[test]
    fn factorization_recombines() {
        for n in [1i64, 2, 12, 360, 97 * 97 * 3, -1024, 999_983 * 2] {
            let f = factor(&BigInt::from(n));
            let prod: BigInt = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, BigInt::from(n).abs());
            assert!(f.iter().all(|(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn orders_and_divisors() {
        assert_eq!(p_adic_order(&BigInt::from(48), &BigInt::from(2)), 4);
        assert_eq!(p_adic_order(&BigInt::from(-9), &BigInt::from(3)), 2);
        assert_eq!(divisors(&BigInt::from(12)).len(), 6);
        assert!((ln_abs(&BigInt::from(-12)) - 12f64.ln()).abs() < 1e-15);
        let huge = BigInt::from(10).pow(400);
        assert!((ln_abs(&huge) - 400.0 * 10f64.ln()).abs() < 1e-9);
    }
}

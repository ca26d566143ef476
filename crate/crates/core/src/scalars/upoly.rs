//! Dense univariate polynomials over Q in the variable `z`, with exact
//! factorization into monic irreducibles.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integer::divisors;
use super::Rational;

/// Polynomial `c[0] + c[1] z + ... + c[d] z^d` with `c[d] != 0`; the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c z^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The linear polynomial `z - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0 (callers check `is_zero`).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut quot = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Multiplicity of the irreducible `q` as a factor of the nonzero `self`.
    pub fn order_at(&self, q: &Poly) -> i64 {
        debug_assert!(!self.is_zero() && !q.is_constant());
        let mut k = 0;
        let mut rest = self.clone();
        loop {
            let (quot, rem) = rest.div_rem(q);
            if !rem.is_zero() {
                return k;
            }
            rest = quot;
            k += 1;
        }
    }

    /// Integer primitive associate with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_negative() { -1 } else { 1 };
        ints.into_iter()
            .map(|c| c / &content * BigInt::from(sign))
            .collect()
    }

    /// Squarefree decomposition: returns `(a_1, a_2, ...)` with
    /// `monic(self) = a_1 * a_2^2 * ...` (Yun's algorithm).
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return out;
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            if b.is_constant() {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
        }
        out
    }

    /// Factorization into monic irreducibles over Q with multiplicities,
    /// sorted by degree then coefficients. Constants factor trivially.
    ///
    /// Squarefree parts are split by rational roots first; what remains is
    /// irreducible when its degree is at most 3, and otherwise searched for
    /// factors with Kronecker's interpolation method.
    pub fn factor(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        for (k, part) in self.squarefree_decomposition().into_iter().enumerate() {
            if part.is_constant() {
                continue;
            }
            for q in factor_squarefree(&part) {
                out.push((q, k as u32 + 1));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn is_irreducible(&self) -> bool {
        if self.is_constant() {
            return false;
        }
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }
}

fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    for r in rational_roots(&rest) {
        let lin = Poly::linear_root(&r);
        rest = rest.div_rem(&lin).0;
        out.push(lin);
    }
    if !rest.is_constant() {
        kronecker_split(&rest, &mut out);
    }
    out
}

/// Distinct rational roots, via the rational root theorem.
pub fn rational_roots(f: &Poly) -> Vec<Rational> {
    let mut roots = Vec::new();
    if f.is_constant() {
        return roots;
    }
    let mut ints = f.primitive_integer();
    let mut shift = 0;
    while ints[shift].is_zero() {
        shift += 1;
    }
    if shift > 0 {
        roots.push(Rational::zero());
        ints.drain(..shift);
    }
    if ints.len() < 2 {
        return roots;
    }
    let num_divs = divisors(&ints[0]);
    let den_divs = divisors(ints.last().unwrap());
    let g = Poly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let mut seen = std::collections::BTreeSet::new();
    for p in &num_divs {
        for q in &den_divs {
            for s in [1, -1] {
                let r = Rational::new(p * BigInt::from(s), q.clone());
                if seen.insert(r.clone()) && g.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn kronecker_split(f: &Poly, out: &mut Vec<Poly>) {
    let n = f.degree();
    if n <= 3 {
        out.push(f.monic());
        return;
    }
    for d in 2..=n / 2 {
        if let Some(g) = kronecker_factor_of_degree(f, d) {
            let h = f.div_rem(&g).0;
            kronecker_split(&g, out);
            kronecker_split(&h, out);
            return;
        }
    }
    out.push(f.monic());
}

fn kronecker_factor_of_degree(f: &Poly, d: usize) -> Option<Poly> {
    let ints = f.primitive_integer();
    let fz = Poly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
    // Sample points with the fewest divisors keep the search small.
    let mut samples: Vec<(Rational, Vec<BigInt>)> = (-12i64..=12)
        .map(|x| Rational::from_integer(x.into()))
        .filter_map(|x| {
            let v = fz.eval(&x).to_integer();
            (!v.is_zero()).then(|| {
                let divs = divisors(&v);
                (x, divs)
            })
        })
        .collect();
    samples.sort_by_key(|(_, divs)| divs.len());
    samples.truncate(d + 1);
    if samples.len() < d + 1 {
        return None;
    }
    let mut choice = vec![0usize; d + 1];
    let options: Vec<Vec<BigInt>> = samples
        .iter()
        .enumerate()
        .map(|(k, (_, divs))| {
            let mut opts = divs.clone();
            if k > 0 {
                opts.extend(divs.iter().map(|x| -x));
            }
            opts
        })
        .collect();
    loop {
        let values: Vec<Rational> = choice
            .iter()
            .zip(&options)
            .map(|(&i, opts)| Rational::from_integer(opts[i].clone()))
            .collect();
        let xs: Vec<Rational> = samples.iter().map(|(x, _)| x.clone()).collect();
        let g = lagrange(&xs, &values);
        if g.degree() == d && g.coeffs().iter().all(|c| c.is_integer()) && g.divides(&fz) {
            return Some(g.monic());
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn lagrange(xs: &[Rational], ys: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear_root(xj);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                    match rhs.coeffs.get(k) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let monomial = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{mag}*{monomial}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-1, 0, 1]); // z^2 - 1
        let g = p(&[1, 1]); // z + 1
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&p(&[1, 2, 1])), g);
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), Poly::one());
    }

    #[test]
    fn factors_with_multiplicity() {
        // (z - 1)^2 (z^2 + 1) (2z + 3)
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[1, 0, 1])) * &p(&[3, 2]);
        let fac = f.factor();
        assert_eq!(fac.len(), 3);
        let back = fac
            .iter()
            .fold(Poly::one(), |acc, (q, e)| &acc * &q.pow(*e))
            .scale(&Rational::from_integer(2.into()));
        assert_eq!(back, f);
        assert!(fac.iter().any(|(q, e)| *q == p(&[-1, 1]) && *e == 2));
    }

    #[test]
    fn kronecker_splits_quartic_into_quadratics() {
        // (z^2 + 1)(z^2 + 2): no rational roots, reducible
        let f = &p(&[1, 0, 1]) * &p(&[2, 0, 1]);
        let fac = f.factor();
        assert_eq!(fac, vec![(p(&[1, 0, 1]), 1), (p(&[2, 0, 1]), 1)]);
        assert!(p(&[2, 0, 0, 0, 1]).is_irreducible()); // z^4 + 2, Eisenstein
        assert!(!f.is_irreducible());
    }

    #[test]
    fn orders() {
        let f = &p(&[0, 0, 1]) * &p(&[-1, 1]);
        assert_eq!(f.order_at(&p(&[0, 1])), 2);
        assert_eq!(f.order_at(&p(&[-1, 1])), 1);
        assert_eq!(f.order_at(&p(&[-2, 1])), 0);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "z^2 - 1");
        assert_eq!(p(&[2, -3]).to_string(), "-3*z + 2");
        assert_eq!(Poly::constant(Rational::new(3.into(), 2.into())).to_string(), "3/2");
    }
}

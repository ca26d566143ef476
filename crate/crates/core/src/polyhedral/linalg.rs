//! Dense exact linear algebra over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalars::Rational;

pub type QVec = Vec<Rational>;

pub fn qint(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn zeros(n: usize) -> QVec {
    vec![Rational::zero(); n]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

pub fn int_dot(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + y * x
        }
    })
}

pub fn to_q(row: &[BigInt]) -> QVec {
    row.iter().cloned().map(Rational::from_integer).collect()
}

pub fn ints_to_q(row: &[i64]) -> QVec {
    row.iter().map(|&x| qint(x)).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], c: &Rational) -> QVec {
    a.iter().map(|x| x * c).collect()
}

/// Positive multiple `s` of `row` that is a primitive integer vector;
/// returns `(s * row, s)`. A zero row maps to itself with `s = 1`.
pub fn primitive(row: &[Rational]) -> (Vec<BigInt>, Rational) {
    let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return (ints, Rational::one());
    }
    let out = ints.iter().map(|c| c / &g).collect();
    (out, Rational::new(den, g))
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[QVec], ncols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut m: Vec<QVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &[QVec]) -> Option<Vec<QVec>> {
    let n = m.len();
    let aug: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Sign of the first nonzero entry (0 for the zero vector).
pub fn leading_sign(row: &[BigInt]) -> i32 {
    row.iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -1 } else { 1 })
        .unwrap_or(0)
}

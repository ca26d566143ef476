//! Integer lattice computations: unimodular row reduction (Hermite-style
//! echelon form), integer kernels, saturations and Smith invariant factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg;
use crate::scalars::Rational;

pub type IntRows = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IntRows {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn transpose(a: &IntRows, ncols: usize) -> IntRows {
    (0..ncols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Row echelon form `H = U A` with `U` unimodular, using only integer row
/// operations. Returns `(H, U)`; pivots are positive.
pub fn row_echelon(a: &IntRows, ncols: usize) -> (IntRows, IntRows) {
    let m = a.len();
    let mut h = a.clone();
    let mut u: IntRows = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        // smallest nonzero entry in column c at or below row r
        while let Some(p) =
            (r..m).filter(|&i| !h[i][c].is_zero()).min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()))
        {
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                for k in 0..ncols {
                    let t = &q * &h[r][k];
                    h[i][k] -= t;
                }
                for k in 0..m {
                    let t = &q * &u[r][k];
                    u[i][k] -= t;
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                h[r].iter_mut().for_each(|x| *x = -x.clone());
                u[r].iter_mut().for_each(|x| *x = -x.clone());
            }
            r += 1;
        }
    }
    (h, u)
}

/// Hermite normal form of the row lattice of `a`: nonzero echelon rows
/// with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Two matrices have the same row lattice iff their forms
/// agree.
pub fn hermite_normal_form(a: &IntRows, ncols: usize) -> IntRows {
    let (h, _) = row_echelon(a, ncols);
    let mut h: IntRows = h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    for r in 0..h.len() {
        let c = h[r].iter().position(|x| !x.is_zero()).expect("nonzero row");
        let piv = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&piv);
            if !q.is_zero() {
                for k in 0..ncols {
                    let t = &q * &h[r][k];
                    h[i][k] -= t;
                }
            }
        }
    }
    h
}

/// Basis (as rows) of the integer kernel `{x in Z^n : A x = 0}`; the
/// resulting lattice is saturated.
pub fn integer_kernel(a: &IntRows, ncols: usize) -> IntRows {
    let at = transpose(a, ncols);
    let (h, u) = row_echelon(&at, a.len());
    h.iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, urow)| urow)
        .collect()
}

/// Basis of the saturated lattice `rowspace_Q(A) ∩ Z^n`.
pub fn saturated_row_basis(a: &IntRows, ncols: usize) -> IntRows {
    let k = integer_kernel(a, ncols);
    integer_kernel(&k, ncols)
}

/// Nonzero Smith invariant factors `d_1 | d_2 | ...` of an integer matrix.
pub fn smith_invariants(a: &IntRows, ncols: usize) -> Vec<BigInt> {
    let mut m = a.clone();
    let rows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(ncols) {
        // pick the smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..ncols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t].div_floor(&m[t][t]);
            if !q.is_zero() {
                for k in t..ncols {
                    let v = &q * &m[t][k];
                    m[i][k] -= v;
                }
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..ncols {
            let q = m[t][j].div_floor(&m[t][t]);
            if !q.is_zero() {
                for row in m.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold any entry not divisible by the pivot into row t
        let piv = m[t][t].clone();
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&m[i][j] % &piv).is_zero());
        if let Some((i, _)) = bad {
            for k in t..ncols {
                let v = m[i][k].clone();
                m[t][k] += v;
            }
            continue;
        }
        out.push(piv.abs());
        t += 1;
    }
    out
}

/// Integer right inverse `R` (`n x k`) with `phi R = I_k`, if one exists.
pub fn right_inverse(phi: &IntRows, ncols: usize) -> Option<IntRows> {
    let k = phi.len();
    let pt = transpose(phi, ncols); // n x k
    let (h, u) = row_echelon(&pt, k);
    // top k x k block of h must be unimodular
    let top: Vec<_> = h.iter().take(k).map(|r| linalg::to_q(r)).collect();
    if top.len() < k {
        return None;
    }
    let top_inv = linalg::inverse(&top)?;
    if top_inv.iter().flatten().any(|x| !x.is_integer()) {
        return None;
    }
    // R = U^T [T^{-T}; 0]
    let n = ncols;
    let mut r = vec![vec![BigInt::zero(); k]; n];
    for (row_idx, r_row) in r.iter_mut().enumerate() {
        for (col, entry) in r_row.iter_mut().enumerate() {
            let mut acc = Rational::zero();
            for (l, u_row) in u.iter().enumerate().take(k) {
                acc += Rational::from_integer(u_row[row_idx].clone()) * &top_inv[col][l];
            }
            *entry = acc.to_integer();
        }
    }
    Some(r)
}

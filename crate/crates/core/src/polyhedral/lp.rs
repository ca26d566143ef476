//! Exact rational two-phase simplex with Bland's rule.
//!
//! Problems are stated over free variables with equality rows `E x = e` and
//! inequality rows `G x <= g`. Internally each free variable is split into
//! a difference of two nonnegative ones, inequalities receive slacks, and
//! every row gets an artificial variable for phase one.

use num_traits::{One, Signed, Zero};

use super::linalg::{zeros, QVec};
use crate::scalars::Rational;

/// A system of linear constraints over `num_vars` free variables.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub eqs: Vec<(QVec, Rational)>,
    pub les: Vec<(QVec, Rational)>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem { num_vars, eqs: Vec::new(), les: Vec::new() }
    }

    pub fn eq(&mut self, row: QVec, rhs: Rational) -> &mut Self {
        debug_assert_eq!(row.len(), self.num_vars);
        self.eqs.push((row, rhs));
        self
    }

    pub fn le(&mut self, row: QVec, rhs: Rational) -> &mut Self {
        debug_assert_eq!(row.len(), self.num_vars);
        self.les.push((row, rhs));
        self
    }

    /// Pads every row with `extra` zero columns.
    pub fn widen(&self, extra: usize) -> LinearSystem {
        let pad = |(r, b): &(QVec, Rational)| {
            let mut r = r.clone();
            r.extend(zeros(extra));
            (r, b.clone())
        };
        LinearSystem {
            num_vars: self.num_vars + extra,
            eqs: self.eqs.iter().map(pad).collect(),
            les: self.les.iter().map(pad).collect(),
        }
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.eqs.iter().all(|(r, b)| &super::linalg::dot(r, x) == b)
            && self.les.iter().all(|(r, b)| &super::linalg::dot(r, x) <= b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Multipliers proving infeasibility: `sum y_eq[i] E_i + sum y_le[j] G_j = 0`
/// with `y_le >= 0` and `sum y_eq[i] e_i + sum y_le[j] g_j < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Farkas {
    pub eq_multipliers: QVec,
    pub le_multipliers: QVec,
}

impl Farkas {
    /// Checks the certificate against `sys`.
    pub fn certifies(&self, sys: &LinearSystem) -> bool {
        let mut combo = zeros(sys.num_vars);
        let mut rhs = Rational::zero();
        for ((row, b), y) in sys.eqs.iter().zip(&self.eq_multipliers) {
            for (c, a) in combo.iter_mut().zip(row) {
                *c += y * a;
            }
            rhs += y * b;
        }
        for ((row, b), y) in sys.les.iter().zip(&self.le_multipliers) {
            if y.is_negative() {
                return false;
            }
            for (c, a) in combo.iter_mut().zip(row) {
                *c += y * a;
            }
            rhs += y * b;
        }
        combo.iter().all(Zero::is_zero) && rhs.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible(Farkas),
    Optimal { value: Rational, point: QVec },
    /// `point + s * ray` is feasible for all `s >= 0` and improves the
    /// objective without bound.
    Unbounded { point: QVec, ray: QVec },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible(_))
    }
}

struct Tableau {
    rows: Vec<QVec>,
    basis: Vec<usize>,
    obj: QVec,
    cols: usize,
}

enum Step {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..=self.cols).filter(|&k| !pivot_row[k].is_zero()).collect();
        let eliminate = |row: &mut QVec| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for &k in &nz {
                row[k] -= &f * &pivot_row[k];
            }
        };
        for row in self.rows.iter_mut() {
            if !row.is_empty() {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj = cost.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, x) in obj.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o -= cb * x;
                }
            }
        }
        self.obj = obj;
    }

    /// Minimizes the current objective over columns `< limit`.
    fn run(&mut self, limit: usize) -> Step {
        loop {
            let Some(enter) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Step::Unbounded(enter),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn values(&self) -> QVec {
        let mut x = zeros(self.cols);
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            x[b] = row[self.cols].clone();
        }
        x
    }
}

/// Optimizes `objective . x` subject to `sys`.
pub fn solve(objective: &[Rational], sys: &LinearSystem, sense: Sense) -> LpOutcome {
    let n = sys.num_vars;
    let m_eq = sys.eqs.len();
    let m = m_eq + sys.les.len();
    let n_slack = sys.les.len();
    let art0 = 2 * n + n_slack;
    let cols = art0 + m;

    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for (i, (row, b)) in sys.eqs.iter().chain(&sys.les).enumerate() {
        let sigma = if b.is_negative() { -Rational::one() } else { Rational::one() };
        let mut t = zeros(cols + 1);
        for (k, a) in row.iter().enumerate() {
            if !a.is_zero() {
                t[k] = a * &sigma;
                t[n + k] = -(a * &sigma);
            }
        }
        if i >= m_eq {
            t[2 * n + (i - m_eq)] = sigma.clone();
        }
        t[art0 + i] = Rational::one();
        t[cols] = b * &sigma;
        signs.push(sigma);
        rows.push(t);
    }
    let mut tab = Tableau { rows, basis: (art0..art0 + m).collect(), obj: Vec::new(), cols };

    // phase one
    let mut cost1 = zeros(cols);
    for c in cost1.iter_mut().skip(art0) {
        *c = Rational::one();
    }
    tab.set_objective(&cost1);
    tab.run(cols);
    let infeasibility = -tab.obj[cols].clone();
    if infeasibility.is_positive() {
        let mult: QVec = (0..m)
            .map(|i| -((Rational::one() - &tab.obj[art0 + i]) * &signs[i]))
            .collect();
        return LpOutcome::Infeasible(Farkas {
            eq_multipliers: mult[..m_eq].to_vec(),
            le_multipliers: mult[m_eq..].to_vec(),
        });
    }

    // drive artificials out of the basis; drop redundant rows
    let mut keep = vec![true; m];
    for r in 0..m {
        if tab.basis[r] < art0 {
            continue;
        }
        match (0..art0).find(|&j| !tab.rows[r][j].is_zero()) {
            Some(j) => tab.pivot(r, j),
            None => keep[r] = false,
        }
    }
    let mut r = 0;
    tab.rows.retain(|_| {
        r += 1;
        keep[r - 1]
    });
    let mut r = 0;
    tab.basis.retain(|_| {
        r += 1;
        keep[r - 1]
    });

    // phase two
    let flip = if sense == Sense::Maximize { -Rational::one() } else { Rational::one() };
    let mut cost2 = zeros(cols);
    for (k, c) in objective.iter().enumerate() {
        cost2[k] = c * &flip;
        cost2[n + k] = -(c * &flip);
    }
    tab.set_objective(&cost2);
    let step = tab.run(art0);
    let vals = tab.values();
    let point: QVec = (0..n).map(|k| &vals[k] - &vals[n + k]).collect();
    match step {
        Step::Optimal => {
            let value = super::linalg::dot(objective, &point);
            LpOutcome::Optimal { value, point }
        }
        Step::Unbounded(enter) => {
            let mut dir = zeros(cols);
            dir[enter] = Rational::one();
            for (row, &b) in tab.rows.iter().zip(&tab.basis) {
                dir[b] = -row[enter].clone();
            }
            let ray = (0..n).map(|k| &dir[k] - &dir[n + k]).collect();
            LpOutcome::Unbounded { point, ray }
        }
    }
}

/// Some feasible point, or `None` when the system is infeasible.
pub fn feasible_point(sys: &LinearSystem) -> Option<QVec> {
    match solve(&zeros(sys.num_vars), sys, Sense::Minimize) {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Unbounded { point, .. } => Some(point),
        LpOutcome::Infeasible(_) => None,
    }
}

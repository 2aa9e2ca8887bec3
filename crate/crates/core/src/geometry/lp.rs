//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min c·z  s.t.  A z <= b, E z = f` with every variable free.
//! Only the optimal value and one optimal point are reported; callers that
//! need a canonical optimum use [`super::Polyhedron::linear_min`] instead.

use num_traits::{One, Signed, Zero};

use super::reps::HRep;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Unbounded,
    Infeasible,
}

struct Tableau {
    /// rows x (cols + 1); last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimize `cost` over the allowed columns. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            // reduced cost d_j = c_j - c_B B^-1 A_j
            let entering = (0..self.cols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    let a = &self.rows[i][j];
                    if !a.is_zero() && !cost[bi].is_zero() {
                        d -= &cost[bi] * a;
                    }
                }
                d.is_negative()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.cols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// Minimize `cost·z` over the polyhedron described by `h` (`cost.len() == h.dim`).
pub fn minimize(h: &HRep, cost: &[Rational]) -> LpOutcome {
    assert_eq!(cost.len(), h.dim);
    let n = h.dim;
    let m_ineq = h.ineq.len();
    let m = m_ineq + h.eq.len();
    // Columns: z+ (n), z- (n), slacks (m_ineq), artificials (m).
    let slack0 = 2 * n;
    let art0 = slack0 + m_ineq;
    let cols = art0 + m;
    let mut rows = Vec::with_capacity(m);
    for (i, row) in h.ineq.iter().map(|r| (r, true)).chain(h.eq.iter().map(|r| (r, false))).enumerate() {
        let (r, is_ineq) = row;
        let mut t = vec![Rational::zero(); cols + 1];
        for j in 0..n {
            t[j] = r.a[j].clone();
            t[n + j] = -&r.a[j];
        }
        if is_ineq {
            t[slack0 + i] = Rational::one();
        }
        t[cols] = r.b.clone();
        if t[cols].is_negative() {
            for x in t.iter_mut() {
                *x = -&*x;
            }
        }
        t[art0 + i] = Rational::one();
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (art0..art0 + m).collect(),
        cols,
    };

    // Phase 1.
    let mut phase1 = vec![Rational::zero(); cols];
    for c in phase1.iter_mut().skip(art0) {
        *c = Rational::one();
    }
    let all = vec![true; cols];
    tab.optimize(&phase1, &all);
    let infeasibility: Rational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= art0)
        .map(|(i, _)| tab.rows[i][cols].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= art0 {
            if let Some(c) = (0..art0).find(|&c| !tab.rows[i][c].is_zero()) {
                tab.pivot(i, c);
            } else {
                tab.rows.remove(i);
                tab.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    // Phase 2.
    let mut phase2 = vec![Rational::zero(); cols];
    for j in 0..n {
        phase2[j] = cost[j].clone();
        phase2[n + j] = -&cost[j];
    }
    let mut allowed = vec![true; cols];
    for a in allowed.iter_mut().skip(art0) {
        *a = false;
    }
    if !tab.optimize(&phase2, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut values = vec![Rational::zero(); cols];
    for (i, &b) in tab.basis.iter().enumerate() {
        values[b] = tab.rows[i][cols].clone();
    }
    let point: Vec<Rational> = (0..n).map(|j| &values[j] - &values[n + j]).collect();
    let value = crate::rational::dot(cost, &point);
    LpOutcome::Optimal { value, point }
}

pub fn is_feasible(h: &HRep) -> bool {
    !matches!(minimize(h, &vec![Rational::zero(); h.dim]), LpOutcome::Infeasible)
}

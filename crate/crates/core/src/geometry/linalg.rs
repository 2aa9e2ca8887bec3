//! Small exact linear-algebra kernels over [`Rational`].

use num_traits::{One, Zero};

use crate::rational::{dot, Rational};

/// Reduced row echelon form; zero rows are dropped.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = Rational::one() / &rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows.to_vec()).len()
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let k = m.len();
    let augmented: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let reduced = rref(augmented);
    if reduced.len() < k || (0..k).any(|i| reduced[i][i] != Rational::one()) {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[k..].to_vec()).collect())
}

/// Orthogonal projection onto the complement of a subspace.
pub struct OrthoProjector {
    basis: Vec<Vec<Rational>>,
    gram_inv: Vec<Vec<Rational>>,
}

impl OrthoProjector {
    /// `basis` must be linearly independent.
    pub fn new(basis: &[Vec<Rational>]) -> Self {
        let gram: Vec<Vec<Rational>> = basis
            .iter()
            .map(|u| basis.iter().map(|v| dot(u, v)).collect())
            .collect();
        let gram_inv = invert(&gram).expect("projector basis must be independent");
        OrthoProjector {
            basis: basis.to_vec(),
            gram_inv,
        }
    }

    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        if self.basis.is_empty() {
            return v.to_vec();
        }
        let rhs: Vec<Rational> = self.basis.iter().map(|u| dot(u, v)).collect();
        let coeffs: Vec<Rational> = self.gram_inv.iter().map(|row| dot(row, &rhs)).collect();
        let mut out = v.to_vec();
        for (c, u) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(u) {
                *o -= c * x;
            }
        }
        out
    }
}

//! Instance families.
//!
//! `ex1`: `min f_G - f_H` with `f_A(x) = Σ_j ‖x - a^j‖₁` over the columns
//! of `A`, where `G_ij = sin(i + j)` and `H_ij = cos(i + j)` (1-based),
//! rounded to the nearest multiple of 10⁻⁶.
//!
//! `ex2`: `g(x) = |x₁ - 1| + 200 Σ_{i≥2} max{0, |x_{i-1}| - x_i}` and
//! `h(x) = 100 Σ_{i≥2} (|x_{i-1}| - x_i)`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::format::ProblemFile;
use crate::funcalc::FuncExpr;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("{name} must be at least 1")]
    TooSmall { name: &'static str },
}

fn at_least_one(name: &'static str, v: usize) -> Result<(), GenerateError> {
    if v == 0 {
        Err(GenerateError::TooSmall { name })
    } else {
        Ok(())
    }
}

/// `round(v · 10⁶) / 10⁶`.
pub fn round_micro(v: f64) -> Rational {
    let scaled = (v * 1e6).round() as i64;
    Rational::new(BigInt::from(scaled), BigInt::from(1_000_000))
}

/// `n × m` matrix with entries `entry(i + j)`, indices from 1.
pub fn trig_matrix(n: usize, m: usize, entry: fn(f64) -> f64) -> Vec<Vec<Rational>> {
    (1..=n)
        .map(|i| (1..=m).map(|j| round_micro(entry((i + j) as f64))).collect())
        .collect()
}

/// `f_A` for the columns of `a`.
pub fn sum_of_distances(a: &[Vec<Rational>]) -> FuncExpr {
    let m = a[0].len();
    FuncExpr::sum(
        (0..m)
            .map(|j| FuncExpr::norm1_dist(a.iter().map(|row| row[j].clone()).collect()))
            .collect(),
    )
}

pub fn ex1(n: usize, mg: usize, mh: usize) -> Result<ProblemFile, GenerateError> {
    at_least_one("n", n)?;
    at_least_one("mg", mg)?;
    at_least_one("mh", mh)?;
    Ok(ProblemFile {
        name: Some(format!("ex1-n{n}-mg{mg}-mh{mh}")),
        description: Some("f_G - f_H with G_ij = sin(i+j), H_ij = cos(i+j), rounded to 1e-6".into()),
        n,
        g: sum_of_distances(&trig_matrix(n, mg, f64::sin)),
        h: sum_of_distances(&trig_matrix(n, mh, f64::cos)),
    })
}

fn affine(n: usize, terms: &[(usize, i64)], b: i64) -> FuncExpr {
    let mut a = vec![Rational::zero(); n];
    for &(i, c) in terms {
        a[i] = int(c);
    }
    FuncExpr::affine(a, int(b))
}

pub fn ex2(n: usize) -> Result<ProblemFile, GenerateError> {
    at_least_one("n", n)?;
    // |x₁ - 1|
    let mut g_terms = vec![FuncExpr::max(vec![affine(n, &[(0, 1)], -1), affine(n, &[(0, -1)], 1)])];
    let mut h_terms = Vec::new();
    for i in 1..n {
        // |x_{i-1}| - x_i as max{x_{i-1} - x_i, -x_{i-1} - x_i}
        let plus = affine(n, &[(i - 1, 1), (i, -1)], 0);
        let minus = affine(n, &[(i - 1, -1), (i, -1)], 0);
        g_terms.push(FuncExpr::scale(
            int(200),
            FuncExpr::max(vec![affine(n, &[], 0), plus.clone(), minus.clone()]),
        ));
        h_terms.push(FuncExpr::max(vec![plus, minus]));
    }
    let h = if h_terms.is_empty() {
        affine(n, &[], 0)
    } else {
        FuncExpr::scale(int(100), FuncExpr::sum(h_terms))
    };
    Ok(ProblemFile {
        name: Some(format!("ex2-n{n}")),
        description: Some(
            "g = |x1-1| + 200 sum max{0,|x_(i-1)|-x_i}, h = 100 sum (|x_(i-1)|-x_i)".into(),
        ),
        n,
        g: FuncExpr::sum(g_terms),
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcalc::{compile, ExtValue};
    use crate::rational::{frac, vec_of};

    #[test]
    fn rounding() {
        assert_eq!(round_micro(2f64.sin()), frac(909_297, 1_000_000));
        assert_eq!(round_micro(2f64.cos()), frac(-416_147, 1_000_000));
        assert_eq!(round_micro(0.5), frac(1, 2));
    }

    #[test]
    fn ex1_shape() {
        let p = ex1(2, 3, 1).unwrap();
        let g = compile(&p.g).unwrap();
        assert_eq!(g.n(), 2);
        let FuncExpr::SumOf(cols) = &p.g else { panic!("sum expected") };
        assert_eq!(cols.len(), 3);
        assert_eq!(cols[1], FuncExpr::norm1_dist(vec![round_micro(3f64.sin()), round_micro(4f64.sin())]));
        assert!(ex1(0, 1, 1).is_err());
    }

    #[test]
    fn ex2_values() {
        let p = ex2(2).unwrap();
        let g = compile(&p.g).unwrap();
        let h = compile(&p.h).unwrap();
        assert_eq!(g.evaluate(&vec_of(&[1, 1])), ExtValue::Finite(int(0)));
        assert_eq!(h.evaluate(&vec_of(&[1, 1])), ExtValue::Finite(int(0)));
        // g(2, 0) = 1 + 200·2, h(2, 0) = 100·2
        assert_eq!(g.evaluate(&vec_of(&[2, 0])), ExtValue::Finite(int(401)));
        assert_eq!(h.evaluate(&vec_of(&[2, 0])), ExtValue::Finite(int(200)));
        let p1 = ex2(1).unwrap();
        assert_eq!(compile(&p1.h).unwrap().evaluate(&vec_of(&[7])), ExtValue::Finite(int(0)));
    }
}

use serde::{Deserialize, Serialize};

use super::FuncError;
use crate::geometry::HRep;
use crate::rational::{self, Rational};

/// Expression tree for a polyhedral convex function on `R^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FuncExpr {
    /// `x ↦ a·x + b`
    Affine {
        #[serde(with = "rational::serde_rational_vec")]
        a: Vec<Rational>,
        #[serde(with = "rational::serde_rational")]
        b: Rational,
    },
    /// Pointwise maximum.
    MaxOf(Vec<FuncExpr>),
    SumOf(Vec<FuncExpr>),
    /// `x ↦ factor * child(x)` with `factor > 0`.
    Scale {
        #[serde(with = "rational::serde_rational")]
        factor: Rational,
        child: Box<FuncExpr>,
    },
    /// `x ↦ ‖x - center‖₁`
    Norm1Dist {
        #[serde(with = "rational::serde_rational_vec")]
        center: Vec<Rational>,
    },
    /// 0 on the polyhedron, +∞ elsewhere.
    Indicator(HRep),
    /// `x ↦ child(matrix x + offset)`
    PreCompose {
        #[serde(with = "rational::serde_rational_matrix")]
        matrix: Vec<Vec<Rational>>,
        #[serde(with = "rational::serde_rational_vec")]
        offset: Vec<Rational>,
        child: Box<FuncExpr>,
    },
}

impl FuncExpr {
    pub fn affine(a: Vec<Rational>, b: Rational) -> Self {
        FuncExpr::Affine { a, b }
    }

    pub fn max(children: Vec<FuncExpr>) -> Self {
        FuncExpr::MaxOf(children)
    }

    pub fn sum(children: Vec<FuncExpr>) -> Self {
        FuncExpr::SumOf(children)
    }

    pub fn scale(factor: Rational, child: FuncExpr) -> Self {
        FuncExpr::Scale {
            factor,
            child: Box::new(child),
        }
    }

    pub fn norm1_dist(center: Vec<Rational>) -> Self {
        FuncExpr::Norm1Dist { center }
    }

    pub fn indicator(h: HRep) -> Self {
        FuncExpr::Indicator(h)
    }

    pub fn pre_compose(matrix: Vec<Vec<Rational>>, offset: Vec<Rational>, child: FuncExpr) -> Self {
        FuncExpr::PreCompose {
            matrix,
            offset,
            child: Box::new(child),
        }
    }

    /// `x ↦ |x_i|` on `R^n`.
    pub fn abs_coordinate(n: usize, i: usize) -> Self {
        let mut e = vec![Rational::from_integer(0.into()); n];
        e[i] = rational::int(1);
        let neg = e.iter().map(|x| -x).collect();
        FuncExpr::max(vec![
            FuncExpr::affine(e, rational::int(0)),
            FuncExpr::affine(neg, rational::int(0)),
        ])
    }

    /// Ambient dimension, validating the whole tree.
    pub fn dim(&self) -> Result<usize, FuncError> {
        match self {
            FuncExpr::Affine { a, .. } => {
                if a.is_empty() {
                    return Err(FuncError::ZeroDimension);
                }
                Ok(a.len())
            }
            FuncExpr::MaxOf(children) | FuncExpr::SumOf(children) => {
                let Some(first) = children.first() else {
                    return Err(FuncError::NoChildren);
                };
                let n = first.dim()?;
                for c in &children[1..] {
                    let m = c.dim()?;
                    if m != n {
                        return Err(FuncError::DimensionMismatch { expected: n, found: m });
                    }
                }
                Ok(n)
            }
            FuncExpr::Scale { factor, child } => {
                if *factor <= rational::int(0) {
                    return Err(FuncError::NonPositiveScale(rational::format(factor)));
                }
                child.dim()
            }
            FuncExpr::Norm1Dist { center } => {
                if center.is_empty() {
                    return Err(FuncError::ZeroDimension);
                }
                Ok(center.len())
            }
            FuncExpr::Indicator(h) => {
                if h.dim == 0 {
                    return Err(FuncError::ZeroDimension);
                }
                for row in h.ineq.iter().chain(&h.eq) {
                    if row.a.len() != h.dim {
                        return Err(FuncError::DimensionMismatch {
                            expected: h.dim,
                            found: row.a.len(),
                        });
                    }
                }
                Ok(h.dim)
            }
            FuncExpr::PreCompose {
                matrix,
                offset,
                child,
            } => {
                let k = child.dim()?;
                if matrix.len() != k {
                    return Err(FuncError::DimensionMismatch {
                        expected: k,
                        found: matrix.len(),
                    });
                }
                if offset.len() != k {
                    return Err(FuncError::DimensionMismatch {
                        expected: k,
                        found: offset.len(),
                    });
                }
                let n = matrix[0].len();
                if n == 0 {
                    return Err(FuncError::ZeroDimension);
                }
                if let Some(row) = matrix.iter().find(|r| r.len() != n) {
                    return Err(FuncError::DimensionMismatch {
                        expected: n,
                        found: row.len(),
                    });
                }
                Ok(n)
            }
        }
    }
}

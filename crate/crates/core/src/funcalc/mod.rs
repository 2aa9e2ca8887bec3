//! Polyhedral convex function calculus.
//!
//! [`FuncExpr`] trees compile to [`PolyFunc`]s, which support exact
//! evaluation, epigraphs and domains as polyhedra, conjugation,
//! subdifferentials and restriction to affine subspaces.

mod compile;
mod expr;
mod polyfunc;

use thiserror::Error;

pub use expr::FuncExpr;
pub use polyfunc::{ExtValue, PolyFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuncError {
    #[error("max_of/sum_of needs at least one child")]
    NoChildren,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("functions on R^0 are not supported")]
    ZeroDimension,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("function takes the value -inf")]
    Improper,
    #[error("lifted system is not upward closed in t")]
    NotUpwardClosed,
    #[error("function has empty domain")]
    EmptyDomain,
    #[error("anchor point lies outside the domain")]
    AnchorOutsideDomain,
}

/// Compile an expression to its lifted epigraph form.
pub fn compile(e: &FuncExpr) -> Result<PolyFunc, FuncError> {
    let (n, aux, lifted) = compile::lifted_system(e)?;
    PolyFunc::from_lifted(n, aux, lifted)
}

/// Value of `f` at `x`.
pub fn evaluate(f: &PolyFunc, x: &[crate::Rational]) -> ExtValue {
    f.evaluate(x)
}

pub fn conjugate(f: &PolyFunc) -> Result<PolyFunc, FuncError> {
    f.conjugate()
}

pub fn subdifferential(f: &PolyFunc, x: &[crate::Rational]) -> Result<crate::geometry::Polyhedron, FuncError> {
    f.subdifferential(x)
}

pub fn restrict_affine(
    f: &PolyFunc,
    anchor: &[crate::Rational],
    basis: &[Vec<crate::Rational>],
) -> Result<PolyFunc, FuncError> {
    f.restrict_affine(anchor, basis)
}

pub fn function_lineality(f: &PolyFunc) -> Result<Vec<Vec<crate::Rational>>, FuncError> {
    f.lineality()
}

//! Exact global solver for polyhedral d.c. programs
//!
//! ```text
//!     minimize  g(x) - h(x)   over x in dom g
//! ```
//!
//! where `g` and `h` are polyhedral convex functions. The crate decides
//! whether an optimal solution exists, returning a checkable certificate
//! either way, and computes one when it does:
//!
//! - [`existence`] checks the primal conditions (domain non-empty, domain
//!   inclusion, recession cone inclusion of the epigraphs) and the same
//!   three conditions on the Toland–Singer dual built from conjugates.
//! - [`solver`] reduces the problem to minimizing the concave function
//!   `(x, r) ↦ r - h(x)` over `epi g`, after removing the lineality space of
//!   `g`, and enumerates the vertices of the reduced epigraph exactly. The
//!   dual method runs the same machinery on `(h*, g*)` and recovers a primal
//!   point from a linear program.
//! - [`funcalc`] compiles function expressions (affine maxima, sums, scaled
//!   terms, ℓ1 distances, indicators, affine pre-composition) to lifted
//!   epigraph descriptions and implements conjugation and subdifferentials.
//! - [`geometry`] is the exact polyhedral layer: double description,
//!   projection, recession cones and linear minimization.
//! - [`cli`] holds the problem/result file formats, the instance generators
//!   and the command implementations behind the `polydc` binary.
//!
//! # Example
//!
//! ```
//! use polydc::funcalc::{compile, FuncExpr};
//! use polydc::rational::{int, vec_of};
//! use polydc::solver::{solve_primal, DcProblem};
//!
//! // g(x) = |x| + |x - 2|,  h(x) = |x - 1|
//! let g = compile(&FuncExpr::sum(vec![
//!     FuncExpr::norm1_dist(vec_of(&[0])),
//!     FuncExpr::norm1_dist(vec_of(&[2])),
//! ])).unwrap();
//! let h = compile(&FuncExpr::norm1_dist(vec_of(&[1]))).unwrap();
//! let sol = solve_primal(&DcProblem::new(g, h).unwrap()).unwrap();
//! assert_eq!(sol.value().unwrap(), &int(1));
//! ```

pub mod cli;
pub mod existence;
pub mod funcalc;
pub mod geometry;
pub mod rational;
pub mod solver;

pub use rational::Rational;

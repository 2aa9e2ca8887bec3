//! Global solution of `min g - h` by concave minimization over `epi g`.
//!
//! The primal method tests existence, removes the lineality space of `g`
//! by restricting it to `x̄ + L⊥`, and minimizes `(x, r) ↦ r - h(x)` over
//! the vertices of the reduced epigraph. The dual method applies the same
//! steps to `(h*, g*)` and maps the dual optimum back to a primal point by
//! a linear program over `epi g`.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::existence::{dual_existence_test, primal_existence_test, ExistenceCertificate};
use crate::funcalc::{ExtValue, FuncError, PolyFunc};
use crate::geometry::{cone_contains, lex_cmp, LinearMin, Polyhedron};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("g has {g} variables but h has {h}")]
    DimensionMismatch { g: usize, h: usize },
    #[error("feasible set is empty")]
    EmptyFeasibleSet,
    #[error("feasible set has a non-trivial lineality space")]
    NotPointed,
    #[error("h is +inf at vertex {0}")]
    InfiniteAtVertex(String),
    #[error("linear subproblem is unbounded")]
    Unbounded,
    #[error("point {0} is outside the required domain")]
    OutsideDomain(String),
    #[error("primal value {primal} differs from dual value {dual}")]
    DualityMismatch { primal: String, dual: String },
    #[error(transparent)]
    Func(#[from] FuncError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Primal,
    Dual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Optimal,
    NoSolution(ExistenceCertificate),
}

/// Wall-clock time per phase. Informational only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Timings {
    pub exist: Duration,
    pub reduce: Duration,
    pub enumerate: Duration,
    pub total: Duration,
}

/// `min_{x ∈ dom g} g(x) - h(x)` for proper polyhedral `g`, `h` on `R^n`.
#[derive(Debug, Clone)]
pub struct DcProblem {
    g: PolyFunc,
    h: PolyFunc,
}

impl DcProblem {
    pub fn new(g: PolyFunc, h: PolyFunc) -> Result<Self, SolverError> {
        if g.n() != h.n() {
            return Err(SolverError::DimensionMismatch { g: g.n(), h: h.n() });
        }
        Ok(DcProblem { g, h })
    }

    pub fn g(&self) -> &PolyFunc {
        &self.g
    }

    pub fn h(&self) -> &PolyFunc {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// `g(x) - h(x)`, or `None` off `dom g ∩ dom h`.
    pub fn objective(&self, x: &[Rational]) -> Option<Rational> {
        let g = self.g.evaluate(x);
        let h = self.h.evaluate(x);
        Some(g.finite()? - h.finite()?)
    }
}

#[derive(Debug, Clone)]
pub struct DcSolution {
    pub status: Status,
    pub x: Option<Vec<Rational>>,
    pub value: Option<Rational>,
    /// `(x⁰, g(x⁰))`.
    pub epi_vertex: Option<(Vec<Rational>, Rational)>,
    pub dual_y: Option<Vec<Rational>>,
    pub method: Method,
    pub timings: Timings,
}

impl DcSolution {
    fn no_solution(cert: ExistenceCertificate, method: Method, timings: Timings) -> Self {
        DcSolution {
            status: Status::NoSolution(cert),
            x: None,
            value: None,
            epi_vertex: None,
            dual_y: None,
            method,
            timings,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    pub fn value(&self) -> Option<&Rational> {
        self.value.as_ref()
    }

    pub fn certificate(&self) -> Option<&ExistenceCertificate> {
        match &self.status {
            Status::NoSolution(c) => Some(c),
            Status::Optimal => None,
        }
    }
}

/// `g` restricted to `x̄ + L⊥`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub g_bar: PolyFunc,
    pub x_bar: Vec<Rational>,
    pub lineality: Vec<Vec<Rational>>,
}

/// Optimal vertex of the concave minimization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcMin {
    pub x: Vec<Rational>,
    pub r: Rational,
    pub value: Rational,
}

/// Monotonicity and boundedness assumptions for `P = C = 0⁺epi g`: `B`
/// holds trivially, and `M` holds when `0⁺epi g ⊆ 0⁺epi h`.
pub fn verify_mb(g: &PolyFunc, h: &PolyFunc) -> bool {
    let (Ok(cg), Ok(ch)) = (g.epigraph().recession_cone(), h.epigraph().recession_cone()) else {
        return false;
    };
    cone_contains(&cg, &ch).map(|c| c.holds()).unwrap_or(false)
}

pub fn reduce_lineality(g: &PolyFunc) -> Result<Reduction, SolverError> {
    let x_bar = g
        .domain()
        .lex_min_vertex()
        .ok_or(SolverError::Func(FuncError::EmptyDomain))?;
    let lineality = g.lineality()?;
    let g_bar = g.restrict_affine(&x_bar, &lineality)?;
    Ok(Reduction {
        g_bar,
        x_bar,
        lineality,
    })
}

/// Minimize `(x, r) ↦ r - h(x)` over the vertices of the pointed
/// polyhedron `p ⊂ R^{n+1}`; ties go to the lexicographically smallest
/// vertex.
pub fn solve_concmin(h: &PolyFunc, p: &Polyhedron) -> Result<ConcMin, SolverError> {
    let n = h.n();
    assert_eq!(p.dim(), n + 1, "polyhedron must live in R^(n+1)");
    let v = p.vrep();
    if v.is_empty() {
        return Err(SolverError::EmptyFeasibleSet);
    }
    if !v.is_pointed() {
        return Err(SolverError::NotPointed);
    }
    let h = h.flattened();
    let mut best: Option<(&Vec<Rational>, Rational)> = None;
    for vertex in &v.vertices {
        let ExtValue::Finite(hx) = h.evaluate(&vertex[..n]) else {
            return Err(SolverError::InfiniteAtVertex(rational::format_vec(vertex)));
        };
        let f = &vertex[n] - hx;
        let better = match &best {
            None => true,
            Some((bv, bf)) => f < *bf || (f == *bf && lex_cmp(vertex, bv).is_lt()),
        };
        if better {
            best = Some((vertex, f));
        }
    }
    let (vertex, value) = best.expect("non-empty pointed polyhedron has a vertex");
    Ok(ConcMin {
        x: vertex[..n].to_vec(),
        r: vertex[n].clone(),
        value,
    })
}

pub fn solve_primal(p: &DcProblem) -> Result<DcSolution, SolverError> {
    let start = Instant::now();
    let mut timings = Timings::default();

    let cert = primal_existence_test(&p.g, &p.h);
    timings.exist = start.elapsed();
    if !cert.exists() {
        timings.total = start.elapsed();
        return Ok(DcSolution::no_solution(cert, Method::Primal, timings));
    }

    let phase = Instant::now();
    let reduction = reduce_lineality(&p.g)?;
    let epi = reduction.g_bar.epigraph();
    let _ = epi.vrep();
    timings.reduce = phase.elapsed();

    let phase = Instant::now();
    let opt = solve_concmin(&p.h, epi)?;
    timings.enumerate = phase.elapsed();
    timings.total = start.elapsed();

    Ok(DcSolution {
        status: Status::Optimal,
        x: Some(opt.x.clone()),
        value: Some(opt.value),
        epi_vertex: Some((opt.x, opt.r)),
        dual_y: None,
        method: Method::Primal,
        timings,
    })
}

/// A minimizer of `z ↦ g(z) - y·z`, i.e. a point of `∂g*(y)`.
pub fn recover_primal_from_dual(g: &PolyFunc, y: &[Rational]) -> Result<Vec<Rational>, SolverError> {
    let n = g.n();
    assert_eq!(y.len(), n, "y must have length n");
    let mut c: Vec<Rational> = y.iter().map(|v| -v).collect();
    c.push(Rational::one());
    match g.epigraph().linear_min(&c) {
        LinearMin::Optimal { point, .. } => Ok(point[..n].to_vec()),
        LinearMin::Unbounded { .. } => Err(SolverError::Unbounded),
        LinearMin::Infeasible => Err(SolverError::EmptyFeasibleSet),
    }
}

pub fn solve_dual(p: &DcProblem) -> Result<DcSolution, SolverError> {
    let start = Instant::now();
    let mut timings = Timings::default();

    let cert = dual_existence_test(&p.g, &p.h);
    timings.exist = start.elapsed();
    if !cert.exists() {
        timings.total = start.elapsed();
        return Ok(DcSolution::no_solution(cert, Method::Dual, timings));
    }
    let h_conj = p.h.conjugate()?;
    let g_conj = p.g.conjugate()?;

    let phase = Instant::now();
    let reduction = reduce_lineality(&h_conj)?;
    let epi = reduction.g_bar.epigraph();
    let _ = epi.vrep();
    timings.reduce = phase.elapsed();

    let phase = Instant::now();
    let opt = solve_concmin(&g_conj, epi)?;
    let y = opt.x;
    let x = recover_primal_from_dual(&p.g, &y)?;
    timings.enumerate = phase.elapsed();

    let gx = p.g.evaluate(&x);
    let Some(value) = p.objective(&x) else {
        return Err(SolverError::OutsideDomain(rational::format_vec(&x)));
    };
    if value != opt.value {
        return Err(SolverError::DualityMismatch {
            primal: rational::format(&value),
            dual: rational::format(&opt.value),
        });
    }
    timings.total = start.elapsed();

    let r = gx.finite().cloned().unwrap_or_else(Rational::zero);
    Ok(DcSolution {
        status: Status::Optimal,
        x: Some(x.clone()),
        value: Some(value),
        epi_vertex: Some((x, r)),
        dual_y: Some(y),
        method: Method::Dual,
        timings,
    })
}

/// `(g(x) - h(x)) - (h*(y) - g*(y))`.
pub fn toland_singer_gap(p: &DcProblem, x: &[Rational], y: &[Rational]) -> Result<Rational, SolverError> {
    let primal = p
        .objective(x)
        .ok_or_else(|| SolverError::OutsideDomain(rational::format_vec(x)))?;
    let hc = p.h.conjugate()?.evaluate(y);
    let gc = p.g.conjugate()?.evaluate(y);
    match (hc, gc) {
        (ExtValue::Finite(hc), ExtValue::Finite(gc)) => Ok(primal - (hc - gc)),
        _ => Err(SolverError::OutsideDomain(rational::format_vec(y))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::existence::Condition;
    use crate::funcalc::{compile, FuncExpr};
    use crate::rational::{int, vec_of};

    fn f(e: FuncExpr) -> PolyFunc {
        compile(&e).unwrap()
    }

    fn abs(scale: i64) -> PolyFunc {
        f(FuncExpr::scale(int(scale), FuncExpr::abs_coordinate(1, 0)))
    }

    fn dist(c: i64) -> FuncExpr {
        FuncExpr::norm1_dist(vec_of(&[c]))
    }

    fn zero(n: usize) -> PolyFunc {
        f(FuncExpr::affine(vec![Rational::zero(); n], int(0)))
    }

    fn problem(g: PolyFunc, h: PolyFunc) -> DcProblem {
        DcProblem::new(g, h).unwrap()
    }

    #[test]
    fn mb_assumptions() {
        assert!(verify_mb(&abs(2), &abs(1)));
        assert!(!verify_mb(&abs(1), &abs(2)));
        assert!(verify_mb(&abs(3), &abs(3)));
    }

    #[test]
    fn lineality_reduction() {
        let r = reduce_lineality(&zero(1)).unwrap();
        assert_eq!(r.x_bar, vec_of(&[0]));
        assert_eq!(r.lineality, vec![vec_of(&[1])]);
        assert!(r.g_bar.domain().same_set(&Polyhedron::from_vrep(crate::geometry::VRep::new(
            1,
            vec![vec_of(&[0])],
            vec![],
            vec![]
        ))));

        let r = reduce_lineality(&abs(1)).unwrap();
        assert!(r.lineality.is_empty());
        assert!(r.g_bar.epigraph().same_set(abs(1).epigraph()));

        // x ↦ x₁ on R²: (1, 0, 1) and (0, 1, 0) both span lineal(epi g)
        let r = reduce_lineality(&f(FuncExpr::affine(vec_of(&[1, 0]), int(0)))).unwrap();
        assert_eq!(r.lineality, vec![vec_of(&[1, 0]), vec_of(&[0, 1])]);
        assert_eq!(r.g_bar.evaluate(&vec_of(&[0, 0])), ExtValue::Finite(int(0)));
        assert_eq!(r.g_bar.evaluate(&vec_of(&[5, 0])), ExtValue::Infinite);
        assert!(r.g_bar.epigraph().recession_cone().unwrap().vrep().is_pointed());

        // x ↦ x₁ + |x₁ - x₂| only has (1, 1, 1)
        let g = f(FuncExpr::sum(vec![
            FuncExpr::affine(vec_of(&[1, 0]), int(0)),
            FuncExpr::pre_compose(vec![vec_of(&[1, -1])], vec_of(&[0]), FuncExpr::abs_coordinate(1, 0)),
        ]));
        let r = reduce_lineality(&g).unwrap();
        assert_eq!(r.lineality, vec![vec_of(&[1, 1])]);
        assert_eq!(r.g_bar.evaluate(&vec_of(&[1, -1])), ExtValue::Finite(int(3)));
        assert_eq!(r.g_bar.evaluate(&vec_of(&[1, 1])), ExtValue::Infinite);
    }

    #[test]
    fn concave_minimization() {
        let h = f(dist(1));
        let p = f(FuncExpr::sum(vec![dist(0), dist(2)]));
        let opt = solve_concmin(&h, p.epigraph()).unwrap();
        assert_eq!((opt.x, opt.r, opt.value), (vec_of(&[0]), int(2), int(1)));

        let opt = solve_concmin(&zero(1), abs(1).epigraph()).unwrap();
        assert_eq!((opt.x, opt.value), (vec_of(&[0]), int(0)));
        let opt = solve_concmin(&abs(1), abs(2).epigraph()).unwrap();
        assert_eq!((opt.x, opt.value), (vec_of(&[0]), int(0)));

        assert_eq!(
            solve_concmin(&h, &Polyhedron::empty(2)).unwrap_err(),
            SolverError::EmptyFeasibleSet
        );
        assert_eq!(
            solve_concmin(&h, zero(1).epigraph()).unwrap_err(),
            SolverError::NotPointed
        );
        let narrow = f(FuncExpr::indicator(crate::geometry::HRep::with_rows(
            1,
            vec![crate::geometry::Row::new(vec_of(&[1]), int(1))],
            vec![],
        )));
        assert!(matches!(
            solve_concmin(&narrow, p.epigraph()),
            Err(SolverError::InfiniteAtVertex(_))
        ));
    }

    #[test]
    fn primal_method() {
        let sol = solve_primal(&problem(f(FuncExpr::sum(vec![dist(0), dist(2)])), f(dist(1)))).unwrap();
        assert!(sol.is_optimal());
        assert_eq!(sol.x, Some(vec_of(&[0])));
        assert_eq!(sol.value(), Some(&int(1)));
        assert_eq!(sol.epi_vertex, Some((vec_of(&[0]), int(2))));

        let sol = solve_primal(&problem(zero(1), zero(1))).unwrap();
        assert_eq!(sol.x, Some(vec_of(&[0])));
        assert_eq!(sol.value(), Some(&int(0)));

        let sol = solve_primal(&problem(abs(1), abs(2))).unwrap();
        let cert = sol.certificate().unwrap();
        assert_eq!(cert.failed_condition, Some(Condition::ConeNotSubset));
        assert_eq!(cert.witness, Some(vec_of(&[1, 1])));
    }

    #[test]
    fn dual_recovery() {
        assert_eq!(recover_primal_from_dual(&abs(2), &vec_of(&[1])).unwrap(), vec_of(&[0]));
        assert_eq!(recover_primal_from_dual(&f(dist(3)), &vec_of(&[0])).unwrap(), vec_of(&[3]));
        let affine = f(FuncExpr::affine(vec_of(&[2]), int(1)));
        let x = recover_primal_from_dual(&affine, &vec_of(&[2])).unwrap();
        assert_eq!(affine.evaluate(&x).finite().unwrap() - int(2) * &x[0], int(1));
        assert_eq!(
            recover_primal_from_dual(&abs(1), &vec_of(&[2])).unwrap_err(),
            SolverError::Unbounded
        );
    }

    #[test]
    fn dual_method() {
        let sol = solve_dual(&problem(abs(2), abs(1))).unwrap();
        assert_eq!(sol.dual_y, Some(vec_of(&[-1])));
        assert_eq!(sol.x, Some(vec_of(&[0])));
        assert_eq!(sol.value(), Some(&int(0)));

        let sol = solve_dual(&problem(abs(1), abs(2))).unwrap();
        assert!(!sol.is_optimal());
        assert_eq!(sol.method, Method::Dual);

        let p = problem(f(FuncExpr::sum(vec![dist(0), dist(2)])), f(dist(1)));
        let sol = solve_dual(&p).unwrap();
        assert_eq!(sol.value(), Some(&int(1)));
        let gap = toland_singer_gap(&p, sol.x.as_ref().unwrap(), sol.dual_y.as_ref().unwrap()).unwrap();
        assert_eq!(gap, int(0));
    }

    #[test]
    fn toland_singer_gap_signs() {
        let p = problem(abs(2), abs(1));
        // g = h: x arbitrary, y ∈ ∂h(x)
        let q = problem(abs(1), abs(1));
        assert_eq!(toland_singer_gap(&q, &vec_of(&[4]), &vec_of(&[1])).unwrap(), int(0));
        // suboptimal x with optimal y
        assert!(toland_singer_gap(&p, &vec_of(&[3]), &vec_of(&[-1])).unwrap() > int(0));
        assert!(toland_singer_gap(&p, &vec_of(&[0]), &vec_of(&[5])).is_err());
    }

    #[test]
    fn mismatched_dimensions() {
        assert_eq!(
            DcProblem::new(abs(1), zero(2)).unwrap_err(),
            SolverError::DimensionMismatch { g: 1, h: 2 }
        );
    }
}

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use super::FuncError;
use crate::geometry::{lp, HRep, Polyhedron, Row};
use crate::rational::{self, dot, Rational};

/// A value in `R ∪ {+∞}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtValue {
    Finite(Rational),
    Infinite,
}

impl ExtValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(v) => f.write_str(&rational::format(v)),
            ExtValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Closed proper polyhedral convex function on `R^n`, stored as a lifted
/// system over `(x, w, t)` with `f(x) = min { t : (x, w, t) feasible }`.
///
/// Cloning is cheap; derived objects (epigraph, domain, conjugate) are
/// computed once and shared between clones.
#[derive(Clone)]
pub struct PolyFunc {
    inner: Arc<Inner>,
}

struct Inner {
    n: usize,
    aux: usize,
    lifted: HRep,
    epi: OnceLock<Polyhedron>,
    dom: OnceLock<Polyhedron>,
    conj: OnceLock<Result<PolyFunc, FuncError>>,
}

impl fmt::Debug for PolyFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolyFunc")
            .field("n", &self.inner.n)
            .field("aux", &self.inner.aux)
            .field("rows", &self.inner.lifted.row_count())
            .finish()
    }
}

impl PolyFunc {
    fn from_parts(n: usize, aux: usize, lifted: HRep) -> Self {
        PolyFunc {
            inner: Arc::new(Inner {
                n,
                aux,
                lifted,
                epi: OnceLock::new(),
                dom: OnceLock::new(),
                conj: OnceLock::new(),
            }),
        }
    }

    /// Wrap a lifted system, checking the structural invariants and
    /// properness (`f > -∞` everywhere).
    pub fn from_lifted(n: usize, aux: usize, lifted: HRep) -> Result<Self, FuncError> {
        if n == 0 {
            return Err(FuncError::ZeroDimension);
        }
        if lifted.dim != n + aux + 1 {
            return Err(FuncError::DimensionMismatch {
                expected: n + aux + 1,
                found: lifted.dim,
            });
        }
        lifted.assert_well_formed();
        let t = n + aux;
        if lifted.ineq.iter().any(|r| r.a[t].is_positive()) || lifted.eq.iter().any(|r| !r.a[t].is_zero()) {
            return Err(FuncError::NotUpwardClosed);
        }
        let f = Self::from_parts(n, aux, lifted);
        f.check_proper()?;
        Ok(f)
    }

    /// A closed set's value function is −∞ everywhere on its domain as soon
    /// as it is −∞ at one point, so one probe decides properness.
    fn check_proper(&self) -> Result<(), FuncError> {
        let zero = vec![Rational::zero(); self.inner.lifted.dim];
        let lp::LpOutcome::Optimal { point, .. } = lp::minimize(&self.inner.lifted, &zero) else {
            return Ok(()); // empty domain
        };
        match self.evaluate_lp(&point[..self.inner.n]) {
            Some(_) => Ok(()),
            None => Err(FuncError::Improper),
        }
    }

    /// Function with epigraph `{(x, t) : rows}`; no auxiliary variables.
    pub fn from_epigraph_rows(n: usize, epi: HRep) -> Result<Self, FuncError> {
        Self::from_lifted(n, 0, epi)
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn aux_count(&self) -> usize {
        self.inner.aux
    }

    /// Rows over `(x, w, t)`.
    pub fn lifted(&self) -> &HRep {
        &self.inner.lifted
    }

    fn t_index(&self) -> usize {
        self.inner.n + self.inner.aux
    }

    /// Rows of the slice at `x`, over `(w, t)`. `None` if a row without
    /// `w` or `t` is already violated.
    fn slice(&self, x: &[Rational]) -> Option<HRep> {
        let n = self.inner.n;
        let mut h = HRep::new(self.inner.aux + 1);
        let reduce = |r: &Row| Row::new(r.a[n..].to_vec(), &r.b - dot(&r.a[..n], x));
        for r in &self.inner.lifted.ineq {
            let row = reduce(r);
            if row.is_trivial() {
                if row.b.is_negative() {
                    return None;
                }
            } else {
                h.ineq.push(row);
            }
        }
        for r in &self.inner.lifted.eq {
            let row = reduce(r);
            if row.is_trivial() {
                if !row.b.is_zero() {
                    return None;
                }
            } else {
                h.eq.push(row);
            }
        }
        Some(h)
    }

    /// `Some(value)`, `None` for −∞ (improper), `Some(Infinite)` off the domain.
    fn evaluate_lp(&self, x: &[Rational]) -> Option<ExtValue> {
        let Some(slice) = self.slice(x) else {
            return Some(ExtValue::Infinite);
        };
        if self.inner.aux == 0 {
            // t is the only variable: rows read c·t <= b with c <= 0.
            let mut lower: Option<Rational> = None;
            for r in &slice.ineq {
                let c = &r.a[0];
                let bound = &r.b / c;
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            }
            return lower.map(ExtValue::Finite);
        }
        let mut cost = vec![Rational::zero(); self.inner.aux + 1];
        cost[self.inner.aux] = Rational::one();
        match lp::minimize(&slice, &cost) {
            lp::LpOutcome::Optimal { value, .. } => Some(ExtValue::Finite(value)),
            lp::LpOutcome::Infeasible => Some(ExtValue::Infinite),
            lp::LpOutcome::Unbounded => None,
        }
    }

    /// `f(x)`, exactly.
    pub fn evaluate(&self, x: &[Rational]) -> ExtValue {
        assert_eq!(x.len(), self.n(), "point length must equal n");
        self.evaluate_lp(x)
            .expect("proper function never evaluates to -inf")
    }

    /// `epi f ⊂ R^{n+1}`, last coordinate is the value.
    pub fn epigraph(&self) -> &Polyhedron {
        self.inner.epi.get_or_init(|| {
            if self.inner.aux == 0 {
                Polyhedron::from_hrep(self.inner.lifted.clone())
            } else {
                let lifted = Polyhedron::from_hrep(self.inner.lifted.clone());
                let mut keep: Vec<usize> = (0..self.inner.n).collect();
                keep.push(self.t_index());
                lifted.project(&keep)
            }
        })
    }

    pub fn domain(&self) -> &Polyhedron {
        self.inner.dom.get_or_init(|| {
            let keep: Vec<usize> = (0..self.inner.n).collect();
            self.epigraph().project(&keep)
        })
    }

    /// The same function described by its projected epigraph, without
    /// auxiliary variables. Evaluation then needs no linear program.
    pub fn flattened(&self) -> PolyFunc {
        if self.inner.aux == 0 {
            return self.clone();
        }
        let epi = self.epigraph().clone();
        let flat = PolyFunc::from_parts(self.inner.n, 0, epi.hrep().clone());
        let _ = flat.inner.epi.set(epi);
        if let Some(dom) = self.inner.dom.get() {
            let _ = flat.inner.dom.set(dom.clone());
        }
        flat
    }

    pub fn has_empty_domain(&self) -> bool {
        self.epigraph().is_empty()
    }

    /// `f*(y) = sup_x [y·x - f(x)]`, read off the generators of `epi f`.
    pub fn conjugate(&self) -> Result<PolyFunc, FuncError> {
        self.inner
            .conj
            .get_or_init(|| self.compute_conjugate())
            .clone()
    }

    fn compute_conjugate(&self) -> Result<PolyFunc, FuncError> {
        let n = self.inner.n;
        let v = self.epigraph().vrep();
        if v.is_empty() {
            return Err(FuncError::EmptyDomain);
        }
        let mut epi = HRep::new(n + 1);
        let mut dom = HRep::new(n);
        for p in &v.vertices {
            // v·y - ρ <= r
            let mut a = p[..n].to_vec();
            a.push(-Rational::one());
            epi.ineq.push(Row::new(a, p[n].clone()));
        }
        for d in &v.rays {
            // d·y <= s
            if rational::is_zero_vec(&d[..n]) {
                continue;
            }
            let mut a = d[..n].to_vec();
            a.push(Rational::zero());
            epi.ineq.push(Row::new(a, d[n].clone()));
            dom.ineq.push(Row::new(d[..n].to_vec(), d[n].clone()));
        }
        for l in &v.lineality {
            let mut a = l[..n].to_vec();
            a.push(Rational::zero());
            epi.eq.push(Row::new(a, l[n].clone()));
            dom.eq.push(Row::new(l[..n].to_vec(), l[n].clone()));
        }
        let conj = PolyFunc::from_parts(n, 0, epi);
        let _ = conj.inner.dom.set(Polyhedron::from_hrep(dom));
        Ok(conj)
    }

    /// `∂f(x) = {y : f*(y) <= x·y - f(x)}`; empty off the domain.
    pub fn subdifferential(&self, x: &[Rational]) -> Result<Polyhedron, FuncError> {
        let n = self.inner.n;
        let ExtValue::Finite(fx) = self.evaluate(x) else {
            return Ok(Polyhedron::empty(n));
        };
        let conj = self.conjugate()?;
        let mut h = HRep::new(n);
        // conjugate rows: a·y + c·ρ <= b with c <= 0; eliminate ρ against
        // ρ <= x·y - f(x):  (a + c x)·y <= b + c f(x)
        for r in &conj.lifted().ineq {
            let c = &r.a[n];
            if c.is_zero() {
                h.ineq.push(Row::new(r.a[..n].to_vec(), r.b.clone()));
            } else {
                let a = r.a[..n].iter().zip(x).map(|(ai, xi)| ai + c * xi).collect();
                h.ineq.push(Row::new(a, &r.b + c * &fx));
            }
        }
        for r in &conj.lifted().eq {
            h.eq.push(Row::new(r.a[..n].to_vec(), r.b.clone()));
        }
        Ok(Polyhedron::from_hrep(h))
    }

    /// `f` restricted to `x̄ + L⊥` (+∞ elsewhere).
    pub fn restrict_affine(&self, anchor: &[Rational], basis: &[Vec<Rational>]) -> Result<PolyFunc, FuncError> {
        assert_eq!(anchor.len(), self.n(), "anchor length must equal n");
        if !self.evaluate(anchor).is_finite() {
            return Err(FuncError::AnchorOutsideDomain);
        }
        if basis.is_empty() {
            return Ok(self.clone());
        }
        let dim = self.inner.lifted.dim;
        let mut lifted = self.inner.lifted.clone();
        for l in basis {
            assert_eq!(l.len(), self.n(), "basis vector length must equal n");
            let mut a = l.clone();
            a.resize(dim, Rational::zero());
            lifted.eq.push(Row::new(a, dot(l, anchor)));
        }
        Ok(PolyFunc::from_parts(self.inner.n, self.inner.aux, lifted))
    }

    /// Basis of `{x : (x, r) ∈ lineal(epi f) for some r}`.
    pub fn lineality(&self) -> Result<Vec<Vec<Rational>>, FuncError> {
        let epi = self.epigraph();
        if epi.is_empty() {
            return Err(FuncError::EmptyDomain);
        }
        let n = self.inner.n;
        let projected: Vec<Vec<Rational>> = epi
            .vrep()
            .lineality
            .iter()
            .map(|l| l[..n].to_vec())
            .collect();
        Ok(crate::geometry::dd::canonical_basis(projected))
    }
}

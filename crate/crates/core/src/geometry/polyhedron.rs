use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};

use super::dd::{canonical_basis, h_to_v, v_to_h};
use super::lp;
use super::reps::{lex_cmp, HRep, VRep};
use super::GeometryError;
use crate::rational::{self, dot, Rational};

/// A convex polyhedron holding an inequality description, a generator
/// description, or both. The missing one is computed on first use and
/// cached; clones share the cache.
#[derive(Clone)]
pub struct Polyhedron {
    inner: Arc<Inner>,
}

struct Inner {
    dim: usize,
    hrep: OnceLock<HRep>,
    vrep: OnceLock<VRep>,
    empty: OnceLock<bool>,
}

impl std::fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Polyhedron")
            .field("dim", &self.inner.dim)
            .field("hrep", &self.inner.hrep.get())
            .field("vrep", &self.inner.vrep.get())
            .finish()
    }
}

/// Result of minimizing a linear function over a polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearMin {
    /// Exact minimum, attained at the lexicographically smallest optimal vertex.
    Optimal { value: Rational, point: Vec<Rational> },
    /// A ray or signed lineality direction along which the objective decreases.
    Unbounded { direction: Vec<Rational> },
    Infeasible,
}

/// A generator of the inner set that escapes the outer set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Escape {
    Vertex(Vec<Rational>),
    Ray(Vec<Rational>),
    /// A lineality direction, signed so that it is the violating one.
    Line(Vec<Rational>),
}

impl Escape {
    pub fn vector(&self) -> &[Rational] {
        match self {
            Escape::Vertex(v) | Escape::Ray(v) | Escape::Line(v) => v,
        }
    }
}

/// Outcome of a cone inclusion test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeInclusion {
    Contained,
    /// A generator direction of the inner cone lying outside the outer cone.
    Violated { witness: Vec<Rational> },
}

impl ConeInclusion {
    pub fn holds(&self) -> bool {
        matches!(self, ConeInclusion::Contained)
    }
}

impl Polyhedron {
    fn build(dim: usize, h: Option<HRep>, v: Option<VRep>) -> Self {
        let inner = Inner {
            dim,
            hrep: OnceLock::new(),
            vrep: OnceLock::new(),
            empty: OnceLock::new(),
        };
        if let Some(v) = v {
            let _ = inner.empty.set(v.is_empty());
            let _ = inner.vrep.set(v);
        }
        if let Some(h) = h {
            let _ = inner.hrep.set(h);
        }
        Polyhedron {
            inner: Arc::new(inner),
        }
    }

    pub fn from_hrep(h: HRep) -> Self {
        h.assert_well_formed();
        Self::build(h.dim, Some(h), None)
    }

    pub fn from_vrep(v: VRep) -> Self {
        Self::build(v.dim, None, Some(v))
    }

    /// Both descriptions supplied by the caller; they must agree.
    pub(crate) fn from_both(h: HRep, v: VRep) -> Self {
        debug_assert_eq!(h.dim, v.dim);
        Self::build(h.dim, Some(h), Some(v))
    }

    pub fn empty(dim: usize) -> Self {
        Self::from_both(HRep::infeasible(dim), VRep::empty(dim))
    }

    pub fn whole_space(dim: usize) -> Self {
        let lines = (0..dim)
            .map(|i| (0..dim).map(|j| rational::int((i == j) as i64)).collect())
            .collect();
        let v = VRep::new(dim, vec![vec![Rational::zero(); dim]], vec![], lines);
        Self::from_both(HRep::new(dim), v)
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn hrep(&self) -> &HRep {
        self.inner.hrep.get_or_init(|| {
            let v = self.inner.vrep.get().expect("polyhedron holds a representation");
            v_to_h(v)
        })
    }

    pub fn vrep(&self) -> &VRep {
        self.inner.vrep.get_or_init(|| {
            let h = self.inner.hrep.get().expect("polyhedron holds a representation");
            h_to_v(h)
        })
    }

    pub fn has_vrep(&self) -> bool {
        self.inner.vrep.get().is_some()
    }

    pub fn is_empty(&self) -> bool {
        *self.inner.empty.get_or_init(|| match self.inner.vrep.get() {
            Some(v) => v.is_empty(),
            None => !lp::is_feasible(self.hrep()),
        })
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.dim(), "point length must equal dimension");
        if self.is_empty() {
            return false;
        }
        self.hrep().contains(x)
    }

    /// True when the set is a cone with apex at the origin.
    pub fn is_cone(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        if let Some(h) = self.inner.hrep.get() {
            if h.ineq.iter().chain(&h.eq).all(|r| r.b.is_zero()) {
                return true;
            }
        }
        self.vrep().vertices.iter().all(|v| rational::is_zero_vec(v))
    }

    /// First generator of `self` not contained in `outer`, if any.
    pub fn escapes(&self, outer: &Polyhedron) -> Option<Escape> {
        assert_eq!(self.dim(), outer.dim(), "dimension mismatch");
        let v = self.vrep();
        if v.is_empty() {
            return None;
        }
        if outer.is_empty() {
            return Some(Escape::Vertex(v.vertices[0].clone()));
        }
        let h = outer.hrep();
        if let Some(p) = v.vertices.iter().find(|p| !h.contains(p)) {
            return Some(Escape::Vertex(p.clone()));
        }
        if let Some(r) = v.rays.iter().find(|r| h.violated_by_direction(r).is_some()) {
            return Some(Escape::Ray(r.clone()));
        }
        for l in &v.lineality {
            if h.violated_by_direction(l).is_some() {
                return Some(Escape::Line(l.clone()));
            }
            let neg: Vec<Rational> = l.iter().map(|x| -x).collect();
            if h.violated_by_direction(&neg).is_some() {
                return Some(Escape::Line(neg));
            }
        }
        None
    }

    /// `self ⊆ outer`, decided generator by generator.
    pub fn is_subset_of(&self, outer: &Polyhedron) -> bool {
        self.escapes(outer).is_none()
    }

    /// Inclusion of cones: every ray and signed lineality vector of `self`
    /// must satisfy `outer`'s inequalities.
    pub fn cone_contains_in(&self, outer: &Polyhedron) -> Result<ConeInclusion, GeometryError> {
        if !self.is_cone() || !outer.is_cone() {
            return Err(GeometryError::NotACone);
        }
        Ok(match self.escapes(outer) {
            None => ConeInclusion::Contained,
            Some(e) => ConeInclusion::Violated {
                witness: e.vector().to_vec(),
            },
        })
    }

    /// Recession cone `{d : P + d ⊆ P}`.
    pub fn recession_cone(&self) -> Result<Polyhedron, GeometryError> {
        if self.is_empty() {
            return Err(GeometryError::EmptyPolyhedron);
        }
        let d = self.dim();
        let h = self.inner.hrep.get().map(HRep::homogenized);
        let v = self.inner.vrep.get().map(|v| {
            VRep::new(d, vec![vec![Rational::zero(); d]], v.rays.clone(), v.lineality.clone())
        });
        Ok(match (h, v) {
            (Some(h), Some(v)) => Polyhedron::from_both(h, v),
            (Some(h), None) => Polyhedron::from_hrep(h),
            (None, Some(v)) => Polyhedron::from_vrep(v),
            (None, None) => unreachable!("polyhedron holds a representation"),
        })
    }

    /// Basis of `0⁺P ∩ -0⁺P`.
    pub fn lineality_space(&self) -> Result<Vec<Vec<Rational>>, GeometryError> {
        if self.is_empty() {
            return Err(GeometryError::EmptyPolyhedron);
        }
        Ok(self.vrep().lineality.clone())
    }

    /// Orthogonal projection onto the coordinates in `keep` (in that order).
    pub fn project(&self, keep: &[usize]) -> Polyhedron {
        for &k in keep {
            assert!(k < self.dim(), "projection index {k} out of range");
        }
        let d = keep.len();
        if self.is_empty() {
            return Polyhedron::empty(d);
        }
        let v = self.vrep();
        let pick = |g: &Vec<Rational>| keep.iter().map(|&k| g[k].clone()).collect::<Vec<_>>();
        let vertices: Vec<_> = v.vertices.iter().map(pick).collect();
        let rays: Vec<_> = v
            .rays
            .iter()
            .map(pick)
            .filter(|r| !rational::is_zero_vec(r))
            .collect();
        let lines: Vec<_> = v
            .lineality
            .iter()
            .map(pick)
            .filter(|r| !rational::is_zero_vec(r))
            .collect();
        let raw = VRep::new(d, vertices, rays, canonical_basis(lines));
        Polyhedron::from_hrep(v_to_h(&raw))
    }

    /// Exact minimum of `c·x`; ties go to the lexicographically smallest vertex.
    pub fn linear_min(&self, c: &[Rational]) -> LinearMin {
        assert_eq!(c.len(), self.dim(), "objective length must equal dimension");
        if self.is_empty() {
            return LinearMin::Infeasible;
        }
        let v = self.vrep();
        for l in &v.lineality {
            let s = dot(c, l);
            if !s.is_zero() {
                let direction = if s.is_negative() {
                    l.clone()
                } else {
                    l.iter().map(|x| -x).collect()
                };
                return LinearMin::Unbounded { direction };
            }
        }
        if let Some(r) = v.rays.iter().find(|r| dot(c, r).is_negative()) {
            return LinearMin::Unbounded { direction: r.clone() };
        }
        let mut best: Option<(Rational, &Vec<Rational>)> = None;
        for p in &v.vertices {
            let value = dot(c, p);
            let replace = match &best {
                None => true,
                Some((bv, bp)) => value < *bv || (value == *bv && lex_cmp(p, bp).is_lt()),
            };
            if replace {
                best = Some((value, p));
            }
        }
        let (value, point) = best.expect("non-empty polyhedron has a vertex");
        LinearMin::Optimal {
            value,
            point: point.clone(),
        }
    }

    /// Lexicographically smallest vertex, `None` if empty.
    pub fn lex_min_vertex(&self) -> Option<Vec<Rational>> {
        self.vrep()
            .vertices
            .iter()
            .min_by(|a, b| lex_cmp(a, b))
            .cloned()
    }

    /// Intersection with extra rows, as an H-described polyhedron.
    pub fn intersect(&self, extra: &HRep) -> Polyhedron {
        assert_eq!(extra.dim, self.dim());
        let mut h = self.hrep().clone();
        h.ineq.extend(extra.ineq.iter().cloned());
        h.eq.extend(extra.eq.iter().cloned());
        Polyhedron::from_hrep(h)
    }

    /// Mutual generator inclusion.
    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }
}

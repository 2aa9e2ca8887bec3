use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, dot, Rational};

/// A single linear row `a·x ≤ b` (or `a·x = b` when stored as an equality).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Row {
    #[serde(with = "rational::serde_rational_vec")]
    pub a: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub b: Rational,
}

impl Row {
    pub fn new(a: Vec<Rational>, b: Rational) -> Self {
        Row { a, b }
    }

    /// `a·x - b`; nonpositive iff `x` satisfies the inequality.
    pub fn slack_at(&self, x: &[Rational]) -> Rational {
        dot(&self.a, x) - &self.b
    }

    pub fn is_trivial(&self) -> bool {
        rational::is_zero_vec(&self.a)
    }
}

/// Inequality description `{x : a_i·x ≤ b_i, e_j·x = f_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HRep {
    pub dim: usize,
    #[serde(default)]
    pub ineq: Vec<Row>,
    #[serde(default)]
    pub eq: Vec<Row>,
}

impl HRep {
    pub fn new(dim: usize) -> Self {
        HRep {
            dim,
            ineq: Vec::new(),
            eq: Vec::new(),
        }
    }

    pub fn with_rows(dim: usize, ineq: Vec<Row>, eq: Vec<Row>) -> Self {
        let h = HRep { dim, ineq, eq };
        h.assert_well_formed();
        h
    }

    /// The canonical empty set `0·x ≤ -1`.
    pub fn infeasible(dim: usize) -> Self {
        HRep {
            dim,
            ineq: vec![Row::new(vec![Rational::zero(); dim], rational::int(-1))],
            eq: Vec::new(),
        }
    }

    pub fn push_ineq(&mut self, a: Vec<Rational>, b: Rational) {
        assert_eq!(a.len(), self.dim, "row length must equal dimension");
        self.ineq.push(Row::new(a, b));
    }

    pub fn push_eq(&mut self, a: Vec<Rational>, b: Rational) {
        assert_eq!(a.len(), self.dim, "row length must equal dimension");
        self.eq.push(Row::new(a, b));
    }

    pub fn assert_well_formed(&self) {
        for row in self.ineq.iter().chain(&self.eq) {
            assert_eq!(row.a.len(), self.dim, "row length must equal dimension");
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.dim, "point length must equal dimension");
        self.ineq.iter().all(|r| !r.slack_at(x).is_positive())
            && self.eq.iter().all(|r| r.slack_at(x).is_zero())
    }

    /// First row violated by the direction `d` as a recession direction.
    pub fn violated_by_direction(&self, d: &[Rational]) -> Option<&Row> {
        self.ineq
            .iter()
            .find(|r| dot(&r.a, d).is_positive())
            .or_else(|| self.eq.iter().find(|r| !dot(&r.a, d).is_zero()))
    }

    /// First row violated by the point `x`.
    pub fn violated_by_point(&self, x: &[Rational]) -> Option<&Row> {
        self.ineq
            .iter()
            .find(|r| r.slack_at(x).is_positive())
            .or_else(|| self.eq.iter().find(|r| !r.slack_at(x).is_zero()))
    }

    /// Same rows with every right-hand side set to zero.
    pub fn homogenized(&self) -> HRep {
        let zero = |r: &Row| Row::new(r.a.clone(), Rational::zero());
        HRep {
            dim: self.dim,
            ineq: self
                .ineq
                .iter()
                .filter(|r| !(r.is_trivial() && !r.b.is_negative()))
                .map(zero)
                .collect(),
            eq: self.eq.iter().map(zero).collect(),
        }
    }

    pub fn row_count(&self) -> usize {
        self.ineq.len() + self.eq.len()
    }
}

impl fmt::Display for HRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.ineq {
            writeln!(f, "{} . x <= {}", rational::format_vec(&row.a), rational::format(&row.b))?;
        }
        for row in &self.eq {
            writeln!(f, "{} . x  = {}", rational::format_vec(&row.a), rational::format(&row.b))?;
        }
        Ok(())
    }
}

/// Generator description `conv(vertices) + cone(rays) + span(lineality)`.
///
/// An empty vertex list marks the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VRep {
    pub dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

impl VRep {
    pub fn empty(dim: usize) -> Self {
        VRep {
            dim,
            ..Default::default()
        }
    }

    pub fn new(
        dim: usize,
        vertices: Vec<Vec<Rational>>,
        rays: Vec<Vec<Rational>>,
        lineality: Vec<Vec<Rational>>,
    ) -> Self {
        for g in vertices.iter().chain(&rays).chain(&lineality) {
            assert_eq!(g.len(), dim, "generator length must equal dimension");
        }
        VRep {
            dim,
            vertices,
            rays,
            lineality,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Every generator as a tagged reference, vertices first.
    pub fn generators(&self) -> impl Iterator<Item = Generator<'_>> {
        self.vertices
            .iter()
            .map(Generator::Vertex)
            .chain(self.rays.iter().map(Generator::Ray))
            .chain(self.lineality.iter().map(Generator::Line))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator<'a> {
    Vertex(&'a Vec<Rational>),
    Ray(&'a Vec<Rational>),
    Line(&'a Vec<Rational>),
}

/// Lexicographic comparison of rational vectors.
pub fn lex_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Generator lists are stored in descending lexicographic order.
pub(crate) fn sort_generators(v: &mut Vec<Vec<Rational>>) {
    v.sort_by(|a, b| lex_cmp(b, a));
    v.dedup();
}

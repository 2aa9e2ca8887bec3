//! Existence of optimal solutions of `min g - h` for polyhedral `g`, `h`.
//!
//! The primal test checks, in this order,
//!
//! 1. `dom g ≠ ∅`,
//! 2. `dom g ⊆ dom h`,
//! 3. `0⁺epi g ⊆ 0⁺epi h`,
//!
//! and the dual test runs the same three checks on the pair `(h*, g*)`.
//! For closed `h` the third condition is equivalent to the sharper
//! `0⁺epi g ⊆ 0⁺(epi h ∩ (dom g × R))`; every function representable here
//! is closed. The first failing condition determines the certificate, and
//! its witness (a point of `dom g \ dom h` or a direction of
//! `0⁺epi g \ 0⁺epi h`) can be re-checked independently.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::funcalc::{ExtValue, PolyFunc};
use crate::geometry::{ConeInclusion, Escape};
use crate::rational::{self, dot, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Primal,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Exists,
    NotExists,
}

/// The condition that failed. Starred variants refer to the dual pair
/// `(h*, g*)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    DomEmpty,
    DomNotSubset,
    ConeNotSubset,
    DomEmptyStar,
    DomNotSubsetStar,
    ConeNotSubsetStar,
}

impl Condition {
    pub fn is_cone(self) -> bool {
        matches!(self, Condition::ConeNotSubset | Condition::ConeNotSubsetStar)
    }

    pub fn is_domain_inclusion(self) -> bool {
        matches!(self, Condition::DomNotSubset | Condition::DomNotSubsetStar)
    }
}

/// Outcome of each condition; `None` when an earlier one already failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConditionOutcomes {
    pub dom_nonempty: Option<bool>,
    pub dom_subset: Option<bool>,
    pub cone_subset: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceCertificate {
    pub side: Side,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failed_condition: Option<Condition>,
    /// A point for domain failures, a direction `(d, s)` for cone failures.
    #[serde(
        with = "rational::serde_opt_rational_vec",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub witness: Option<Vec<Rational>>,
    pub checked: ConditionOutcomes,
}

impl ExistenceCertificate {
    pub fn exists(&self) -> bool {
        self.verdict == Verdict::Exists
    }

    fn failed(side: Side, condition: Condition, witness: Option<Vec<Rational>>, checked: ConditionOutcomes) -> Self {
        ExistenceCertificate {
            side,
            verdict: Verdict::NotExists,
            failed_condition: Some(condition),
            witness,
            checked,
        }
    }
}

fn starred(side: Side, primal: Condition) -> Condition {
    match (side, primal) {
        (Side::Primal, c) => c,
        (Side::Dual, Condition::DomEmpty) => Condition::DomEmptyStar,
        (Side::Dual, Condition::DomNotSubset) => Condition::DomNotSubsetStar,
        (Side::Dual, Condition::ConeNotSubset) => Condition::ConeNotSubsetStar,
        (Side::Dual, c) => c,
    }
}

/// A point of `dom first` outside `dom second`, built from an escaping generator.
fn domain_witness(first: &PolyFunc, second: &PolyFunc, escape: Escape) -> Vec<Rational> {
    let direction = match escape {
        Escape::Vertex(v) => return v,
        Escape::Ray(d) | Escape::Line(d) => d,
    };
    let base = first
        .domain()
        .lex_min_vertex()
        .expect("non-empty domain has a vertex");
    let outer = second.domain().hrep();
    let step = |alpha: Rational| -> Vec<Rational> {
        base.iter().zip(&direction).map(|(b, d)| b + &alpha * d).collect()
    };
    if let Some(row) = outer.ineq.iter().find(|r| dot(&r.a, &direction).is_positive()) {
        let rate = dot(&row.a, &direction);
        let gap = &row.b - dot(&row.a, &base);
        let alpha = if gap.is_negative() { Rational::zero() } else { gap / rate } + Rational::one();
        return step(alpha);
    }
    let row = outer
        .eq
        .iter()
        .find(|r| !dot(&r.a, &direction).is_zero())
        .expect("escaping direction violates some row");
    let mut alpha = Rational::one();
    while dot(&row.a, &step(alpha.clone())) == row.b {
        alpha += Rational::one();
    }
    step(alpha)
}

/// The three conditions for `min first - second`.
fn three_conditions(first: &PolyFunc, second: &PolyFunc, side: Side) -> ExistenceCertificate {
    let mut checked = ConditionOutcomes::default();

    let nonempty = !first.has_empty_domain();
    checked.dom_nonempty = Some(nonempty);
    if !nonempty {
        return ExistenceCertificate::failed(side, starred(side, Condition::DomEmpty), None, checked);
    }

    let escape = if second.has_empty_domain() {
        first.domain().lex_min_vertex().map(Escape::Vertex)
    } else {
        first.domain().escapes(second.domain())
    };
    checked.dom_subset = Some(escape.is_none());
    if let Some(escape) = escape {
        let witness = domain_witness(first, second, escape);
        return ExistenceCertificate::failed(side, starred(side, Condition::DomNotSubset), Some(witness), checked);
    }

    let inner = first.epigraph().recession_cone().expect("non-empty epigraph");
    let outer = second.epigraph().recession_cone().expect("non-empty epigraph");
    let inclusion = inner.cone_contains_in(&outer).expect("recession cones are cones");
    checked.cone_subset = Some(inclusion.holds());
    if let ConeInclusion::Violated { witness } = inclusion {
        return ExistenceCertificate::failed(side, starred(side, Condition::ConeNotSubset), Some(witness), checked);
    }

    ExistenceCertificate {
        side,
        verdict: Verdict::Exists,
        failed_condition: None,
        witness: None,
        checked,
    }
}

/// Primal test on `(g, h)`.
pub fn primal_existence_test(g: &PolyFunc, h: &PolyFunc) -> ExistenceCertificate {
    assert_eq!(g.n(), h.n(), "g and h must share the variable count");
    three_conditions(g, h, Side::Primal)
}

/// Dual test: the primal test applied to `(h*, g*)`.
///
/// Conjugates of functions with empty domain are identically −∞ and not
/// representable; both cases are reported as a failure of the first
/// starred condition.
pub fn dual_existence_test(g: &PolyFunc, h: &PolyFunc) -> ExistenceCertificate {
    assert_eq!(g.n(), h.n(), "g and h must share the variable count");
    let (Ok(h_conj), Ok(g_conj)) = (h.conjugate(), g.conjugate()) else {
        let checked = ConditionOutcomes {
            dom_nonempty: Some(false),
            ..Default::default()
        };
        return ExistenceCertificate::failed(Side::Dual, Condition::DomEmptyStar, None, checked);
    };
    three_conditions(&h_conj, &g_conj, Side::Dual)
}

/// True iff the primal and dual tests agree.
pub fn existence_cross_check(g: &PolyFunc, h: &PolyFunc) -> bool {
    primal_existence_test(g, h).verdict == dual_existence_test(g, h).verdict
}

/// Re-verify a certificate's witness against fresh geometry of the pair
/// `(first, second)` it was computed for (`(g, h)` or `(h*, g*)`).
pub fn witness_is_valid(cert: &ExistenceCertificate, first: &PolyFunc, second: &PolyFunc) -> bool {
    let Some(condition) = cert.failed_condition else {
        return cert.witness.is_none();
    };
    let Some(w) = &cert.witness else {
        return matches!(condition, Condition::DomEmpty | Condition::DomEmptyStar);
    };
    if condition.is_domain_inclusion() {
        first.domain().contains_point(w) && !second.domain().contains_point(w)
    } else if condition.is_cone() {
        let (Ok(inner), Ok(outer)) = (first.epigraph().recession_cone(), second.epigraph().recession_cone()) else {
            return false;
        };
        inner.contains_point(w) && outer.hrep().violated_by_direction(w).is_some()
    } else {
        false
    }
}

/// Start of a divergent sequence along a cone witness `(d, s)`.
///
/// Returns `(x, r) ∈ epi first` such that `k ↦ (r + k s) - second(x + k d)`
/// is strictly decreasing for `k = 0, 1, 2, ...`. By convexity of `second`
/// along the line it suffices that the first increment exceeds `s`.
pub fn divergent_ray_start(first: &PolyFunc, second: &PolyFunc, ray: &[Rational]) -> Option<(Vec<Rational>, Rational)> {
    let n = first.n();
    assert_eq!(ray.len(), n + 1);
    let (d, s) = (&ray[..n], &ray[n]);
    let base = first.domain().lex_min_vertex()?;
    let mut k = Rational::zero();
    for _ in 0..64 {
        let x: Vec<Rational> = base.iter().zip(d).map(|(b, di)| b + &k * di).collect();
        let next: Vec<Rational> = x.iter().zip(d).map(|(xi, di)| xi + di).collect();
        let grows = match (second.evaluate(&x), second.evaluate(&next)) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => b - a > *s,
            (ExtValue::Finite(_), ExtValue::Infinite) => true,
            (ExtValue::Infinite, _) => false,
        };
        if grows {
            let ExtValue::Finite(r) = first.evaluate(&x) else {
                return None;
            };
            return Some((x, r));
        }
        k = if k.is_zero() { Rational::one() } else { k * rational::int(2) };
    }
    None
}

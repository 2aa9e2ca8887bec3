//! Double description method.
//!
//! Both conversions reduce to computing the extreme rays and the lineality
//! space of a homogeneous cone `{z : A z >= 0, E z = 0}`. Constraints are
//! inserted one at a time in the order given; rays live as primitive
//! integer vectors and adjacency is decided combinatorially from the sets
//! of tight constraints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::{rref, OrthoProjector};
use super::reps::{sort_generators, HRep, Row, VRep};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn with_capacity(bits: usize) -> Self {
        BitSet {
            words: vec![0; bits.div_ceil(64).max(1)],
        }
    }

    fn full(bits: usize, capacity: usize) -> Self {
        let mut s = Self::with_capacity(capacity);
        for i in 0..bits {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ineq,
    Eq,
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    tight: BitSet,
}

/// Extreme rays and a lineality basis of a homogeneous cone.
#[derive(Debug, Clone, Default)]
pub(crate) struct ConeGenerators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// `alpha * u - beta * w`, made primitive.
fn combine(alpha: &BigInt, u: &[BigInt], beta: &BigInt, w: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = u
        .iter()
        .zip(w)
        .map(|(x, y)| alpha * x - beta * y)
        .collect();
    make_primitive(&mut out);
    out
}

/// Generators of `{z in R^dim : a·z >= 0 for a in ineq, e·z = 0 for e in eq}`.
pub(crate) fn cone_generators(dim: usize, ineq: &[Vec<BigInt>], eq: &[Vec<BigInt>]) -> ConeGenerators {
    let rows: Vec<(&Vec<BigInt>, Kind)> = eq
        .iter()
        .map(|r| (r, Kind::Eq))
        .chain(ineq.iter().map(|r| (r, Kind::Ineq)))
        .filter(|(r, _)| r.iter().any(|x| !x.is_zero()))
        .collect();
    let capacity = rows.len();

    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, &(a, kind)) in rows.iter().enumerate() {
        if let Some(p) = lineality.iter().position(|l| !int_dot(a, l).is_zero()) {
            let mut pivot = lineality.remove(p);
            let mut ap = int_dot(a, &pivot);
            if ap.is_negative() {
                for x in pivot.iter_mut() {
                    *x = -&*x;
                }
                ap = -ap;
            }
            for l in lineality.iter_mut() {
                let s = int_dot(a, l);
                if !s.is_zero() {
                    *l = combine(&ap, l, &s, &pivot);
                }
            }
            for r in rays.iter_mut() {
                let s = int_dot(a, &r.v);
                if !s.is_zero() {
                    r.v = combine(&ap, &r.v, &s, &pivot);
                }
                r.tight.insert(k);
            }
            if kind == Kind::Ineq {
                rays.push(Ray {
                    v: pivot,
                    tight: BitSet::full(k, capacity),
                });
            }
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| int_dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() && (kind == Kind::Ineq || pos.is_empty()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.insert(k);
                }
            }
            continue;
        }

        let min_common = (dim - lineality.len()).saturating_sub(2);
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if values[i].is_zero() {
                let mut r = r.clone();
                r.tight.insert(k);
                next.push(r);
            } else if values[i].is_positive() && kind == Kind::Ineq {
                next.push(r.clone());
            }
        }
        for &ip in &pos {
            for &in_ in &neg {
                let common = rays[ip].tight.intersection(&rays[in_].tight);
                if common.count() < min_common {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(j, r)| j == ip || j == in_ || !common.is_subset(&r.tight));
                if !adjacent {
                    continue;
                }
                let v = combine(&values[ip], &rays[in_].v, &values[in_], &rays[ip].v);
                let mut tight = common;
                tight.insert(k);
                next.push(Ray { v, tight });
            }
        }
        rays = next;
    }

    ConeGenerators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}

fn to_int_row(coeffs: impl IntoIterator<Item = Rational>) -> Vec<BigInt> {
    let q: Vec<Rational> = coeffs.into_iter().collect();
    rational::primitive_integer(&q)
}

/// Canonical basis of a subspace: reduced row echelon rows scaled to
/// coprime integers.
pub(crate) fn canonical_basis(vectors: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return vectors;
    }
    rref(vectors)
        .into_iter()
        .map(|v| rational::normalize_line(&v))
        .collect()
}

/// Vertices, extreme rays and a lineality basis of `{x : A x <= b, E x = f}`.
///
/// Vertices and rays are projected onto the orthogonal complement of the
/// lineality space, so the output is canonical for the point set.
pub fn h_to_v(h: &HRep) -> VRep {
    h.assert_well_formed();
    let d = h.dim;
    // z = (x0, x); x0 >= 0 and b x0 - a·x >= 0.
    let mut ineq: Vec<Vec<BigInt>> = Vec::with_capacity(h.ineq.len() + 1);
    let mut x0 = vec![BigInt::zero(); d + 1];
    x0[0] = BigInt::one();
    ineq.push(x0);
    for row in &h.ineq {
        ineq.push(to_int_row(
            std::iter::once(row.b.clone()).chain(row.a.iter().map(|x| -x)),
        ));
    }
    let eq: Vec<Vec<BigInt>> = h
        .eq
        .iter()
        .map(|row| to_int_row(std::iter::once(row.b.clone()).chain(row.a.iter().map(|x| -x))))
        .collect();

    let cone = cone_generators(d + 1, &ineq, &eq);

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in &cone.rays {
        let tail = rational::from_ints(&r[1..]);
        if r[0].is_positive() {
            let scale = Rational::from_integer(r[0].clone());
            vertices.push(tail.into_iter().map(|x| x / &scale).collect::<Vec<_>>());
        } else {
            rays.push(tail);
        }
    }
    if vertices.is_empty() {
        return VRep::empty(d);
    }
    let lines: Vec<Vec<Rational>> = cone
        .lineality
        .iter()
        .map(|l| rational::from_ints(&l[1..]))
        .collect();
    let lineality = canonical_basis(lines);
    let projector = OrthoProjector::new(&lineality);
    let mut vertices: Vec<Vec<Rational>> = vertices.iter().map(|v| projector.project(v)).collect();
    let mut rays: Vec<Vec<Rational>> = rays
        .iter()
        .map(|r| projector.project(r))
        .filter(|r| !rational::is_zero_vec(r))
        .map(|r| rational::normalize_direction(&r))
        .collect();
    sort_generators(&mut vertices);
    sort_generators(&mut rays);
    VRep {
        dim: d,
        vertices,
        rays,
        lineality,
    }
}

/// Minimal inequality description of `conv(V) + cone(R) + span(L)`.
///
/// Equalities are in reduced echelon form with the first nonzero entry
/// positive; inequality normals are orthogonal to the equality normals and
/// scaled to coprime integers.
pub fn v_to_h(v: &VRep) -> HRep {
    let d = v.dim;
    if v.is_empty() {
        return HRep::infeasible(d);
    }
    // Valid inequalities a·x <= b, encoded as z = (b, a).
    let mut ineq: Vec<Vec<BigInt>> = Vec::new();
    for p in &v.vertices {
        ineq.push(to_int_row(
            std::iter::once(Rational::one()).chain(p.iter().map(|x| -x)),
        ));
    }
    for r in &v.rays {
        ineq.push(to_int_row(
            std::iter::once(Rational::zero()).chain(r.iter().map(|x| -x)),
        ));
    }
    let eq: Vec<Vec<BigInt>> = v
        .lineality
        .iter()
        .map(|l| to_int_row(std::iter::once(Rational::zero()).chain(l.iter().cloned())))
        .collect();
    let cone = cone_generators(d + 1, &ineq, &eq);

    // Equalities: reorder to (a, b) so the echelon form pivots on normals.
    let eq_rows: Vec<Vec<Rational>> = cone
        .lineality
        .iter()
        .map(|z| {
            let mut row = rational::from_ints(&z[1..]);
            row.push(Rational::from_integer(z[0].clone()));
            row
        })
        .collect();
    let eq_rows = canonical_basis(eq_rows);
    let eq_normals: Vec<Vec<Rational>> = eq_rows.iter().map(|r| r[..d].to_vec()).collect();
    let projector = OrthoProjector::new(&eq_normals);

    let mut ineq_rows: Vec<Vec<Rational>> = Vec::new();
    for z in &cone.rays {
        let a = rational::from_ints(&z[1..]);
        let b = Rational::from_integer(z[0].clone());
        let a_proj = projector.project(&a);
        if rational::is_zero_vec(&a_proj) {
            continue;
        }
        // Shift b by the same combination of equalities removed from a.
        let mut shifted_b = b;
        if !eq_normals.is_empty() {
            let removed: Vec<Rational> = a.iter().zip(&a_proj).map(|(x, y)| x - y).collect();
            shifted_b -= combination_rhs(&eq_rows, &removed, d);
        }
        let mut row = a_proj;
        row.push(shifted_b);
        ineq_rows.push(rational::normalize_direction(&row));
    }
    ineq_rows.sort_by(|x, y| super::reps::lex_cmp(x, y));
    ineq_rows.dedup();

    HRep {
        dim: d,
        ineq: ineq_rows
            .into_iter()
            .map(|mut r| {
                let b = r.pop().expect("row has rhs");
                Row::new(r, b)
            })
            .collect(),
        eq: eq_rows
            .into_iter()
            .map(|mut r| {
                let b = r.pop().expect("row has rhs");
                Row::new(r, b)
            })
            .collect(),
    }
}

/// Given `target = Σ c_k a_k` over the equality normals, return `Σ c_k b_k`.
fn combination_rhs(eq_rows: &[Vec<Rational>], target: &[Rational], d: usize) -> Rational {
    // eq_rows are in reduced echelon form over their first d columns, so the
    // coefficient of row k is target at that row's pivot column.
    let mut total = Rational::zero();
    for row in eq_rows {
        let pivot = row[..d]
            .iter()
            .position(|x| !x.is_zero())
            .expect("equality rows have nonzero normals");
        let coeff = &target[pivot] / &row[pivot];
        total += coeff * &row[d];
    }
    total
}

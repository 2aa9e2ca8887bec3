//! Reference implementations used as oracles by the integration tests.
//! Nothing here calls into the library's geometry or function calculus.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use polydc::funcalc::FuncExpr;
use polydc::geometry::{HRep, Row, VRep};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

/// Rows `(a, b)` of a system `a·z ≤ b` (or `=`).
pub type Rows = Vec<(Vec<Q>, Q)>;

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

pub fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Value of `e` at `x` by structural recursion; `None` is `+∞`.
pub fn interpret(e: &FuncExpr, x: &[Q]) -> Option<Q> {
    match e {
        FuncExpr::Affine { a, b } => Some(dot(a, x) + b),
        FuncExpr::MaxOf(cs) => {
            let vals: Option<Vec<Q>> = cs.iter().map(|c| interpret(c, x)).collect();
            vals?.into_iter().max()
        }
        FuncExpr::SumOf(cs) => cs.iter().try_fold(Q::zero(), |acc, c| Some(acc + interpret(c, x)?)),
        FuncExpr::Scale { factor, child } => interpret(child, x).map(|v| v * factor),
        FuncExpr::Norm1Dist { center } => Some(
            x.iter()
                .zip(center)
                .fold(Q::zero(), |acc, (xi, ci)| acc + (xi - ci).abs()),
        ),
        FuncExpr::Indicator(h) => {
            let ok = h.ineq.iter().all(|r| dot(&r.a, x) <= r.b) && h.eq.iter().all(|r| dot(&r.a, x) == r.b);
            ok.then(Q::zero)
        }
        FuncExpr::PreCompose { matrix, offset, child } => {
            let y: Vec<Q> = matrix.iter().zip(offset).map(|(row, d)| dot(row, x) + d).collect();
            interpret(child, &y)
        }
    }
}

/// `f(x) = max_i (p_i·x + q_i)` on `{x : a·x ≤ b, e·x = f}`.
#[derive(Debug, Clone)]
pub struct MaxAffine {
    pub n: usize,
    pub pieces: Vec<(Vec<Q>, Q)>,
    pub dom_ineq: Vec<(Vec<Q>, Q)>,
    pub dom_eq: Vec<(Vec<Q>, Q)>,
}

impl MaxAffine {
    pub fn of(e: &FuncExpr, n: usize) -> MaxAffine {
        let empty = |pieces| MaxAffine {
            n,
            pieces,
            dom_ineq: Vec::new(),
            dom_eq: Vec::new(),
        };
        match e {
            FuncExpr::Affine { a, b } => empty(vec![(a.clone(), b.clone())]),
            FuncExpr::MaxOf(cs) => {
                let mut out = empty(Vec::new());
                for c in cs {
                    let m = MaxAffine::of(c, n);
                    out.pieces.extend(m.pieces);
                    out.dom_ineq.extend(m.dom_ineq);
                    out.dom_eq.extend(m.dom_eq);
                }
                out
            }
            FuncExpr::SumOf(cs) => {
                let mut out = empty(vec![(vec![Q::zero(); n], Q::zero())]);
                for c in cs {
                    let m = MaxAffine::of(c, n);
                    let mut pieces = Vec::new();
                    for (p, v) in &out.pieces {
                        for (p2, v2) in &m.pieces {
                            let s: Vec<Q> = p.iter().zip(p2).map(|(a, b)| a + b).collect();
                            pieces.push((s, v + v2));
                        }
                    }
                    out.pieces = pieces;
                    out.dom_ineq.extend(m.dom_ineq);
                    out.dom_eq.extend(m.dom_eq);
                }
                out
            }
            FuncExpr::Scale { factor, child } => {
                let mut m = MaxAffine::of(child, n);
                for (p, v) in m.pieces.iter_mut() {
                    p.iter_mut().for_each(|c| *c *= factor);
                    *v *= factor;
                }
                m
            }
            FuncExpr::Norm1Dist { center } => {
                let mut pieces = Vec::new();
                for mask in 0..(1u32 << n) {
                    let s: Vec<Q> = (0..n).map(|i| if mask >> i & 1 == 1 { -q(1) } else { q(1) }).collect();
                    let v = -dot(&s, center);
                    pieces.push((s, v));
                }
                empty(pieces)
            }
            FuncExpr::Indicator(h) => MaxAffine {
                n,
                pieces: vec![(vec![Q::zero(); n], Q::zero())],
                dom_ineq: h.ineq.iter().map(|r| (r.a.clone(), r.b.clone())).collect(),
                dom_eq: h.eq.iter().map(|r| (r.a.clone(), r.b.clone())).collect(),
            },
            FuncExpr::PreCompose { matrix, offset, child } => {
                let k = matrix.len();
                let m = MaxAffine::of(child, k);
                // p·(Mx + d) + v = (Mᵀp)·x + (p·d + v)
                let pull = |p: &[Q], v: &Q| -> (Vec<Q>, Q) {
                    let a: Vec<Q> = (0..n)
                        .map(|j| (0..k).fold(Q::zero(), |acc, i| acc + &p[i] * &matrix[i][j]))
                        .collect();
                    (a, dot(p, offset) + v)
                };
                MaxAffine {
                    n,
                    pieces: m.pieces.iter().map(|(p, v)| pull(p, v)).collect(),
                    dom_ineq: m.dom_ineq.iter().map(|(a, b)| {
                        let (a2, shift) = pull(a, &Q::zero());
                        (a2, b - shift)
                    }).collect(),
                    dom_eq: m.dom_eq.iter().map(|(a, b)| {
                        let (a2, shift) = pull(a, &Q::zero());
                        (a2, b - shift)
                    }).collect(),
                }
            }
        }
    }

    pub fn value(&self, x: &[Q]) -> Option<Q> {
        if !self.in_domain(x) {
            return None;
        }
        self.pieces.iter().map(|(p, v)| dot(p, x) + v).max()
    }

    pub fn in_domain(&self, x: &[Q]) -> bool {
        self.dom_ineq.iter().all(|(a, b)| dot(a, x) <= *b) && self.dom_eq.iter().all(|(a, b)| dot(a, x) == *b)
    }

    /// Epigraph rows over `(x, t)`: `(a, b)` meaning `a·z ≤ b`, and equalities.
    pub fn epi_rows(&self) -> (Rows, Rows) {
        let lift = |a: &[Q], t: Q| {
            let mut v = a.to_vec();
            v.push(t);
            v
        };
        let mut ineq: Rows = self.pieces.iter().map(|(p, v)| (lift(p, -q(1)), -v.clone())).collect();
        ineq.extend(self.dom_ineq.iter().map(|(a, b)| (lift(a, Q::zero()), b.clone())));
        let eq = self.dom_eq.iter().map(|(a, b)| (lift(a, Q::zero()), b.clone())).collect();
        (ineq, eq)
    }

    pub fn epi_row_count(&self) -> usize {
        self.pieces.len() + self.dom_ineq.len() + self.dom_eq.len()
    }

    /// `(d, s)` lies in the recession cone of the epigraph.
    pub fn recedes(&self, d: &[Q]) -> bool {
        let (ineq, eq) = self.epi_rows();
        ineq.iter().all(|(a, _)| !dot(a, d).is_positive()) && eq.iter().all(|(a, _)| dot(a, d).is_zero())
    }
}

/// Row-reduce; returns the pivot columns of the reduced matrix.
fn eliminate(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, p) in m[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    eliminate(&mut m).len()
}

/// A solution of `a z = b` with free variables set to zero.
pub fn particular_solution(a: &[Vec<Q>], b: &[Q], dim: usize) -> Option<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = eliminate(&mut m);
    if pivots.contains(&dim) {
        return None;
    }
    let mut z = vec![Q::zero(); dim];
    for (r, &c) in pivots.iter().enumerate() {
        z[c] = m[r][dim].clone();
    }
    Some(z)
}

fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// One point on every minimal face of `{z : ineq, eq}`, found by making
/// every linearly independent subset of inequalities of the right size
/// tight. For pointed polyhedra these are exactly the vertices.
pub fn basic_points(dim: usize, ineq: &[(Vec<Q>, Q)], eq: &[(Vec<Q>, Q)]) -> Vec<Vec<Q>> {
    let all: Vec<Vec<Q>> = ineq.iter().chain(eq).map(|(a, _)| a.clone()).collect();
    let eq_rows: Vec<Vec<Q>> = eq.iter().map(|(a, _)| a.clone()).collect();
    let full = rank(&all);
    let need = full - rank(&eq_rows);
    let feasible = |z: &[Q]| ineq.iter().all(|(a, b)| dot(a, z) <= *b) && eq.iter().all(|(a, b)| dot(a, z) == *b);
    let mut out: Vec<Vec<Q>> = Vec::new();
    subsets(ineq.len(), need, &mut |s| {
        let mut a = eq_rows.clone();
        let mut b: Vec<Q> = eq.iter().map(|(_, b)| b.clone()).collect();
        for &i in s {
            a.push(ineq[i].0.clone());
            b.push(ineq[i].1.clone());
        }
        if rank(&a) != full {
            return;
        }
        if let Some(z) = particular_solution(&a, &b, dim) {
            if feasible(&z) && !out.contains(&z) {
                out.push(z);
            }
        }
    });
    out
}

/// Brute-force `min c·z` over a pointed polyhedron given by rows;
/// `None` when empty. Only meaningful when the minimum is finite.
pub fn brute_linear_min(dim: usize, ineq: &[(Vec<Q>, Q)], eq: &[(Vec<Q>, Q)], c: &[Q]) -> Option<Q> {
    basic_points(dim, ineq, eq).iter().map(|z| dot(c, z)).min()
}

pub fn rows_of(h: &HRep) -> (Rows, Rows) {
    let f = |r: &Row| (r.a.clone(), r.b.clone());
    (h.ineq.iter().map(f).collect(), h.eq.iter().map(f).collect())
}

/// Every generator of `v` lies in `{z : ineq, eq}` (rays and lines in its recession cone).
pub fn generators_satisfy(v: &VRep, ineq: &[(Vec<Q>, Q)], eq: &[(Vec<Q>, Q)]) -> bool {
    let point = |z: &[Q]| ineq.iter().all(|(a, b)| dot(a, z) <= *b) && eq.iter().all(|(a, b)| dot(a, z) == *b);
    let ray = |d: &[Q]| ineq.iter().all(|(a, _)| !dot(a, d).is_positive()) && eq.iter().all(|(a, _)| dot(a, d).is_zero());
    let line = |l: &[Q]| ineq.iter().chain(eq).all(|(a, _)| dot(a, l).is_zero());
    v.vertices.iter().all(|z| point(z)) && v.rays.iter().all(|d| ray(d)) && v.lineality.iter().all(|l| line(l))
}

fn rint(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Q {
    q(rng.gen_range(lo..=hi))
}

fn rvec(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Vec<Q> {
    (0..n).map(|_| rint(rng, lo, hi)).collect()
}

fn random_max_affine(rng: &mut ChaCha8Rng, n: usize, coeff: i64) -> FuncExpr {
    let k = rng.gen_range(1..=6);
    FuncExpr::max(
        (0..k)
            .map(|_| FuncExpr::affine(rvec(rng, n, -coeff, coeff), rint(rng, -3, 3)))
            .collect(),
    )
}

fn random_indicator(rng: &mut ChaCha8Rng, n: usize) -> FuncExpr {
    let rows = rng.gen_range(1..=3);
    let mut h = HRep::new(n);
    for _ in 0..rows {
        let a = rvec(rng, n, -2, 2);
        if a.iter().all(|v| v.is_zero()) {
            continue;
        }
        h.ineq.push(Row::new(a, rint(rng, -1, 4)));
    }
    FuncExpr::indicator(h)
}

/// A small polyhedral function: affine maxima (≤ 6 pieces), scaled,
/// ℓ1 distances and indicator constraints.
pub fn random_function(rng: &mut ChaCha8Rng, n: usize) -> FuncExpr {
    let coeff = if rng.gen_bool(0.5) { 1 } else { 3 };
    match rng.gen_range(0..20) {
        0..=7 => random_max_affine(rng, n, coeff),
        8..=10 => FuncExpr::scale(
            [q(2), q(3), Q::new(1.into(), 2.into())][rng.gen_range(0..3)].clone(),
            random_max_affine(rng, n, coeff),
        ),
        11..=15 => FuncExpr::sum(vec![random_max_affine(rng, n, coeff), random_indicator(rng, n)]),
        16..=17 if n <= 2 => FuncExpr::norm1_dist(rvec(rng, n, -2, 2)),
        18 => random_indicator(rng, n),
        _ => FuncExpr::affine(rvec(rng, n, -2, 2), rint(rng, -2, 2)),
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub n: usize,
    pub g: FuncExpr,
    pub h: FuncExpr,
}

pub fn random_suite(seed: u64, count: usize, max_n: usize) -> Vec<Instance> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let g = random_function(&mut rng, n);
            let mut h = random_function(&mut rng, n);
            if rng.gen_bool(0.4) {
                // flatter h makes the existence conditions hold more often
                h = FuncExpr::scale(Q::new(1.into(), 4.into()), h);
            }
            Instance { n, g, h }
        })
        .collect()
}

/// Small rational grid points in `[-3, 3]^n` with step 1/2.
pub fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| Q::new(rng.gen_range(-6..=6i64).into(), 2.into())).collect()
}

pub fn one() -> Q {
    Q::one()
}

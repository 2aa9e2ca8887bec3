//! Epigraph lifting.
//!
//! An expression on `R^n` becomes a system over `(x, w, t)` whose
//! projection onto `(x, t)` is the epigraph. Each node contributes rows on
//! its own block of auxiliary variables `w`; blocks are concatenated when
//! nodes are combined, so the size of the system is linear in the size of
//! the expression.

use num_traits::{One, Zero};

use super::expr::FuncExpr;
use super::FuncError;
use crate::geometry::{HRep, Row};
use crate::rational::{dot, Rational};

#[derive(Debug, Clone)]
struct LRow {
    x: Vec<Rational>,
    w: Vec<(usize, Rational)>,
    t: Rational,
    b: Rational,
}

impl LRow {
    fn shift_aux(mut self, offset: usize) -> Self {
        for (i, _) in self.w.iter_mut() {
            *i += offset;
        }
        self
    }

    /// Move the `t` coefficient onto auxiliary variable `aux`.
    fn t_to_aux(mut self, aux: usize) -> Self {
        if !self.t.is_zero() {
            let t = std::mem::replace(&mut self.t, Rational::zero());
            self.w.push((aux, t));
        }
        self
    }
}

#[derive(Debug, Clone)]
struct Lifted {
    n: usize,
    aux: usize,
    ineq: Vec<LRow>,
    eq: Vec<LRow>,
    /// The node is an indicator: value 0 wherever finite, rows do not use `t`
    /// except the single `-t <= 0` row stored separately.
    indicator: bool,
}

impl Lifted {
    fn new(n: usize) -> Self {
        Lifted {
            n,
            aux: 0,
            ineq: Vec::new(),
            eq: Vec::new(),
            indicator: false,
        }
    }

    fn absorb(&mut self, other: Lifted) {
        let offset = self.aux;
        self.ineq.extend(other.ineq.into_iter().map(|r| r.shift_aux(offset)));
        self.eq.extend(other.eq.into_iter().map(|r| r.shift_aux(offset)));
        self.aux += other.aux;
    }

    fn t_floor_row(n: usize) -> LRow {
        LRow {
            x: vec![Rational::zero(); n],
            w: Vec::new(),
            t: -Rational::one(),
            b: Rational::zero(),
        }
    }

    /// Rows of an indicator node without its `-t <= 0` row.
    fn constraint_rows(self) -> Lifted {
        debug_assert!(self.indicator);
        let mut out = self;
        out.ineq.retain(|r| r.t.is_zero());
        out
    }

    fn into_hrep(self) -> (usize, HRep) {
        let dim = self.n + self.aux + 1;
        let dense = |r: LRow| {
            let mut a = r.x;
            a.resize(dim, Rational::zero());
            for (i, v) in r.w {
                a[self.n + i] += v;
            }
            a[dim - 1] = r.t;
            Row::new(a, r.b)
        };
        let ineq = self.ineq.into_iter().map(dense).collect();
        let eq = self.eq.into_iter().map(dense).collect();
        (self.aux, HRep::with_rows(dim, ineq, eq))
    }
}

fn lift(e: &FuncExpr, n: usize) -> Lifted {
    match e {
        FuncExpr::Affine { a, b } => {
            let mut l = Lifted::new(n);
            l.ineq.push(LRow {
                x: a.clone(),
                w: Vec::new(),
                t: -Rational::one(),
                b: -b,
            });
            l
        }
        FuncExpr::MaxOf(children) => {
            let mut l = Lifted::new(n);
            l.indicator = true;
            for c in children {
                let child = lift(c, n);
                l.indicator &= child.indicator;
                l.absorb(child);
            }
            if l.indicator {
                // keep a single -t <= 0 row
                l.ineq.retain(|r| r.t.is_zero());
                l.ineq.push(Lifted::t_floor_row(n));
            }
            l
        }
        FuncExpr::SumOf(children) => {
            let mut l = Lifted::new(n);
            let mut valued = Vec::new();
            for c in children {
                let child = lift(c, n);
                if child.indicator {
                    l.absorb(child.constraint_rows());
                } else {
                    valued.push(child);
                }
            }
            match valued.len() {
                0 => {
                    l.indicator = true;
                    l.ineq.push(Lifted::t_floor_row(n));
                }
                1 => l.absorb(valued.pop().expect("one valued child")),
                _ => {
                    let mut sum_row = LRow {
                        x: vec![Rational::zero(); n],
                        w: Vec::new(),
                        t: -Rational::one(),
                        b: Rational::zero(),
                    };
                    for child in valued {
                        let t_index = child.aux;
                        let offset = l.aux;
                        let mut child = child;
                        child.ineq = child.ineq.into_iter().map(|r| r.t_to_aux(t_index)).collect();
                        child.eq = child.eq.into_iter().map(|r| r.t_to_aux(t_index)).collect();
                        child.aux += 1;
                        l.absorb(child);
                        sum_row.w.push((offset + t_index, Rational::one()));
                    }
                    l.ineq.push(sum_row);
                }
            }
            l
        }
        FuncExpr::Scale { factor, child } => {
            let mut l = lift(child, n);
            if l.indicator {
                return l;
            }
            // child(x) <= t/α  <=>  α·(rest) + c·t <= α·b
            for r in l.ineq.iter_mut().chain(l.eq.iter_mut()) {
                if r.t.is_zero() {
                    continue;
                }
                for v in r.x.iter_mut() {
                    *v *= factor;
                }
                for (_, v) in r.w.iter_mut() {
                    *v *= factor;
                }
                r.b *= factor;
            }
            l
        }
        FuncExpr::Norm1Dist { center } => {
            let mut l = Lifted::new(n);
            l.aux = n;
            for (j, c) in center.iter().enumerate() {
                let mut e = vec![Rational::zero(); n];
                e[j] = Rational::one();
                l.ineq.push(LRow {
                    x: e.clone(),
                    w: vec![(j, -Rational::one())],
                    t: Rational::zero(),
                    b: c.clone(),
                });
                e[j] = -Rational::one();
                l.ineq.push(LRow {
                    x: e,
                    w: vec![(j, -Rational::one())],
                    t: Rational::zero(),
                    b: -c,
                });
            }
            l.ineq.push(LRow {
                x: vec![Rational::zero(); n],
                w: (0..n).map(|j| (j, Rational::one())).collect(),
                t: -Rational::one(),
                b: Rational::zero(),
            });
            l
        }
        FuncExpr::Indicator(h) => {
            let mut l = Lifted::new(n);
            l.indicator = true;
            let plain = |r: &Row| LRow {
                x: r.a.clone(),
                w: Vec::new(),
                t: Rational::zero(),
                b: r.b.clone(),
            };
            l.ineq.extend(h.ineq.iter().map(plain));
            l.eq.extend(h.eq.iter().map(plain));
            l.ineq.push(Lifted::t_floor_row(n));
            l
        }
        FuncExpr::PreCompose {
            matrix,
            offset,
            child,
        } => {
            let k = matrix.len();
            let inner = lift(child, k);
            let map_row = |r: LRow| {
                // p·(Cx + d) = (Cᵀp)·x + p·d
                let x = (0..n)
                    .map(|j| {
                        r.x.iter()
                            .zip(matrix)
                            .filter(|(p, _)| !p.is_zero())
                            .map(|(p, row)| p * &row[j])
                            .sum()
                    })
                    .collect();
                let b = &r.b - dot(&r.x, offset);
                LRow { x, w: r.w, t: r.t, b }
            };
            Lifted {
                n,
                aux: inner.aux,
                ineq: inner.ineq.into_iter().map(map_row).collect(),
                eq: inner.eq.into_iter().map(map_row).collect(),
                indicator: inner.indicator,
            }
        }
    }
}

/// Lifted system of `e`: `(n, aux, rows over (x, w, t))`.
pub(crate) fn lifted_system(e: &FuncExpr) -> Result<(usize, usize, HRep), FuncError> {
    let n = e.dim()?;
    let (aux, h) = lift(e, n).into_hrep();
    Ok((n, aux, h))
}

//! Quadrature on great-circle arcs and spherical triangles.
//!
//! Pieces are refined globally: the piece with the largest error estimate is
//! split until the summed estimate meets the tolerance or the evaluation
//! budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::harmonics::gauss_legendre;
use crate::Vec3;

const TRIANGLE_ORDER: usize = 10;
const ARC_ORDER: usize = 20;

/// Default number of integrand evaluations per integral.
pub const DEFAULT_EVAL_BUDGET: usize = 4_000_000;

/// Vector-valued integrand on the sphere: writes `f(u)` into the slice.
pub type SphereFn<'a> = dyn Fn(&Vec3, &mut [f64]) + 'a;

fn unit_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    (x.iter().map(|x| 0.5 * (x + 1.0)).collect(), w.iter().map(|w| 0.5 * w).collect())
}

fn triangle_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| unit_rule(TRIANGLE_ORDER))
}

fn arc_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| unit_rule(ARC_ORDER))
}

/// Area of the spherical triangle with unit vertices `a, b, c`
/// (Van Oosterom-Strackee).
pub fn triangle_area(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let det = a.dot(&b.cross(c)).abs();
    let den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * det.atan2(den)
}

/// Area of a convex spherical polygon given by its vertices in cyclic order.
pub fn polygon_area(v: &[Vec3]) -> f64 {
    (1..v.len().saturating_sub(1)).map(|k| triangle_area(&v[0], &v[k], &v[k + 1])).sum()
}

/// Great-circle arc `cos(s) start + sin(s) tangent`, `0 <= s <= angle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcGeom {
    pub start: Vec3,
    pub tangent: Vec3,
    pub angle: f64,
}

impl ArcGeom {
    /// Shorter arc from unit `a` to unit `b`; `None` if they are parallel.
    pub fn between(a: &Vec3, b: &Vec3) -> Option<Self> {
        let t = b - a * a.dot(b);
        let len = t.norm();
        if len < 1e-15 {
            return None;
        }
        Some(Self { start: *a, tangent: t / len, angle: len.atan2(a.dot(b)) })
    }

    pub fn point(&self, s: f64) -> Vec3 {
        self.start * s.cos() + self.tangent * s.sin()
    }

    pub fn end(&self) -> Vec3 {
        self.point(self.angle)
    }
}

/// A weighted piece of a measure on the sphere awaiting quadrature.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Piece {
    /// Radial image of a flat triangle, weighted by the spherical area element.
    Triangle { verts: [Vec3; 3], weight: f64 },
    /// Sub-arc `[s0, s1]` weighted by arc length.
    Arc { arc: ArcGeom, s0: f64, s1: f64, weight: f64 },
}

impl Piece {
    fn evals(&self) -> usize {
        match self {
            Piece::Triangle { .. } => TRIANGLE_ORDER * TRIANGLE_ORDER,
            Piece::Arc { .. } => ARC_ORDER,
        }
    }

    fn split(&self) -> Vec<Piece> {
        match *self {
            Piece::Triangle { verts: [a, b, c], weight } => {
                let (ab, bc, ca) = ((a + b) * 0.5, (b + c) * 0.5, (c + a) * 0.5);
                [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
                    .into_iter()
                    .map(|verts| Piece::Triangle { verts, weight })
                    .collect()
            }
            Piece::Arc { arc, s0, s1, weight } => {
                let mid = 0.5 * (s0 + s1);
                vec![Piece::Arc { arc, s0, s1: mid, weight }, Piece::Arc { arc, s0: mid, s1, weight }]
            }
        }
    }

    /// Pieces on either side of the plane `normal . x = 0`, along which the
    /// integrand may have a kink.
    pub(crate) fn cut(&self, normal: &Vec3, out: &mut Vec<Piece>) {
        match *self {
            Piece::Triangle { verts, weight } => {
                let d = verts.map(|v| normal.dot(&v));
                if d.iter().all(|x| *x >= 0.0) || d.iter().all(|x| *x <= 0.0) {
                    out.push(*self);
                    return;
                }
                // the plane meets the flat triangle in a segment whose radial image is the kink
                for sign in [1.0, -1.0] {
                    let mut poly = Vec::with_capacity(4);
                    for k in 0..3 {
                        let (a, b) = (verts[k], verts[(k + 1) % 3]);
                        let (da, db) = (sign * d[k], sign * d[(k + 1) % 3]);
                        if da >= 0.0 {
                            poly.push(a);
                        }
                        if (da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0) {
                            poly.push(a + (b - a) * (da / (da - db)));
                        }
                    }
                    for k in 1..poly.len().saturating_sub(1) {
                        let verts = [poly[0], poly[k], poly[k + 1]];
                        if verts[0].dot(&verts[1].cross(&verts[2])).abs() > 1e-300 {
                            out.push(Piece::Triangle { verts, weight });
                        }
                    }
                }
            }
            Piece::Arc { arc, s0, s1, weight } => {
                // u . arc(s) = A cos s + B sin s vanishes at s* and s* + pi
                let (a, b) = (normal.dot(&arc.start), normal.dot(&arc.tangent));
                let mut cuts: Vec<f64> = [0.0, PI]
                    .iter()
                    .map(|k| (-a).atan2(b).rem_euclid(PI) + k)
                    .filter(|s| *s > s0 && *s < s1)
                    .collect();
                cuts.sort_by(f64::total_cmp);
                let mut lo = s0;
                for s in cuts.into_iter().chain([s1]) {
                    out.push(Piece::Arc { arc, s0: lo, s1: s, weight });
                    lo = s;
                }
            }
        }
    }

    fn apply(&self, f: &SphereFn, out: &mut [f64], tmp: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        match *self {
            Piece::Triangle { verts: [a, b, c], weight } => {
                let (x, w) = triangle_rule();
                let det = a.dot(&b.cross(&c)).abs() * weight;
                let (ab, ac) = (b - a, c - a);
                for (xi, wi) in x.iter().zip(w) {
                    for (yj, wj) in x.iter().zip(w) {
                        // collapsed coordinates: s = x, t = (1 - x) y
                        let p = a + ab * *xi + ac * ((1.0 - xi) * yj);
                        let r = p.norm();
                        let jac = det / (r * r * r) * (1.0 - xi) * wi * wj;
                        f(&(p / r), tmp);
                        for (o, v) in out.iter_mut().zip(tmp.iter()) {
                            *o += jac * v;
                        }
                    }
                }
            }
            Piece::Arc { arc, s0, s1, weight } => {
                let (x, w) = arc_rule();
                let h = (s1 - s0) * weight;
                for (xi, wi) in x.iter().zip(w) {
                    f(&arc.point(s0 + (s1 - s0) * xi), tmp);
                    for (o, v) in out.iter_mut().zip(tmp.iter()) {
                        *o += h * wi * v;
                    }
                }
            }
        }
    }
}

struct Node {
    kids: Vec<(Piece, Vec<f64>)>,
    fine: Vec<f64>,
    err: f64,
    seq: usize,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then(other.seq.cmp(&self.seq))
    }
}

struct Refiner<'a, 'f> {
    f: &'a SphereFn<'f>,
    m: usize,
    tmp: Vec<f64>,
    remaining: usize,
    seq: usize,
}

impl Refiner<'_, '_> {
    fn eval(&mut self, p: &Piece) -> Option<Vec<f64>> {
        if self.remaining < p.evals() {
            return None;
        }
        self.remaining -= p.evals();
        let mut out = vec![0.0; self.m];
        p.apply(self.f, &mut out, &mut self.tmp);
        Some(out)
    }

    fn node(&mut self, piece: Piece, whole: &[f64]) -> Option<Node> {
        let mut kids = Vec::new();
        let mut fine = vec![0.0; self.m];
        for k in piece.split() {
            let v = self.eval(&k)?;
            fine.iter_mut().zip(&v).for_each(|(s, x)| *s += x);
            kids.push((k, v));
        }
        let err = whole.iter().zip(&fine).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        self.seq += 1;
        Some(Node { kids, fine, err, seq: self.seq })
    }
}

/// Integrate `f` (with `m` components) over the pieces to absolute tolerance
/// `tol` on the max-norm. Returns the values and the summed error estimate.
pub(crate) fn integrate_pieces(
    pieces: &[Piece],
    m: usize,
    f: &SphereFn,
    tol: f64,
    max_evals: usize,
) -> Result<(Vec<f64>, f64)> {
    let mut r = Refiner { f, m, tmp: vec![0.0; m], remaining: max_evals, seq: 0 };
    let mut heap = BinaryHeap::new();
    let over = || Error::QuadratureBudget { estimate: f64::INFINITY };
    for p in pieces {
        let whole = r.eval(p).ok_or_else(over)?;
        heap.push(r.node(*p, &whole).ok_or_else(over)?);
    }
    let mut total_err: f64 = heap.iter().map(|n| n.err).sum();
    while total_err > tol {
        let Some(top) = heap.pop() else { break };
        let mut children = Vec::with_capacity(top.kids.len());
        for (k, v) in &top.kids {
            match r.node(*k, v) {
                Some(n) => children.push(n),
                None => {
                    return Err(Error::QuadratureBudget { estimate: total_err });
                }
            }
        }
        heap.extend(children);
        // re-summed rather than updated, to avoid drift
        total_err = heap.iter().map(|n| n.err).sum();
    }
    let mut nodes = heap.into_vec();
    nodes.sort_by_key(|n| n.seq);
    let mut out = vec![0.0; m];
    for n in &nodes {
        out.iter_mut().zip(&n.fine).for_each(|(o, v)| *o += v);
    }
    Ok((out, total_err))
}

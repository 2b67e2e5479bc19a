//! Sections by planes, halfspaces and lines; intersections of polytopes.

use super::hull::plane_basis;
use super::polytope::{Constraint, Polytope, Shape};
use crate::error::{Error, Result};
use crate::Vec3;

/// The affine plane `{x : normal . x = offset}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub normal: Vec3,
    pub offset: f64,
}

impl Plane {
    /// Plane spanned by the orthonormal pair `(e1, e2)` at signed distance `offset`.
    pub fn from_frame(e1: &Vec3, e2: &Vec3, offset: f64) -> Result<Self> {
        let n = e1.cross(e2);
        if (n.norm() - 1.0).abs() > 1e-9 || e1.dot(e2).abs() > 1e-9 {
            return Err(Error::InvalidArgument("plane frame is not orthonormal".into()));
        }
        Ok(Self { normal: n, offset })
    }

    pub fn new(normal: Vec3, offset: f64) -> Result<Self> {
        let len = normal.norm();
        if !(len > 0.0) || !offset.is_finite() {
            return Err(Error::InvalidArgument("plane normal must be nonzero".into()));
        }
        Ok(Self { normal: normal / len, offset: offset / len })
    }
}

/// The halfspace `{x : normal . x <= offset}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Halfspace {
    pub normal: Vec3,
    pub offset: f64,
}

/// The line `{point + s dir}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub point: Vec3,
    pub dir: Vec3,
}

fn scale_tol(p: &Polytope, offset: f64) -> f64 {
    let r = p.vertices().iter().fold(0.0f64, |m, v| m.max(v.norm()));
    1e-12 * (1.0 + r + offset.abs())
}

/// Keep the vertices with `g(v) <= 0` (or `|g(v)| <= tol` when `on_plane`),
/// add the edge crossings of `g = 0`, and take the hull.
fn cut(p: &Polytope, normal: &Vec3, offset: f64, on_plane: bool) -> Polytope {
    if p.is_empty() {
        return Polytope::empty();
    }
    let tol = scale_tol(p, offset);
    let v = p.vertices();
    let g: Vec<f64> = v.iter().map(|x| normal.dot(x) - offset).collect();
    if !on_plane && g.iter().all(|&gi| gi <= tol) {
        return p.clone();
    }
    let mut pts: Vec<Vec3> = v
        .iter()
        .zip(&g)
        .filter(|(_, &gi)| if on_plane { gi.abs() <= tol } else { gi <= tol })
        .map(|(x, _)| *x)
        .collect();
    for e in p.edges() {
        let (ga, gb) = (g[e.a], g[e.b]);
        if (ga < -tol && gb > tol) || (ga > tol && gb < -tol) {
            let s = ga / (ga - gb);
            pts.push(v[e.a] + (v[e.b] - v[e.a]) * s);
        }
    }
    // hull of points found on a face of P cannot fail
    Polytope::from_points(&pts).unwrap_or_else(|_| Polytope::empty())
}

/// `P cap E` for a plane `E`.
pub fn slice_plane(p: &Polytope, e: &Plane) -> Polytope {
    cut(p, &e.normal, e.offset, true)
}

/// `P cap H` for a halfspace `H`.
pub fn slice_halfspace(p: &Polytope, h: &Halfspace) -> Polytope {
    cut(p, &h.normal, h.offset, false)
}

/// `P cap l` for a line `l`.
pub fn slice_line(p: &Polytope, l: &Line) -> Polytope {
    let d = l.dir.normalize();
    let (e1, e2) = plane_basis(&d);
    let q = slice_plane(p, &Plane { normal: e1, offset: e1.dot(&l.point) });
    slice_plane(&q, &Plane { normal: e2, offset: e2.dot(&l.point) })
}

/// `P cap Q` by successive cuts along the constraints of `Q`.
fn clip(p: &Polytope, q: &Polytope) -> Polytope {
    let mut out = p.clone();
    for c in q.constraints() {
        out = match c {
            Constraint::Le { normal, offset } => cut(&out, &normal, offset, false),
            Constraint::Eq { normal, offset } => cut(&out, &normal, offset, true),
        };
        if out.is_empty() {
            break;
        }
    }
    out
}

/// `K cap L`.
pub fn intersect(k: &Polytope, l: &Polytope) -> Polytope {
    if k.is_empty() || l.is_empty() {
        return Polytope::empty();
    }
    if let (Some((klo, khi)), Some((llo, lhi))) = (k.bounding_box(), l.bounding_box()) {
        let tol = 1e-12 * (1.0 + k.radius() + l.radius());
        for a in 0..3 {
            if klo[a] > lhi[a] + tol || llo[a] > khi[a] + tol {
                return Polytope::empty();
            }
        }
    }
    if k.shape() != Shape::Solid || l.shape() != Shape::Solid {
        return if k.shape() == Shape::Solid { clip(l, k) } else { clip(k, l) };
    }
    let tol = 1e-11 * (1.0 + k.centroid().norm() + k.radius() + l.centroid().norm() + l.radius());
    let mut pts: Vec<Vec3> = Vec::new();
    pts.extend(k.vertices().iter().filter(|v| l.contains(v, tol)));
    pts.extend(l.vertices().iter().filter(|v| k.contains(v, tol)));
    for (a, b) in [(k, l), (l, k)] {
        let va = a.vertices();
        for e in a.edges() {
            let (p0, p1) = (va[e.a], va[e.b]);
            for f in b.facets() {
                let (g0, g1) = (f.normal.dot(&p0) - f.offset, f.normal.dot(&p1) - f.offset);
                if (g0 < 0.0) != (g1 < 0.0) && g0 != g1 {
                    let x = p0 + (p1 - p0) * (g0 / (g0 - g1));
                    if a.contains(&x, tol) && b.contains(&x, tol) {
                        pts.push(x);
                    }
                }
            }
        }
    }
    Polytope::from_points(&pts).unwrap_or_else(|_| clip(k, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_sections() {
        let c = Polytope::unit_cube();
        let sq = slice_plane(&c, &Plane { normal: Vec3::z(), offset: 0.5 });
        assert_eq!(sq.shape(), Shape::Polygon);
        let iv = sq.intrinsic_volumes();
        assert!((iv.get(1) - 2.0).abs() < 1e-12 && (iv.get(2) - 1.0).abs() < 1e-12);
        let same = slice_halfspace(&c, &Halfspace { normal: Vec3::x(), offset: 1.0 });
        assert_eq!(same.vertices().len(), 8);
        assert!((same.volume() - 1.0).abs() < 1e-14);
        assert!(slice_plane(&c, &Plane { normal: Vec3::z(), offset: 2.0 }).is_empty());
        let face = slice_plane(&c, &Plane { normal: Vec3::z(), offset: 1.0 });
        assert_eq!(face.shape(), Shape::Polygon);
        let diag = slice_line(&c, &Line { point: Vec3::zeros(), dir: Vec3::repeat(1.0) });
        assert!((diag.intrinsic_volumes().get(1) - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hexagonal_section() {
        let c = Polytope::unit_cube();
        let n = Vec3::repeat(1.0).normalize();
        let h = slice_plane(&c, &Plane { normal: n, offset: n.dot(&Vec3::repeat(0.5)) });
        assert_eq!(h.vertices().len(), 6);
        // regular hexagon of side 1/sqrt 2
        assert!((h.intrinsic_volumes().get(2) - 3.0 * 3f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn cube_intersections() {
        let c = Polytope::unit_cube();
        let d = c.translated(&Vec3::new(0.5, 0.25, -0.5));
        let i = intersect(&c, &d);
        assert!((i.volume() - 0.5 * 0.75 * 0.5).abs() < 1e-13);
        let far = c.translated(&Vec3::new(3.0, 0.0, 0.0));
        assert!(intersect(&c, &far).is_empty());
        let touch = intersect(&c, &c.translated(&Vec3::x()));
        assert_eq!(touch.shape(), Shape::Polygon);
        let sq = slice_plane(&c, &Plane { normal: Vec3::z(), offset: 0.5 });
        let cut = intersect(&sq, &d);
        assert!((cut.intrinsic_volumes().get(2) - 0.5 * 0.75).abs() < 1e-13);
    }
}

//! Area measures `S_i(P, .)` of polytopes in `R^3`.
//!
//! `S_i(P, .) = C(2, i)^-1 sum_F vol_i(F) H(N(F) cap S^2)` over the `i`-faces
//! `F`; normal cones are stored exactly (facet normals, great-circle arcs,
//! spherical polygons).

use nalgebra::Matrix3;
use serde::{Serialize, Serializer};

use super::hull::plane_basis;
use super::polytope::{Polytope, Shape};
use super::sphere::{integrate_pieces, polygon_area, ArcGeom, Piece, SphereFn, DEFAULT_EVAL_BUDGET};
use crate::consts::binomial;
use crate::error::{Error, Result};
use crate::Vec3;

/// Point mass at a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalAtom {
    pub normal: Vec3,
    pub mass: f64,
}

/// Great-circle arc with constant linear density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcPiece {
    pub arc: ArcGeom,
    pub density: f64,
}

/// Convex spherical polygon (vertices in cyclic order) with constant density.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPiece {
    pub vertices: Vec<Vec3>,
    pub weight: f64,
}

/// Integral with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// A finite measure on `S^2` made of atoms, arcs and regions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AreaMeasure {
    pub degree: usize,
    pub atoms: Vec<NormalAtom>,
    pub arcs: Vec<ArcPiece>,
    pub regions: Vec<RegionPiece>,
}

fn hemisphere(pole: Vec3, weight: f64) -> Vec<RegionPiece> {
    let (e1, e2) = plane_basis(&pole);
    let ring = [e1, e2, -e1, -e2];
    (0..4)
        .map(|k| RegionPiece { vertices: vec![pole, ring[k], ring[(k + 1) % 4]], weight })
        .collect()
}

/// `S_i(P, .)` for `0 <= i <= 2`.
pub fn area_measure(p: &Polytope, i: usize) -> Result<AreaMeasure> {
    if i > 2 {
        return Err(Error::InvalidArgument(format!("area measure degree {i} outside 0..=2")));
    }
    let mut m = AreaMeasure { degree: i, ..Default::default() };
    let v = p.vertices();
    match (p.shape(), i) {
        (Shape::Empty, _) => {}
        (Shape::Point, 0) => {
            for pole in [Vec3::z(), -Vec3::z()] {
                m.regions.extend(hemisphere(pole, 1.0));
            }
        }
        (Shape::Segment, 0) => {
            let d = (v[1] - v[0]).normalize();
            m.regions.extend(hemisphere(d, 1.0));
            m.regions.extend(hemisphere(-d, 1.0));
        }
        (Shape::Segment, 1) => {
            let d = (v[1] - v[0]).normalize();
            let (e1, e2) = plane_basis(&d);
            let arc = ArcGeom { start: e1, tangent: e2, angle: 2.0 * std::f64::consts::PI };
            m.arcs.push(ArcPiece { arc, density: 0.5 * p.edge_length(&p.edges()[0]) });
        }
        (Shape::Polygon, 0) => {
            let nu = p.facets()[0].normal;
            let e = p.edges();
            let k = e.len();
            for j in 0..k {
                let m1 = p.polygon_edge_normal(&e[(j + k - 1) % k]);
                let m2 = p.polygon_edge_normal(&e[j]);
                m.regions.push(RegionPiece { vertices: vec![nu, m1, m2], weight: 1.0 });
                m.regions.push(RegionPiece { vertices: vec![-nu, m2, m1], weight: 1.0 });
            }
        }
        (Shape::Polygon, 1) => {
            let nu = p.facets()[0].normal;
            for e in p.edges() {
                let arc = ArcGeom { start: nu, tangent: p.polygon_edge_normal(e), angle: std::f64::consts::PI };
                m.arcs.push(ArcPiece { arc, density: 0.5 * p.edge_length(e) });
            }
        }
        (Shape::Polygon, 2) => {
            let f = &p.facets()[0];
            let area = p.facet_area(f);
            m.atoms.push(NormalAtom { normal: f.normal, mass: area });
            m.atoms.push(NormalAtom { normal: -f.normal, mass: area });
        }
        (Shape::Solid, 0) => {
            for j in 0..v.len() {
                m.regions.push(RegionPiece { vertices: p.vertex_cone(j), weight: 1.0 });
            }
        }
        (Shape::Solid, 1) => {
            for e in p.edges() {
                let (n1, n2) = (p.facets()[e.facets[0]].normal, p.facets()[e.facets[1]].normal);
                let arc = ArcGeom::between(&n1, &n2).expect("adjacent facets are not parallel");
                m.arcs.push(ArcPiece { arc, density: 0.5 * p.edge_length(e) });
            }
        }
        (Shape::Solid, 2) => {
            for f in p.facets() {
                m.atoms.push(NormalAtom { normal: f.normal, mass: p.facet_area(f) });
            }
        }
        // no faces of that dimension
        _ => {}
    }
    Ok(m)
}

/// `S_i(P + tB, .) = sum_(j <= i) t^(i-j) C(i, j) S_j(P, .)`.
pub fn steiner_area_measure(p: &Polytope, i: usize, t: f64) -> Result<AreaMeasure> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument(format!("parallel radius {t} must be non-negative")));
    }
    let mut out = AreaMeasure { degree: i, ..Default::default() };
    for j in 0..=i {
        let c = t.powi((i - j) as i32) * binomial(i, j);
        if c != 0.0 {
            out.absorb(&area_measure(p, j)?.scaled(c));
        }
    }
    out.degree = i;
    Ok(out)
}

impl AreaMeasure {
    pub fn total_mass(&self) -> f64 {
        let a: f64 = self.atoms.iter().map(|a| a.mass).sum();
        let l: f64 = self.arcs.iter().map(|a| a.density * a.arc.angle).sum();
        let r: f64 = self.regions.iter().map(|r| r.weight * polygon_area(&r.vertices)).sum();
        a + l + r
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.arcs.is_empty() && self.regions.is_empty()
    }

    /// Multiply every mass, density and weight by `c >= 0`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.atoms.iter_mut().for_each(|a| a.mass *= c);
        out.arcs.iter_mut().for_each(|a| a.density *= c);
        out.regions.iter_mut().for_each(|r| r.weight *= c);
        out
    }

    /// Add the pieces of `other` to `self`.
    pub fn absorb(&mut self, other: &AreaMeasure) {
        self.atoms.extend_from_slice(&other.atoms);
        self.arcs.extend_from_slice(&other.arcs);
        self.regions.extend(other.regions.iter().cloned());
    }

    /// Push-forward under the rotation `rot`.
    pub fn rotated(&self, rot: &Matrix3<f64>) -> Self {
        let mut out = self.clone();
        out.atoms.iter_mut().for_each(|a| a.normal = rot * a.normal);
        for a in &mut out.arcs {
            a.arc.start = rot * a.arc.start;
            a.arc.tangent = rot * a.arc.tangent;
        }
        for r in &mut out.regions {
            r.vertices.iter_mut().for_each(|v| *v = rot * *v);
        }
        out
    }

    fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for a in &self.arcs {
            if a.density != 0.0 && a.arc.angle > 0.0 {
                out.push(Piece::Arc { arc: a.arc, s0: 0.0, s1: a.arc.angle, weight: a.density });
            }
        }
        for r in &self.regions {
            if r.weight == 0.0 {
                continue;
            }
            for k in 1..r.vertices.len().saturating_sub(1) {
                let verts = [r.vertices[0], r.vertices[k], r.vertices[k + 1]];
                if verts[0].dot(&verts[1].cross(&verts[2])).abs() > 1e-15 {
                    out.push(Piece::Triangle { verts, weight: r.weight });
                }
            }
        }
        out
    }

    /// `int f dS_i` for `m` integrands at once, to absolute tolerance `tol`.
    pub fn integrate_many(&self, m: usize, f: &SphereFn, tol: f64) -> Result<(Vec<f64>, f64)> {
        self.integrate_many_budget(m, f, tol, DEFAULT_EVAL_BUDGET)
    }

    pub fn integrate_many_budget(
        &self,
        m: usize,
        f: &SphereFn,
        tol: f64,
        max_evals: usize,
    ) -> Result<(Vec<f64>, f64)> {
        let mut tmp = vec![0.0; m];
        let mut atoms = vec![0.0; m];
        for a in &self.atoms {
            f(&a.normal, &mut tmp);
            atoms.iter_mut().zip(&tmp).for_each(|(s, v)| *s += a.mass * v);
        }
        let pieces = self.pieces();
        if pieces.is_empty() {
            return Ok((atoms, 0.0));
        }
        let (mut v, e) = integrate_pieces(&pieces, m, f, tol, max_evals)?;
        v.iter_mut().zip(&atoms).for_each(|(s, a)| *s += a);
        Ok((v, e))
    }

    /// `int f dS_i` for an integrand that is smooth off the great circles
    /// `c . u = 0`, `c` in `cuts`: the measure is split along them first.
    pub fn integrate_cut(&self, f: impl Fn(&Vec3) -> f64, cuts: &[Vec3], tol: f64) -> Result<Integral> {
        let g = |u: &Vec3, out: &mut [f64]| out[0] = f(u);
        let mut atoms = 0.0;
        for a in &self.atoms {
            atoms += a.mass * f(&a.normal);
        }
        let mut pieces = self.pieces();
        for c in cuts {
            let mut next = Vec::with_capacity(pieces.len());
            pieces.iter().for_each(|p| p.cut(c, &mut next));
            pieces = next;
        }
        if pieces.is_empty() {
            return Ok(Integral { value: atoms, error: 0.0 });
        }
        let (v, e) = integrate_pieces(&pieces, 1, &g, tol, DEFAULT_EVAL_BUDGET)?;
        Ok(Integral { value: v[0] + atoms, error: e })
    }

    /// `int f dS_i` to absolute tolerance `tol`.
    pub fn integrate(&self, f: impl Fn(&Vec3) -> f64, tol: f64) -> Result<Integral> {
        let g = |u: &Vec3, out: &mut [f64]| out[0] = f(u);
        let (v, e) = self.integrate_many(1, &g, tol)?;
        Ok(Integral { value: v[0], error: e })
    }
}

#[derive(Serialize)]
struct AtomRepr {
    normal: [f64; 3],
    mass: f64,
}

#[derive(Serialize)]
struct ArcRepr {
    start: [f64; 3],
    end: [f64; 3],
    tangent: [f64; 3],
    angle: f64,
    density: f64,
}

#[derive(Serialize)]
struct RegionRepr {
    vertices: Vec<[f64; 3]>,
    weight: f64,
}

#[derive(Serialize)]
struct MeasureRepr {
    degree: usize,
    dimension: usize,
    atoms: Vec<AtomRepr>,
    arcs: Vec<ArcRepr>,
    regions: Vec<RegionRepr>,
    total_mass: f64,
}

fn arr(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

impl Serialize for AreaMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureRepr {
            degree: self.degree,
            dimension: 3,
            atoms: self.atoms.iter().map(|a| AtomRepr { normal: arr(&a.normal), mass: a.mass }).collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcRepr {
                    start: arr(&a.arc.start),
                    end: arr(&a.arc.end()),
                    tangent: arr(&a.arc.tangent),
                    angle: a.arc.angle,
                    density: a.density,
                })
                .collect(),
            regions: self
                .regions
                .iter()
                .map(|r| RegionRepr { vertices: r.vertices.iter().map(arr).collect(), weight: r.weight })
                .collect(),
            total_mass: self.total_mass(),
        }
        .serialize(s)
    }
}

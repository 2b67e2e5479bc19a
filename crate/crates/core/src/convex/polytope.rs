use std::f64::consts::PI;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::hull::{self, plane_basis, Hull};
use crate::error::{Error, Result};
use crate::Vec3;

/// Affine type of a polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Empty,
    Point,
    Segment,
    Polygon,
    Solid,
}

/// Facet with outward unit normal; vertices counter-clockwise seen from outside.
///
/// A polygon has a single facet whose normal orients it.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec3,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

/// Edge `a -> b`. For solids `facets[0]` traverses it as `a -> b`, `facets[1]`
/// as `b -> a`; for polygons and segments both entries are 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub facets: [usize; 2],
}

/// Convex polytope in `R^3` given by its vertices, with its face lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    shape: Shape,
    vertices: Vec<Vec3>,
    facets: Vec<Facet>,
    edges: Vec<Edge>,
}

/// A linear constraint `normal . x <= offset`, or equality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    Le { normal: Vec3, offset: f64 },
    Eq { normal: Vec3, offset: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntrinsicVolumes {
    pub v: [f64; 4],
}

impl IntrinsicVolumes {
    pub fn get(&self, j: usize) -> f64 {
        self.v[j]
    }

    /// Total mass `S_i(K, S^2) = 3 V(K[i], B[3-i]) = 3 kappa_(3-i) V_i / C(3, i)`.
    pub fn area_measure_mass(&self, i: usize) -> f64 {
        let k = [4.0 * PI / 3.0, PI, 2.0, 1.0];
        let c = [1.0, 3.0, 3.0, 1.0];
        3.0 * k[i] * self.v[i] / c[i]
    }

    /// `V(K + tB) = sum_j kappa_(3-j) V_j t^(3-j)`.
    pub fn parallel_volume(&self, t: f64) -> f64 {
        let k = [4.0 * PI / 3.0, PI, 2.0, 1.0];
        (0..4).map(|j| k[j] * self.v[j] * t.powi(3 - j as i32)).sum()
    }
}

impl Polytope {
    pub fn empty() -> Self {
        Self { shape: Shape::Empty, vertices: Vec::new(), facets: Vec::new(), edges: Vec::new() }
    }

    /// Convex hull of the given points.
    pub fn from_points(points: &[Vec3]) -> Result<Self> {
        Ok(match hull::hull(points)? {
            Hull::Empty => Self::empty(),
            Hull::Point(p) => Self { shape: Shape::Point, vertices: vec![p], facets: Vec::new(), edges: Vec::new() },
            Hull::Segment(a, b) => Self {
                shape: Shape::Segment,
                vertices: vec![a, b],
                facets: Vec::new(),
                edges: vec![Edge { a: 0, b: 1, facets: [0, 0] }],
            },
            Hull::Polygon { vertices, normal } => {
                let m = vertices.len();
                let offset = normal.dot(&vertices[0]);
                Self {
                    shape: Shape::Polygon,
                    facets: vec![Facet { normal, offset, vertices: (0..m).collect() }],
                    edges: (0..m).map(|i| Edge { a: i, b: (i + 1) % m, facets: [0, 0] }).collect(),
                    vertices,
                }
            }
            Hull::Solid { vertices, facets } => {
                let facets: Vec<Facet> = facets
                    .into_iter()
                    .map(|f| Facet { normal: f.normal, offset: f.offset, vertices: f.verts })
                    .collect();
                let mut edges = Vec::new();
                for (fi, f) in facets.iter().enumerate() {
                    let m = f.vertices.len();
                    for k in 0..m {
                        let (a, b) = (f.vertices[k], f.vertices[(k + 1) % m]);
                        if a < b {
                            let other = facets
                                .iter()
                                .enumerate()
                                .position(|(gi, g)| {
                                    gi != fi
                                        && (0..g.vertices.len()).any(|q| {
                                            g.vertices[q] == b && g.vertices[(q + 1) % g.vertices.len()] == a
                                        })
                                })
                                .expect("hull edges are paired");
                            edges.push(Edge { a, b, facets: [fi, other] });
                        }
                    }
                }
                Self { shape: Shape::Solid, vertices, facets, edges }
            }
        })
    }

    /// Axis-parallel box `[lo, hi]`.
    pub fn cuboid(lo: Vec3, hi: Vec3) -> Result<Self> {
        let mut pts = Vec::with_capacity(8);
        for x in [lo.x, hi.x] {
            for y in [lo.y, hi.y] {
                for z in [lo.z, hi.z] {
                    pts.push(Vec3::new(x, y, z));
                }
            }
        }
        Self::from_points(&pts)
    }

    /// `[0, 1]^3`.
    pub fn unit_cube() -> Self {
        Self::cuboid(Vec3::zeros(), Vec3::repeat(1.0)).expect("unit cube")
    }

    /// `conv{0, e1, e2, e3}`.
    pub fn standard_simplex() -> Self {
        Self::from_points(&[Vec3::zeros(), Vec3::x(), Vec3::y(), Vec3::z()]).expect("simplex")
    }

    /// `conv{+-e1, +-e2, +-e3}`.
    pub fn octahedron() -> Self {
        Self::from_points(&[Vec3::x(), -Vec3::x(), Vec3::y(), -Vec3::y(), Vec3::z(), -Vec3::z()])
            .expect("octahedron")
    }

    pub fn segment(a: Vec3, b: Vec3) -> Result<Self> {
        Self::from_points(&[a, b])
    }

    pub fn point(p: Vec3) -> Self {
        Self::from_points(&[p]).expect("point")
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_empty(&self) -> bool {
        self.shape == Shape::Empty
    }

    /// Affine dimension; `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        match self.shape {
            Shape::Empty => None,
            Shape::Point => Some(0),
            Shape::Segment => Some(1),
            Shape::Polygon => Some(2),
            Shape::Solid => Some(3),
        }
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `h_P(u) = max_v u . v`.
    pub fn support_function(&self, u: &Vec3) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        Ok(self.vertices.iter().map(|v| u.dot(v)).fold(f64::NEG_INFINITY, f64::max))
    }

    /// Image under `x -> rot x + shift`; `rot` must be orthogonal.
    pub fn transformed(&self, rot: &Matrix3<f64>, shift: &Vec3) -> Self {
        let det = rot.determinant();
        let mut out = self.clone();
        for v in out.vertices.iter_mut() {
            *v = rot * *v + shift;
        }
        for f in out.facets.iter_mut() {
            f.normal = rot * f.normal;
            f.offset = f.normal.dot(&out.vertices[f.vertices[0]]);
            if det < 0.0 && self.shape == Shape::Solid {
                f.vertices.reverse();
            }
        }
        if det < 0.0 && self.shape == Shape::Solid {
            for e in out.edges.iter_mut() {
                e.facets.swap(0, 1);
            }
        }
        out
    }

    pub fn translated(&self, shift: &Vec3) -> Self {
        self.transformed(&Matrix3::identity(), shift)
    }

    /// `lambda P` for `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        assert!(lambda > 0.0, "scale factor must be positive");
        let mut out = self.clone();
        for v in out.vertices.iter_mut() {
            *v *= lambda;
        }
        for f in out.facets.iter_mut() {
            f.offset *= lambda;
        }
        out
    }

    /// `-P`.
    pub fn reflected(&self) -> Self {
        self.transformed(&(-Matrix3::identity()), &Vec3::zeros())
    }

    pub fn centroid(&self) -> Vec3 {
        if self.vertices.is_empty() {
            return Vec3::zeros();
        }
        self.vertices.iter().fold(Vec3::zeros(), |a, v| a + v) / self.vertices.len() as f64
    }

    /// Radius of the smallest origin-centred ball containing `P`.
    pub fn radius(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn bounding_box(&self) -> Option<(Vec3, Vec3)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), v| (lo.inf(v), hi.sup(v))))
    }

    pub fn edge_length(&self, e: &Edge) -> f64 {
        (self.vertices[e.b] - self.vertices[e.a]).norm()
    }

    /// Area of a facet polygon (Newell).
    pub fn facet_area(&self, f: &Facet) -> f64 {
        let m = f.vertices.len();
        let mut s = Vec3::zeros();
        for k in 0..m {
            s += self.vertices[f.vertices[k]].cross(&self.vertices[f.vertices[(k + 1) % m]]);
        }
        0.5 * s.dot(&f.normal).abs()
    }

    pub fn volume(&self) -> f64 {
        if self.shape != Shape::Solid {
            return 0.0;
        }
        let c = self.centroid();
        let mut vol = 0.0;
        for f in &self.facets {
            let p0 = self.vertices[f.vertices[0]];
            for k in 1..f.vertices.len() - 1 {
                let (p1, p2) = (self.vertices[f.vertices[k]], self.vertices[f.vertices[k + 1]]);
                vol += (p0 - c).dot(&(p1 - c).cross(&(p2 - c))) / 6.0;
            }
        }
        vol
    }

    /// Sum of facet areas (twice the area for a polygon).
    pub fn surface_area(&self) -> f64 {
        match self.shape {
            Shape::Solid => self.facets.iter().map(|f| self.facet_area(f)).sum(),
            Shape::Polygon => 2.0 * self.facet_area(&self.facets[0]),
            _ => 0.0,
        }
    }

    /// In-plane outward unit normal of polygon edge `e`.
    pub(crate) fn polygon_edge_normal(&self, e: &Edge) -> Vec3 {
        let nu = self.facets[0].normal;
        (self.vertices[e.b] - self.vertices[e.a]).cross(&nu).normalize()
    }

    /// Facet normals around vertex `v` of a solid, in cyclic order.
    pub(crate) fn vertex_cone(&self, v: usize) -> Vec<Vec3> {
        let normals: Vec<Vec3> = self
            .facets
            .iter()
            .filter(|f| f.vertices.contains(&v))
            .map(|f| f.normal)
            .collect();
        let c = normals.iter().fold(Vec3::zeros(), |a, n| a + n).normalize();
        let (e1, e2) = plane_basis(&c);
        let mut keyed: Vec<(f64, Vec3)> = normals.into_iter().map(|n| (n.dot(&e2).atan2(n.dot(&e1)), n)).collect();
        keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        keyed.into_iter().map(|(_, n)| n).collect()
    }

    /// Exterior angle at an edge of a solid (angle between the facet normals).
    pub fn exterior_angle(&self, e: &Edge) -> f64 {
        let (n1, n2) = (self.facets[e.facets[0]].normal, self.facets[e.facets[1]].normal);
        n1.cross(&n2).norm().atan2(n1.dot(&n2))
    }

    /// H-representation: `P = {x : all constraints hold}`.
    pub fn constraints(&self) -> Vec<Constraint> {
        match self.shape {
            Shape::Empty => vec![
                Constraint::Le { normal: Vec3::x(), offset: -1.0 },
                Constraint::Le { normal: -Vec3::x(), offset: -1.0 },
            ],
            Shape::Point => {
                let p = self.vertices[0];
                vec![
                    Constraint::Eq { normal: Vec3::x(), offset: p.x },
                    Constraint::Eq { normal: Vec3::y(), offset: p.y },
                    Constraint::Eq { normal: Vec3::z(), offset: p.z },
                ]
            }
            Shape::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let d = (b - a).normalize();
                let (e1, e2) = plane_basis(&d);
                vec![
                    Constraint::Eq { normal: e1, offset: e1.dot(&a) },
                    Constraint::Eq { normal: e2, offset: e2.dot(&a) },
                    Constraint::Le { normal: d, offset: d.dot(&b) },
                    Constraint::Le { normal: -d, offset: -d.dot(&a) },
                ]
            }
            Shape::Polygon => {
                let f = &self.facets[0];
                let mut out = vec![Constraint::Eq { normal: f.normal, offset: f.offset }];
                for e in &self.edges {
                    let m = self.polygon_edge_normal(e);
                    out.push(Constraint::Le { normal: m, offset: m.dot(&self.vertices[e.a]) });
                }
                out
            }
            Shape::Solid => self
                .facets
                .iter()
                .map(|f| Constraint::Le { normal: f.normal, offset: f.offset })
                .collect(),
        }
    }

    /// Signed distance-type test with tolerance relative to the polytope size.
    pub fn contains(&self, x: &Vec3, tol: f64) -> bool {
        if self.is_empty() {
            return false;
        }
        self.constraints().iter().all(|c| match *c {
            Constraint::Le { normal, offset } => normal.dot(x) <= offset + tol,
            Constraint::Eq { normal, offset } => (normal.dot(x) - offset).abs() <= tol,
        })
    }

    /// `V_j = sum over j-faces F of vol_j(F) * (normal-cone solid angle) / omega_(3-j)`.
    pub fn intrinsic_volumes(&self) -> IntrinsicVolumes {
        let mut v = [0.0; 4];
        match self.shape {
            Shape::Empty => {}
            Shape::Point => v[0] = 1.0,
            Shape::Segment => {
                v[0] = 1.0;
                v[1] = (self.vertices[1] - self.vertices[0]).norm();
            }
            Shape::Polygon => {
                let area = self.facet_area(&self.facets[0]);
                let perimeter: f64 = self.edges.iter().map(|e| self.edge_length(e)).sum();
                v = [1.0, perimeter / 2.0, area, 0.0];
            }
            Shape::Solid => {
                let cones: f64 = (0..self.vertices.len())
                    .map(|i| super::sphere::polygon_area(&self.vertex_cone(i)))
                    .sum();
                v[0] = cones / (4.0 * PI);
                v[1] = self.edges.iter().map(|e| self.edge_length(e) * self.exterior_angle(e)).sum::<f64>()
                    / (2.0 * PI);
                v[2] = self.surface_area() / 2.0;
                v[3] = self.volume();
            }
        }
        IntrinsicVolumes { v }
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeRepr {
    dimension: usize,
    vertices: Vec<[f64; 3]>,
}

impl Serialize for Polytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeRepr { dimension: 3, vertices: self.vertices.iter().map(|v| [v.x, v.y, v.z]).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PolytopeRepr::deserialize(d)?;
        if r.dimension != 3 {
            return Err(serde::de::Error::custom(format!(
                "only dimension 3 polytopes are supported, got {}",
                r.dimension
            )));
        }
        let pts: Vec<Vec3> = r.vertices.iter().map(|v| Vec3::new(v[0], v[1], v[2])).collect();
        Polytope::from_points(&pts).map_err(serde::de::Error::custom)
    }
}

//! Convex hulls in `R^3` with tolerance-based degeneracy handling.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::Vec3;

/// Relative tolerance for coincidence, collinearity and coplanarity.
pub const HULL_TOL: f64 = 1e-10;

/// Facet normals closer than this are merged.
const NORMAL_MERGE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub(crate) struct RawFacet {
    pub normal: Vec3,
    pub offset: f64,
    /// Counter-clockwise seen from outside.
    pub verts: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) enum Hull {
    Empty,
    Point(Vec3),
    Segment(Vec3, Vec3),
    /// Counter-clockwise around `normal`.
    Polygon { vertices: Vec<Vec3>, normal: Vec3 },
    Solid { vertices: Vec<Vec3>, facets: Vec<RawFacet> },
}

fn scale_of(points: &[Vec3]) -> f64 {
    let c = points.iter().fold(Vec3::zeros(), |a, p| a + p) / points.len() as f64;
    points.iter().map(|p| (p - c).norm()).fold(0.0, f64::max)
}

fn dedupe(points: &[Vec3], tol: f64) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| (p - q).norm() <= tol) {
            out.push(*p);
        }
    }
    out
}

fn argmax(points: &[Vec3], f: impl Fn(&Vec3) -> f64) -> (usize, f64) {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, p) in points.iter().enumerate() {
        let v = f(p);
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

/// Orthonormal basis `(e1, e2)` of the plane with unit normal `n`, with `e1 x e2 = n`.
pub(crate) fn plane_basis(n: &Vec3) -> (Vec3, Vec3) {
    let helper = if n.x.abs() < 0.6 { Vec3::x() } else { Vec3::y() };
    let e1 = (helper - n * n.dot(&helper)).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

/// Andrew's monotone chain on 2D points; returns indices counter-clockwise,
/// dropping points within `tol` of the line through their neighbours.
pub(crate) fn monotone_chain(pts: &[(f64, f64)], tol: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| {
        pts[a]
            .0
            .partial_cmp(&pts[b].0)
            .unwrap()
            .then(pts[a].1.partial_cmp(&pts[b].1).unwrap())
    });
    if idx.len() < 3 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| {
        (pts[a].0 - pts[o].0) * (pts[b].1 - pts[o].1) - (pts[a].1 - pts[o].1) * (pts[b].0 - pts[o].0)
    };
    let dist = |a: usize, b: usize| ((pts[a].0 - pts[b].0).powi(2) + (pts[a].1 - pts[b].1).powi(2)).sqrt();
    let chain = |order: &mut dyn Iterator<Item = usize>| {
        let mut h: Vec<usize> = Vec::new();
        for p in order {
            while h.len() >= 2 {
                let (o, a) = (h[h.len() - 2], h[h.len() - 1]);
                if cross(o, a, p) <= tol * dist(o, p) {
                    h.pop();
                } else {
                    break;
                }
            }
            h.push(p);
        }
        h.pop();
        h
    };
    let mut lower = chain(&mut idx.iter().copied());
    let upper = chain(&mut idx.iter().rev().copied());
    lower.extend(upper);
    lower
}

/// Convex hull of a point cloud, classified by affine dimension.
pub(crate) fn hull(points: &[Vec3]) -> Result<Hull> {
    if points.is_empty() {
        return Ok(Hull::Empty);
    }
    if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
        return Err(Error::InvalidArgument("non-finite vertex coordinate".into()));
    }
    let scale = scale_of(points);
    let tol = HULL_TOL * scale.max(f64::MIN_POSITIVE);
    let pts = dedupe(points, tol);
    let p0 = pts[0];
    let (i1, d1) = argmax(&pts, |p| (p - p0).norm());
    if d1 <= tol {
        return Ok(Hull::Point(p0));
    }
    let p1 = pts[i1];
    let dir = (p1 - p0) / d1;
    let (i2, d2) = argmax(&pts, |p| {
        let v = p - p0;
        (v - dir * v.dot(&dir)).norm()
    });
    if d2 <= tol {
        let (lo, _) = argmax(&pts, |p| -p.dot(&dir));
        let (hi, _) = argmax(&pts, |p| p.dot(&dir));
        return Ok(Hull::Segment(pts[lo], pts[hi]));
    }
    let p2 = pts[i2];
    let normal = (p1 - p0).cross(&(p2 - p0)).normalize();
    let (i3, d3) = argmax(&pts, |p| (p - p0).dot(&normal).abs());
    if d3 <= tol {
        let (e1, e2) = plane_basis(&normal);
        let flat: Vec<(f64, f64)> = pts.iter().map(|p| ((p - p0).dot(&e1), (p - p0).dot(&e2))).collect();
        let order = monotone_chain(&flat, tol);
        return Ok(Hull::Polygon { vertices: order.iter().map(|&i| pts[i]).collect(), normal });
    }
    match incremental(&pts, [0, i1, i2, i3], tol).and_then(|tris| assemble(&pts, &tris, tol)) {
        Some(h) => Ok(h),
        None => brute_force(&pts, tol)
            .and_then(|tris| assemble(&pts, &tris, tol))
            .ok_or_else(|| Error::InvalidArgument("convex hull construction failed".into())),
    }
}

#[derive(Clone)]
struct Tri {
    v: [usize; 3],
    normal: Vec3,
    offset: f64,
    alive: bool,
}

fn make_tri(pts: &[Vec3], v: [usize; 3]) -> Tri {
    let n = (pts[v[1]] - pts[v[0]]).cross(&(pts[v[2]] - pts[v[0]]));
    let normal = n / n.norm();
    Tri { v, normal, offset: normal.dot(&pts[v[0]]), alive: true }
}

fn incremental(pts: &[Vec3], seed: [usize; 4], tol: f64) -> Option<Vec<[usize; 3]>> {
    let centre = seed.iter().fold(Vec3::zeros(), |a, &i| a + pts[i]) / 4.0;
    let mut tris: Vec<Tri> = Vec::new();
    for skip in 0..4 {
        let mut v: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| seed[i]).collect();
        let mut t = make_tri(pts, [v[0], v[1], v[2]]);
        if t.normal.dot(&centre) - t.offset > 0.0 {
            v.swap(1, 2);
            t = make_tri(pts, [v[0], v[1], v[2]]);
        }
        tris.push(t);
    }
    for (pi, p) in pts.iter().enumerate() {
        if seed.contains(&pi) {
            continue;
        }
        let visible: Vec<usize> = (0..tris.len())
            .filter(|&f| tris[f].alive && tris[f].normal.dot(p) - tris[f].offset > tol)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        let mut ordered: Vec<(usize, usize)> = Vec::new();
        for &f in &visible {
            let v = tris[f].v;
            for k in 0..3 {
                edges.insert((v[k], v[(k + 1) % 3]));
                ordered.push((v[k], v[(k + 1) % 3]));
            }
            tris[f].alive = false;
        }
        let horizon: Vec<(usize, usize)> =
            ordered.into_iter().filter(|(a, b)| !edges.contains(&(*b, *a))).collect();
        for (a, b) in horizon {
            let t = make_tri(pts, [a, b, pi]);
            if !t.normal.iter().all(|c| c.is_finite()) {
                return None;
            }
            tris.push(t);
        }
    }
    Some(tris.into_iter().filter(|t| t.alive).map(|t| t.v).collect())
}

/// Facet enumeration by testing every triple; `O(N^4)`, used as a fallback
/// and as a reference.
fn brute_force(pts: &[Vec3], tol: f64) -> Option<Vec<[usize; 3]>> {
    let n = pts.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let nrm = (pts[b] - pts[a]).cross(&(pts[c] - pts[a]));
                let len = nrm.norm();
                if len <= tol * tol {
                    continue;
                }
                let nrm = nrm / len;
                let off = nrm.dot(&pts[a]);
                let (mut above, mut below) = (false, false);
                for p in pts {
                    let d = nrm.dot(p) - off;
                    above |= d > tol;
                    below |= d < -tol;
                }
                match (above, below) {
                    (false, true) => out.push([a, b, c]),
                    (true, false) => out.push([a, c, b]),
                    _ => {}
                }
            }
        }
    }
    (!out.is_empty()).then_some(out)
}

/// Outward facet planes of the hull by exhaustive search (reference implementation).
pub fn facet_planes_brute_force(points: &[Vec3]) -> Vec<(Vec3, f64)> {
    let tol = HULL_TOL * scale_of(points).max(f64::MIN_POSITIVE);
    let pts = dedupe(points, tol);
    let mut planes: Vec<(Vec3, f64)> = Vec::new();
    for t in brute_force(&pts, tol).unwrap_or_default() {
        let tri = make_tri(&pts, t);
        if !planes.iter().any(|(n, _)| (n - tri.normal).norm() < 1e-7) {
            planes.push((tri.normal, tri.offset));
        }
    }
    planes
}

/// Merge coplanar triangles into facets, drop non-vertices, check edge pairing.
fn assemble(pts: &[Vec3], tris: &[[usize; 3]], tol: f64) -> Option<Hull> {
    let tris: Vec<Tri> = tris.iter().map(|&v| make_tri(pts, v)).collect();
    let m = tris.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut i = i;
        while p[i] != r {
            let next = p[i];
            p[i] = r;
            i = next;
        }
        r
    }
    for f in 0..m {
        for g in f + 1..m {
            if (tris[g].normal - tris[f].normal).norm() <= NORMAL_MERGE
                && (tris[g].offset - tris[f].offset).abs() <= 10.0 * tol
            {
                let (ra, rb) = (find(&mut parent, f), find(&mut parent, g));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for f in 0..m {
        let r = find(&mut parent, f);
        groups.entry(r).or_default().push(f);
    }
    let mut keys: Vec<usize> = groups.keys().copied().collect();
    keys.sort_unstable();
    let mut facets: Vec<RawFacet> = Vec::new();
    for key in keys {
        let members = &groups[&key];
        let mut normal = Vec3::zeros();
        let mut verts: Vec<usize> = Vec::new();
        for &f in members {
            let t = &tris[f];
            let area_n = (pts[t.v[1]] - pts[t.v[0]]).cross(&(pts[t.v[2]] - pts[t.v[0]]));
            normal += area_n;
            for v in t.v {
                if !verts.contains(&v) {
                    verts.push(v);
                }
            }
        }
        let normal = normal.normalize();
        let offset = verts.iter().map(|&v| normal.dot(&pts[v])).sum::<f64>() / verts.len() as f64;
        let (e1, e2) = plane_basis(&normal);
        let flat: Vec<(f64, f64)> = verts.iter().map(|&v| (pts[v].dot(&e1), pts[v].dot(&e2))).collect();
        let order = monotone_chain(&flat, tol);
        facets.push(RawFacet { normal, offset, verts: order.iter().map(|&i| verts[i]).collect() });
    }
    // a vertex of a 3-polytope lies on at least three facets
    loop {
        let mut count: HashMap<usize, usize> = HashMap::new();
        for f in &facets {
            for &v in &f.verts {
                *count.entry(v).or_default() += 1;
            }
        }
        let weak: HashSet<usize> = count.iter().filter(|(_, &c)| c < 3).map(|(&v, _)| v).collect();
        if weak.is_empty() {
            break;
        }
        for f in facets.iter_mut() {
            f.verts.retain(|v| !weak.contains(v));
        }
        facets.retain(|f| f.verts.len() >= 3);
    }
    if facets.len() < 4 {
        return None;
    }
    let mut directed: HashSet<(usize, usize)> = HashSet::new();
    for f in &facets {
        for k in 0..f.verts.len() {
            if !directed.insert((f.verts[k], f.verts[(k + 1) % f.verts.len()])) {
                return None;
            }
        }
    }
    if directed.iter().any(|(a, b)| !directed.contains(&(*b, *a))) {
        return None;
    }
    // reindex
    let mut used: Vec<usize> = facets.iter().flat_map(|f| f.verts.iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for f in facets.iter_mut() {
        for v in f.verts.iter_mut() {
            *v = remap[v];
        }
    }
    let vertices = used.iter().map(|&v| pts[v]).collect();
    Some(Hull::Solid { vertices, facets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_points() -> Vec<Vec3> {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        v
    }

    #[test]
    fn cube_has_six_square_facets() {
        let mut pts = cube_points();
        pts.push(Vec3::new(0.5, 0.5, 0.5));
        pts.push(Vec3::new(0.5, 0.0, 0.0));
        pts.push(Vec3::new(0.5, 0.5, 1.0));
        match hull(&pts).unwrap() {
            Hull::Solid { vertices, facets } => {
                assert_eq!(vertices.len(), 8);
                assert_eq!(facets.len(), 6);
                assert!(facets.iter().all(|f| f.verts.len() == 4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classifies_lower_dimensions() {
        assert!(matches!(hull(&[]).unwrap(), Hull::Empty));
        let p = Vec3::new(1.0, 2.0, 3.0);
        assert!(matches!(hull(&[p, p]).unwrap(), Hull::Point(_)));
        let seg = [p, p + Vec3::x(), p + 0.5 * Vec3::x()];
        match hull(&seg).unwrap() {
            Hull::Segment(a, b) => assert!(((a - b).norm() - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        let sq = [
            Vec3::new(0.0, 0.0, 0.5),
            Vec3::new(1.0, 0.0, 0.5),
            Vec3::new(1.0, 1.0, 0.5),
            Vec3::new(0.0, 1.0, 0.5),
            Vec3::new(0.5, 0.0, 0.5),
            Vec3::new(0.5, 0.5, 0.5),
        ];
        match hull(&sq).unwrap() {
            Hull::Polygon { vertices, .. } => assert_eq!(vertices.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn brute_force_agrees_on_octahedron() {
        let pts = vec![
            Vec3::x(),
            -Vec3::x(),
            Vec3::y(),
            -Vec3::y(),
            Vec3::z(),
            -Vec3::z(),
        ];
        let planes = facet_planes_brute_force(&pts);
        assert_eq!(planes.len(), 8);
        match hull(&pts).unwrap() {
            Hull::Solid { facets, .. } => {
                assert_eq!(facets.len(), 8);
                for f in &facets {
                    assert!(planes.iter().any(|(n, o)| (n - f.normal).norm() < 1e-12 && (o - f.offset).abs() < 1e-12));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

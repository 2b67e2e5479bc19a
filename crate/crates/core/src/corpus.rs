//! Named test bodies and the on-disk corpus.
//!
//! Bodies are stored as `{"dimension": 3, "vertices": [[x, y, z], ...]}`.
//! The corpus directory is `$MINKVAL_DATA`, falling back to the `data`
//! directory shipped with this crate.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::convex::{Plane, Polytope};
use crate::error::{Error, Result};
use crate::harmonics::{AmbientDim, LegendreSeries};
use crate::valuation::MinkowskiValuationSpec;
use crate::zonal::ZonalObject;
use crate::Vec3;

pub const DATA_ENV: &str = "MINKVAL_DATA";

/// Number of random hulls in the standard corpus.
pub const RANDOM_HULLS: usize = 20;

pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")),
    }
}

/// Hull of `npts` points: Gaussian directions pushed to radii in `[0.5, 1.5]`.
pub fn random_hull(seed: u64, npts: usize) -> Result<Polytope> {
    if npts < 4 {
        return Err(Error::InvalidArgument(format!("a solid hull needs at least 4 points, got {npts}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec3> = (0..npts)
        .map(|_| {
            let g = Vec3::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal));
            let r: f64 = 0.5 + rng.random::<f64>();
            g.normalize() * r
        })
        .collect();
    Polytope::from_points(&pts)
}

/// Inscribed polytope of the unit ball: an icosahedron subdivided `level` times.
pub fn ball_proxy(level: usize) -> Result<Polytope> {
    let p = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v: Vec<Vec3> = [
        (-1.0, p, 0.0), (1.0, p, 0.0), (-1.0, -p, 0.0), (1.0, -p, 0.0),
        (0.0, -1.0, p), (0.0, 1.0, p), (0.0, -1.0, -p), (0.0, 1.0, -p),
        (p, 0.0, -1.0), (p, 0.0, 1.0), (-p, 0.0, -1.0), (-p, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vec3::new(x, y, z).normalize())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mid = std::collections::BTreeMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        let mut midpoint = |a: usize, b: usize, v: &mut Vec<Vec3>| -> usize {
            *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
                v.push(((v[a] + v[b]) / 2.0).normalize());
                v.len() - 1
            })
        };
        for [a, b, c] in faces {
            let (ab, bc, ca) = (midpoint(a, b, &mut v), midpoint(b, c, &mut v), midpoint(c, a, &mut v));
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    Polytope::from_points(&v)
}

/// Legendre coefficients `c_k ~ N(0, 1) / (1 + k)^2` for `k <= degree`,
/// with `c_1 = 0` when `centered`.
pub fn random_legendre_coeffs<R: Rng + ?Sized>(rng: &mut R, degree: usize, centered: bool) -> Vec<f64> {
    (0..=degree)
        .map(|k| {
            let g: f64 = rng.sample(StandardNormal);
            if k == 1 && centered {
                0.0
            } else {
                g / ((1 + k) * (1 + k)) as f64
            }
        })
        .collect()
}

/// Smooth zonal profile with random decaying Legendre coefficients.
pub fn random_zonal_series<R: Rng + ?Sized>(rng: &mut R, n: AmbientDim, degree: usize, centered: bool) -> LegendreSeries {
    LegendreSeries::new(n, random_legendre_coeffs(rng, degree, centered))
}

/// A spec in `R^3` with random constants and random polynomial densities in
/// degrees 1 and 2 (the latter plus a multiple of `|t| / 2`).
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, kmax: usize) -> Result<MinkowskiValuationSpec> {
    let n = AmbientDim::THREE;
    let mut spec = MinkowskiValuationSpec::zero(n);
    spec.c0 = rng.random_range(-1.0..1.0);
    spec.cn = rng.random_range(-1.0..1.0);
    let mu = ZonalObject::legendre(n, random_legendre_coeffs(rng, 6, true), kmax)?;
    spec.set_piece(1, Some(mu))?;
    let top = ZonalObject::legendre(n, random_legendre_coeffs(rng, 6, true), kmax)?
        .add(&ZonalObject::abs_half(n, kmax).scale(rng.random()))?;
    spec.set_piece(2, Some(top))?;
    Ok(spec)
}

/// Plane with a Gaussian normal and an offset uniform between the extreme
/// values of the normal over `p`, so that it usually cuts `p`.
pub fn random_cutting_plane<R: Rng + ?Sized>(rng: &mut R, p: &Polytope) -> Result<Plane> {
    let g = Vec3::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal));
    let u = g.try_normalize(1e-12).unwrap_or_else(Vec3::z);
    let lo = -p.support_function(&-u)?;
    let hi = p.support_function(&u)?;
    Plane::new(u, lo + rng.random::<f64>() * (hi - lo))
}

/// Built-in bodies: `cube`, `simplex`, `octahedron`, `ball_proxy[:level]`,
/// `random_hull:seed[:npts]`.
pub fn builtin_body(name: &str) -> Result<Polytope> {
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or("");
    let args: Vec<u64> = parts
        .map(|a| a.parse().map_err(|_| Error::Parse(format!("bad argument {a:?} in body name {name:?}"))))
        .collect::<Result<_>>()?;
    match (head, args.as_slice()) {
        ("cube", []) => Ok(Polytope::unit_cube()),
        ("simplex", []) => Ok(Polytope::standard_simplex()),
        ("octahedron", []) => Ok(Polytope::octahedron()),
        ("ball_proxy", []) => ball_proxy(2),
        ("ball_proxy", [l]) if *l <= 5 => ball_proxy(*l as usize),
        ("random_hull", [s]) => random_hull(*s, 12),
        ("random_hull", [s, n]) => random_hull(*s, *n as usize),
        _ => Err(Error::Parse(format!("unknown body {name:?}"))),
    }
}

pub fn parse_body(text: &str) -> Result<Polytope> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_body(path: &Path) -> Result<Polytope> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_body(&text)
}

/// Resolve a body given as a file path, a file in the corpus directory, or a builtin name.
pub fn load_body(spec: &str) -> Result<Polytope> {
    let direct = Path::new(spec);
    if direct.is_file() {
        return read_body(direct);
    }
    let in_corpus = data_dir().join(spec);
    if in_corpus.is_file() {
        return read_body(&in_corpus);
    }
    let with_ext = data_dir().join(format!("{spec}.json"));
    if with_ext.is_file() {
        return read_body(&with_ext);
    }
    builtin_body(spec.trim_end_matches(".json"))
}

/// Cube, simplex, octahedron and the seeded random hulls, by name.
pub fn standard_corpus() -> Result<Vec<(String, Polytope)>> {
    let mut out = vec![
        ("cube".to_string(), Polytope::unit_cube()),
        ("simplex".to_string(), Polytope::standard_simplex()),
        ("octahedron".to_string(), Polytope::octahedron()),
    ];
    for s in 0..RANDOM_HULLS as u64 {
        out.push((format!("random_hull_{s:02}"), random_hull(s, 8 + (s as usize % 5) * 3)?));
    }
    Ok(out)
}

/// Write the standard corpus and the ball proxy as JSON files into `dir`.
pub fn write_corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    let mut bodies = standard_corpus()?;
    bodies.push(("ball_proxy".to_string(), ball_proxy(2)?));
    let mut written = Vec::new();
    for (name, p) in bodies {
        let path = dir.join(format!("{name}.json"));
        let text = serde_json::to_string_pretty(&p)?;
        std::fs::write(&path, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}

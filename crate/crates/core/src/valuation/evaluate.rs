//! Support functions `h(Phi K, u)` from the generating data.

use serde::Serialize;

use super::MinkowskiValuationSpec;
use crate::convex::{
    slice_halfspace, slice_plane, AreaMeasure, ConvexBody, Halfspace, ParallelBody, Plane, Polytope,
};
use crate::error::{Error, Result};
use crate::harmonics::{harmonic_dimension_f64, LegendreTable};
use crate::zonal::{DensityTerm, ZonalObject};
use crate::Vec3;

/// Default band limit of the spectral path.
pub const DEFAULT_BAND: usize = 16;
/// Default absolute quadrature tolerance per area-measure integral.
pub const DEFAULT_EVAL_TOL: f64 = 1e-10;

/// How the convolutions `S_i(K, .) * mu_i` are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Pointwise when every datum has a density, spectral otherwise.
    Auto,
    /// Integrate the density profiles against the area measures.
    Pointwise,
    /// Sum the Funk-Hecke series up to degree `band`.
    Spectral { band: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportSample {
    pub direction: [f64; 3],
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportFunctionResult {
    pub path: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<usize>,
    pub samples: Vec<SupportSample>,
    /// Spectral path: size of the last two retained bands, a proxy for the tail.
    /// Pointwise path: profile truncation bar times the measure mass.
    pub truncation: f64,
}

impl SupportFunctionResult {
    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value).collect()
    }
}

fn pointwise_ok(spec: &MinkowskiValuationSpec) -> bool {
    spec.pieces().iter().all(|(_, o)| o.is_pointwise())
}

/// Integrate `obj(u_d . v)` against `meas` for every direction `u_d`.
fn pointwise_piece(obj: &ZonalObject, meas: &AreaMeasure, dirs: &[Vec3], tol: f64) -> Result<(Vec<f64>, f64)> {
    let prof = obj.profile()?;
    if obj.density_terms().iter().any(|t| matches!(t, DensityTerm::AbsHalf { .. })) {
        // |t| has a kink on the great circle orthogonal to each direction
        let mut vals = Vec::with_capacity(dirs.len());
        let mut err: f64 = 0.0;
        for u in dirs {
            let r = meas.integrate_cut(|v| prof.eval(u.dot(v)), std::slice::from_ref(u), tol)?;
            vals.push(r.value);
            err = err.max(r.error);
        }
        return Ok((vals, err));
    }
    let f = |v: &Vec3, out: &mut [f64]| {
        for (o, u) in out.iter_mut().zip(dirs) {
            *o = prof.eval(u.dot(v));
        }
    };
    meas.integrate_many(dirs.len(), &f, tol)
}

/// Integrate the degree-`band` Funk-Hecke series of `obj` against `meas`.
fn spectral_piece(
    obj: &ZonalObject,
    meas: &AreaMeasure,
    dirs: &[Vec3],
    band: usize,
    tol: f64,
) -> Result<(Vec<f64>, f64, f64)> {
    if band > obj.kmax() {
        return Err(Error::DegreeOutOfRange { degree: band, kmax: obj.kmax() });
    }
    let n = obj.n();
    let w = n.sphere_area();
    let coeffs: Vec<f64> = (0..=band)
        .map(|k| obj.multipliers().values[k] * harmonic_dimension_f64(n.get(), k) / w)
        .collect();
    let table = LegendreTable::new(n, band);
    let buf = std::cell::RefCell::new(vec![0.0; band + 1]);
    let f = |v: &Vec3, out: &mut [f64]| {
        let mut p = buf.borrow_mut();
        for (o, u) in out.iter_mut().zip(dirs) {
            table.fill(u.dot(v).clamp(-1.0, 1.0), &mut p);
            *o = coeffs.iter().zip(p.iter()).map(|(c, p)| c * p).sum();
        }
    };
    let (vals, err) = meas.integrate_many(dirs.len(), &f, tol)?;
    let tail = coeffs.iter().rev().take(2).map(|c| c.abs()).sum::<f64>() * meas.total_mass();
    Ok((vals, err, tail))
}

/// `h(Phi K, u)` for each direction.
pub fn evaluate(
    spec: &MinkowskiValuationSpec,
    body: &dyn ConvexBody,
    dirs: &[Vec3],
    mode: EvalMode,
) -> Result<SupportFunctionResult> {
    evaluate_tol(spec, body, dirs, mode, DEFAULT_EVAL_TOL)
}

pub fn evaluate_tol(
    spec: &MinkowskiValuationSpec,
    body: &dyn ConvexBody,
    dirs: &[Vec3],
    mode: EvalMode,
    tol: f64,
) -> Result<SupportFunctionResult> {
    if spec.n.get() != 3 {
        return Err(Error::Unsupported(format!(
            "geometric evaluation is implemented for n = 3, not n = {}",
            spec.n
        )));
    }
    let dirs: Vec<Vec3> = dirs
        .iter()
        .map(|u| {
            let len = u.norm();
            if !(len > 0.0) || !len.is_finite() {
                Err(Error::InvalidArgument("direction must be a nonzero vector".into()))
            } else {
                Ok(u / len)
            }
        })
        .collect::<Result<_>>()?;
    let mode = match mode {
        EvalMode::Auto if pointwise_ok(spec) => EvalMode::Pointwise,
        EvalMode::Auto => EvalMode::Spectral { band: DEFAULT_BAND },
        m => m,
    };
    let (path, band) = match mode {
        EvalMode::Spectral { band } => ("spectral", Some(band)),
        _ => ("pointwise", None),
    };
    let mut values = vec![0.0; dirs.len()];
    let mut errors = vec![0.0; dirs.len()];
    let mut truncation = 0.0;
    if !body.is_empty() {
        let constant = spec.c0 + spec.cn * body.volume();
        values.iter_mut().for_each(|v| *v = constant);
        for (i, obj) in spec.pieces() {
            if obj.multipliers().values.iter().all(|v| *v == 0.0) {
                continue;
            }
            let meas = body.area_measure(i)?;
            if meas.is_zero() {
                continue;
            }
            let (vals, err) = match mode {
                EvalMode::Spectral { band } => {
                    let (v, e, tail) = spectral_piece(obj, &meas, &dirs, band, tol)?;
                    truncation += tail;
                    (v, e)
                }
                _ => {
                    if !obj.is_pointwise() {
                        return Err(Error::NotPointwise(format!(
                            "degree-{i} datum has no density; use the spectral path"
                        )));
                    }
                    let (v, e) = pointwise_piece(obj, &meas, &dirs, tol)?;
                    truncation += obj.profile_error() * meas.total_mass();
                    (v, e)
                }
            };
            values.iter_mut().zip(&vals).for_each(|(a, b)| *a += b);
            errors.iter_mut().for_each(|a| *a += err);
        }
    }
    let samples = dirs
        .iter()
        .zip(values.iter().zip(&errors))
        .map(|(u, (v, e))| SupportSample { direction: [u.x, u.y, u.z], value: *v, error: *e })
        .collect();
    Ok(SupportFunctionResult { path, band, samples, truncation })
}

/// `h(Phi K, u)` at a single direction.
pub fn evaluate_at(spec: &MinkowskiValuationSpec, body: &dyn ConvexBody, u: &Vec3, mode: EvalMode) -> Result<f64> {
    Ok(evaluate(spec, body, std::slice::from_ref(u), mode)?.samples[0].value)
}

/// One-sided finite difference of `t -> h(Phi(P + tB), u)` at `t = 0`,
/// with the stencil `(-11 f0 + 18 f1 - 9 f2 + 2 f3) / 6h` (exact for cubics,
/// hence for the Steiner polynomial when `n = 3`).
pub fn steiner_derivative(
    spec: &MinkowskiValuationSpec,
    p: &Polytope,
    dirs: &[Vec3],
    h: f64,
    mode: EvalMode,
) -> Result<Vec<f64>> {
    let mut f = Vec::with_capacity(4);
    for s in 0..4 {
        let body = ParallelBody { polytope: p.clone(), radius: s as f64 * h };
        f.push(evaluate(spec, &body, dirs, mode)?.values());
    }
    Ok((0..dirs.len())
        .map(|d| (-11.0 * f[0][d] + 18.0 * f[1][d] - 9.0 * f[2][d] + 2.0 * f[3][d]) / (6.0 * h))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    /// `sup_u |h(Phi K) + h(Phi L) - h(Phi P) - h(Phi(K cap L))|`.
    pub residual: f64,
    /// The plane misses the interior of `P`, so one side is `P` itself.
    pub degenerate: bool,
    pub directions: usize,
}

/// Check `Phi(K) + Phi(L) = Phi(K cup L) + Phi(K cap L)` with `K, L` the two
/// sides of `P` cut by `plane`, through support functions at `dirs`.
pub fn valuation_identity_check(
    spec: &MinkowskiValuationSpec,
    p: &Polytope,
    plane: &Plane,
    dirs: &[Vec3],
    mode: EvalMode,
) -> Result<IdentityReport> {
    let k = slice_halfspace(p, &Halfspace { normal: plane.normal, offset: plane.offset });
    let l = slice_halfspace(p, &Halfspace { normal: -plane.normal, offset: -plane.offset });
    let m = slice_plane(p, plane);
    let degenerate = k.is_empty() || l.is_empty() || k.dim() != p.dim() || l.dim() != p.dim();
    let hk = evaluate(spec, &k, dirs, mode)?.values();
    let hl = evaluate(spec, &l, dirs, mode)?.values();
    let hp = evaluate(spec, p, dirs, mode)?.values();
    let hm = evaluate(spec, &m, dirs, mode)?.values();
    let residual = (0..dirs.len())
        .map(|d| (hk[d] + hl[d] - hp[d] - hm[d]).abs())
        .fold(0.0, f64::max);
    Ok(IdentityReport { residual, degenerate, directions: dirs.len() })
}

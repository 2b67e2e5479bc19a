//! Crofton formula for degree-`j` Minkowski valuations `F_(j,K) = S_j(K, .) * mu`,
//! checked degree by degree against zonal test functions `P_k(. w)`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::constants::q_nij;
use super::crofton::{crofton_integral, z_score};
use super::mc::McConfig;
use crate::convex::{area_measure, Polytope};
use crate::error::{Error, Result};
use crate::harmonics::{AmbientDim, LegendreTable};
use crate::zonal::{berg, box_j_apply, convolve, MultiplierSequence, ZonalObject, DEFAULT_BERG_TERMS};
use crate::Vec3;

/// Largest Berg truncation bar tolerated in the kernel multipliers.
pub const BERG_BAR_TOL: f64 = 1e-3;

/// `q_(n,i,j)` and the multipliers of `mu * box_(n-j+1) g_(n-i-j+1)`.
pub fn crofton_kernel(mu: &ZonalObject, i: usize, j: usize) -> Result<(f64, MultiplierSequence)> {
    let n = mu.n();
    let q = q_nij(n.get(), i, j)?;
    let g = berg(n.get() - i - j + 1, mu.kmax(), n, DEFAULT_BERG_TERMS)?;
    let b = box_j_apply(&g.object(), n.get() - j + 1)?;
    let kernel = convolve(mu, &b)?;
    let bar = kernel.multipliers().max_error();
    if bar > BERG_BAR_TOL {
        return Err(Error::Truncation { estimate: bar, tolerance: BERG_BAR_TOL });
    }
    Ok((q, kernel.multipliers().clone()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub stderr: f64,
    /// Berg truncation bar carried by the right side.
    pub bar: f64,
    pub z: f64,
    /// `|lhs - rhs| <= 3 stderr + bar`.
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CroftonMinkowskiReport {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub q: f64,
    pub axis: [f64; 3],
    pub rows: Vec<DegreeRow>,
    #[serde(rename = "N")]
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub wall_seconds: f64,
}

impl CroftonMinkowskiReport {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// For each degree `k`, `int <F_(j, P cap E), P_k(. w)> d sigma_(3-i)(E)`
/// by sampling planes, against `q_(3,i,j) a_k[kernel] int P_k(u . w) dS_(i+j)(P, u)`.
///
/// The geometric path needs `n = 3`, so `i = j = 1`.
pub fn crofton_minkowski(
    p: &Polytope,
    mu: &ZonalObject,
    i: usize,
    j: usize,
    degrees: &[usize],
    axis: &Vec3,
    cfg: &McConfig,
) -> Result<CroftonMinkowskiReport> {
    let started = Instant::now();
    let n = mu.n();
    if n != AmbientDim::THREE || i != 1 || j != 1 {
        return Err(Error::Unsupported(format!(
            "sampled Crofton check needs n = 3, i = j = 1; got n = {n}, i = {i}, j = {j}"
        )));
    }
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let w = axis.try_normalize(0.0).ok_or_else(|| Error::InvalidArgument("axis must be nonzero".into()))?;
    let kmax = degrees.iter().copied().max().unwrap_or(0);
    if kmax > mu.kmax() {
        return Err(Error::DegreeOutOfRange { degree: kmax, kmax: mu.kmax() });
    }
    let (q, kernel) = crofton_kernel(mu, i, j)?;
    let table = LegendreTable::new(n, kmax);
    let test = |v: &Vec3, out: &mut [f64]| {
        let mut p = vec![0.0; kmax + 1];
        table.fill(w.dot(v).clamp(-1.0, 1.0), &mut p);
        for (o, &k) in out.iter_mut().zip(degrees) {
            *o = p[k];
        }
    };
    let m = degrees.len();
    let (lhs, se) = crofton_integral(p, i, cfg, m, |sec, out| {
        let meas = area_measure(sec, j)?;
        if meas.is_zero() {
            return Ok(());
        }
        let (vals, _) = meas.integrate_many(m, &test, 1e-11)?;
        for (o, (v, &k)) in out.iter_mut().zip(vals.iter().zip(degrees)) {
            *o = mu.multipliers().values[k] * v;
        }
        Ok(())
    })?;
    let (s, _) = area_measure(p, i + j)?.integrate_many(m, &test, 1e-13)?;
    let rows = degrees
        .iter()
        .enumerate()
        .map(|(d, &k)| {
            let rhs = q * kernel.values[k] * s[d];
            let bar = q * kernel.errors[k] * s[d].abs();
            let pass = (lhs[d] - rhs).abs() <= 3.0 * se[d] + bar;
            DegreeRow { k, lhs: lhs[d], rhs, stderr: se[d], bar, z: z_score(lhs[d], rhs, se[d]), pass }
        })
        .collect();
    Ok(CroftonMinkowskiReport {
        n: n.get(),
        i,
        j,
        q,
        axis: [w.x, w.y, w.z],
        rows,
        samples: cfg.samples,
        seed: cfg.seed,
        wall_seconds: started.elapsed().as_secs_f64(),
    })
}

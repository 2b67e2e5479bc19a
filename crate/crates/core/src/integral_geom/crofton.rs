//! Integrals over affine Grassmannians and the classical Crofton formula.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::constants::flag;
use super::mc::{run, McConfig};
use super::sampler::FlatSampler;
use crate::convex::Polytope;
use crate::error::{Error, Result};

/// A Monte-Carlo estimate against an analytic target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub stderr: f64,
    pub target: f64,
    pub z: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    #[serde(skip)]
    pub wall_seconds: f64,
}

/// `(a - b) / s`, finite even when `s` vanishes.
pub(crate) fn z_score(a: f64, b: f64, s: f64) -> f64 {
    let d = a - b;
    if d == 0.0 {
        0.0
    } else {
        (d / s).clamp(-1e300, 1e300)
    }
}

impl EstimateReport {
    pub fn new(estimate: f64, stderr: f64, target: f64, cfg: &McConfig, started: Instant) -> Self {
        Self {
            estimate,
            stderr,
            target,
            z: z_score(estimate, target, stderr),
            n: cfg.samples,
            seed: cfg.seed,
            wall_seconds: started.elapsed().as_secs_f64(),
        }
    }

    /// `|estimate - target| <= sigmas * stderr`.
    pub fn within(&self, sigmas: f64) -> bool {
        (self.estimate - self.target).abs() <= sigmas * self.stderr
    }
}

/// Estimate `int phi(P cap E) d sigma_(3-codim)(E)` for an `m`-vector functional
/// `phi`, written into its output slice. Returns means and standard errors.
pub fn crofton_integral<F>(p: &Polytope, codim: usize, cfg: &McConfig, m: usize, phi: F) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(&Polytope, &mut [f64]) -> Result<()> + Sync,
{
    let sampler = FlatSampler::enclosing(p, codim)?;
    let w = sampler.weight();
    let r = run(cfg, m, |rng, out| {
        let sec = sampler.sample(rng).section(p);
        if sec.is_empty() {
            return Ok(());
        }
        phi(&sec, out)?;
        out.iter_mut().for_each(|x| *x *= w);
        Ok(())
    })?;
    let se = r.stderr();
    Ok((r.mean, se))
}

/// `int V_j(P cap E) d sigma_(3-i)(E)` against `[i + j; j] V_(i+j)(P)`.
pub fn crofton_intrinsic(p: &Polytope, i: usize, j: usize, cfg: &McConfig) -> Result<EstimateReport> {
    if i + j > 3 {
        return Err(Error::InvalidArgument(format!("Crofton needs i + j <= 3, got i = {i}, j = {j}")));
    }
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let started = Instant::now();
    let target = flag(i + j, j) * p.intrinsic_volumes().get(i + j);
    let (mean, se) = crofton_integral(p, i, cfg, 1, |sec, out| {
        out[0] = sec.intrinsic_volumes().get(j);
        Ok(())
    })?;
    cfg.check_stderr(se[0])?;
    Ok(EstimateReport::new(mean[0], se[0], target, cfg, started))
}

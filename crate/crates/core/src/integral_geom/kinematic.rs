//! Integrals over rigid motions: the principal kinematic formula and
//! Hadwiger's decomposition into Crofton integrals.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::constants::flag;
use super::crofton::{crofton_integral, crofton_intrinsic, z_score, EstimateReport};
use super::mc::{run, McConfig};
use super::sampler::{MotionSampler, Window};
use crate::convex::{intersect, Polytope};
use crate::error::{Error, Result};
use crate::valuation::{evaluate_at, EvalMode, MinkowskiValuationSpec};
use crate::Vec3;

/// Two estimates of the same quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: f64,
    pub lhs_stderr: f64,
    pub rhs: f64,
    pub rhs_stderr: f64,
    /// Difference over the combined standard error.
    pub z: f64,
}

impl Comparison {
    pub fn new(lhs: f64, lhs_stderr: f64, rhs: f64, rhs_stderr: f64) -> Self {
        let s = lhs_stderr.hypot(rhs_stderr);
        Self { lhs, lhs_stderr, rhs, rhs_stderr, z: z_score(lhs, rhs, s) }
    }

    pub fn within(&self, sigmas: f64) -> bool {
        self.z.abs() <= sigmas
    }
}

/// Right side of the kinematic formula,
/// `sum_(i=0)^(3-j) [i+j; j] [3; i]^-1 V_(i+j)(K) V_(3-i)(L)`.
pub fn kinematic_target(k: &Polytope, l: &Polytope, j: usize) -> Result<f64> {
    if j > 3 {
        return Err(Error::InvalidArgument(format!("degree {j} exceeds 3")));
    }
    let (vk, vl) = (k.intrinsic_volumes(), l.intrinsic_volumes());
    Ok((0..=3 - j).map(|i| flag(i + j, j) / flag(3, i) * vk.get(i + j) * vl.get(3 - i)).sum())
}

/// Estimate `int phi(K cap gL) dg` for an `m`-vector functional `phi`.
pub fn kinematic_integral<F>(
    k: &Polytope,
    l: &Polytope,
    window: Window,
    cfg: &McConfig,
    m: usize,
    phi: F,
) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(&Polytope, &mut [f64]) -> Result<()> + Sync,
{
    let sampler = MotionSampler::new(k, l, window)?;
    let hits = AtomicUsize::new(0);
    let r = run(cfg, m, |rng, out| {
        let g = sampler.sample(rng);
        if !g.contained {
            hits.fetch_add(1, Ordering::Relaxed);
        }
        let sec = intersect(k, &l.transformed(&g.rotation, &g.shift));
        if sec.is_empty() {
            return Ok(());
        }
        phi(&sec, out)?;
        out.iter_mut().for_each(|x| *x *= g.weight);
        Ok(())
    })?;
    let hits = hits.into_inner();
    if hits > 0 {
        return Err(Error::WindowTooSmall { hits });
    }
    let se = r.stderr();
    Ok((r.mean, se))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HadwigerTerm {
    pub codim: usize,
    /// `V_(3-i)(L) / [3; i]`.
    pub weight: f64,
    pub crofton: EstimateReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KinematicReport {
    pub j: usize,
    pub direct: EstimateReport,
    pub hadwiger: Vec<HadwigerTerm>,
    /// Direct estimate against the weighted sum of Crofton estimates.
    pub consistency: Comparison,
}

/// `int V_j(K cap gL) dg` by sampling motions, and again through
/// Hadwiger's sum of Crofton integrals.
pub fn kinematic_check(k: &Polytope, l: &Polytope, j: usize, window: Window, cfg: &McConfig) -> Result<KinematicReport> {
    let started = Instant::now();
    let target = kinematic_target(k, l, j)?;
    let (mean, se) = kinematic_integral(k, l, window, cfg, 1, |sec, out| {
        out[0] = sec.intrinsic_volumes().get(j);
        Ok(())
    })?;
    let direct = EstimateReport::new(mean[0], se[0], target, cfg, started);
    let vl = l.intrinsic_volumes();
    let mut hadwiger = Vec::new();
    let (mut sum, mut var) = (0.0, 0.0);
    for i in 0..=3 - j {
        let weight = vl.get(3 - i) / flag(3, i);
        let crofton = crofton_intrinsic(k, i, j, &cfg.derived(i as u64))?;
        sum += weight * crofton.estimate;
        var += (weight * crofton.stderr).powi(2);
        hadwiger.push(HadwigerTerm { codim: i, weight, crofton });
    }
    let consistency = Comparison::new(direct.estimate, direct.stderr, sum, var.sqrt());
    Ok(KinematicReport { j, direct, hadwiger, consistency })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CroftonTerm {
    pub codim: usize,
    pub weight: f64,
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationKinematicReport {
    pub direction: [f64; 3],
    pub terms: Vec<CroftonTerm>,
    /// Motion integral of `h(Phi(K cap gL), u)` against the Crofton sum.
    pub consistency: Comparison,
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
}

/// Both sides of the kinematic formula for the support function of a
/// Minkowski valuation at a fixed direction `u`.
pub fn kinematic_valuation(
    k: &Polytope,
    l: &Polytope,
    spec: &MinkowskiValuationSpec,
    u: &Vec3,
    mode: EvalMode,
    window: Window,
    cfg: &McConfig,
) -> Result<ValuationKinematicReport> {
    spec.validate()?;
    let phi = |sec: &Polytope, out: &mut [f64]| -> Result<()> {
        out[0] = evaluate_at(spec, sec, u, mode)?;
        Ok(())
    };
    let (lhs, lhs_se) = kinematic_integral(k, l, window, cfg, 1, phi)?;
    let vl = l.intrinsic_volumes();
    let mut terms = Vec::new();
    let (mut sum, mut var) = (0.0, 0.0);
    for i in 0..=3 {
        let weight = vl.get(3 - i) / flag(3, i);
        let (m, s) = crofton_integral(k, i, &cfg.derived(16 + i as u64), 1, phi)?;
        sum += weight * m[0];
        var += (weight * s[0]).powi(2);
        terms.push(CroftonTerm { codim: i, weight, estimate: m[0], stderr: s[0] });
    }
    let un = u.normalize();
    Ok(ValuationKinematicReport {
        direction: [un.x, un.y, un.z],
        terms,
        consistency: Comparison::new(lhs[0], lhs_se[0], sum, var.sqrt()),
        n: cfg.samples,
        seed: cfg.seed,
    })
}

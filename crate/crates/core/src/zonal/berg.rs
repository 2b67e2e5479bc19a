//! Berg's functions `g_j` and the operators `box_j` inverting convolution with them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{box_n_apply, DensityTerm, MultiplierSequence, ZonalObject};
use crate::consts::omega;
use crate::error::{Error, Result};
use crate::harmonics::{harmonic_dimension_f64, AmbientDim, JacobiQuadrature, LegendreTable};

/// Number of native modes kept when `g_j` is re-expanded in a higher dimension.
pub const DEFAULT_BERG_TERMS: usize = 4096;

/// Berg's function `g_j` on `S^(j-1)`, viewed as the zonal `g_j(u . e)` on `S^(n-1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BergFunction {
    pub j: usize,
    pub n: AmbientDim,
    /// Native multipliers `a_k^j[g_j]`.
    pub native: Vec<f64>,
    /// Multipliers `a_k^n` of the centered zonal extension, with truncation bars.
    pub ambient: MultiplierSequence,
    /// Native modes kept for `j < n`.
    pub terms: usize,
}

fn native_multiplier(j: usize, k: usize) -> f64 {
    if k == 1 {
        0.0
    } else {
        (j as f64 - 1.0) / ((1.0 - k as f64) * (k + j - 1) as f64)
    }
}

/// Berg function of dimension `j` with multipliers in ambient dimension `n`.
pub fn berg(j: usize, kmax: usize, n: AmbientDim, terms: usize) -> Result<BergFunction> {
    if j < 2 || j > n.get() {
        return Err(Error::InvalidArgument(format!("Berg dimension {j} outside 2..={n}")));
    }
    let native: Vec<f64> = (0..=kmax).map(|k| native_multiplier(j, k)).collect();
    let ambient = if j == n.get() {
        MultiplierSequence::new(n, native.clone())
    } else {
        if terms < 8 {
            return Err(Error::InvalidArgument(format!("{terms} Berg modes are too few")));
        }
        let mut m = cross_multipliers(j, n, kmax, terms);
        m.values[1] = 0.0;
        m.errors[1] = 0.0;
        m
    };
    Ok(BergFunction { j, n, native, ambient, terms })
}

impl BergFunction {
    pub fn kmax(&self) -> usize {
        self.ambient.kmax()
    }

    /// The zonal object `g_j(u . e)` on `S^(n-1)`, centered.
    ///
    /// For `j = 2` the object carries a pointwise profile (the truncated
    /// circle series); otherwise only its multipliers.
    pub fn object(&self) -> ZonalObject {
        let n = self.n;
        if self.j == 2 && n.get() > 2 {
            let raw = ZonalObject::with_terms(
                n,
                Vec::new(),
                Vec::new(),
                vec![DensityTerm::Berg { j: 2, scale: 1.0, terms: self.terms }],
                self.kmax(),
            )
            .expect("Berg density");
            let mut obj = raw.centered();
            obj.multipliers = self.ambient.clone();
            return obj;
        }
        ZonalObject::from_multipliers(self.ambient.clone())
    }

    /// `box_j x`: divide by the multipliers of `g_j` and drop degree 1.
    pub fn invert(&self, x: &ZonalObject) -> Result<ZonalObject> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch { left: x.n().get(), right: self.n.get() });
        }
        if self.j == self.n.get() {
            return Ok(box_n_apply(x));
        }
        let m = x.kmax().min(self.kmax());
        let a = &self.ambient;
        let biggest = a.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let mut values = Vec::with_capacity(m + 1);
        let mut errors = Vec::with_capacity(m + 1);
        for k in 0..=m {
            if k == 1 {
                values.push(0.0);
                errors.push(0.0);
                continue;
            }
            let d = a.values[k];
            if d.abs() <= 1e-12 * biggest {
                return Err(Error::SingularMultiplier {
                    degree: k,
                    value: d,
                    condition: biggest / d.abs(),
                });
            }
            let xv = x.multipliers().values[k];
            values.push(xv / d);
            errors.push(x.multipliers().errors[k] / d.abs() + xv.abs() * a.errors[k] / (d * d));
        }
        Ok(ZonalObject::from_multipliers(MultiplierSequence::with_errors(self.n, values, errors)))
    }
}

/// `box_j x` for `2 <= j <= n`.
pub fn box_j_apply(x: &ZonalObject, j: usize) -> Result<ZonalObject> {
    berg(j, x.kmax(), x.n(), DEFAULT_BERG_TERMS)?.invert(x)
}

/// Truncated native series of `g_j` evaluated at the nodes of `rule`.
fn native_series_at(j: usize, terms: usize, nodes: &[f64]) -> Vec<f64> {
    let table = LegendreTable::with_dim(j, terms);
    let wj = omega(j);
    let coeffs: Vec<f64> = (0..=terms)
        .map(|m| harmonic_dimension_f64(j, m) / wj * native_multiplier(j, m))
        .collect();
    let mut p = vec![0.0; terms + 1];
    nodes
        .iter()
        .map(|&t| {
            table.fill(t, &mut p);
            coeffs.iter().zip(&p).map(|(c, p)| c * p).sum()
        })
        .collect()
}

/// Ambient multipliers of the native series truncated after `terms` modes;
/// the error bar is the change against `terms / 2` modes.
fn cross_multipliers(j: usize, n: AmbientDim, kmax: usize, terms: usize) -> MultiplierSequence {
    // exact for the polynomial integrand of degree terms + kmax
    let rule = JacobiQuadrature::new(n, (terms + kmax) / 2 + 2);
    let full = native_series_at(j, terms, rule.nodes());
    let half = native_series_at(j, terms / 2, rule.nodes());
    let table = LegendreTable::new(n, kmax);
    let mut p = vec![0.0; kmax + 1];
    let mut a = vec![0.0; kmax + 1];
    let mut b = vec![0.0; kmax + 1];
    for (i, (&t, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        table.fill(t, &mut p);
        for k in 0..=kmax {
            a[k] += w * full[i] * p[k];
            b[k] += w * half[i] * p[k];
        }
    }
    let wn1 = omega(n.get() - 1);
    let values: Vec<f64> = a.iter().map(|v| v * wn1).collect();
    let errors = a.iter().zip(&b).map(|(x, y)| wn1 * (x - y).abs()).collect();
    MultiplierSequence::with_errors(n, values, errors)
}

/// Multipliers of the truncated circle profile used by the `Berg` density term.
pub(super) fn truncated_circle_multipliers(n: AmbientDim, kmax: usize, terms: usize) -> MultiplierSequence {
    cross_multipliers(2, n, kmax, terms)
}

/// `sup |g_2 - g_2^(M)|` for the series truncated after `M` modes.
pub(super) fn circle_tail_bound(terms: usize) -> f64 {
    let m = terms as f64;
    0.5 * (1.0 / m + 1.0 / (m + 1.0)) / PI
}

/// Truncated circle Berg function `g_2(t)`, `t = cos(theta)`:
/// `(1 / 2 pi) (1 - 2 sum_(2 <= m <= M) cos(m theta) / (m^2 - 1))`.
pub fn berg_profile(t: f64, terms: usize) -> f64 {
    let t = t.clamp(-1.0, 1.0);
    let (mut tm1, mut tm) = (1.0, t);
    let mut s = 0.0;
    for m in 1..terms {
        let next = 2.0 * t * tm - tm1;
        tm1 = tm;
        tm = next;
        let mm = (m + 1) as f64;
        s += tm / (mm * mm - 1.0);
    }
    (1.0 - 2.0 * s) / (2.0 * PI)
}

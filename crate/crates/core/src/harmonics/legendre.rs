use serde::{Deserialize, Serialize};

use super::{harmonic_dimension_f64, AmbientDim};
use crate::error::{Error, Result};

/// Recurrence data for `P_k^n`, `0 <= k <= kmax`.
///
/// `P_{k+1}(t) = alpha_k t P_k(t) - beta_k P_{k-1}(t)` with
/// `alpha_k = (2k + n - 2) / (k + n - 2)` and `beta_k = k / (k + n - 2)`.
/// Derivatives follow by differentiating the recurrence, which stays exact at
/// `t = +-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreTable {
    dim: usize,
    kmax: usize,
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl LegendreTable {
    pub fn new(n: AmbientDim, kmax: usize) -> Self {
        Self::with_dim(n.get(), kmax)
    }

    /// Table for any sphere dimension `dim >= 2` (`dim = 2` gives Chebyshev
    /// polynomials, needed for Berg's function on the circle).
    pub(crate) fn with_dim(dim: usize, kmax: usize) -> Self {
        assert!(dim >= 2, "Legendre dimension must be at least 2");
        let mut alpha = Vec::with_capacity(kmax + 1);
        let mut beta = Vec::with_capacity(kmax + 1);
        for k in 0..=kmax {
            if k == 0 {
                alpha.push(1.0);
                beta.push(0.0);
            } else {
                let d = (k + dim - 2) as f64;
                alpha.push((2 * k + dim - 2) as f64 / d);
                beta.push(k as f64 / d);
            }
        }
        Self { dim, kmax, alpha, beta }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub(crate) fn alpha(&self, k: usize) -> f64 {
        self.alpha[k]
    }

    pub(crate) fn beta(&self, k: usize) -> f64 {
        self.beta[k]
    }

    /// Value (`deriv = 0`) or `t`-derivative (`deriv = 1, 2`) of `P_k^n(t)`.
    pub fn eval(&self, k: usize, t: f64, deriv: u8) -> Result<f64> {
        if k > self.kmax {
            return Err(Error::DegreeOutOfRange { degree: k, kmax: self.kmax });
        }
        if !(-1.0..=1.0).contains(&t) {
            return Err(Error::InvalidArgument(format!("t = {t} outside [-1, 1]")));
        }
        if deriv > 2 {
            return Err(Error::InvalidArgument(format!("derivative order {deriv} not supported")));
        }
        let (p, dp, d2p) = self.values_to(k, t);
        Ok(match deriv {
            0 => p[k],
            1 => dp[k],
            _ => d2p[k],
        })
    }

    /// `P_0..P_kmax` at `t` written into `out` (length `kmax + 1` or less).
    pub fn fill(&self, t: f64, out: &mut [f64]) {
        let m = out.len();
        if m == 0 {
            return;
        }
        out[0] = 1.0;
        if m > 1 {
            out[1] = t;
        }
        for k in 1..m.saturating_sub(1) {
            out[k + 1] = self.alpha[k] * t * out[k] - self.beta[k] * out[k - 1];
        }
    }

    /// Values and first two derivatives of `P_0..P_kmax` at `t`.
    pub fn values(&self, t: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        self.values_to(self.kmax, t)
    }

    fn values_to(&self, kmax: usize, t: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let mut p = vec![0.0; kmax + 1];
        let mut dp = vec![0.0; kmax + 1];
        let mut d2p = vec![0.0; kmax + 1];
        p[0] = 1.0;
        if kmax >= 1 {
            p[1] = t;
            dp[1] = 1.0;
        }
        for k in 1..kmax {
            let (a, b) = (self.alpha[k], self.beta[k]);
            p[k + 1] = a * t * p[k] - b * p[k - 1];
            dp[k + 1] = a * (p[k] + t * dp[k]) - b * dp[k - 1];
            d2p[k + 1] = a * (2.0 * dp[k] + t * d2p[k]) - b * d2p[k - 1];
        }
        (p, dp, d2p)
    }
}

/// `P_0^n(t), ..., P_kmax^n(t)`.
pub fn legendre_values(n: AmbientDim, kmax: usize, t: f64) -> Vec<f64> {
    let mut out = vec![0.0; kmax + 1];
    LegendreTable::new(n, kmax).fill(t, &mut out);
    out
}

/// A zonal profile `f(t) = sum_k c_k P_k^n(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegendreSeries {
    pub n: AmbientDim,
    pub coeffs: Vec<f64>,
}

impl LegendreSeries {
    pub fn new(n: AmbientDim, coeffs: Vec<f64>) -> Self {
        Self { n, coeffs }
    }

    /// Series with the given Funk-Hecke multipliers, `c_k = N(n,k) a_k / omega_n`.
    pub fn from_multipliers(n: AmbientDim, multipliers: &[f64]) -> Self {
        let w = n.sphere_area();
        let coeffs = multipliers
            .iter()
            .enumerate()
            .map(|(k, a)| harmonic_dimension_f64(n.get(), k) * a / w)
            .collect();
        Self::new(n, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Funk-Hecke multipliers `a_k = omega_n c_k / N(n,k)`.
    pub fn multipliers(&self) -> Vec<f64> {
        let w = self.n.sphere_area();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * w / harmonic_dimension_f64(self.n.get(), k))
            .collect()
    }

    /// Value and first two derivatives at `t`.
    pub fn eval3(&self, t: f64) -> (f64, f64, f64) {
        if self.coeffs.is_empty() {
            return (0.0, 0.0, 0.0);
        }
        let table = LegendreTable::new(self.n, self.degree());
        let (p, dp, d2p) = table.values_to(self.degree(), t);
        let mut acc = (0.0, 0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc.0 += c * p[k];
            acc.1 += c * dp[k];
            acc.2 += c * d2p[k];
        }
        acc
    }

    pub fn value(&self, t: f64) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        let mut p = vec![0.0; self.coeffs.len()];
        LegendreTable::new(self.n, self.degree()).fill(t, &mut p);
        self.coeffs.iter().zip(&p).map(|(c, p)| c * p).sum()
    }
}

//! Zonal harmonic analysis on `S^(n-1)`.
//!
//! A zonal function is identified with its profile on `[-1, 1]` through
//! `u = t e + sqrt(1 - t^2) v`. Legendre polynomials are normalised by
//! `P_k^n(1) = 1`.

mod calculus;
mod legendre;
mod quadrature;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use calculus::{
    green_defect, regularity_probe, zonal_ck_norm, zonal_coefficient, zonal_laplacian, FnProfile, ProbeReport,
    ProbeSample, ZonalProfile, DEFAULT_GRID,
};
pub use legendre::{legendre_values, LegendreSeries, LegendreTable};
pub use quadrature::{gauss_legendre, CoefficientEstimate, JacobiQuadrature};

/// Ambient dimension `n` of `R^n`; the sphere is `S^(n-1)`. Always at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct AmbientDim(usize);

impl AmbientDim {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "ambient dimension must be at least 3, got {n}"
            )));
        }
        Ok(Self(n))
    }

    pub const THREE: AmbientDim = AmbientDim(3);

    pub fn get(self) -> usize {
        self.0
    }

    /// Surface area `omega_n` of `S^(n-1)`.
    pub fn sphere_area(self) -> f64 {
        crate::consts::omega(self.0)
    }
}

impl TryFrom<usize> for AmbientDim {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl From<AmbientDim> for usize {
    fn from(d: AmbientDim) -> usize {
        d.0
    }
}

impl std::fmt::Display for AmbientDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Dimension `N(n, k)` of the space of spherical harmonics of degree `k` on
/// `S^(n-1)`.
pub fn harmonic_dimension(n: AmbientDim, k: usize) -> u64 {
    harmonic_dimension_raw(n.get(), k)
}

/// `N(n, k)` for any `n >= 2`; the circle case (`n = 2`) gives `N = 2` for
/// `k >= 1`.
pub(crate) fn harmonic_dimension_raw(n: usize, k: usize) -> u64 {
    if k == 0 {
        return 1;
    }
    if n == 2 {
        return 2;
    }
    // (n + 2k - 2) / (n + k - 2) * C(n + k - 2, n - 2), kept in integers:
    // C(n + k - 2, n - 2) * (n + 2k - 2) is divisible by (n + k - 2).
    let m = (n + k - 2) as u128;
    let r = (n - 2) as u128;
    let mut binom: u128 = 1;
    for i in 0..r {
        binom = binom * (m - i) / (i + 1);
    }
    (binom * (n + 2 * k - 2) as u128 / m) as u64
}

/// `N(n, k)` as a float, for dimensions where the integer would overflow.
pub fn harmonic_dimension_f64(n: usize, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if n == 2 {
        return 2.0;
    }
    let m = n + k - 2;
    (n + 2 * k - 2) as f64 / m as f64 * crate::consts::binomial(m, n - 2)
}

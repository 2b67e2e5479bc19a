use serde::{Deserialize, Serialize};

use super::{AmbientDim, CoefficientEstimate, JacobiQuadrature, LegendreSeries, LegendreTable};
use crate::consts::omega;
use crate::error::{Error, Result};

/// Default number of grid points for `C^k` norms.
pub const DEFAULT_GRID: usize = 4096;

const MIN_GRID: usize = 1000;

/// A zonal function on `S^(n-1)` given by its profile on `[-1, 1]`.
pub trait ZonalProfile: Sync {
    fn dim(&self) -> AmbientDim;

    /// `(f, f', f'')` at `t`.
    fn eval3(&self, t: f64) -> (f64, f64, f64);

    fn value(&self, t: f64) -> f64 {
        self.eval3(t).0
    }
}

impl ZonalProfile for LegendreSeries {
    fn dim(&self) -> AmbientDim {
        self.n
    }

    fn eval3(&self, t: f64) -> (f64, f64, f64) {
        LegendreSeries::eval3(self, t)
    }

    fn value(&self, t: f64) -> f64 {
        LegendreSeries::value(self, t)
    }
}

/// Profile from a closure returning `(f, f', f'')`.
pub struct FnProfile<F> {
    n: AmbientDim,
    f: F,
}

impl<F> FnProfile<F>
where
    F: Fn(f64) -> (f64, f64, f64) + Sync,
{
    pub fn new(n: AmbientDim, f: F) -> Self {
        Self { n, f }
    }
}

impl<F> ZonalProfile for FnProfile<F>
where
    F: Fn(f64) -> (f64, f64, f64) + Sync,
{
    fn dim(&self) -> AmbientDim {
        self.n
    }

    fn eval3(&self, t: f64) -> (f64, f64, f64) {
        (self.f)(t)
    }
}

/// Funk-Hecke coefficient `a_k^n[f] = omega_(n-1) int f P_k^n (1-t^2)^((n-3)/2) dt`.
///
/// The error is the difference to a refined rule; it is an error when it
/// exceeds `tol`.
pub fn zonal_coefficient(
    f: &dyn ZonalProfile,
    k: usize,
    quad: &JacobiQuadrature,
    tol: f64,
) -> Result<CoefficientEstimate> {
    let n = f.dim();
    if quad.dim() != n.get() {
        return Err(Error::DimensionMismatch { left: n.get(), right: quad.dim() });
    }
    let table = LegendreTable::new(n, k);
    let mut p = vec![0.0; k + 1];
    let mut coeff = |rule: &JacobiQuadrature| {
        rule.sphere_integral(|t| {
            table.fill(t, &mut p);
            f.value(t) * p[k]
        })
    };
    let coarse = coeff(quad);
    let fine = coeff(quad.refined());
    let error = (fine - coarse).abs();
    if error > tol {
        return Err(Error::InsufficientQuadrature { order: quad.order(), estimate: error, tolerance: tol });
    }
    Ok(CoefficientEstimate { value: fine, error })
}

/// Spherical Laplacian of a zonal function in terms of its profile:
/// `(1 - t^2) f'' - (n - 1) t f'`.
pub fn zonal_laplacian(f: &dyn ZonalProfile, t: f64) -> f64 {
    let (_, d1, d2) = f.eval3(t);
    laplacian_from(f.dim().get(), t, d1, d2)
}

fn laplacian_from(n: usize, t: f64, d1: f64, d2: f64) -> f64 {
    (1.0 - t * t) * d2 - (n as f64 - 1.0) * t * d1
}

fn gradient_norm(t: f64, d1: f64) -> f64 {
    (1.0 - t * t).max(0.0).sqrt() * d1.abs()
}

fn hessian_norm(n: usize, t: f64, d1: f64, d2: f64) -> f64 {
    let tangential = t * d1;
    let radial = (1.0 - t * t) * d2 - t * d1;
    ((n as f64 - 2.0) * tangential * tangential + radial * radial).sqrt()
}

/// Cosine-spaced points `cos(pi i / (m - 1))`, including both endpoints.
fn cosine_grid(m: usize) -> impl Iterator<Item = f64> {
    (0..m).map(move |i| (std::f64::consts::PI * i as f64 / (m - 1) as f64).cos())
}

/// Max of `g` over `[-1, 1]`: grid search, then golden-section refinement
/// around the best grid point.
fn maximise(g: impl Fn(f64) -> f64, grid: usize) -> f64 {
    let pts: Vec<f64> = cosine_grid(grid).collect();
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for (i, &t) in pts.iter().enumerate() {
        let v = g(t);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    // pts are decreasing in i
    let hi = pts[best_i.saturating_sub(1)];
    let lo = pts[(best_i + 1).min(grid - 1)];
    let (mut a, mut b) = (lo, hi);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..60 {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
        if b - a < 1e-15 {
            break;
        }
    }
    best.max(gc).max(gd)
}

/// `||f||_(C^k) = sum_(j <= k) max |nabla^j f|` for `k <= 2`, using the
/// closed-form gradient and Hessian norms of a zonal function.
pub fn zonal_ck_norm(f: &dyn ZonalProfile, k: u8, grid: usize) -> Result<f64> {
    if k > 2 {
        return Err(Error::InvalidArgument(format!("C^{k} norm not supported")));
    }
    if grid < MIN_GRID {
        return Err(Error::InvalidArgument(format!("grid of {grid} points is below {MIN_GRID}")));
    }
    let n = f.dim().get();
    let mut norm = maximise(|t| f.value(t).abs(), grid);
    if k >= 1 {
        norm += maximise(
            |t| {
                let (_, d1, _) = f.eval3(t);
                gradient_norm(t, d1)
            },
            grid,
        );
    }
    if k >= 2 {
        norm += maximise(
            |t| {
                let (_, d1, d2) = f.eval3(t);
                hessian_norm(n, t, d1, d2)
            },
            grid,
        );
    }
    Ok(norm)
}

/// Per-profile output of [`regularity_probe`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSample {
    pub c2_norm: f64,
    /// `||D_q f||_(C^0)` with `D_q f = Delta f + q f`.
    pub dq_norm: f64,
    /// `||box_n f||_(C^0)` with `box_n f = f + Delta f / (n - 1)`.
    pub box_norm: f64,
    pub ratio_dq: f64,
    pub ratio_box: f64,
    /// `int (D_q f - q f)(s) (1 - s^2)^((n-3)/2) ds`, which vanishes.
    pub flux: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub n: AmbientDim,
    pub q: f64,
    pub samples: Vec<ProbeSample>,
    pub sup_ratio_dq: f64,
    pub sup_ratio_box: f64,
    pub max_abs_flux: f64,
}

/// Empirical `C^2 / C^0` ratios for the elliptic operator `D_q` and for
/// `box_n`, plus the boundary-flux identity, over a family of profiles.
///
/// With `q = n - 1` every profile must have vanishing degree-1 component.
pub fn regularity_probe(family: &[&dyn ZonalProfile], q: f64, quad_order: usize) -> Result<ProbeReport> {
    let first = family
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty probe family".into()))?;
    let n = first.dim();
    let nf = n.get() as f64;
    let quad = JacobiQuadrature::new(n, quad_order);
    let mut samples = Vec::with_capacity(family.len());
    for (idx, f) in family.iter().enumerate() {
        if f.dim() != n {
            return Err(Error::DimensionMismatch { left: n.get(), right: f.dim().get() });
        }
        if (q - (nf - 1.0)).abs() < 1e-12 {
            let a1 = quad.refined().sphere_integral(|t| f.value(t) * t);
            let scale = quad.refined().sphere_integral(|t| f.value(t).abs()).max(1e-300);
            if a1.abs() > 1e-9 * scale {
                return Err(Error::NotCentered(a1));
            }
        }
        let c2_norm = zonal_ck_norm(*f, 2, DEFAULT_GRID)?;
        if !c2_norm.is_finite() {
            return Err(Error::InvalidArgument(format!("profile {idx} is not C^2")));
        }
        let lap = |t: f64| {
            let (v, d1, d2) = f.eval3(t);
            (v, laplacian_from(n.get(), t, d1, d2))
        };
        let dq_norm = maximise(
            |t| {
                let (v, l) = lap(t);
                (l + q * v).abs()
            },
            DEFAULT_GRID,
        );
        let box_norm = maximise(
            |t| {
                let (v, l) = lap(t);
                (v + l / (nf - 1.0)).abs()
            },
            DEFAULT_GRID,
        );
        // D_q f - q f = Delta f
        let flux = quad.integrate(|t| lap(t).1);
        samples.push(ProbeSample {
            c2_norm,
            dq_norm,
            box_norm,
            ratio_dq: c2_norm / dq_norm,
            ratio_box: c2_norm / box_norm,
            flux,
        });
    }
    let sup = |g: fn(&ProbeSample) -> f64| samples.iter().map(g).fold(0.0, f64::max);
    Ok(ProbeReport {
        n,
        q,
        sup_ratio_dq: sup(|s| s.ratio_dq),
        sup_ratio_box: sup(|s| s.ratio_box),
        max_abs_flux: sup(|s| s.flux.abs()),
        samples,
    })
}

/// `omega_(n-1) int (f Delta g - g Delta f) w dt`, which vanishes for smooth `f, g`.
pub fn green_defect(f: &dyn ZonalProfile, g: &dyn ZonalProfile, quad: &JacobiQuadrature) -> f64 {
    let n = f.dim().get();
    omega(n - 1)
        * quad.integrate(|t| {
            let (fv, f1, f2) = f.eval3(t);
            let (gv, g1, g2) = g.eval3(t);
            fv * laplacian_from(n, t, g1, g2) - gv * laplacian_from(n, t, f1, f2)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p2() -> LegendreSeries {
        LegendreSeries::new(AmbientDim::THREE, vec![0.0, 0.0, 1.0])
    }

    #[test]
    fn coefficient_of_constant_is_sphere_area() {
        let one = LegendreSeries::new(AmbientDim::THREE, vec![1.0]);
        let quad = JacobiQuadrature::new(AmbientDim::THREE, 16);
        let a0 = zonal_coefficient(&one, 0, &quad, 1e-12).unwrap();
        // oracle: 2 pi int_{-1}^{1} dt
        assert!((a0.value - 2.0 * PI * 2.0).abs() < 1e-12);
        let a1 = zonal_coefficient(&p2(), 1, &quad, 1e-12).unwrap();
        assert!(a1.value.abs() < 1e-13);
    }

    #[test]
    fn orthogonality_of_legendre_polynomials() {
        for n in 3..6 {
            let dim = AmbientDim::new(n).unwrap();
            let quad = JacobiQuadrature::for_degree(dim, 12);
            for k in 0..=8 {
                let mut c = vec![0.0; k + 1];
                c[k] = 1.0;
                let f = LegendreSeries::new(dim, c);
                for j in 0..=8 {
                    let a = zonal_coefficient(&f, j, &quad, 1e-10).unwrap().value;
                    let expected = if j == k {
                        dim.sphere_area() / super::super::harmonic_dimension_f64(n, k)
                    } else {
                        0.0
                    };
                    assert!((a - expected).abs() < 1e-11, "n={n} k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn insufficient_quadrature_is_reported() {
        let f = FnProfile::new(AmbientDim::THREE, |t: f64| ((8.0 * t).exp(), 0.0, 0.0));
        let quad = JacobiQuadrature::new(AmbientDim::THREE, 3);
        assert!(matches!(
            zonal_coefficient(&f, 2, &quad, 1e-12),
            Err(Error::InsufficientQuadrature { .. })
        ));
    }

    #[test]
    fn laplacian_examples() {
        let f = p2();
        // -k(k+n-2) P_2(0.5) = -6 * (-0.125)
        assert!((zonal_laplacian(&f, 0.5) - 0.75).abs() < 1e-14);
        let one = LegendreSeries::new(AmbientDim::THREE, vec![1.0]);
        assert_eq!(zonal_laplacian(&one, 0.3), 0.0);
        let lin = LegendreSeries::new(AmbientDim::THREE, vec![0.0, 1.0]);
        assert!((zonal_laplacian(&lin, 0.3) + 0.6).abs() < 1e-15);
    }

    #[test]
    fn laplacian_eigenvalues() {
        for n in 3..6 {
            let dim = AmbientDim::new(n).unwrap();
            for k in 0..=20 {
                let mut c = vec![0.0; k + 1];
                c[k] = 1.0;
                let f = LegendreSeries::new(dim, c);
                for i in 0..=40 {
                    let t = -1.0 + 0.05 * i as f64;
                    let lam = (k * (k + n - 2)) as f64;
                    let r = zonal_laplacian(&f, t) + lam * f.value(t);
                    assert!(r.abs() < 1e-10, "n={n} k={k} t={t}: {r}");
                }
            }
        }
    }

    #[test]
    fn ck_norms_of_p2() {
        let f = p2();
        assert!((zonal_ck_norm(&f, 0, DEFAULT_GRID).unwrap() - 1.0).abs() < 1e-12);
        assert!((zonal_ck_norm(&f, 1, DEFAULT_GRID).unwrap() - 2.5).abs() < 1e-9);
        let c2 = zonal_ck_norm(&f, 2, DEFAULT_GRID).unwrap();
        assert!((c2 - (2.5 + 3.0 * 2f64.sqrt())).abs() < 1e-9);
        assert!(zonal_ck_norm(&f, 2, 999).is_err());
    }

    #[test]
    fn probe_on_p2() {
        let f = p2();
        let report = regularity_probe(&[&f], 2.0, 32).unwrap();
        let s = &report.samples[0];
        assert!((s.ratio_box - (2.5 + 3.0 * 2f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!((s.ratio_dq - (2.5 + 3.0 * 2f64.sqrt()) / 4.0).abs() < 1e-9);
        assert!(s.flux.abs() < 1e-14);
    }

    #[test]
    fn probe_rejects_uncentered_profiles() {
        let f = LegendreSeries::new(AmbientDim::THREE, vec![0.0, 1.0, 1.0]);
        assert!(matches!(regularity_probe(&[&f], 2.0, 32), Err(Error::NotCentered(_))));
    }

    #[test]
    fn green_symmetry() {
        let dim = AmbientDim::new(4).unwrap();
        let f = LegendreSeries::new(dim, vec![0.3, 0.0, -1.0, 0.5, 0.2]);
        let g = LegendreSeries::new(dim, vec![1.0, 0.7, 0.0, -0.4, 0.0, 0.9]);
        let quad = JacobiQuadrature::new(dim, 16);
        assert!(green_defect(&f, &g, &quad).abs() < 1e-10);
    }
}

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::{harmonic_dimension_f64, AmbientDim, LegendreTable};
use crate::consts::omega;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order > 0, "quadrature order must be positive");
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let m = order.div_ceil(2);
    let nf = order as f64;
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(order, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_and_derivative(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..order {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = order as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Eigenvalues of the symmetric tridiagonal matrix with zero diagonal and
/// off-diagonal `off` (implicit QL with Wilkinson shifts).
fn tridiagonal_eigenvalues(mut off: Vec<f64>) -> Vec<f64> {
    let n = off.len() + 1;
    let mut d = vec![0.0f64; n];
    off.push(0.0);
    let e = &mut off;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 200, "tridiagonal eigenvalue iteration did not converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

/// Gauss rule for the weight `(1 - t^2)^((n-3)/2)` on `[-1, 1]`.
///
/// Nodes are the zeros of `P_Q^n`; weights follow from the Christoffel
/// function of the normalised Legendre system, so the rule integrates
/// polynomials of degree `<= 2Q - 1` exactly and `sum w_q = omega_n / omega_(n-1)`.
#[derive(Debug)]
pub struct JacobiQuadrature {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    refined: OnceLock<Box<JacobiQuadrature>>,
}

impl Clone for JacobiQuadrature {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            nodes: self.nodes.clone(),
            weights: self.weights.clone(),
            refined: OnceLock::new(),
        }
    }
}

/// A computed Funk-Hecke coefficient with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientEstimate {
    pub value: f64,
    pub error: f64,
}

impl JacobiQuadrature {
    pub fn new(n: AmbientDim, order: usize) -> Self {
        Self::with_dim(n.get(), order)
    }

    /// The default rule for harmonic degrees up to `kmax`: order `2 kmax + 8`.
    pub fn for_degree(n: AmbientDim, kmax: usize) -> Self {
        Self::new(n, 2 * kmax + 8)
    }

    pub(crate) fn with_dim(dim: usize, order: usize) -> Self {
        assert!(dim >= 2 && order > 0);
        let (nodes, weights) = if dim == 3 {
            gauss_legendre(order)
        } else {
            gegenbauer_rule(dim, order)
        };
        Self { dim, nodes, weights, refined: OnceLock::new() }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_{-1}^1 f(t) (1 - t^2)^((n-3)/2) dt`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    /// Integral over the sphere of the zonal function with profile `f`:
    /// `omega_(n-1) int f(t) (1 - t^2)^((n-3)/2) dt`.
    pub fn sphere_integral(&self, f: impl FnMut(f64) -> f64) -> f64 {
        omega(self.dim - 1) * self.integrate(f)
    }

    /// A rule of roughly 1.5 times the order, used for error estimates.
    pub fn refined(&self) -> &JacobiQuadrature {
        self.refined
            .get_or_init(|| Box::new(JacobiQuadrature::with_dim(self.dim, self.order() * 3 / 2 + 4)))
    }
}

fn gegenbauer_rule(dim: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let table = LegendreTable::with_dim(dim, order);
    // Jacobi matrix in the orthonormal basis: J_{k,k+1} = sqrt(N_k / N_{k+1}) / alpha_k.
    let off: Vec<f64> = (0..order - 1)
        .map(|k| {
            (harmonic_dimension_f64(dim, k) / harmonic_dimension_f64(dim, k + 1)).sqrt()
                / table.alpha(k)
        })
        .collect();
    let mut nodes = if order == 1 { vec![0.0] } else { tridiagonal_eigenvalues(off) };
    // Newton polish on P_Q.
    let mut p = vec![0.0; order + 1];
    for x in nodes.iter_mut() {
        for _ in 0..4 {
            let (v, d) = value_and_derivative(&table, order, *x, &mut p);
            if d == 0.0 {
                break;
            }
            let dx = v / d;
            *x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
    }
    // symmetrise
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -x;
        nodes[j] = x;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }
    // Christoffel weights: w = 1 / sum_k P_k(x)^2 / ||P_k||^2, ||P_k||^2 = omega_n / (N_k omega_{n-1}).
    let ratio = omega(dim - 1) / omega(dim);
    let weights = nodes
        .iter()
        .map(|&x| {
            let mut vals = vec![0.0; order];
            table.fill(x, &mut vals);
            let s: f64 = vals
                .iter()
                .enumerate()
                .map(|(k, v)| harmonic_dimension_f64(dim, k) * ratio * v * v)
                .sum();
            1.0 / s
        })
        .collect();
    (nodes, weights)
}

fn value_and_derivative(table: &LegendreTable, k: usize, x: f64, p: &mut [f64]) -> (f64, f64) {
    table.fill(x, &mut p[..=k]);
    // derivative via (1 - x^2) P_k' = beta-type relation; use the differentiated recurrence instead
    let mut d0 = 0.0;
    let mut d1 = 1.0;
    if k == 0 {
        return (p[0], 0.0);
    }
    for j in 1..k {
        let d2 = table.alpha(j) * (p[j] + x * d1) - table.beta(j) * d0;
        d0 = d1;
        d1 = d2;
    }
    (p[k], d1)
}

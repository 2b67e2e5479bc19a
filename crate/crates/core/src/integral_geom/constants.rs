//! Constants of the Crofton and kinematic formulas and of the mean section operators.

use serde::Serialize;

use num_rational::Rational64;

use crate::consts::{binomial, factorial, kappa, kappa_exact};
use crate::error::{Error, Result};

/// Flag coefficient `[a; b] = C(a, b) kappa_a / (kappa_b kappa_(a-b))`.
pub fn flag(a: usize, b: usize) -> f64 {
    if b > a {
        return 0.0;
    }
    binomial(a, b) * kappa(a as i32) / (kappa(b as i32) * kappa((a - b) as i32))
}

/// `c_(n,k)` of the Minkowski Crofton formula, `1 <= k <= n - 2`.
pub fn c_nk(n: usize, k: usize) -> Result<f64> {
    if n < 3 || k < 1 || k + 2 > n {
        return Err(Error::InvalidArgument(format!("c_(n,k) needs 1 <= k <= n - 2, got n = {n}, k = {k}")));
    }
    let (ni, ki) = (n as i32, k as i32);
    let num = (k * (n - k - 1) * (n - k + 1)) as f64
        * kappa(ni - ki - 2).powi(2)
        * kappa(ni - ki + 1)
        * kappa(ki);
    let den = (2 * (n - k) * (k + 1)) as f64 * kappa(ni - ki - 3) * kappa(ni - ki).powi(2) * kappa(ki - 1);
    Ok(num / den)
}

/// A constant of the form `r pi^e`.
pub type PiRational = (Rational64, i32);

fn kx(p: i32) -> Result<PiRational> {
    kappa_exact(p).ok_or_else(|| Error::InvalidArgument(format!("kappa_{p} vanishes")))
}

fn mul(a: PiRational, b: PiRational) -> PiRational {
    (a.0 * b.0, a.1 + b.1)
}

fn div(a: PiRational, b: PiRational) -> PiRational {
    (a.0 / b.0, a.1 - b.1)
}

/// `c_(n,k)` in exact arithmetic.
pub fn c_nk_exact(n: usize, k: usize) -> Result<PiRational> {
    c_nk(n, k)?;
    let (ni, ki) = (n as i32, k as i32);
    let int = |v: usize| (Rational64::from(v as i64), 0);
    let mut num = int(k * (n - k - 1) * (n - k + 1));
    for f in [kx(ni - ki - 2)?, kx(ni - ki - 2)?, kx(ni - ki + 1)?, kx(ki)?] {
        num = mul(num, f);
    }
    let mut den = int(2 * (n - k) * (k + 1));
    for f in [kx(ni - ki - 3)?, kx(ni - ki)?, kx(ni - ki)?, kx(ki - 1)?] {
        den = mul(den, f);
    }
    Ok(div(num, den))
}

/// `q_(n,i,j)` in exact arithmetic.
pub fn q_nij_exact(n: usize, i: usize, j: usize) -> Result<PiRational> {
    q_nij(n, i, j)?;
    let fact = (1..=i as i64).product::<i64>();
    let mut q = div((Rational64::from(1i64 << i), 0), mul((Rational64::from(fact), 0), kx(i as i32)?));
    for k in j..i + j {
        q = mul(q, c_nk_exact(n, k)?);
    }
    Ok(q)
}

/// `q_(n,i,j) = 2^i / (i! kappa_i) prod_(k=j)^(i+j-1) c_(n,k)`,
/// for `1 <= j <= n - 2` and `1 <= i <= n - j - 1`.
pub fn q_nij(n: usize, i: usize, j: usize) -> Result<f64> {
    if j < 1 || j + 2 > n || i < 1 || i + j + 1 > n {
        return Err(Error::InvalidArgument(format!("q_(n,i,j) undefined for n = {n}, i = {i}, j = {j}")));
    }
    let mut q = 2f64.powi(i as i32) / (factorial(i) * kappa(i as i32));
    for k in j..i + j {
        q *= c_nk(n, k)?;
    }
    Ok(q)
}

/// Constant of the mean section operator `M_j`, `2 <= j <= n`.
pub fn q_mean_section(n: usize, j: usize) -> Result<f64> {
    if j < 2 || j > n {
        return Err(Error::InvalidArgument(format!("mean section index {j} outside 2..={n}")));
    }
    let (ni, ji) = (n as i32, j as i32);
    Ok((j - 1) as f64 / (2.0 * std::f64::consts::PI * (n + 1 - j) as f64)
        * kappa(ji - 1)
        * kappa(ji - 2)
        * kappa(ni - ji)
        / (kappa(ji - 3) * kappa(ni - 2)))
}

/// Weight of the codimension-`i` flats of `R^n` that meet a ball of radius `r`.
pub fn flat_measure(n: usize, i: usize, r: f64) -> f64 {
    binomial(n, i) * kappa(n as i32) / kappa((n - i) as i32) * r.powi(i as i32)
}

/// Summary of the constants for given indices, for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricConstants {
    pub n: usize,
    pub kappa: Vec<f64>,
    pub omega: Vec<f64>,
    pub c: Vec<(usize, f64)>,
    pub q_mean_section: Vec<(usize, f64)>,
}

impl GeometricConstants {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            kappa: (-1..=n as i32).map(kappa).collect(),
            omega: (1..=n).map(crate::consts::omega).collect(),
            c: (1..n.saturating_sub(1)).filter_map(|k| c_nk(n, k).ok().map(|c| (k, c))).collect(),
            q_mean_section: (2..=n).filter_map(|j| q_mean_section(n, j).ok().map(|q| (j, q))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn low_dimensional_values() {
        assert!((c_nk(3, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((q_nij(3, 1, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((flag(2, 1) - PI / 2.0).abs() < 1e-15);
        assert!((q_mean_section(3, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!((q_mean_section(3, 3).unwrap() - 1.0).abs() < 1e-15);
        assert!(c_nk(3, 2).is_err());
        assert!(q_nij(3, 2, 1).is_err());
    }

    #[test]
    fn exact_constants() {
        assert_eq!(c_nk_exact(3, 1).unwrap(), (Rational64::from(1), 0));
        assert_eq!(q_nij_exact(3, 1, 1).unwrap(), (Rational64::from(1), 0));
        for n in 4..8 {
            for k in 1..=n - 2 {
                let (r, e) = c_nk_exact(n, k).unwrap();
                let v = *r.numer() as f64 / *r.denom() as f64 * PI.powi(e);
                assert!((v - c_nk(n, k).unwrap()).abs() < 1e-12 * v, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn flag_identity() {
        // [n; i] kappa_(n-i) = C(n, i) kappa_n / kappa_i
        for n in 1..8 {
            for i in 0..=n {
                let lhs = flag(n, i) * kappa((n - i) as i32);
                let rhs = binomial(n, i) * kappa(n as i32) / kappa(i as i32);
                assert!((lhs - rhs).abs() < 1e-12 * rhs, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn flat_measure_of_unit_ball() {
        assert!((flat_measure(3, 1, 1.0) - 4.0).abs() < 1e-14);
        assert!((flat_measure(3, 2, 1.0) - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn higher_dimensional_constants_are_finite() {
        for n in 4..9 {
            for j in 1..=n - 2 {
                for i in 1..=n - j - 1 {
                    let q = q_nij(n, i, j).unwrap();
                    assert!(q.is_finite() && q > 0.0, "n={n} i={i} j={j}");
                }
            }
        }
    }
}

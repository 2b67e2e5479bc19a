//! The spherical pairing `(n-i)! i! / (n-1)! int h(u) box_n f(-u) du`.

use crate::consts::factorial;
use crate::error::{Error, Result};
use crate::harmonics::{harmonic_dimension_f64, JacobiQuadrature};
use crate::zonal::{box_n_apply, ZonalObject};

fn pairing_constant(n: usize, i: usize) -> Result<f64> {
    if i == 0 || i >= n {
        return Err(Error::InvalidArgument(format!("pairing degree {i} outside 1..{n}")));
    }
    Ok(factorial(n - i) * factorial(i) / factorial(n - 1))
}

fn check(h: &ZonalObject, f: &ZonalObject) -> Result<()> {
    if h.n() != f.n() {
        return Err(Error::DimensionMismatch { left: h.n().get(), right: f.n().get() });
    }
    for o in [h, f] {
        let a1 = o.multipliers().degree_one();
        if a1.abs() > 1e-9 * o.multipliers().values[0].abs().max(1.0) {
            return Err(Error::NotCentered(a1));
        }
    }
    Ok(())
}

fn is_polynomial(o: &ZonalObject) -> bool {
    o.is_pointwise() && o.density_terms().is_empty()
}

/// The pairing, by Gauss quadrature of the profiles when both are
/// polynomial and by the multiplier series otherwise.
pub fn poincare_pair(h: &ZonalObject, f: &ZonalObject, i: usize) -> Result<f64> {
    check(h, f)?;
    let n = h.n();
    let c = pairing_constant(n.get(), i)?;
    let bf = box_n_apply(f);
    if is_polynomial(h) && is_polynomial(&bf) {
        let deg = h.legendre_coeffs().len() + bf.legendre_coeffs().len();
        let quad = JacobiQuadrature::for_degree(n, deg);
        let (ph, pf) = (h.profile()?, bf.profile()?);
        return Ok(c * quad.sphere_integral(|t| ph.eval(t) * pf.eval(-t)));
    }
    poincare_pair_multipliers(h, f, i)
}

/// `c sum_k (-1)^k a_k[h] a_k[box_n f] N(n, k) / omega_n`, using `P_k(-t) = (-1)^k P_k(t)`.
pub fn poincare_pair_multipliers(h: &ZonalObject, f: &ZonalObject, i: usize) -> Result<f64> {
    check(h, f)?;
    let n = h.n();
    let c = pairing_constant(n.get(), i)?;
    let bf = box_n_apply(f);
    let m = h.kmax().min(bf.kmax());
    let w = n.sphere_area();
    let s: f64 = (0..=m)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * h.multipliers().values[k] * bf.multipliers().values[k] * harmonic_dimension_f64(n.get(), k) / w
        })
        .sum();
    Ok(c * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::AmbientDim;
    use std::f64::consts::PI;

    const N3: AmbientDim = AmbientDim::THREE;

    fn p(k: usize) -> ZonalObject {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        ZonalObject::legendre(N3, c, 10).unwrap()
    }

    #[test]
    fn second_legendre_polynomial() {
        let v = poincare_pair(&p(2), &p(2), 1).unwrap();
        assert!((v + 8.0 * PI / 5.0).abs() < 1e-13);
        assert!(poincare_pair(&p(2), &p(3), 1).unwrap().abs() < 1e-14);
        let m = poincare_pair_multipliers(&p(2), &p(2), 1).unwrap();
        assert!((m - v).abs() < 1e-13);
    }

    #[test]
    fn swap_symmetry() {
        let h = ZonalObject::legendre(N3, vec![0.3, 0.0, 1.0, 0.5, -0.2], 10).unwrap();
        let f = ZonalObject::legendre(N3, vec![-0.1, 0.0, 0.2, 0.7], 10).unwrap();
        let reflect = |o: &ZonalObject| {
            let c = o.legendre_coeffs().iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -c }).collect();
            ZonalObject::legendre(N3, c, 10).unwrap()
        };
        let a = poincare_pair(&h, &f, 1).unwrap();
        let b = poincare_pair(&reflect(&f), &reflect(&h), 2).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn uncentered_is_rejected() {
        assert!(matches!(poincare_pair(&p(1), &p(2), 1), Err(Error::NotCentered(_))));
        assert!(poincare_pair(&p(2), &p(2), 3).is_err());
    }
}

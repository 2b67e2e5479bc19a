//! Unit-ball volumes, sphere areas and binomials.

use std::f64::consts::PI;

use num_rational::Rational64;

/// `kappa_p = r pi^e` with `r` rational, for every integer `p` where the
/// Gamma form `pi^(p/2) / Gamma(1 + p/2)` is finite and nonzero.
///
/// Even `p <= -2` hit a pole of the Gamma function (`kappa_p = 0`) and give `None`.
pub fn kappa_exact(p: i32) -> Option<(Rational64, i32)> {
    // kappa_p = 2 pi / p kappa_(p-2), anchored at kappa_0 = 1 and kappa_1 = 2
    let (mut r, mut e, mut q) = if p % 2 == 0 { (Rational64::from(1), 0, 0) } else { (Rational64::from(2), 0, 1) };
    if p % 2 == 0 && p < 0 {
        return None;
    }
    while q < p {
        q += 2;
        r *= Rational64::new(2, q as i64);
        e += 1;
    }
    while q > p {
        // kappa_(q-2) = q / (2 pi) kappa_q
        r *= Rational64::new(q as i64, 2);
        e -= 1;
        q -= 2;
    }
    Some((r, e))
}

/// Volume of the `p`-dimensional unit ball, `pi^(p/2) / Gamma(1 + p/2)`.
///
/// The Gamma form is used for every integer `p`, so `kappa(-1) = 1/pi`
/// and `kappa(p) = 0` for even `p <= -2`.
pub fn kappa(p: i32) -> f64 {
    match kappa_exact(p) {
        Some((r, e)) => *r.numer() as f64 / *r.denom() as f64 * PI.powi(e),
        None => 0.0,
    }
}

/// Surface area of the unit sphere `S^(n-1)` in `R^n`, i.e. `n * kappa(n)`.
pub fn omega(n: usize) -> f64 {
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        n => n as f64 * kappa(n as i32),
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dimensional_ball_volumes() {
        assert_eq!(kappa(0), 1.0);
        assert_eq!(kappa(1), 2.0);
        assert!((kappa(2) - PI).abs() < 1e-15);
        assert!((kappa(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((kappa(4) - PI * PI / 2.0).abs() < 1e-14);
        assert!((kappa(-1) - 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn kappa_matches_gamma() {
        use statrs::function::gamma::gamma;
        for p in -7..12 {
            let g = 1.0 + p as f64 / 2.0;
            let expected = if g <= 0.0 && g.fract() == 0.0 { 0.0 } else { PI.powf(p as f64 / 2.0) / gamma(g) };
            assert!((kappa(p) - expected).abs() < 1e-12 * expected.abs().max(1.0), "p={p}");
        }
    }

    #[test]
    fn kappa_recurrence() {
        // kappa(p) = 2 pi / p * kappa(p - 2)
        for p in 1..12 {
            let lhs = kappa(p);
            let rhs = 2.0 * PI / p as f64 * kappa(p - 2);
            assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0), "p={p}");
        }
    }

    #[test]
    fn sphere_areas() {
        assert!((omega(3) - 4.0 * PI).abs() < 1e-14);
        assert!((omega(4) - 2.0 * PI * PI).abs() < 1e-12);
        assert!((omega(5) - 8.0 * PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
        assert_eq!(factorial(5), 120.0);
    }
}

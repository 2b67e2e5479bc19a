//! Exact rational multipliers.

use num_rational::Rational64;

/// `box_n` multiplier `(1 - k)(k + n - 1) / (n - 1)`.
pub fn box_multiplier_exact(n: usize, k: usize) -> Rational64 {
    let (n, k) = (n as i64, k as i64);
    Rational64::new((1 - k) * (k + n - 1), n - 1)
}

/// Native Berg multiplier `a_k^j[g_j] = (j - 1) / ((1 - k)(k + j - 1))`, zero at `k = 1`.
pub fn berg_multiplier_exact(j: usize, k: usize) -> Rational64 {
    if k == 1 {
        return Rational64::from_integer(0);
    }
    let (j, k) = (j as i64, k as i64);
    Rational64::new(j - 1, (1 - k) * (k + j - 1))
}

/// Multipliers of `tau_e`, the pole Dirac with its degree-1 part removed.
pub fn tau_multiplier_exact(k: usize) -> Rational64 {
    Rational64::from_integer(if k == 1 { 0 } else { 1 })
}

pub fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

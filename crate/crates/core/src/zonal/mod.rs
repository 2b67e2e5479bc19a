//! The convolution algebra of zonal functions and measures on `S^(n-1)`.
//!
//! A [`ZonalObject`] keeps both its structure (atoms of the pushforward to
//! `[-1, 1]`, density terms) and its Funk-Hecke multipliers `a_k`. The
//! multipliers are authoritative for the algebra; the structure is used for
//! pointwise evaluation and is dropped when an operation cannot preserve it.

mod berg;
mod exact;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::consts::omega;
use crate::error::{Error, Result};
use crate::harmonics::{gauss_legendre, harmonic_dimension, AmbientDim, LegendreTable};

pub use berg::{berg, berg_profile, box_j_apply, BergFunction, DEFAULT_BERG_TERMS};
pub use exact::{berg_multiplier_exact, box_multiplier_exact, tau_multiplier_exact, to_f64};

/// Default maximal harmonic degree.
pub const DEFAULT_KMAX: usize = 32;

/// Funk-Hecke multipliers `a_0..a_kmax` with per-degree error bars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierSequence {
    pub n: AmbientDim,
    pub values: Vec<f64>,
    #[serde(default)]
    pub errors: Vec<f64>,
}

impl MultiplierSequence {
    pub fn new(n: AmbientDim, values: Vec<f64>) -> Self {
        let errors = vec![0.0; values.len()];
        Self { n, values, errors }
    }

    pub fn with_errors(n: AmbientDim, values: Vec<f64>, errors: Vec<f64>) -> Self {
        assert_eq!(values.len(), errors.len());
        Self { n, values, errors }
    }

    pub fn kmax(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> Result<f64> {
        self.values
            .get(k)
            .copied()
            .ok_or(Error::DegreeOutOfRange { degree: k, kmax: self.kmax() })
    }

    pub fn degree_one(&self) -> f64 {
        self.values.get(1).copied().unwrap_or(0.0)
    }

    pub fn max_error(&self) -> f64 {
        self.errors.iter().fold(0.0, |m, e| m.max(*e))
    }

    fn zeros(n: AmbientDim, kmax: usize) -> Self {
        Self::new(n, vec![0.0; kmax + 1])
    }

    fn truncate(&self, kmax: usize) -> Self {
        let m = (kmax + 1).min(self.values.len());
        Self::with_errors(self.n, self.values[..m].to_vec(), self.errors[..m].to_vec())
    }

    fn product(&self, other: &Self) -> Self {
        let m = self.values.len().min(other.values.len());
        let values = (0..m).map(|k| self.values[k] * other.values[k]).collect();
        let errors = (0..m)
            .map(|k| {
                self.values[k].abs() * other.errors[k] + other.values[k].abs() * self.errors[k]
            })
            .collect();
        Self::with_errors(self.n, values, errors)
    }

    fn sum(&self, other: &Self) -> Self {
        let m = self.values.len().min(other.values.len());
        let values = (0..m).map(|k| self.values[k] + other.values[k]).collect();
        let errors = (0..m).map(|k| self.errors[k] + other.errors[k]).collect();
        Self::with_errors(self.n, values, errors)
    }

    fn scaled(&self, s: f64) -> Self {
        Self::with_errors(
            self.n,
            self.values.iter().map(|v| v * s).collect(),
            self.errors.iter().map(|e| e * s.abs()).collect(),
        )
    }

    /// Apply a degree-wise factor.
    pub fn map_degrees(&self, f: impl Fn(usize) -> f64) -> Self {
        Self::with_errors(
            self.n,
            self.values.iter().enumerate().map(|(k, v)| v * f(k)).collect(),
            self.errors.iter().enumerate().map(|(k, e)| e * f(k).abs()).collect(),
        )
    }
}

/// Point mass of the pushforward measure on `[-1, 1]`; `t = 1` is the pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub t: f64,
    pub mass: f64,
}

/// Non-polynomial density pieces with known profiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityTerm {
    /// `scale * |t| / 2`.
    AbsHalf { scale: f64 },
    /// `scale * c_j * max(0, t - cos(1/j))^2`, with unit integral before scaling.
    Bump { j: u32, scale: f64 },
    /// `scale * g_2` on the circle, truncated after `terms` Fourier modes.
    Berg { j: usize, scale: f64, terms: usize },
}

impl DensityTerm {
    fn scaled(&self, s: f64) -> Self {
        match *self {
            DensityTerm::AbsHalf { scale } => DensityTerm::AbsHalf { scale: scale * s },
            DensityTerm::Bump { j, scale } => DensityTerm::Bump { j, scale: scale * s },
            DensityTerm::Berg { j, scale, terms } => DensityTerm::Berg { j, scale: scale * s, terms },
        }
    }

    fn value(&self, n: usize, t: f64) -> f64 {
        match *self {
            DensityTerm::AbsHalf { scale } => scale * t.abs() / 2.0,
            DensityTerm::Bump { j, scale } => {
                let c = bump_normalisation(n, j);
                let d = (t - (1.0 / j as f64).cos()).max(0.0);
                scale * c * d * d
            }
            DensityTerm::Berg { scale, terms, .. } => scale * berg_profile(t, terms),
        }
    }

    fn multipliers(&self, n: AmbientDim, kmax: usize) -> MultiplierSequence {
        match *self {
            DensityTerm::AbsHalf { scale } => {
                let (v, e) = theta_multipliers(n, kmax, &[0.0, PI / 2.0, PI], |t| t.abs() / 2.0);
                MultiplierSequence::with_errors(n, v, e).scaled(scale)
            }
            DensityTerm::Bump { j, scale } => {
                let c = bump_normalisation(n.get(), j);
                let r = 1.0 / j as f64;
                let cr = r.cos();
                let (v, e) = theta_multipliers(n, kmax, &[0.0, r], |t| {
                    let d = (t - cr).max(0.0);
                    d * d
                });
                MultiplierSequence::with_errors(n, v, e).scaled(scale * c)
            }
            DensityTerm::Berg { scale, terms, .. } => {
                berg::truncated_circle_multipliers(n, kmax, terms).scaled(scale)
            }
        }
    }
}

fn bump_normalisation(n: usize, j: u32) -> f64 {
    let r = 1.0 / j as f64;
    let cr = r.cos();
    let (x, w) = gauss_legendre(48);
    let mass: f64 = x
        .iter()
        .zip(&w)
        .map(|(x, w)| {
            let th = 0.5 * r * (x + 1.0);
            let d = th.cos() - cr;
            0.5 * r * w * d * d * th.sin().powi(n as i32 - 2)
        })
        .sum();
    1.0 / (omega(n - 1) * mass)
}

/// `a_k = omega_(n-1) int_0^pi f(cos th) P_k(cos th) sin^(n-2) th d th`, piecewise
/// Gauss-Legendre in `th` between the given breakpoints; errors are the
/// difference to a rule of twice the order.
fn theta_multipliers(
    n: AmbientDim,
    kmax: usize,
    breaks: &[f64],
    f: impl Fn(f64) -> f64,
) -> (Vec<f64>, Vec<f64>) {
    let table = LegendreTable::new(n, kmax);
    let base = kmax + 48;
    let run = |order: usize| {
        let (x, w) = gauss_legendre(order);
        let mut acc = vec![0.0; kmax + 1];
        let mut p = vec![0.0; kmax + 1];
        for piece in breaks.windows(2) {
            let (a, b) = (piece[0], piece[1]);
            let h = 0.5 * (b - a);
            for (x, w) in x.iter().zip(&w) {
                let th = a + h * (x + 1.0);
                let t = th.cos();
                let s = h * w * f(t) * th.sin().powi(n.get() as i32 - 2);
                table.fill(t, &mut p);
                for (a, p) in acc.iter_mut().zip(&p) {
                    *a += s * p;
                }
            }
        }
        let w = omega(n.get() - 1);
        acc.iter_mut().for_each(|a| *a *= w);
        acc
    };
    let coarse = run(base);
    let fine = run(2 * base);
    let errors = coarse.iter().zip(&fine).map(|(c, f)| (c - f).abs()).collect();
    (fine, errors)
}

/// Zonal function or measure on `S^(n-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalObject {
    n: AmbientDim,
    atoms: Vec<Atom>,
    legendre: Vec<f64>,
    terms: Vec<DensityTerm>,
    multipliers: MultiplierSequence,
    structured: bool,
}

impl ZonalObject {
    fn from_structure(
        n: AmbientDim,
        atoms: Vec<Atom>,
        legendre: Vec<f64>,
        terms: Vec<DensityTerm>,
        kmax: usize,
    ) -> Result<Self> {
        for a in &atoms {
            if !(-1.0..=1.0).contains(&a.t) || !a.mass.is_finite() {
                return Err(Error::InvalidArgument(format!("invalid atom at t = {}", a.t)));
            }
        }
        if legendre.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite Legendre coefficient".into()));
        }
        let mut mult = MultiplierSequence::zeros(n, kmax);
        let table = LegendreTable::new(n, kmax);
        let mut p = vec![0.0; kmax + 1];
        for a in &atoms {
            table.fill(a.t, &mut p);
            for (m, p) in mult.values.iter_mut().zip(&p) {
                *m += a.mass * p;
            }
        }
        let w = n.sphere_area();
        for (k, c) in legendre.iter().enumerate().take(kmax + 1) {
            mult.values[k] += c * w / harmonic_dimension(n, k) as f64;
        }
        for term in &terms {
            mult = mult.sum(&term.multipliers(n, kmax));
        }
        Ok(Self { n, atoms, legendre, terms, multipliers: mult, structured: true })
    }

    /// Object known only through its multipliers.
    pub fn from_multipliers(multipliers: MultiplierSequence) -> Self {
        Self {
            n: multipliers.n,
            atoms: Vec::new(),
            legendre: Vec::new(),
            terms: Vec::new(),
            multipliers,
            structured: false,
        }
    }

    pub fn zero(n: AmbientDim, kmax: usize) -> Self {
        Self::from_structure(n, Vec::new(), Vec::new(), Vec::new(), kmax).expect("zero object")
    }

    pub fn atoms(n: AmbientDim, atoms: Vec<Atom>, kmax: usize) -> Result<Self> {
        Self::from_structure(n, atoms, Vec::new(), Vec::new(), kmax)
    }

    /// Point mass `mass * delta` at the point with `u . e = t`.
    pub fn dirac(n: AmbientDim, t: f64, mass: f64, kmax: usize) -> Result<Self> {
        Self::atoms(n, vec![Atom { t, mass }], kmax)
    }

    /// The identity of convolution.
    pub fn dirac_pole(n: AmbientDim, kmax: usize) -> Self {
        Self::dirac(n, 1.0, 1.0, kmax).expect("pole atom")
    }

    /// Uniform measure on the equator `S^(n-2)`, total mass `omega_(n-1)`.
    pub fn equator(n: AmbientDim, kmax: usize) -> Self {
        Self::dirac(n, 0.0, omega(n.get() - 1), kmax).expect("equator atom")
    }

    /// Density `sum_k c_k P_k^n(t)`.
    pub fn legendre(n: AmbientDim, coeffs: Vec<f64>, kmax: usize) -> Result<Self> {
        Self::from_structure(n, Vec::new(), coeffs, Vec::new(), kmax)
    }

    pub fn constant(n: AmbientDim, c: f64, kmax: usize) -> Self {
        Self::legendre(n, vec![c], kmax).expect("constant density")
    }

    /// Density `|t| / 2`; convolving `S_(n-1)` with it gives the projection body.
    pub fn abs_half(n: AmbientDim, kmax: usize) -> Self {
        Self::from_structure(n, Vec::new(), Vec::new(), vec![DensityTerm::AbsHalf { scale: 1.0 }], kmax)
            .expect("abs_half density")
    }

    pub fn with_terms(
        n: AmbientDim,
        atoms: Vec<Atom>,
        legendre: Vec<f64>,
        terms: Vec<DensityTerm>,
        kmax: usize,
    ) -> Result<Self> {
        Self::from_structure(n, atoms, legendre, terms, kmax)
    }

    pub fn n(&self) -> AmbientDim {
        self.n
    }

    pub fn kmax(&self) -> usize {
        self.multipliers.kmax()
    }

    pub fn multipliers(&self) -> &MultiplierSequence {
        &self.multipliers
    }

    pub fn multiplier(&self, k: usize) -> Result<f64> {
        self.multipliers.get(k)
    }

    pub fn atom_list(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn legendre_coeffs(&self) -> &[f64] {
        &self.legendre
    }

    pub fn density_terms(&self) -> &[DensityTerm] {
        &self.terms
    }

    /// Whether atoms and density terms describe the object exactly.
    pub fn is_structured(&self) -> bool {
        self.structured
    }

    /// A structured object without atoms: a continuous density with a profile.
    pub fn is_pointwise(&self) -> bool {
        self.structured && self.atoms.is_empty()
    }

    pub fn is_centered(&self, tol: f64) -> bool {
        self.multipliers.degree_one().abs() <= tol
    }

    /// Pure Legendre density (possibly zero).
    fn is_polynomial(&self) -> bool {
        self.structured && self.atoms.is_empty() && self.terms.is_empty()
    }

    /// Profile value of the density.
    pub fn value(&self, t: f64) -> Result<f64> {
        if !self.is_pointwise() {
            return Err(Error::NotPointwise(self.describe()));
        }
        let n = self.n.get();
        let mut v = 0.0;
        if !self.legendre.is_empty() {
            let mut p = vec![0.0; self.legendre.len()];
            LegendreTable::new(self.n, self.legendre.len() - 1).fill(t, &mut p);
            v += self.legendre.iter().zip(&p).map(|(c, p)| c * p).sum::<f64>();
        }
        for term in &self.terms {
            v += term.value(n, t);
        }
        Ok(v)
    }

    /// Reusable evaluator of the density profile, for hot loops.
    pub fn profile(&self) -> Result<Profile<'_>> {
        if !self.is_pointwise() {
            return Err(Error::NotPointwise(self.describe()));
        }
        let kmax = self.legendre.len().saturating_sub(1);
        Ok(Profile {
            obj: self,
            table: LegendreTable::new(self.n, kmax),
            buf: std::cell::RefCell::new(vec![0.0; self.legendre.len()]),
        })
    }

    /// Sup-norm bound on the pointwise truncation error of the profile.
    pub fn profile_error(&self) -> f64 {
        self.terms
            .iter()
            .map(|term| match *term {
                DensityTerm::Berg { scale, terms, .. } => scale.abs() * berg::circle_tail_bound(terms),
                _ => 0.0,
            })
            .sum()
    }

    fn describe(&self) -> String {
        if !self.structured {
            "object is known only through its multipliers".into()
        } else {
            format!("object has {} atoms", self.atoms.len())
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            atoms: self.atoms.iter().map(|a| Atom { t: a.t, mass: a.mass * s }).collect(),
            legendre: self.legendre.iter().map(|c| c * s).collect(),
            terms: self.terms.iter().map(|t| t.scaled(s)).collect(),
            multipliers: self.multipliers.scaled(s),
            structured: self.structured,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.n, other.n)?;
        let multipliers = self.multipliers.sum(&other.multipliers);
        if self.structured && other.structured {
            let mut legendre = vec![0.0; self.legendre.len().max(other.legendre.len())];
            for (i, c) in self.legendre.iter().enumerate() {
                legendre[i] += c;
            }
            for (i, c) in other.legendre.iter().enumerate() {
                legendre[i] += c;
            }
            Ok(Self {
                n: self.n,
                atoms: self.atoms.iter().chain(&other.atoms).copied().collect(),
                legendre,
                terms: self.terms.iter().chain(&other.terms).cloned().collect(),
                multipliers,
                structured: true,
            })
        } else {
            Ok(Self::from_multipliers(multipliers))
        }
    }

    /// Remove the degree-1 component by adding the density `-a_1 n / omega_n * t`.
    pub fn centered(&self) -> Self {
        let a1 = self.multipliers.degree_one();
        if a1 == 0.0 {
            return self.clone();
        }
        let mut out = self.clone();
        out.multipliers.values[1] = 0.0;
        if out.structured {
            if out.legendre.len() < 2 {
                out.legendre.resize(2, 0.0);
            }
            out.legendre[1] -= a1 * self.n.get() as f64 / self.n.sphere_area();
        }
        out
    }

    /// Restrict the multipliers to degrees `<= kmax`.
    pub fn truncated(&self, kmax: usize) -> Self {
        let mut out = self.clone();
        out.multipliers = self.multipliers.truncate(kmax);
        out
    }

    /// `l^2` mass of the Legendre coefficients beyond `kmax`.
    pub fn legendre_tail(&self, kmax: usize) -> f64 {
        self.legendre.iter().skip(kmax + 1).map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Profile evaluator returned by [`ZonalObject::profile`].
pub struct Profile<'a> {
    obj: &'a ZonalObject,
    table: LegendreTable,
    buf: std::cell::RefCell<Vec<f64>>,
}

impl Profile<'_> {
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(-1.0, 1.0);
        let mut v = 0.0;
        if !self.obj.legendre.is_empty() {
            let mut p = self.buf.borrow_mut();
            self.table.fill(t, &mut p);
            v += self.obj.legendre.iter().zip(p.iter()).map(|(c, p)| c * p).sum::<f64>();
        }
        let n = self.obj.n.get();
        for term in &self.obj.terms {
            v += term.value(n, t);
        }
        v
    }
}

fn check_dims(a: AmbientDim, b: AmbientDim) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a.get(), right: b.get() });
    }
    Ok(())
}

/// Zonal convolution; multipliers multiply degree by degree.
pub fn convolve(x: &ZonalObject, y: &ZonalObject) -> Result<ZonalObject> {
    check_dims(x.n, y.n)?;
    let multipliers = x.multipliers.product(&y.multipliers);
    let keep = |poly: &ZonalObject, other: &ZonalObject| -> Option<ZonalObject> {
        if !poly.is_polynomial() {
            return None;
        }
        let m = poly.legendre.len().min(other.multipliers.values.len());
        let legendre = (0..m).map(|k| poly.legendre[k] * other.multipliers.values[k]).collect();
        Some(ZonalObject {
            n: x.n,
            atoms: Vec::new(),
            legendre,
            terms: Vec::new(),
            multipliers: multipliers.clone(),
            structured: true,
        })
    };
    let pole_mass = |o: &ZonalObject| -> Option<f64> {
        (o.structured && o.legendre.iter().all(|c| *c == 0.0) && o.terms.is_empty())
            .then_some(())
            .and_then(|_| match o.atoms.as_slice() {
                [a] if a.t == 1.0 => Some(a.mass),
                _ => None,
            })
    };
    if let Some(r) = keep(x, y).or_else(|| keep(y, x)) {
        return Ok(r);
    }
    if let Some(m) = pole_mass(y) {
        let mut r = x.scale(m);
        r.multipliers = multipliers;
        return Ok(r);
    }
    if let Some(m) = pole_mass(x) {
        let mut r = y.scale(m);
        r.multipliers = multipliers;
        return Ok(r);
    }
    Ok(ZonalObject::from_multipliers(multipliers))
}

/// `box_n = 1 + Delta / (n - 1)`; its multiplier at degree `k` is
/// `(1 - k)(k + n - 1) / (n - 1)`.
pub fn box_multiplier(n: usize, k: usize) -> f64 {
    (1.0 - k as f64) * (k + n - 1) as f64 / (n as f64 - 1.0)
}

pub fn box_n_apply(x: &ZonalObject) -> ZonalObject {
    let n = x.n.get();
    let multipliers = x.multipliers.map_degrees(|k| box_multiplier(n, k));
    if x.is_polynomial() {
        let legendre = x.legendre.iter().enumerate().map(|(k, c)| c * box_multiplier(n, k)).collect();
        return ZonalObject { legendre, multipliers, ..x.clone() };
    }
    ZonalObject::from_multipliers(multipliers)
}

/// Multipliers `(1, 0, 1, 1, ...)` of `tau_e`.
pub fn tau_multipliers(n: AmbientDim, kmax: usize) -> MultiplierSequence {
    MultiplierSequence::new(n, (0..=kmax).map(|k| if k == 1 { 0.0 } else { 1.0 }).collect())
}

/// Nonnegative bump supported in the cap of geodesic radius `1/j` with unit integral.
pub fn approximate_identity(n: AmbientDim, j: u32, kmax: usize) -> Result<ZonalObject> {
    if j == 0 {
        return Err(Error::InvalidArgument("approximate identity index must be positive".into()));
    }
    ZonalObject::from_structure(n, Vec::new(), Vec::new(), vec![DensityTerm::Bump { j, scale: 1.0 }], kmax)
}

/// Named objects: `dirac_pole`, `dirac_antipole`, `equator`, `abs_half`, `const`,
/// `const:c`, `berg:j`, `bump:j`.
pub fn builtin(name: &str, n: AmbientDim, kmax: usize) -> Result<ZonalObject> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let parse_usize = |a: Option<&str>| -> Result<usize> {
        a.ok_or_else(|| Error::Parse(format!("builtin {name} needs an argument")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad argument in {name}")))
    };
    match head {
        "dirac_pole" => Ok(ZonalObject::dirac_pole(n, kmax)),
        "dirac_antipole" => ZonalObject::dirac(n, -1.0, 1.0, kmax),
        "equator" => Ok(ZonalObject::equator(n, kmax)),
        "abs_half" => Ok(ZonalObject::abs_half(n, kmax)),
        "const" => {
            let c = match arg {
                Some(a) => a.parse().map_err(|_| Error::Parse(format!("bad constant in {name}")))?,
                None => 1.0,
            };
            Ok(ZonalObject::constant(n, c, kmax))
        }
        "berg" => Ok(berg(parse_usize(arg)?, kmax, n, DEFAULT_BERG_TERMS)?.object()),
        "bump" => approximate_identity(n, parse_usize(arg)? as u32, kmax),
        _ => Err(Error::Parse(format!("unknown zonal builtin {name:?}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct ZonalRepr {
    n: AmbientDim,
    #[serde(default)]
    atoms: Vec<Atom>,
    #[serde(default)]
    legendre_coeffs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    terms: Vec<DensityTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multipliers: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multiplier_errors: Option<Vec<f64>>,
}

impl Serialize for ZonalObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = if self.structured {
            ZonalRepr {
                n: self.n,
                atoms: self.atoms.clone(),
                legendre_coeffs: self.legendre.clone(),
                terms: self.terms.clone(),
                kmax: Some(self.kmax()),
                multipliers: None,
                multiplier_errors: None,
            }
        } else {
            ZonalRepr {
                n: self.n,
                atoms: Vec::new(),
                legendre_coeffs: Vec::new(),
                terms: Vec::new(),
                kmax: None,
                multipliers: Some(self.multipliers.values.clone()),
                multiplier_errors: Some(self.multipliers.errors.clone()),
            }
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZonalObject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ZonalRepr::deserialize(d)?;
        ZonalObject::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<ZonalRepr> for ZonalObject {
    type Error = Error;

    fn try_from(r: ZonalRepr) -> Result<Self> {
        let has_structure = !r.atoms.is_empty() || !r.legendre_coeffs.is_empty() || !r.terms.is_empty();
        match (has_structure, r.multipliers) {
            (false, Some(values)) => {
                let errors = r.multiplier_errors.unwrap_or_else(|| vec![0.0; values.len()]);
                if errors.len() != values.len() {
                    return Err(Error::Parse("multiplier_errors length differs from multipliers".into()));
                }
                Ok(Self::from_multipliers(MultiplierSequence::with_errors(r.n, values, errors)))
            }
            (_, given) => {
                let kmax = r
                    .kmax
                    .or_else(|| given.as_ref().map(|g| g.len().saturating_sub(1)))
                    .unwrap_or(DEFAULT_KMAX);
                let obj = Self::from_structure(r.n, r.atoms, r.legendre_coeffs, r.terms, kmax)?;
                if let Some(g) = given {
                    let scale = 1.0 + obj.multipliers.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                    for (k, (a, b)) in g.iter().zip(&obj.multipliers.values).enumerate() {
                        if (a - b).abs() > 1e-10 * scale {
                            return Err(Error::Parse(format!(
                                "multiplier {k} ({a}) inconsistent with the structure ({b})"
                            )));
                        }
                    }
                }
                Ok(obj)
            }
        }
    }
}

//! SO(n) equivariant Minkowski valuations given by their generating zonal data:
//!
//! `h(Phi K) = c_0 + sum_(1 <= i <= n-2) S_i(K, .) * mu_i + S_(n-1)(K, .) * f + c_n V_n(K)`.

mod evaluate;
mod pairing;

use serde::{Deserialize, Serialize};

pub use evaluate::{
    evaluate, evaluate_at, evaluate_tol, steiner_derivative, valuation_identity_check, EvalMode, IdentityReport,
    SupportFunctionResult, SupportSample, DEFAULT_BAND, DEFAULT_EVAL_TOL,
};
pub use pairing::{poincare_pair, poincare_pair_multipliers};

use crate::error::{Error, Result};
use crate::harmonics::AmbientDim;
use crate::integral_geom::q_mean_section;
use crate::zonal::{berg, box_n_apply, builtin, convolve, MultiplierSequence, ZonalObject, DEFAULT_BERG_TERMS};

/// Generating data of a Minkowski valuation.
///
/// `mu[i - 1]` is the datum of degree `i` for `1 <= i <= n - 2`; `f_top` has degree `n - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiValuationSpec {
    pub n: AmbientDim,
    #[serde(default)]
    pub c0: f64,
    #[serde(default)]
    pub mu: Vec<ZonalObject>,
    #[serde(default)]
    pub f_top: Option<ZonalObject>,
    #[serde(default)]
    pub cn: f64,
}

/// Centering tolerance on `a_1`, relative to `a_0`.
const CENTER_TOL: f64 = 1e-9;

impl MinkowskiValuationSpec {
    pub fn zero(n: AmbientDim) -> Self {
        Self { n, c0: 0.0, mu: Vec::new(), f_top: None, cn: 0.0 }
    }

    /// Spec with the single datum `obj` at degree `1 <= i <= n - 1`.
    pub fn single(i: usize, obj: ZonalObject) -> Result<Self> {
        let n = obj.n();
        let mut s = Self::zero(n);
        s.set_piece(i, Some(obj))?;
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Self = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n.get();
        if !self.c0.is_finite() || !self.cn.is_finite() {
            return Err(Error::InvalidArgument("c0 and cn must be finite".into()));
        }
        if self.mu.len() > n.saturating_sub(2) {
            return Err(Error::InvalidArgument(format!(
                "{} measure data given, at most {} allowed for n = {n}",
                self.mu.len(),
                n.saturating_sub(2)
            )));
        }
        for (i, obj) in self.pieces() {
            if obj.n() != self.n {
                return Err(Error::DimensionMismatch { left: n, right: obj.n().get() });
            }
            let a1 = obj.multipliers().degree_one();
            let scale = obj.multipliers().values.first().map_or(0.0, |v| v.abs()).max(1.0);
            if a1.abs() > CENTER_TOL * scale {
                return Err(Error::NotCentered(a1));
            }
            if i == n - 1 && obj.is_structured() && !obj.is_pointwise() {
                return Err(Error::NotPointwise("the top-degree datum must be a density".into()));
            }
        }
        Ok(())
    }

    /// Datum of degree `i`, if present.
    pub fn piece(&self, i: usize) -> Option<&ZonalObject> {
        let n = self.n.get();
        if i == 0 || i >= n {
            None
        } else if i == n - 1 {
            self.f_top.as_ref()
        } else {
            self.mu.get(i - 1)
        }
    }

    pub fn set_piece(&mut self, i: usize, obj: Option<ZonalObject>) -> Result<()> {
        let n = self.n.get();
        if i == 0 || i >= n {
            return Err(Error::InvalidArgument(format!("no zonal datum of degree {i} for n = {n}")));
        }
        if i == n - 1 {
            self.f_top = obj;
        } else {
            if self.mu.len() < i {
                let kmax = obj.as_ref().map_or(crate::zonal::DEFAULT_KMAX, |o| o.kmax());
                self.mu.resize(i, ZonalObject::zero(self.n, kmax));
            }
            self.mu[i - 1] = obj.unwrap_or_else(|| ZonalObject::zero(self.n, self.mu[i - 1].kmax()));
        }
        Ok(())
    }

    /// Present data as `(degree, datum)`.
    pub fn pieces(&self) -> Vec<(usize, &ZonalObject)> {
        let mut out: Vec<(usize, &ZonalObject)> = self.mu.iter().enumerate().map(|(k, o)| (k + 1, o)).collect();
        if let Some(f) = &self.f_top {
            out.push((self.n.get() - 1, f));
        }
        out
    }

    /// Smallest multiplier range among the data.
    pub fn kmax(&self) -> Option<usize> {
        self.pieces().iter().map(|(_, o)| o.kmax()).min()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            c0: self.c0 * s,
            mu: self.mu.iter().map(|m| m.scale(s)).collect(),
            f_top: self.f_top.as_ref().map(|f| f.scale(s)),
            cn: self.cn * s,
        }
    }
}

/// `Lambda phi(K) = d/dt phi(K + tB)` at `t = 0` in the spec algebra: the
/// degree-`i` datum moves to degree `i - 1` with factor `i`, degree 1 becomes
/// the constant `a_0[mu_1]`, and `c_n V_n` becomes the constant top density `c_n`.
pub fn lambda_derivative(spec: &MinkowskiValuationSpec) -> MinkowskiValuationSpec {
    let n = spec.n.get();
    let mut out = MinkowskiValuationSpec::zero(spec.n);
    if let Some(m1) = spec.piece(1) {
        out.c0 = m1.multipliers().values[0];
    }
    for i in 2..n {
        if let Some(obj) = spec.piece(i) {
            out.set_piece(i - 1, Some(obj.scale(i as f64))).expect("degree in range");
        }
    }
    if spec.cn != 0.0 {
        let kmax = spec.kmax().unwrap_or(crate::zonal::DEFAULT_KMAX);
        let c = ZonalObject::constant(spec.n, spec.cn, kmax);
        let top = match out.f_top.take() {
            Some(f) => f.add(&c).expect("same dimension"),
            None => c,
        };
        out.f_top = Some(top);
    }
    out
}

/// Multipliers `a_k[Phi_1]` of a degree-one valuation: those of `box_n mu_1`.
pub fn degree1_multipliers(spec: &MinkowskiValuationSpec) -> Result<MultiplierSequence> {
    let n = spec.n.get();
    if spec.c0 != 0.0 || spec.cn != 0.0 || (2..n).any(|i| spec.piece(i).is_some_and(|o| !is_zero(o))) {
        return Err(Error::InvalidArgument("spec has data besides mu_1".into()));
    }
    let mu1 = spec.piece(1).ok_or_else(|| Error::InvalidArgument("spec has no mu_1".into()))?;
    let a1 = mu1.multipliers().degree_one();
    if a1.abs() > CENTER_TOL * mu1.multipliers().values[0].abs().max(1.0) {
        return Err(Error::NotCentered(a1));
    }
    let mut m = box_n_apply(mu1).multipliers().clone();
    m.values[1] = 0.0;
    Ok(m)
}

fn is_zero(o: &ZonalObject) -> bool {
    o.multipliers().values.iter().all(|v| *v == 0.0)
}

/// The datum `centered(nu) * g_n` whose degree-one valuation has the
/// multipliers of `nu` (with `a_1 = 0`).
pub fn schneider_datum(nu: &ZonalObject) -> Result<ZonalObject> {
    let g = berg(nu.n().get(), nu.kmax(), nu.n(), DEFAULT_BERG_TERMS)?;
    convolve(&nu.centered(), &g.object())
}

/// Mean section operator `M_j` as a spec, with the truncation bar of its datum.
pub fn mean_section_spec(n: AmbientDim, j: usize, kmax: usize) -> Result<(MinkowskiValuationSpec, f64)> {
    let q = q_mean_section(n.get(), j)?;
    let g = berg(j, kmax, n, DEFAULT_BERG_TERMS)?;
    let obj = g.object().scale(q);
    let bar = if obj.is_pointwise() { obj.profile_error() } else { q * g.ambient.max_error() };
    Ok((MinkowskiValuationSpec::single(n.get() + 1 - j, obj)?, bar))
}

/// Named specs: `projection_body`, `difference_body`, `mean_width_ball`, `mean_section:j`.
pub fn builtin_spec(name: &str, n: AmbientDim, kmax: usize) -> Result<MinkowskiValuationSpec> {
    let d = n.get();
    match name.split_once(':') {
        Some(("mean_section", j)) => {
            let j = j.parse().map_err(|_| Error::Parse(format!("bad index in {name}")))?;
            Ok(mean_section_spec(n, j, kmax)?.0)
        }
        _ => match name {
            "projection_body" => MinkowskiValuationSpec::single(d - 1, ZonalObject::abs_half(n, kmax)),
            "difference_body" => {
                let nu = builtin("dirac_pole", n, kmax)?.add(&builtin("dirac_antipole", n, kmax)?)?;
                MinkowskiValuationSpec::single(1, schneider_datum(&nu)?)
            }
            "mean_width_ball" => {
                MinkowskiValuationSpec::single(1, ZonalObject::constant(n, 2.0 / n.sphere_area(), kmax))
            }
            _ => Err(Error::Parse(format!("unknown valuation builtin {name:?}"))),
        },
    }
}

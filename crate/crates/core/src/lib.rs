//! Translation-invariant, rotation-equivariant Minkowski valuations on convex
//! polytopes, computed through zonal convolution on the unit sphere.
//!
//! The crate is organised bottom-up:
//!
//! - [`harmonics`]: Legendre polynomials of dimension `n`, Gauss rules for the
//!   weight `(1 - t^2)^((n-3)/2)`, zonal differential calculus and `C^k` norms.
//! - [`zonal`]: the commutative convolution algebra of zonal functions and
//!   measures (multipliers, the box operators, Berg functions).
//! - [`convex`]: polytopes in `R^3`, their normal cones, area measures and
//!   intrinsic volumes, slicing.
//! - [`valuation`]: the convolution representation of Minkowski valuations,
//!   the derivation operator and the spherical pairing.
//! - [`integral_geom`]: seeded Monte-Carlo integration over affine flats and
//!   rigid motions, Crofton and kinematic checks.

pub mod consts;
pub mod convex;
pub mod corpus;
pub mod error;
pub mod harmonics;
pub mod integral_geom;
pub mod valuation;
pub mod zonal;

pub use error::{Error, Result};
pub use harmonics::AmbientDim;

/// Points and directions in `R^3`.
pub type Vec3 = nalgebra::Vector3<f64>;

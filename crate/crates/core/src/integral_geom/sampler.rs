//! Random affine flats and rigid motions in `R^3`.

use nalgebra::{Matrix3, Quaternion, UnitQuaternion};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::constants::flat_measure;
use crate::convex::{slice_line, slice_plane, Line, Plane, Polytope};
use crate::error::{Error, Result};
use crate::Vec3;

/// Uniform random rotation, from a normalised Gaussian quaternion.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    loop {
        let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let q = Quaternion::new(g[0], g[1], g[2], g[3]);
        if q.norm() > 1e-12 {
            return UnitQuaternion::from_quaternion(q).to_rotation_matrix().into_inner();
        }
    }
}

/// Uniform point of the `d`-ball of radius `r`, `d <= 3`.
fn ball_point<R: Rng + ?Sized>(rng: &mut R, d: usize, r: f64) -> [f64; 3] {
    let mut g = [0.0; 3];
    loop {
        let mut s = 0.0f64;
        for x in g.iter_mut().take(d) {
            *x = rng.sample(StandardNormal);
            s += *x * *x;
        }
        if s > 1e-24 {
            let u: f64 = rng.random();
            let scale = r * u.powf(1.0 / d as f64) / s.sqrt();
            g.iter_mut().for_each(|x| *x *= scale);
            return g;
        }
    }
}

/// An affine flat of `R^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Flat {
    Space,
    Plane(Plane),
    Line(Line),
    Point(Vec3),
}

impl Flat {
    /// `P cap E`.
    pub fn section(&self, p: &Polytope) -> Polytope {
        match self {
            Flat::Space => p.clone(),
            Flat::Plane(e) => slice_plane(p, e),
            Flat::Line(l) => slice_line(p, l),
            Flat::Point(x) => {
                if !p.is_empty() && p.contains(x, 0.0) {
                    Polytope::point(*x)
                } else {
                    Polytope::empty()
                }
            }
        }
    }
}

/// Flats of codimension `codim` meeting the ball `B(center, radius)`, with
/// rotation-invariant directions and offsets uniform in the `codim`-ball.
/// Each draw carries the weight `C(3, codim) kappa_3 / kappa_(3-codim) radius^codim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatSampler {
    pub codim: usize,
    pub center: [f64; 3],
    pub radius: f64,
}

impl FlatSampler {
    pub fn new(codim: usize, center: Vec3, radius: f64) -> Result<Self> {
        if codim > 3 {
            return Err(Error::InvalidArgument(format!("codimension {codim} exceeds 3")));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!("sampling radius {radius} must be positive")));
        }
        Ok(Self { codim, center: [center.x, center.y, center.z], radius })
    }

    /// Smallest ball about the bounding-box centre of `p`, slightly inflated.
    pub fn enclosing(p: &Polytope, codim: usize) -> Result<Self> {
        let (lo, hi) = p.bounding_box().ok_or(Error::EmptyPolytope)?;
        let c = (lo + hi) / 2.0;
        let r = p.vertices().iter().map(|v| (v - c).norm()).fold(0.0, f64::max);
        Self::new(codim, c, r * (1.0 + 1e-9) + 1e-12)
    }

    pub fn weight(&self) -> f64 {
        flat_measure(3, self.codim, self.radius)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Flat {
        let c = Vec3::from(self.center);
        if self.codim == 0 {
            return Flat::Space;
        }
        let rot = random_rotation(rng);
        let b = ball_point(rng, self.codim, self.radius);
        let x = c + (0..self.codim).fold(Vec3::zeros(), |a, k| a + rot.column(k) * b[k]);
        match self.codim {
            1 => {
                let n: Vec3 = rot.column(0).into();
                Flat::Plane(Plane { normal: n, offset: n.dot(&x) })
            }
            2 => Flat::Line(Line { point: x, dir: rot.column(2).into() }),
            _ => Flat::Point(x),
        }
    }
}

/// Translation window of the motion sampler.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Window {
    /// The bounding box of `K - rho L`, redrawn for every rotation.
    Adaptive,
    /// A cube of side `side` about `c_K - rho c_L`.
    Cube { side: f64 },
}

impl Window {
    /// A cube that contains `K - rho L` for every rotation `rho`.
    pub fn enclosing_cube(k: &Polytope, l: &Polytope) -> Result<Self> {
        let r = |p: &Polytope| -> Result<f64> {
            let (lo, hi) = p.bounding_box().ok_or(Error::EmptyPolytope)?;
            // the containment test rotates bounding boxes, so use their half-diagonals
            Ok((hi - lo).norm() / 2.0)
        };
        Ok(Window::Cube { side: 2.0 * (r(k)? + r(l)?) * (1.0 + 1e-9) })
    }
}

/// One draw `g = (rho, x)` acting by `L -> rho L + x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Motion {
    pub rotation: Matrix3<f64>,
    pub shift: Vec3,
    /// Volume of the translation window.
    pub weight: f64,
    /// False when the window misses part of `K - rho L`.
    pub contained: bool,
}

/// Rigid motions with the rotation part a probability measure and the
/// translation part Lebesgue measure on the window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionSampler {
    pub window: Window,
    k_box: (Vec3, Vec3),
    l_box: (Vec3, Vec3),
}

impl MotionSampler {
    pub fn new(k: &Polytope, l: &Polytope, window: Window) -> Result<Self> {
        let k_box = k.bounding_box().ok_or(Error::EmptyPolytope)?;
        let l_box = l.bounding_box().ok_or(Error::EmptyPolytope)?;
        if let Window::Cube { side } = window {
            if !(side > 0.0) || !side.is_finite() {
                return Err(Error::InvalidArgument(format!("window side {side} must be positive")));
            }
        }
        Ok(Self { window, k_box, l_box })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Motion {
        let rot = random_rotation(rng);
        // box of rho L from its rotated bounding box corners
        let (a, b) = self.l_box;
        let mut rlo = Vec3::repeat(f64::INFINITY);
        let mut rhi = Vec3::repeat(f64::NEG_INFINITY);
        for m in 0..8 {
            let c = Vec3::new(
                if m & 1 == 0 { a.x } else { b.x },
                if m & 2 == 0 { a.y } else { b.y },
                if m & 4 == 0 { a.z } else { b.z },
            );
            let y = rot * c;
            rlo = rlo.inf(&y);
            rhi = rhi.sup(&y);
        }
        let need_lo = self.k_box.0 - rhi;
        let need_hi = self.k_box.1 - rlo;
        let (lo, hi, contained) = match self.window {
            Window::Adaptive => (need_lo, need_hi, true),
            Window::Cube { side } => {
                let c = (self.k_box.0 + self.k_box.1) / 2.0 - rot * ((a + b) / 2.0);
                let h = Vec3::repeat(side / 2.0);
                let (lo, hi) = (c - h, c + h);
                let ok = (0..3).all(|i| lo[i] <= need_lo[i] && need_hi[i] <= hi[i]);
                (lo, hi, ok)
            }
        };
        let u: [f64; 3] = std::array::from_fn(|_| rng.random());
        let shift = Vec3::new(
            lo.x + u[0] * (hi.x - lo.x),
            lo.y + u[1] * (hi.y - lo.y),
            lo.z + u[2] * (hi.z - lo.z),
        );
        let d = hi - lo;
        Motion { rotation: rot, shift, weight: d.x * d.y * d.z, contained }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rotations_are_orthogonal_and_unbiased() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut mean = Matrix3::zeros();
        let n = 20_000;
        for _ in 0..n {
            let r = random_rotation(&mut rng);
            assert!((r.transpose() * r - Matrix3::identity()).norm() < 1e-12);
            assert!((r.determinant() - 1.0).abs() < 1e-12);
            mean += r / n as f64;
        }
        // E[rho] = 0 for the Haar measure
        assert!(mean.abs().max() < 0.03);
    }

    #[test]
    fn ball_points_fill_the_ball() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 1..=3 {
            let n = 20_000;
            let mut inner = 0;
            for _ in 0..n {
                let p = ball_point(&mut rng, d, 2.0);
                let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
                assert!(r <= 2.0);
                inner += usize::from(r <= 1.0);
            }
            let frac = inner as f64 / n as f64;
            let expect = 0.5f64.powi(d as i32);
            assert!((frac - expect).abs() < 0.015, "d={d} frac={frac}");
        }
    }

    #[test]
    fn flats_meet_the_ball() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = Vec3::new(0.5, 0.5, 0.5);
        for codim in 1..=3 {
            let s = FlatSampler::new(codim, c, 1.0).unwrap();
            for _ in 0..200 {
                match s.sample(&mut rng) {
                    Flat::Plane(e) => assert!((e.normal.dot(&c) - e.offset).abs() <= 1.0),
                    Flat::Line(l) => {
                        let d = l.point - c;
                        assert!((d - l.dir * d.dot(&l.dir)).norm() <= 1.0 + 1e-12);
                    }
                    Flat::Point(x) => assert!((x - c).norm() <= 1.0),
                    Flat::Space => unreachable!(),
                }
            }
        }
        assert_eq!(FlatSampler::new(0, c, 1.0).unwrap().sample(&mut rng), Flat::Space);
        assert!(FlatSampler::new(4, c, 1.0).is_err());
    }

    #[test]
    fn windows_contain_the_contact_set() {
        let k = Polytope::unit_cube();
        let l = Polytope::unit_cube().scaled(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let big = MotionSampler::new(&k, &l, Window::enclosing_cube(&k, &l).unwrap()).unwrap();
        let small = MotionSampler::new(&k, &l, Window::Cube { side: 1.0 }).unwrap();
        for _ in 0..100 {
            assert!(big.sample(&mut rng).contained);
            assert!(!small.sample(&mut rng).contained);
        }
    }
}

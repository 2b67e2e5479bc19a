//! Polytopes in `R^3`: hulls, face lattices, area measures, intrinsic
//! volumes, sections.

mod area_measure;
mod hull;
mod polytope;
mod slice;
mod sphere;

pub use area_measure::{
    area_measure, steiner_area_measure, AreaMeasure, ArcPiece, Integral, NormalAtom, RegionPiece,
};
pub use hull::facet_planes_brute_force;
pub use polytope::{Constraint, Edge, Facet, IntrinsicVolumes, Polytope, Shape};
pub use slice::{intersect, slice_halfspace, slice_line, slice_plane, Halfspace, Line, Plane};
pub use sphere::{polygon_area, triangle_area, ArcGeom, SphereFn, DEFAULT_EVAL_BUDGET};

use crate::error::Result;

/// A convex body whose area measures are available in closed piecewise form.
pub trait ConvexBody {
    fn area_measure(&self, i: usize) -> Result<AreaMeasure>;
    fn volume(&self) -> f64;
    fn is_empty(&self) -> bool;
}

impl ConvexBody for Polytope {
    fn area_measure(&self, i: usize) -> Result<AreaMeasure> {
        area_measure(self, i)
    }

    fn volume(&self) -> f64 {
        Polytope::volume(self)
    }

    fn is_empty(&self) -> bool {
        Polytope::is_empty(self)
    }
}

/// Outer parallel body `P + tB`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelBody {
    pub polytope: Polytope,
    pub radius: f64,
}

impl ConvexBody for ParallelBody {
    fn area_measure(&self, i: usize) -> Result<AreaMeasure> {
        steiner_area_measure(&self.polytope, i, self.radius)
    }

    fn volume(&self) -> f64 {
        if self.polytope.is_empty() {
            return 0.0;
        }
        self.polytope.intrinsic_volumes().parallel_volume(self.radius)
    }

    fn is_empty(&self) -> bool {
        self.polytope.is_empty()
    }
}

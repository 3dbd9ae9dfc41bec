//! Circular separability of polygons and constrained largest inscribed
//! circles in preprocessed convex polygons.

pub mod fsvd;
pub mod hierarchy;
pub mod geom;
pub mod hull;
pub mod lift;
pub mod separability;
pub mod planar_map;
pub mod queries;
pub mod skeleton;

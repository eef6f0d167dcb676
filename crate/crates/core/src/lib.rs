//! COLREGs-compliant sampling subsets for RRT* ship collision avoidance.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`geom`]: North-East plane primitives, the polar ellipse radius and the
//!   waypoint turning-radius requirement.
//! - [`encounter`]: CPA/TCPA, the minimal ship domain, encounter
//!   classification and the compliant half-annulus region.
//! - [`sampling`]: inverse-CDF samplers for the (elliptical) half-annulus,
//!   rectangle rejection baselines, area gains and the switching threshold.
//! - [`planner`]: the RRT* loop with compliant sampling, feasibility checks,
//!   rewiring and path extraction.
//!
//! Angles are measured clockwise from North (marine convention). A unit
//! vector at angle `θ` is `(north, east) = (cos θ, sin θ)`.

#![no_std]
// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod encounter;
mod error;
pub mod geom;
mod math;
pub mod planner;
pub mod sampling;

pub use error::{Error, Result};

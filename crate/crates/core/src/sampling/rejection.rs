//! Baseline samplers: a bounding rectangle with rejection, and uniform
//! draws from a full ellipse.

use core::f64::consts::{FRAC_PI_2, TAU};

use super::RandomSource;
use crate::geom::{Angle, Point};
use crate::math::sqrt;
use crate::{Error, Result};

pub const DEFAULT_REJECTION_CAP: u64 = 1_000_000;

/// Rectangle with half-extents along `orientation` and a quarter turn clockwise of it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Rect {
    pub center: Point,
    pub half_length: f64,
    pub half_width: f64,
    pub orientation: Angle,
}

impl Rect {
    pub fn new(center: Point, half_length: f64, half_width: f64, orientation: Angle) -> Result<Self> {
        if !(half_length > 0.0 && half_width > 0.0 && half_length.is_finite() && half_width.is_finite()) {
            return Err(Error::invalid("rectangle extents must be positive"));
        }
        Ok(Rect {
            center,
            half_length,
            half_width,
            orientation,
        })
    }

    /// North-aligned square of side `2·half_side`.
    pub fn square(center: Point, half_side: f64) -> Result<Self> {
        Rect::new(center, half_side, half_side, Angle::ZERO)
    }

    pub fn area(&self) -> f64 {
        4.0 * self.half_length * self.half_width
    }

    pub fn draw(&self, rng: &mut RandomSource) -> Point {
        let x = rng.uniform_range(-self.half_length, self.half_length);
        let y = rng.uniform_range(-self.half_width, self.half_width);
        self.center + self.orientation.unit_vector() * x + self.orientation.rotated(FRAC_PI_2).unit_vector() * y
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RejectionDraw {
    pub point: Point,
    /// Draws discarded before `point` was accepted.
    pub rejected: u64,
}

/// Draws from `bounds` until `membership` accepts. Uniform over the accepted
/// region when the region lies inside `bounds`.
pub fn rejection_sample_rect<F>(
    bounds: &Rect,
    mut membership: F,
    rng: &mut RandomSource,
    cap: u64,
) -> Result<RejectionDraw>
where
    F: FnMut(Point) -> bool,
{
    let mut rejected = 0u64;
    loop {
        let p = bounds.draw(rng);
        if membership(p) {
            return Ok(RejectionDraw { point: p, rejected });
        }
        rejected += 1;
        if rejected > cap {
            return Err(Error::RegionTooSmall { rejections: rejected });
        }
    }
}

/// Uniform point of the full ellipse: a unit-disk draw stretched by the semi-axes.
pub fn sample_ellipse_uniform(center: Point, a: f64, b: f64, orientation: Angle, rng: &mut RandomSource) -> Point {
    let r = sqrt(rng.uniform());
    let t = Angle::wrap(TAU * rng.uniform());
    let unit = t.unit_vector();
    let x = a * r * unit.north;
    let y = b * r * unit.east;
    center + orientation.unit_vector() * x + orientation.rotated(FRAC_PI_2).unit_vector() * y
}

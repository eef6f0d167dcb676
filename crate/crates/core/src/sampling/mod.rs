//! Random variate generation over the compliant subsets.

mod annulus;
mod ellipse;
mod gain;
mod rejection;

pub use annulus::{inverse_cdf_radial, radial_cdf_paper, sample_half_annulus};
pub use ellipse::{
    elliptical_theta_cdf, elliptical_theta_density, invert_theta_cdf, sample_elliptical_half_annulus, EllipseHalf,
    EllipticalAnnulusSpec, InversionMethod, NewtonConfig, ThetaInversion,
};
pub use gain::{
    area_gain_annulus, area_gain_elliptical, area_gain_elliptical_exact, area_gain_half_annulus, half_ellipse_area,
    select_space, semicircle_area, switch_area_ratio, switch_threshold, SpaceSelection,
};
pub use rejection::{rejection_sample_rect, sample_ellipse_uniform, Rect, RejectionDraw, DEFAULT_REJECTION_CAP};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encounter::CompliantRegion;
use crate::geom::{ArcInterval, Point};
use crate::{Error, Result};

/// Seedable uniform stream. Identical seeds give identical streams.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn seed_from_u64(seed: u64) -> Self {
        RandomSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A draw from `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// A draw from `[lo, hi)`.
    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

/// Radial law used inside (elliptical) annuli.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SamplingMode {
    /// The linear-density radial law `f(x) = c_i + 2 c_o x` on the normalized radius.
    PaperFaithful,
    /// Density proportional to the radius, which is uniform in area.
    #[default]
    ExactAreaUniform,
}

/// An annulus sector around `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AnnulusSpec {
    pub center: Point,
    pub r_min: f64,
    pub r_max: f64,
    pub allowed_arc: ArcInterval,
}

impl AnnulusSpec {
    pub fn new(center: Point, r_min: f64, r_max: f64, allowed_arc: ArcInterval) -> Result<Self> {
        if !(r_min >= 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::invalid("annulus needs 0 ≤ r_min < r_max"));
        }
        if !center.is_finite() {
            return Err(Error::invalid("annulus center must be finite"));
        }
        Ok(AnnulusSpec {
            center,
            r_min,
            r_max,
            allowed_arc,
        })
    }

    pub fn from_region(region: &CompliantRegion) -> Self {
        AnnulusSpec {
            center: region.center,
            r_min: region.r_min,
            r_max: region.r_max,
            allowed_arc: region.allowed_arc,
        }
    }

    pub fn contains_with_tolerance(&self, p: Point, tol: f64) -> bool {
        let r = self.center.distance(p);
        if r < self.r_min - tol || r > self.r_max + tol {
            return false;
        }
        if self.allowed_arc.is_full() || r <= tol {
            return true;
        }
        self.allowed_arc
            .contains_with_tolerance(self.center.bearing_to(p), (tol / r).min(core::f64::consts::PI))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.contains_with_tolerance(p, 1e-9)
    }

    pub fn area(&self) -> f64 {
        0.5 * self.allowed_arc.span * (self.r_max * self.r_max - self.r_min * self.r_min)
    }
}

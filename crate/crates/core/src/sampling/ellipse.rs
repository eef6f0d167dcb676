//! Direct sampling of a concentric elliptical annulus: an ellipse with a
//! circular keep-out at its center.
//!
//! The polar angle (from the major axis) is drawn from the area-weighted law
//! with density `½(ρ(θ)² − r_min²)/A` by numerically inverting its CDF over
//! the first quadrant, then reflected into a quadrant. The radius is drawn on
//! `[r_min, ρ(θ)]` with the annulus radial law.

use core::f64::consts::{FRAC_PI_2, PI};

use super::annulus::inverse_unchecked;
use super::{RandomSource, SamplingMode};
use crate::geom::{ellipse_radius_unchecked, Angle, Point};
use crate::math::{atan, cos, sin, sqrt};
use crate::{Error, Result};

/// Which side of the major axis may be sampled. `Positive` is the side the
/// minor axis points to, a quarter turn clockwise from `orientation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EllipseHalf {
    Positive,
    Negative,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EllipticalAnnulusSpec {
    pub center: Point,
    /// Semi-major axis.
    pub a: f64,
    /// Semi-minor axis.
    pub b: f64,
    pub r_min: f64,
    /// Bearing of the major axis.
    pub orientation: Angle,
    pub half: EllipseHalf,
}

impl EllipticalAnnulusSpec {
    pub fn new(center: Point, a: f64, b: f64, r_min: f64, orientation: Angle, half: EllipseHalf) -> Result<Self> {
        check_axes(a, b, r_min)?;
        if !center.is_finite() {
            return Err(Error::invalid("ellipse center must be finite"));
        }
        Ok(EllipticalAnnulusSpec {
            center,
            a,
            b,
            r_min,
            orientation,
            half,
        })
    }

    /// The informed ellipse of all paths from `start` to `goal` no longer
    /// than `c_best`, with a keep-out of `r_min` around its center.
    pub fn informed(start: Point, goal: Point, c_best: f64, r_min: f64, half: EllipseHalf) -> Result<Self> {
        let c_min = start.distance(goal);
        if c_min == 0.0 {
            return Err(Error::DegenerateGeometry("start and goal coincide".into()));
        }
        if !(c_best > c_min) {
            return Err(Error::DegenerateGeometry(
                "c_best must exceed the straight-line distance".into(),
            ));
        }
        let a = 0.5 * c_best;
        let b = 0.5 * sqrt(c_best * c_best - c_min * c_min);
        EllipticalAnnulusSpec::new(start.lerp(goal, 0.5), a, b, r_min, start.bearing_to(goal), half)
    }

    /// Position in the ellipse frame: `x` along the major axis, `y` along the minor.
    fn local(&self, p: Point) -> (f64, f64) {
        let d = p - self.center;
        let u = self.orientation.unit_vector();
        let v = self.orientation.rotated(FRAC_PI_2).unit_vector();
        (d.dot(u), d.dot(v))
    }

    pub fn contains_with_tolerance(&self, p: Point, tol: f64) -> bool {
        let (x, y) = self.local(p);
        let r = sqrt(x * x + y * y);
        if r < self.r_min - tol {
            return false;
        }
        match self.half {
            EllipseHalf::Positive if y < -tol => return false,
            EllipseHalf::Negative if y > tol => return false,
            _ => {}
        }
        let (ea, eb) = (self.a + tol, self.b + tol);
        (x * x) / (ea * ea) + (y * y) / (eb * eb) <= 1.0
    }

    pub fn contains(&self, p: Point) -> bool {
        self.contains_with_tolerance(p, 1e-9)
    }

    pub fn area(&self) -> f64 {
        let full = PI * (self.a * self.b - self.r_min * self.r_min);
        match self.half {
            EllipseHalf::Both => full,
            _ => 0.5 * full,
        }
    }
}

fn check_axes(a: f64, b: f64, r_min: f64) -> Result<()> {
    if !(a.is_finite() && a >= b && b > r_min && r_min >= 0.0) {
        return Err(Error::invalid("elliptical annulus needs a ≥ b > r_min ≥ 0"));
    }
    Ok(())
}

/// CDF of the polar angle over one quadrant, `θ ∈ [0, π/2)`. Reaches 1/4 at
/// the quadrant edge.
///
/// `ab·atan(a tanθ / b) − θ r_min²` over `2π(ab − r_min²)`, evaluated as
/// `[ab·atan((a−b) sinθ cosθ / (b cos²θ + a sin²θ)) + θ(ab − r_min²)] / 2A`,
/// which is identical on the quadrant and loses no precision for `a ≈ b`.
pub fn elliptical_theta_cdf(theta: f64, a: f64, b: f64, r_min: f64) -> Result<f64> {
    check_axes(a, b, r_min)?;
    if !(0.0..FRAC_PI_2).contains(&theta) {
        return Err(Error::Domain(
            "polar angle must lie in [0, π/2): the tangent is singular at π/2".into(),
        ));
    }
    Ok(cdf(theta, a, b, r_min))
}

fn cdf(theta: f64, a: f64, b: f64, r_min: f64) -> f64 {
    let (s, c) = (sin(theta), cos(theta));
    let ab = a * b;
    let hole = ab - r_min * r_min;
    let excess = atan((a - b) * s * c / (b * c * c + a * s * s));
    (ab * excess + theta * hole) / (2.0 * PI * hole)
}

/// Density of the polar angle, the derivative of [`elliptical_theta_cdf`].
pub fn elliptical_theta_density(theta: f64, a: f64, b: f64, r_min: f64) -> f64 {
    let (s, c) = (sin(theta), cos(theta));
    let ab = a * b;
    let q = (b * c) * (b * c) + (a * s) * (a * s);
    (ab * ab / q - r_min * r_min) / (2.0 * PI * (ab - r_min * r_min))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            tol: 1e-10,
            max_iter: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum InversionMethod {
    Newton,
    Bisection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaInversion {
    pub theta: f64,
    pub residual: f64,
    pub iterations: usize,
    pub method: InversionMethod,
}

/// Solves `F(θ) = u` on the first quadrant for `u ∈ [0, 1/4)`.
///
/// Newton steps `θ ← θ − (F(θ) − u)/F'(θ)` inside a shrinking bracket; a step
/// leaving the bracket is replaced by its midpoint. If `max_iter` steps do not
/// reach `tol`, plain bisection on the bracket finishes the job.
pub fn invert_theta_cdf(u: f64, a: f64, b: f64, r_min: f64, config: NewtonConfig) -> Result<ThetaInversion> {
    check_axes(a, b, r_min)?;
    if !(0.0..0.25).contains(&u) {
        return Err(Error::invalid("u must lie in [0, 1/4)"));
    }
    if !(config.tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    Ok(invert_unchecked(u, a, b, r_min, config))
}

pub(crate) fn invert_unchecked(u: f64, a: f64, b: f64, r_min: f64, config: NewtonConfig) -> ThetaInversion {
    let (mut lo, mut hi) = (0.0f64, FRAC_PI_2);
    let mut theta = (2.0 * PI * u).clamp(0.0, FRAC_PI_2 * (1.0 - f64::EPSILON));
    for k in 0..config.max_iter {
        let f = cdf(theta, a, b, r_min) - u;
        if f.abs() < config.tol {
            return ThetaInversion {
                theta,
                residual: f,
                iterations: k,
                method: InversionMethod::Newton,
            };
        }
        if f < 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        let next = theta - f / elliptical_theta_density(theta, a, b, r_min);
        theta = if next > lo && next < hi && next.is_finite() {
            next
        } else {
            0.5 * (lo + hi)
        };
    }
    let mut iterations = config.max_iter;
    loop {
        let f = cdf(theta, a, b, r_min) - u;
        iterations += 1;
        if f.abs() < config.tol || hi - lo <= f64::EPSILON * hi {
            return ThetaInversion {
                theta,
                residual: f,
                iterations,
                method: InversionMethod::Bisection,
            };
        }
        if f < 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        theta = 0.5 * (lo + hi);
    }
}

/// A point of the elliptical annulus restricted to `spec.half`.
pub fn sample_elliptical_half_annulus(
    spec: &EllipticalAnnulusSpec,
    mode: SamplingMode,
    rng: &mut RandomSource,
) -> Point {
    let u = 0.25 * rng.uniform();
    let q = invert_unchecked(u, spec.a, spec.b, spec.r_min, NewtonConfig::default()).theta;
    // quadrants 0 and 1 lie on the positive side of the major axis
    let quadrant = match spec.half {
        EllipseHalf::Positive => rng.index(2),
        EllipseHalf::Negative => 2 + rng.index(2),
        EllipseHalf::Both => rng.index(4),
    };
    let phi = match quadrant {
        0 => q,
        1 => PI - q,
        2 => PI + q,
        _ => 2.0 * PI - q,
    };
    let rho = ellipse_radius_unchecked(spec.a, spec.b, q);
    let x = inverse_unchecked(rng.uniform(), spec.r_min, rho, mode);
    let r = spec.r_min + x * (rho - spec.r_min);
    spec.center.offset(spec.orientation.rotated(phi), r)
}

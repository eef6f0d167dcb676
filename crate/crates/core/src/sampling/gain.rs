//! Area ratios between sampling spaces and the rule for switching to the
//! elliptical half-annulus.

use core::f64::consts::PI;

use crate::math::sqrt;
use crate::{Error, Result};

fn check(r_min: f64, r_max: f64) -> Result<()> {
    if !(r_min >= 0.0 && r_max > r_min && r_max.is_finite()) {
        return Err(Error::invalid("needs 0 ≤ r_min < r_max"));
    }
    Ok(())
}

/// Bounding square (side `2 r_max`) over annulus area: `4 / (π(1 − ρ²))`.
pub fn area_gain_annulus(r_min: f64, r_max: f64) -> Result<f64> {
    check(r_min, r_max)?;
    let rho = r_min / r_max;
    Ok(4.0 / (PI * (1.0 - rho * rho)))
}

/// Same square over half the annulus.
pub fn area_gain_half_annulus(r_min: f64, r_max: f64) -> Result<f64> {
    Ok(2.0 * area_gain_annulus(r_min, r_max)?)
}

/// Full ellipse over elliptical annulus in closed form for an informed
/// ellipse whose focal distance is `2 r_max`:
/// `c·sqrt(c² − 4r_max²) / (c·sqrt(c² − 4r_max²) − 4r_min²)`.
pub fn area_gain_elliptical(c_best: f64, r_min: f64, r_max: f64) -> Result<f64> {
    if !(r_min >= 0.0 && r_max > 0.0) {
        return Err(Error::invalid("needs r_min ≥ 0 and r_max > 0"));
    }
    if !(c_best > 2.0 * r_max) {
        return Err(Error::Domain("c_best must exceed 2·r_max".into()));
    }
    let s = c_best * sqrt(c_best * c_best - 4.0 * r_max * r_max);
    let denom = s - 4.0 * r_min * r_min;
    if !(denom > 0.0) {
        return Err(Error::Domain("inner circle does not fit inside the ellipse".into()));
    }
    Ok(s / denom)
}

/// Full ellipse over elliptical annulus from the semi-axes: `ab / (ab − r_min²)`.
pub fn area_gain_elliptical_exact(a: f64, b: f64, r_min: f64) -> Result<f64> {
    if !(a >= b && b > r_min && r_min >= 0.0) {
        return Err(Error::invalid("needs a ≥ b > r_min ≥ 0"));
    }
    Ok(a * b / (a * b - r_min * r_min))
}

/// `γ = sqrt(c_min²/2 + sqrt(c_min⁴/4 + r_max⁴))`, the positive root of
/// `c²(c² − c_min²) = r_max⁴`.
pub fn switch_threshold(c_min: f64, r_max: f64) -> Result<f64> {
    if !(c_min >= 0.0 && r_max > 0.0 && c_min.is_finite() && r_max.is_finite()) {
        return Err(Error::invalid("needs c_min ≥ 0 and r_max > 0"));
    }
    let h = 0.5 * c_min * c_min;
    let r2 = r_max * r_max;
    Ok(sqrt(h + sqrt(h * h + r2 * r2)))
}

/// The switching test quantity `c·sqrt(c² − c_min²) / r_max²`; the
/// elliptical space is used while it is below 1.
pub fn switch_area_ratio(c_best: f64, c_min: f64, r_max: f64) -> Result<f64> {
    if !(c_best >= c_min && c_min >= 0.0 && r_max > 0.0) {
        return Err(Error::invalid("needs c_best ≥ c_min ≥ 0 and r_max > 0"));
    }
    Ok(c_best * sqrt(c_best * c_best - c_min * c_min) / (r_max * r_max))
}

pub fn half_ellipse_area(a: f64, b: f64) -> f64 {
    0.5 * PI * a * b
}

pub fn semicircle_area(r: f64) -> f64 {
    0.5 * PI * r * r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SpaceSelection {
    HalfAnnulus,
    EllipticalHalfAnnulus,
}

/// Half-annulus until a solution exists, then the elliptical half-annulus
/// while `c_best < γ`.
pub fn select_space(c_best: Option<f64>, c_min: f64, r_max: f64) -> Result<SpaceSelection> {
    let gamma = switch_threshold(c_min, r_max)?;
    Ok(match c_best {
        Some(c) if c < gamma => SpaceSelection::EllipticalHalfAnnulus,
        _ => SpaceSelection::HalfAnnulus,
    })
}

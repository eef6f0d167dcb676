use super::{AnnulusSpec, RandomSource, SamplingMode};
use crate::geom::Point;
use crate::math::sqrt;
use crate::{Error, Result};

fn check_radii(r_min: f64, r_max: f64) -> Result<()> {
    if !(r_min >= 0.0 && r_max > r_min && r_max.is_finite()) {
        return Err(Error::invalid("radial law needs 0 ≤ r_min < r_max"));
    }
    Ok(())
}

/// The linear-density radial CDF `F(x) = c_i x + c_o x²` on the normalized
/// radius `x ∈ [0, 1]`, with `c_i = r_min²/r_max²` and `c_o = 1 − c_i`.
pub fn radial_cdf_paper(x: f64, r_min: f64, r_max: f64) -> Result<f64> {
    check_radii(r_min, r_max)?;
    let c_i = (r_min * r_min) / (r_max * r_max);
    let c_o = (r_max * r_max - r_min * r_min) / (r_max * r_max);
    Ok(c_i * x + c_o * x * x)
}

/// Normalized radius `x ∈ [0, 1]` for a uniform draw `u`; the physical radius
/// is `r_min + x (r_max − r_min)`.
pub fn inverse_cdf_radial(u: f64, r_min: f64, r_max: f64, mode: SamplingMode) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::invalid("u must lie in [0, 1]"));
    }
    check_radii(r_min, r_max)?;
    Ok(inverse_unchecked(u, r_min, r_max, mode))
}

pub(crate) fn inverse_unchecked(u: f64, r_min: f64, r_max: f64, mode: SamplingMode) -> f64 {
    let x = match mode {
        SamplingMode::PaperFaithful => {
            // −k + sqrt(k² + u/c_o), rationalized to avoid cancellation
            let outer = r_max * r_max - r_min * r_min;
            let k = (r_min * r_min) / (2.0 * outer);
            let w = u * (r_max * r_max) / outer;
            if w == 0.0 {
                0.0
            } else {
                w / (k + sqrt(k * k + w))
            }
        }
        SamplingMode::ExactAreaUniform => {
            // r − r_min = u (r_max² − r_min²) / (r + r_min)
            let r = sqrt(r_min * r_min + u * (r_max * r_max - r_min * r_min));
            let denom = r + r_min;
            if denom == 0.0 {
                0.0
            } else {
                u * (r_max + r_min) / denom
            }
        }
    };
    x.clamp(0.0, 1.0)
}

/// A point in the annulus sector: angle uniform over the arc, radius from the
/// selected radial law.
pub fn sample_half_annulus(spec: &AnnulusSpec, mode: SamplingMode, rng: &mut RandomSource) -> Point {
    let bearing = spec.allowed_arc.at(rng.uniform());
    let x = inverse_unchecked(rng.uniform(), spec.r_min, spec.r_max, mode);
    let r = spec.r_min + x * (spec.r_max - spec.r_min);
    spec.center.offset(bearing, r)
}

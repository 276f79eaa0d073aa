//! Area functionals and majorization.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::disk::check_width;
use crate::error::{Error, Result};
use crate::polygon::validate_angles;

mod quadrature;

pub use quadrature::{hyperbolic_area_quadrature, MIN_CELLS};

/// Slack allowed on each prefix-sum comparison in [`majorizes`].
pub const PREFIX_SLACK: f64 = 1e-12;

/// Allowed difference between the totals of two compared spectra.
pub const TOTAL_TOL: f64 = 1e-10;

/// Euclidean area of the part of an ideal polygon cut off by the two radii
/// to the endpoints of a side of width `alpha` and the side itself:
/// `tan πα · [1 − π tan πα (1/2 − α)]`.
pub fn side_region_area(alpha: f64) -> Result<f64> {
    check_width(alpha)?;
    let t = (PI * alpha).tan();
    Ok(t * (1.0 - PI * t * (0.5 - alpha)))
}

/// Euclidean area of the ideal polygon with side widths `angles`.
pub fn euclidean_area(angles: &[f64]) -> Result<f64> {
    validate_angles(angles)?;
    angles.iter().map(|&a| side_region_area(a)).sum()
}

/// Largest Euclidean area of an ideal `n`-gon, attained by the regular one.
pub fn area_upper_bound(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::TooFewSides(n));
    }
    let n_f = n as f64;
    let t = (PI / n_f).tan();
    Ok(n_f * t * (1.0 - PI * (n_f - 2.0) / (2.0 * n_f) * t))
}

/// Hyperbolic area `π(n−2)/4` of an ideal `n`-gon under the metric
/// `|dz|/(1−|z|²)`.
pub fn hyperbolic_area_ideal(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::TooFewSides(n));
    }
    Ok(PI * (n as f64 - 2.0) / 4.0)
}

/// A vector sorted in decreasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleSpectrum {
    values: Vec<f64>,
}

impl AngleSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Running sums of the largest `1, 2, …, len` entries.
    pub fn prefix_sums(&self) -> Vec<f64> {
        self.values
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }
}

pub fn decreasing_rearrangement(values: &[f64]) -> Result<AngleSpectrum> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    for &value in values {
        if !value.is_finite() {
            return Err(Error::NonFinite {
                what: "spectrum entry",
                value,
            });
        }
        if value <= 0.0 {
            return Err(Error::NonPositive {
                what: "spectrum entry",
                value,
            });
        }
    }
    let mut values = values.to_vec();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    Ok(AngleSpectrum { values })
}

/// `x ≻ y`: every prefix sum of `x` is at least the matching prefix sum of
/// `y` (up to [`PREFIX_SLACK`]). Totals must agree within [`TOTAL_TOL`].
pub fn majorizes(x: &AngleSpectrum, y: &AngleSpectrum) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let (tx, ty) = (x.total(), y.total());
    if (tx - ty).abs() > TOTAL_TOL {
        return Err(Error::TotalMismatch {
            left: tx,
            right: ty,
        });
    }
    Ok(first_majorization_failure(x, y).is_none())
}

/// First prefix length `m` (1-based) where `x` falls short of `y`, with the
/// shortfall.
pub fn first_majorization_failure(x: &AngleSpectrum, y: &AngleSpectrum) -> Option<(usize, f64)> {
    x.prefix_sums()
        .into_iter()
        .zip(y.prefix_sums())
        .enumerate()
        .find(|(_, (sx, sy))| *sx < *sy - PREFIX_SLACK)
        .map(|(i, (sx, sy))| (i + 1, sy - sx))
}

/// `Σ F(β)` over the spectrum, `F` being [`side_region_area`].
pub fn schur_concave_sum(spectrum: &AngleSpectrum) -> Result<f64> {
    spectrum
        .values()
        .iter()
        .map(|&b| side_region_area(b))
        .sum()
}

//! Numerical hyperbolic area of an ideal polygon.
//!
//! The area element of `|dz|/(1−|z|²)` is `(1−|z|²)⁻² dx dy`. The polygon
//! contains the origin, so it splits into one polar sector per side: for a
//! direction `θ` over the side's arc, `r` runs from 0 to the distance
//! `ρ(θ)` at which the ray meets the side. Each sector is covered by a
//! midpoint-rule grid of polar cells:
//!
//! * in `θ`, cells are graded quadratically toward both endpoints (the
//!   cusps), where the radial integral grows like `|θ − θ_cusp|^{-1/2}`;
//! * in `r`, cells are graded geometrically toward `ρ(θ)`, down to a
//!   fraction of the width `1 − ρ²` over which the integrand peaks.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polygon::IdealPolygon;

/// Smallest accepted cell budget.
pub const MIN_CELLS: usize = 10_000;

/// Innermost radial cell width relative to `1 − ρ²`.
const INNER_FRACTION: f64 = 1e-3;

/// Distance from the origin to the side along a ray at angle `delta`
/// (radians) from the side's midpoint direction, returned as `(ρ, 1 − ρ²)`.
///
/// With `p = sec(πα)·cos δ` the nearer root of `|t·e − c| = tan πα` is
/// `t = 1/(p + √(p² − 1))`; `p − 1` is formed from a product of sines to
/// keep precision near the cusps.
fn ray_exit(half_width: f64, delta: f64) -> (f64, f64) {
    let d = delta.abs().min(half_width);
    let excess =
        2.0 / half_width.cos() * (0.5 * (half_width + d)).sin() * (0.5 * (half_width - d)).sin();
    let root = (excess * (2.0 + excess)).sqrt();
    let rho = 1.0 / (1.0 + excess + root);
    let gap = (excess + root) / (1.0 + excess + root);
    (rho, gap * (1.0 + rho))
}

/// Midpoint sum over the radial cells of one ray.
fn radial_integral(rho: f64, eta: f64, cells: usize) -> f64 {
    // w = 1 − r/ρ; cell 0 is [0, w_min], the rest are geometric up to 1
    let w_min = (INNER_FRACTION * eta / (rho * rho)).min(0.5);
    let ratio = (1.0 / w_min).powf(1.0 / (cells - 1) as f64);
    let rho2 = rho * rho;
    let integrand = |w: f64| {
        let r = rho * (1.0 - w);
        let one_minus_r2 = eta + rho2 * w * (2.0 - w);
        r / (one_minus_r2 * one_minus_r2)
    };
    let mut total = integrand(0.5 * w_min) * rho * w_min;
    let mut lo = w_min;
    for i in 1..cells {
        let hi = if i + 1 == cells { 1.0 } else { lo * ratio };
        total += integrand(0.5 * (lo + hi)) * rho * (hi - lo);
        lo = hi;
    }
    total
}

/// Hyperbolic area of `poly` by graded polar-cell quadrature using about
/// `cells` cells.
pub fn hyperbolic_area_quadrature(poly: &IdealPolygon, cells: usize) -> Result<f64> {
    if cells < MIN_CELLS {
        return Err(Error::ResolutionTooLow {
            cells,
            min: MIN_CELLS,
        });
    }
    let n = poly.n();
    let per_side = cells / n;
    let rows = ((per_side as f64).sqrt().floor() as usize).max(2);
    let radial = (per_side / rows).max(2);

    let sums: Vec<f64> = (0..n * rows)
        .into_par_iter()
        .map(|idx| {
            let (side, row) = (idx / rows, idx % rows);
            let half_width = PI * poly.angles()[side];
            // u ↦ θ offset in [−πα, πα], quadratic near both ends
            let u = (row as f64 + 0.5) / rows as f64;
            let (g, dg) = if u <= 0.5 {
                (2.0 * u * u, 4.0 * u)
            } else {
                (1.0 - 2.0 * (1.0 - u) * (1.0 - u), 4.0 * (1.0 - u))
            };
            let delta = half_width * (2.0 * g - 1.0);
            let dtheta = 2.0 * half_width * dg / rows as f64;
            let (rho, eta) = ray_exit(half_width, delta);
            radial_integral(rho, eta, radial) * dtheta
        })
        .collect();
    Ok(sums.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::hyperbolic_area_ideal;

    #[test]
    fn ray_exit_matches_circle_intersection() {
        // side of width 1/4 centered on the x axis: circle at (√2, 0), r = 1
        let hw = PI / 4.0;
        for &delta in &[0.0, 0.3, -0.5, 0.78] {
            let (rho, eta) = ray_exit(hw, delta);
            let (x, y) = (rho * delta.cos(), rho * delta.sin());
            let on_circle = (x - 2f64.sqrt()).hypot(y);
            assert!((on_circle - 1.0).abs() < 1e-12, "{delta}: {on_circle}");
            assert!((eta - (1.0 - rho * rho)).abs() < 1e-14);
        }
        let (rho, eta) = ray_exit(hw, hw);
        assert_eq!(rho, 1.0);
        assert_eq!(eta, 0.0);
    }

    #[test]
    fn radial_sum_matches_antiderivative() {
        // ∫₀^ρ r/(1−r²)² dr = ρ²/(2(1−ρ²))
        for &rho in &[0.3, 0.9, 0.999, 0.999_999] {
            let eta: f64 = 1.0 - rho * rho;
            let exact = rho * rho / (2.0 * eta);
            let got = radial_integral(rho, eta, 400);
            assert!(((got - exact) / exact).abs() < 1e-3, "{rho}: {got} vs {exact}");
        }
    }

    #[test]
    fn coarse_resolution_rejected() {
        let p = IdealPolygon::regular(3).unwrap();
        assert!(matches!(
            hyperbolic_area_quadrature(&p, 9_999),
            Err(Error::ResolutionTooLow { .. })
        ));
    }

    #[test]
    fn small_budget_is_already_close() {
        let p = IdealPolygon::regular(4).unwrap();
        let got = hyperbolic_area_quadrature(&p, 40_000).unwrap();
        let want = hyperbolic_area_ideal(4).unwrap();
        assert!(((got - want) / want).abs() < 0.01, "{got}");
    }
}

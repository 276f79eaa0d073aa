//! Points on the unit circle, geodesic sides, and circular inversion.
//!
//! Every angle is a turn fraction: `t` stands for the point `exp(2πi·t)`.
//! Radians only appear inside trigonometric calls.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible distance of a side width from 0 and from 1/2.
pub const ANGLE_EPS: f64 = 1e-12;

/// Two circle points closer than this (in turns) are the same point.
pub const POINT_EPS: f64 = 1e-10;

/// Reduce `t` into `[0, 1)`.
pub fn wrap_turn(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Reduce `t` into `(-1/2, 1/2]`.
pub fn signed_turn(t: f64) -> f64 {
    let r = wrap_turn(t);
    if r > 0.5 {
        r - 1.0
    } else {
        r
    }
}

/// Returns the error for a side width outside `[ANGLE_EPS, 1/2 - ANGLE_EPS]`.
pub fn check_width(alpha: f64) -> Result<()> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite {
            what: "alpha",
            value: alpha,
        });
    }
    if (ANGLE_EPS..=0.5 - ANGLE_EPS).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::AngleOutOfRange { alpha })
    }
}

fn check_finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, value })
    }
}

/// A point on the unit circle, stored as a turn fraction in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialOrd, Serialize, Deserialize)]
pub struct CirclePoint(f64);

impl CirclePoint {
    pub fn new(t: f64) -> Result<Self> {
        Ok(Self(wrap_turn(check_finite("turn fraction", t)?)))
    }

    pub fn turn(self) -> f64 {
        self.0
    }

    /// Circular distance to `other`, in turns.
    pub fn distance(self, other: Self) -> f64 {
        signed_turn(self.0 - other.0).abs()
    }

    /// Positive-direction offset from `origin` to `self`, in `[0, 1)`.
    pub fn offset_from(self, origin: Self) -> f64 {
        wrap_turn(self.0 - origin.0)
    }

    pub fn to_plane(self) -> PlanePoint {
        let (s, c) = (TAU * self.0).sin_cos();
        PlanePoint { x: c, y: s }
    }
}

impl PartialEq for CirclePoint {
    fn eq(&self, other: &Self) -> bool {
        self.distance(*other) < POINT_EPS
    }
}

/// A hyperbolic geodesic with both endpoints on the unit circle.
///
/// The side runs in the positive direction from `start` to `start + width`;
/// `width` is the turn fraction of the arc it subtends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSide {
    start: f64,
    width: f64,
}

impl GeodesicSide {
    pub fn new(start: f64, width: f64) -> Result<Self> {
        let start = wrap_turn(check_finite("side start", start)?);
        check_width(width)?;
        Ok(Self { start, width })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn end(&self) -> f64 {
        wrap_turn(self.start + self.width)
    }

    pub fn midpoint(&self) -> f64 {
        wrap_turn(self.start + 0.5 * self.width)
    }
}

/// Euclidean circle orthogonal to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthoCircle {
    /// Direction of the center seen from the origin, in turns.
    pub center_arg: f64,
    /// Distance of the center from the origin.
    pub center_dist: f64,
    pub radius: f64,
}

impl OrthoCircle {
    pub fn center(&self) -> PlanePoint {
        let (s, c) = (TAU * self.center_arg).sin_cos();
        PlanePoint {
            x: self.center_dist * c,
            y: self.center_dist * s,
        }
    }
}

/// Cartesian point in the plane, unit-circle scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        Ok(Self {
            x: check_finite("x", x)?,
            y: check_finite("y", y)?,
        })
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: &PlanePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Argument of the point as a turn fraction in `[0, 1)`.
    pub fn turn(&self) -> f64 {
        wrap_turn(self.y.atan2(self.x) / TAU)
    }
}

/// The point `exp(2πi·t)` in Cartesian form.
pub fn unit_point(t: f64) -> Result<PlanePoint> {
    Ok(CirclePoint(check_finite("turn fraction", t)?).to_plane())
}

/// The circle carrying `side`: center at distance `sec(π·width)` in the
/// direction of the arc midpoint, radius `tan(π·width)`.
pub fn side_circle(side: &GeodesicSide) -> OrthoCircle {
    let half = PI * side.width;
    OrthoCircle {
        center_arg: side.midpoint(),
        center_dist: 1.0 / half.cos(),
        radius: half.tan(),
    }
}

/// Image of the circle point `beta` under inversion in the circle of `side`.
///
/// Uses the closed-form argument of the image. The branch is chosen by the
/// sign of `beta - b` reduced to `(-1/2, 1/2]`, where `b` is the arc
/// midpoint; the midpoint itself maps to its antipode. The arctangent is
/// taken in two-argument form, so the side endpoints (zero denominator)
/// come out as fixed points.
pub fn invert_on_circle(beta: f64, side: &GeodesicSide) -> Result<f64> {
    let beta = wrap_turn(check_finite("beta", beta)?);
    let b = side.midpoint();
    let d = signed_turn(beta - b);
    let cos_half = (PI * side.width).cos();
    let x = if d > 0.0 {
        let (s, c) = (TAU * d).sin_cos();
        beta - 0.5 + s.atan2(cos_half - c) / PI
    } else if d < 0.0 {
        let (s, c) = (TAU * -d).sin_cos();
        beta + 0.5 - s.atan2(cos_half - c) / PI
    } else {
        b + 0.5
    };
    Ok(wrap_turn(x))
}

/// Circular inversion of `p` in `circle`: the point on the ray from the
/// center through `p` with `|c - p|·|c - p'| = r²`.
pub fn invert_euclidean(p: PlanePoint, circle: &OrthoCircle) -> Result<PlanePoint> {
    let c = circle.center();
    let (dx, dy) = (p.x - c.x, p.y - c.y);
    let d2 = dx * dx + dy * dy;
    if d2.sqrt() < 1e-14 {
        return Err(Error::SingularInversion);
    }
    let k = circle.radius * circle.radius / d2;
    PlanePoint::new(c.x + k * dx, c.y + k * dy)
}

/// Distance between the inverses of two points: `r²·|PQ| / (|OP|·|OQ|)`.
pub fn inverse_distance(pq: f64, op_len: f64, oq_len: f64, r: f64) -> Result<f64> {
    for (what, value) in [("pq", pq), ("op", op_len), ("oq", oq_len), ("r", r)] {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositive { what, value });
        }
    }
    Ok(r * r * pq / (op_len * oq_len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // 1/4 - atan(1/2)/π and atan(1/2)/π; both read off the Euclidean
    // inversion in the circle of center √2·e^{iπ/4}, radius 1.
    const NEAR: f64 = 0.147_583_617_650_433_26;
    const FAR: f64 = 0.102_416_382_349_566_74;

    fn quarter() -> GeodesicSide {
        GeodesicSide::new(0.0, 0.25).unwrap()
    }

    fn euclid_image(beta: f64, side: &GeodesicSide) -> f64 {
        invert_euclidean(unit_point(beta).unwrap(), &side_circle(side))
            .unwrap()
            .turn()
    }

    #[test]
    fn unit_points_on_axes() {
        let p = unit_point(0.0).unwrap();
        assert_eq!((p.x, p.y), (1.0, 0.0));
        let p = unit_point(0.25).unwrap();
        assert_abs_diff_eq!(p.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 1.0, epsilon = 1e-15);
        let p = unit_point(0.5).unwrap();
        assert_abs_diff_eq!(p.x, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 0.0, epsilon = 1e-15);
        assert!(unit_point(f64::NAN).is_err());
        assert!(unit_point(f64::INFINITY).is_err());
    }

    #[test]
    fn circle_point_normalizes() {
        assert_abs_diff_eq!(CirclePoint::new(1.25).unwrap().turn(), 0.25);
        assert_abs_diff_eq!(CirclePoint::new(-0.25).unwrap().turn(), 0.75);
        assert_eq!(CirclePoint::new(-1e-18).unwrap().turn(), 0.0);
        assert_eq!(
            CirclePoint::new(0.999_999_999_999_9).unwrap(),
            CirclePoint::new(0.0).unwrap()
        );
        assert_ne!(
            CirclePoint::new(0.1).unwrap(),
            CirclePoint::new(0.1 + 1e-9).unwrap()
        );
    }

    #[test]
    fn side_circle_parameters() {
        let c = side_circle(&quarter());
        assert_abs_diff_eq!(c.center_dist, 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(c.radius, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.center_arg, 0.125);

        let c = side_circle(&GeodesicSide::new(0.3, 1.0 / 3.0).unwrap());
        assert_abs_diff_eq!(c.center_dist, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c.radius, 3f64.sqrt(), epsilon = 1e-14);

        let c = side_circle(&GeodesicSide::new(0.0, 1.0 / 6.0).unwrap());
        assert_abs_diff_eq!(c.center_arg, 1.0 / 12.0, epsilon = 1e-16);
        assert_abs_diff_eq!(c.center_dist, 2.0 / 3f64.sqrt(), epsilon = 1e-15);
        let rel = (c.center_dist.powi(2) - 1.0 - c.radius.powi(2)).abs() / c.center_dist.powi(2);
        assert!(rel < 1e-12);
    }

    #[test]
    fn side_width_clamp() {
        assert_eq!(
            GeodesicSide::new(0.0, 0.6),
            Err(Error::AngleOutOfRange { alpha: 0.6 })
        );
        assert!(GeodesicSide::new(0.0, 0.0).is_err());
        assert!(GeodesicSide::new(0.0, 0.5).is_err());
        assert!(GeodesicSide::new(0.0, 1e-13).is_err());
        assert!(GeodesicSide::new(0.0, ANGLE_EPS).is_ok());
        assert!(GeodesicSide::new(0.0, 0.5 - ANGLE_EPS).is_ok());
        assert!(GeodesicSide::new(f64::NAN, 0.2).is_err());
    }

    #[test]
    fn quarter_side_images() {
        let side = quarter();
        // frozen values agree with the Euclidean route
        assert_abs_diff_eq!(euclid_image(0.5, &side), NEAR, epsilon = 1e-14);
        assert_abs_diff_eq!(euclid_image(0.75, &side), FAR, epsilon = 1e-14);
        assert_abs_diff_eq!(NEAR, 0.5f64.atan() / PI, epsilon = 1e-16);

        assert_abs_diff_eq!(invert_on_circle(0.0, &side).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(invert_on_circle(0.5, &side).unwrap(), NEAR, epsilon = 1e-15);
        assert_abs_diff_eq!(invert_on_circle(0.75, &side).unwrap(), FAR, epsilon = 1e-15);
        assert_abs_diff_eq!(invert_on_circle(0.125, &side).unwrap(), 0.625, epsilon = 1e-15);
    }

    #[test]
    fn endpoints_fixed() {
        for &(a, w) in &[(0.0, 0.25), (0.9, 0.3), (0.4, 1e-6), (0.2, 0.49)] {
            let side = GeodesicSide::new(a, w).unwrap();
            for beta in [side.start(), side.end()] {
                let x = invert_on_circle(beta, &side).unwrap();
                assert!(signed_turn(x - beta).abs() < 1e-12, "{a} {w} {beta} -> {x}");
            }
        }
    }

    #[test]
    fn image_of_interior_point_lands_outside() {
        let side = GeodesicSide::new(0.0, 0.2).unwrap();
        let x = invert_on_circle(0.05, &side).unwrap();
        assert!(x > 0.2);
        assert_abs_diff_eq!(x, euclid_image(0.05, &side), epsilon = 1e-13);
    }

    #[test]
    fn euclidean_inversion_cases() {
        let unit = OrthoCircle {
            center_arg: 0.0,
            center_dist: 0.0,
            radius: 1.0,
        };
        let p = invert_euclidean(PlanePoint::new(2.0, 0.0).unwrap(), &unit).unwrap();
        assert_abs_diff_eq!(p.x, 0.5);
        assert_abs_diff_eq!(p.y, 0.0);
        assert_eq!(
            invert_euclidean(PlanePoint::new(0.0, 0.0).unwrap(), &unit),
            Err(Error::SingularInversion)
        );

        let c = side_circle(&quarter());
        let q = PlanePoint::new(1.0, 0.0).unwrap();
        let p = invert_euclidean(q, &c).unwrap();
        assert_abs_diff_eq!(p.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn inverse_distance_cases() {
        assert_abs_diff_eq!(inverse_distance(1.0, 2.0, 2.0, 1.0).unwrap(), 0.25);
        assert_abs_diff_eq!(inverse_distance(3.0, 1.0, 1.0, 1.0).unwrap(), 3.0);
        assert_abs_diff_eq!(inverse_distance(1.0, 1.0, 4.0, 2.0).unwrap(), 1.0);
        assert!(inverse_distance(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(inverse_distance(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(inverse_distance(1.0, 1.0, 1.0, f64::NAN).is_err());
    }
}

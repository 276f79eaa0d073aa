//! Closed-form constants and independently derived values.

use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use hypergon::extremal::Suite;
use hypergon::{
    area_upper_bound, euclidean_area, grid_scan, grow_body, hyperbolic_area_ideal,
    hyperbolic_area_quadrature, invert_euclidean, invert_on_circle, inverted_angle_matrix,
    is_regular, max_inverted_angle, property_suite, side_circle, side_region_area, unit_point,
    GeodesicSide, IdealPolygon,
};

/// Smallest inverted angle of the regular square.
fn m_star() -> f64 {
    0.25 - 0.5f64.atan() / PI
}

#[test]
fn square_midpoint_image() {
    // reflect turn 1/2 across the side [0, 1/4] with plane geometry
    let side = GeodesicSide::new(0.0, 0.25).unwrap();
    let image = invert_euclidean(unit_point(0.5).unwrap(), &side_circle(&side)).unwrap();
    assert_abs_diff_eq!(image.turn(), 0.147_583_617_650_433_26, epsilon = 1e-14);
    assert_abs_diff_eq!(invert_on_circle(0.5, &side).unwrap(), image.turn(), epsilon = 1e-14);
    assert_abs_diff_eq!(0.5f64.atan() / PI, image.turn(), epsilon = 1e-14);
}

#[test]
fn square_matrix_constants() {
    let m = inverted_angle_matrix(&IdealPolygon::regular(4).unwrap());
    for j in 0..4 {
        for (k, v) in m.row(j) {
            let opposite = (k + 4 - j) % 4 == 2;
            // rows sum to the reflecting side's width
            let want = if opposite { 0.25 - 2.0 * m_star() } else { m_star() };
            assert_abs_diff_eq!(v, want, epsilon = 1e-14);
        }
    }
    let max = max_inverted_angle(&IdealPolygon::regular(4).unwrap());
    assert_eq!((max.row, max.col), (0, 1));
    assert_eq!(max.to_string(), "alpha[1,2] = 0.102416382350");
}

#[test]
fn square_grid_minimum() {
    let report = grid_scan(4, 0.01).unwrap();
    assert_eq!(report.best_point, vec![0.25; 4]);
    assert_abs_diff_eq!(report.best_value, m_star(), epsilon = 1e-12);
    assert!(report.violations.is_empty());
}

#[test]
fn area_constants() {
    assert_abs_diff_eq!(area_upper_bound(4).unwrap(), 4.0 - PI, epsilon = 1e-14);
    assert_abs_diff_eq!(side_region_area(0.25).unwrap(), 1.0 - PI / 4.0, epsilon = 1e-15);
    // the closed form at 1/6, evaluated independently at high precision
    assert_abs_diff_eq!(side_region_area(1.0 / 6.0).unwrap(), 0.228_284_418_790_759_85, epsilon = 1e-15);
    assert_abs_diff_eq!(euclidean_area(&[0.25; 4]).unwrap(), 4.0 - PI, epsilon = 1e-14);
    for n in 3..=12 {
        assert_abs_diff_eq!(hyperbolic_area_ideal(n).unwrap(), PI * (n as f64 - 2.0) / 4.0, epsilon = 1e-15);
    }
}

#[test]
fn triangle_body_is_regular_hexagon() {
    let body = grow_body(&IdealPolygon::regular(3).unwrap(), 1).unwrap();
    assert_eq!(body.boundary_angles().len(), 6);
    for &a in body.boundary_angles() {
        assert_abs_diff_eq!(a, 1.0 / 6.0, epsilon = 1e-12);
    }
    // and the hexagon's own spectrum is six copies of the regular hexagon
    // area of side 1/6
    let area = euclidean_area(body.boundary_angles()).unwrap();
    assert_abs_diff_eq!(area, area_upper_bound(6).unwrap(), epsilon = 1e-12);
    let deeper = grow_body(&IdealPolygon::regular(3).unwrap(), 2).unwrap();
    assert!(!is_regular(deeper.boundary_angles(), 1e-9));
}

#[test]
fn square_body_counts() {
    let body = grow_body(&IdealPolygon::regular(4).unwrap(), 2).unwrap();
    assert_eq!(body.polygon_counts(), vec![1, 4, 12]);
    assert_eq!(body.boundary_angles().len(), 36);
    assert_abs_diff_eq!(body.boundary_angles().iter().sum::<f64>(), 1.0, epsilon = 1e-9);
}

#[test]
fn square_hyperbolic_area() {
    let poly = IdealPolygon::regular(4).unwrap();
    let value = hyperbolic_area_quadrature(&poly, 200_000).unwrap();
    assert!((value - PI / 2.0).abs() / (PI / 2.0) < 0.01, "{value}");
}

#[test]
fn deterministic_suites_pass() {
    for suite in [Suite::Lemma31, Suite::Lemma33] {
        let report = property_suite(suite.name(), 0, 0).unwrap();
        assert!(report.passed(), "{suite}: {:?}", report.violations);
        assert_eq!(report.seed, None);
    }
}

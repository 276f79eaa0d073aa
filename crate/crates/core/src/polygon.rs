//! Ideal hyperbolic polygons and their reflections across sides.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::disk::{
    check_width, invert_on_circle, signed_turn, wrap_turn, CirclePoint, GeodesicSide,
};
use crate::error::{Error, Result};

/// Tolerance on `Σ α_k = 1`.
pub const SUM_TOL: f64 = 1e-12;

/// Default tolerance for [`is_regular`].
const MAX_TIE_TOL: f64 = 1e-13;

pub const REGULAR_TOL: f64 = 1e-9;

/// A convex hyperbolic polygon with every vertex on the unit circle.
///
/// `angles[k]` is the arc subtended by side `k`, which joins vertex `k` to
/// vertex `k + 1` (indices mod `n`). Vertex 0 sits at `rotation`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealPolygon {
    angles: Vec<f64>,
    rotation: f64,
}

impl IdealPolygon {
    pub fn new(angles: Vec<f64>, rotation: f64) -> Result<Self> {
        validate_angles(&angles)?;
        if !rotation.is_finite() {
            return Err(Error::NonFinite {
                what: "rotation",
                value: rotation,
            });
        }
        Ok(Self {
            angles,
            rotation: wrap_turn(rotation),
        })
    }

    /// The regular ideal `n`-gon with vertex 0 at turn 0.
    pub fn regular(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n], 0.0)
    }

    pub fn with_rotation(mut self, rotation: f64) -> Result<Self> {
        if !rotation.is_finite() {
            return Err(Error::NonFinite {
                what: "rotation",
                value: rotation,
            });
        }
        self.rotation = wrap_turn(rotation);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    /// Vertex fractions, starting at `rotation` and increasing.
    pub fn vertices(&self) -> Vec<CirclePoint> {
        let mut acc = 0.0;
        self.angles
            .iter()
            .map(|a| {
                let p = CirclePoint::new(self.rotation + acc).expect("finite");
                acc += a;
                p
            })
            .collect()
    }

    /// Side `j`, from vertex `j` to vertex `j + 1`.
    pub fn side(&self, j: usize) -> Result<GeodesicSide> {
        let n = self.n();
        if j >= n {
            return Err(Error::SideIndex { index: j, n });
        }
        let start: f64 = self.angles[..j].iter().sum();
        GeodesicSide::new(self.rotation + start, self.angles[j])
    }

    /// Whether the origin lies strictly inside: no side subtends half a turn
    /// or more, so every side circle misses the origin.
    pub fn contains_origin(&self) -> bool {
        self.angles.iter().all(|&a| a < 0.5)
    }
}

/// Checks `n ≥ 3`, every width in the clamped domain, and `Σ = 1`.
pub fn validate_angles(angles: &[f64]) -> Result<()> {
    if angles.len() < 3 {
        return Err(Error::TooFewSides(angles.len()));
    }
    for &a in angles {
        check_width(a)?;
    }
    let sum: f64 = angles.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::AngleSum { sum });
    }
    Ok(())
}

/// `true` iff every angle is within `tol` of `1/n`.
pub fn is_regular(angles: &[f64], tol: f64) -> bool {
    if angles.is_empty() {
        return false;
    }
    let target = 1.0 / angles.len() as f64;
    angles.iter().all(|a| (a - target).abs() <= tol)
}

/// Offsets of a vertex cycle from its first vertex, checked to be strictly
/// increasing within one turn.
fn cycle_offsets(cycle: &[CirclePoint]) -> Result<Vec<f64>> {
    if cycle.len() < 3 {
        return Err(Error::TooFewSides(cycle.len()));
    }
    let origin = cycle[0];
    let offsets: Vec<f64> = cycle.iter().map(|p| p.offset_from(origin)).collect();
    if offsets.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::VertexOrder);
    }
    Ok(offsets)
}

/// The geodesic carrying side `j` of a vertex cycle. A side whose arc in
/// the positive direction exceeds half a turn (the parent side of a
/// reflected cell) lies on the same circle as the complementary short arc.
fn cycle_side(cycle: &[CirclePoint], j: usize) -> Result<GeodesicSide> {
    let n = cycle.len();
    if j >= n {
        return Err(Error::SideIndex { index: j, n });
    }
    let (u, w) = (cycle[j], cycle[(j + 1) % n]);
    let span = w.offset_from(u);
    if span > 0.5 {
        GeodesicSide::new(w.turn(), 1.0 - span)
    } else {
        GeodesicSide::new(u.turn(), span)
    }
}

/// Reflect a polygon, given as a positively ordered vertex cycle, across
/// its side `j`.
///
/// The endpoints of side `j` stay put; every other vertex is inverted into
/// the arc they span. The result starts at vertex `j`, runs through the
/// images in positive order and ends at vertex `j + 1`.
pub fn reflect_polygon(cycle: &[CirclePoint], j: usize) -> Result<Vec<CirclePoint>> {
    cycle_offsets(cycle)?;
    let side = cycle_side(cycle, j)?;
    let n = cycle.len();
    let (u, w) = (cycle[j], cycle[(j + 1) % n]);
    let mut images = Vec::with_capacity(n - 2);
    for step in 2..n {
        let v = cycle[(j + step) % n];
        let x = invert_on_circle(v.turn(), &side)?;
        images.push(x);
    }
    // inversion reverses orientation; sort by offset to be safe at ties
    images.sort_by(|a, b| {
        wrap_turn(a - u.turn())
            .partial_cmp(&wrap_turn(b - u.turn()))
            .expect("finite")
    });
    let mut out = Vec::with_capacity(n);
    out.push(u);
    for x in images {
        out.push(CirclePoint::new(x)?);
    }
    out.push(w);
    Ok(out)
}

/// Offsets from the start of side `j` of the images of every vertex under
/// reflection across side `j`. Entry `m` belongs to vertex `m`; the side's
/// own endpoints get exactly `0` and `width`.
pub(crate) fn image_offsets(vertices: &[f64], widths: &[f64], j: usize) -> Result<Vec<f64>> {
    let n = vertices.len();
    let side = GeodesicSide::new(vertices[j], widths[j])?;
    let a = side.start();
    let mut out = vec![0.0; n];
    for (m, &v) in vertices.iter().enumerate() {
        out[m] = if m == j {
            0.0
        } else if m == (j + 1) % n {
            side.width()
        } else {
            signed_turn(invert_on_circle(v, &side)? - a)
        };
    }
    Ok(out)
}

/// Table of inverted side widths: `get(j, k)` is the arc subtended by the
/// image of side `k` under reflection across side `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvertedAngleMatrix {
    n: usize,
    /// Row-major `n × n`; the diagonal is unused and left at zero.
    entries: Vec<f64>,
}

/// Location and value of a largest inverted angle (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxEntry {
    pub value: f64,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for MaxEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha[{},{}] = {:.12}", self.row + 1, self.col + 1, self.value)
    }
}

impl InvertedAngleMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `None` on the diagonal or out of range.
    pub fn get(&self, j: usize, k: usize) -> Option<f64> {
        (j < self.n && k < self.n && j != k).then(|| self.entries[j * self.n + k])
    }

    /// The `n - 1` entries of row `j` as `(k, value)` pairs, `k` ascending.
    pub fn row(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (0..self.n)
            .filter(move |&k| k != j)
            .map(move |k| (k, self.entries[j * self.n + k]))
    }

    pub fn row_sum(&self, j: usize) -> f64 {
        self.row(j).map(|(_, v)| v).sum()
    }

    /// All `n(n-1)` entries, row by row.
    pub fn flatten(&self) -> Vec<f64> {
        (0..self.n).flat_map(|j| self.row(j).map(|(_, v)| v)).collect()
    }

    /// Largest entry; ties go to the lexicographically smallest `(j, k)`.
    /// Largest entry. Entries within rounding of the maximum tie, and the
    /// first such `(row, col)` in row-major order is reported.
    pub fn max_entry(&self) -> MaxEntry {
        let value = self.entries.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let (row, col) = (0..self.n)
            .flat_map(|j| self.row(j).map(move |(k, v)| (j, k, v)))
            .find(|&(_, _, v)| v >= value - MAX_TIE_TOL)
            .map(|(j, k, _)| (j, k))
            .unwrap_or((0, 0));
        MaxEntry { value, row, col }
    }
}

pub fn inverted_angle_matrix(poly: &IdealPolygon) -> InvertedAngleMatrix {
    inverted_angles(poly.angles(), poly.rotation()).expect("validated polygon")
}

/// Matrix for a raw angle vector; the caller guarantees the widths are valid.
pub(crate) fn inverted_angles(angles: &[f64], rotation: f64) -> Result<InvertedAngleMatrix> {
    let n = angles.len();
    let mut vertices = Vec::with_capacity(n);
    let mut acc = rotation;
    for a in angles {
        vertices.push(wrap_turn(acc));
        acc += a;
    }
    let mut entries = vec![0.0; n * n];
    for j in 0..n {
        let offsets = image_offsets(&vertices, angles, j)?;
        for k in (0..n).filter(|&k| k != j) {
            // the image of side k runs from image(k+1) to image(k)
            entries[j * n + k] = offsets[k] - offsets[(k + 1) % n];
        }
    }
    Ok(InvertedAngleMatrix { n, entries })
}

pub fn max_inverted_angle(poly: &IdealPolygon) -> MaxEntry {
    inverted_angle_matrix(poly).max_entry()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const FAR: f64 = 0.102_416_382_349_566_74;
    const NEAR: f64 = 0.147_583_617_650_433_26;

    fn turns(points: &[CirclePoint]) -> Vec<f64> {
        points.iter().map(|p| p.turn()).collect()
    }

    fn pts(ts: &[f64]) -> Vec<CirclePoint> {
        ts.iter().map(|&t| CirclePoint::new(t).unwrap()).collect()
    }

    #[test]
    fn polygon_validation() {
        assert!(matches!(
            IdealPolygon::new(vec![0.5, 0.5], 0.0),
            Err(Error::TooFewSides(2))
        ));
        assert!(matches!(
            IdealPolygon::new(vec![0.3, 0.3, 0.3], 0.0),
            Err(Error::AngleSum { .. })
        ));
        assert!(matches!(
            IdealPolygon::new(vec![0.6, 0.2, 0.2], 0.0),
            Err(Error::AngleOutOfRange { .. })
        ));
        assert!(IdealPolygon::new(vec![0.2, 0.3, 0.1, 0.4], 0.0).is_ok());
        assert!(IdealPolygon::new(vec![0.2, 0.3, 0.1, 0.4], f64::NAN).is_err());
    }

    #[test]
    fn vertex_positions() {
        let v = turns(&IdealPolygon::regular(4).unwrap().vertices());
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75]);

        let p = IdealPolygon::new(vec![0.2, 0.3, 0.1, 0.4], 0.0).unwrap();
        let v = turns(&p.vertices());
        for (a, b) in v.iter().zip([0.0, 0.2, 0.5, 0.6]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }

        let p = IdealPolygon::regular(3).unwrap().with_rotation(0.1).unwrap();
        let v = turns(&p.vertices());
        for (a, b) in v.iter().zip([0.1, 0.1 + 1.0 / 3.0, 0.1 + 2.0 / 3.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn sides() {
        let p = IdealPolygon::regular(4).unwrap();
        let s = p.side(0).unwrap();
        assert_eq!((s.start(), s.width()), (0.0, 0.25));
        let s = p.side(3).unwrap();
        assert_eq!((s.start(), s.width()), (0.75, 0.25));
        assert_abs_diff_eq!(s.end(), 0.0);
        assert!(matches!(p.side(4), Err(Error::SideIndex { index: 4, n: 4 })));

        let p = IdealPolygon::new(vec![0.2, 0.3, 0.1, 0.4], 0.0).unwrap();
        let s = p.side(2).unwrap();
        assert_abs_diff_eq!(s.start(), 0.5, epsilon = 1e-15);
        assert_eq!(s.width(), 0.1);
    }

    #[test]
    fn reflect_regular_triangle() {
        let tri = IdealPolygon::regular(3).unwrap().vertices();
        let r = turns(&reflect_polygon(&tri, 2).unwrap());
        assert_abs_diff_eq!(r[0], 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r[1], 5.0 / 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r[2], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn reflect_regular_square() {
        let sq = IdealPolygon::regular(4).unwrap().vertices();
        let r = turns(&reflect_polygon(&sq, 0).unwrap());
        let want = [0.0, FAR, NEAR, 0.25];
        for (a, b) in r.iter().zip(want) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn reflect_twice_is_identity() {
        let cycle = IdealPolygon::new(vec![0.2, 0.3, 0.1, 0.4], 0.05)
            .unwrap()
            .vertices();
        for j in 0..4 {
            let once = reflect_polygon(&cycle, j).unwrap();
            // `once` starts at vertex j; its last side is the shared one
            let back = reflect_polygon(&once, 3).unwrap();
            let expect: Vec<_> = (0..4).map(|m| cycle[(j + 1 + m) % 4]).collect();
            for (a, b) in back.iter().zip(&expect) {
                assert!(a.distance(*b) < 1e-12, "{j}: {back:?} vs {expect:?}");
            }
        }
    }

    #[test]
    fn reflect_rejects_bad_cycles() {
        assert!(matches!(
            reflect_polygon(&pts(&[0.0, 0.5, 0.3]), 0),
            Err(Error::VertexOrder)
        ));
        assert!(matches!(
            reflect_polygon(&pts(&[0.0, 0.3, 0.6]), 3),
            Err(Error::SideIndex { .. })
        ));
        // a diameter is not a supported side
        assert!(matches!(
            reflect_polygon(&pts(&[0.0, 0.2, 0.5]), 2),
            Err(Error::AngleOutOfRange { .. })
        ));
    }

    #[test]
    fn regular_triangle_matrix_is_flat() {
        let m = inverted_angle_matrix(&IdealPolygon::regular(3).unwrap());
        for v in m.flatten() {
            assert_abs_diff_eq!(v, 1.0 / 6.0, epsilon = 1e-14);
        }
        let best = m.max_entry();
        assert_eq!((best.row, best.col), (0, 1));
        assert_abs_diff_eq!(best.value, 1.0 / 6.0, epsilon = 1e-14);
    }

    #[test]
    fn regular_square_first_row() {
        let m = inverted_angle_matrix(&IdealPolygon::regular(4).unwrap());
        let row: Vec<f64> = m.row(0).map(|(_, v)| v).collect();
        assert_abs_diff_eq!(row[0], FAR, epsilon = 1e-14);
        assert_abs_diff_eq!(row[1], NEAR - FAR, epsilon = 1e-14);
        assert_abs_diff_eq!(row[2], FAR, epsilon = 1e-14);
        assert_abs_diff_eq!(m.row_sum(0), 0.25, epsilon = 1e-15);
        assert_eq!(m.get(0, 0), None);
        assert_eq!(m.get(0, 4), None);

        let best = max_inverted_angle(&IdealPolygon::regular(4).unwrap());
        assert_eq!((best.row, best.col), (0, 1));
        assert_abs_diff_eq!(best.value, FAR, epsilon = 1e-14);
        assert_eq!(best.to_string(), "alpha[1,2] = 0.102416382350");
    }

    #[test]
    fn row_sums_reproduce_angles() {
        let p = IdealPolygon::new(vec![0.2, 0.3, 0.1, 0.4], 0.37).unwrap();
        let m = inverted_angle_matrix(&p);
        for (j, a) in p.angles().iter().enumerate() {
            assert_abs_diff_eq!(m.row_sum(j), *a, epsilon = 1e-12);
            assert!(m.row(j).all(|(_, v)| v > 0.0));
        }
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&[0.25; 4], 1e-9));
        assert!(!is_regular(&[0.25 + 1e-6, 0.25 - 1e-6, 0.25, 0.25], 1e-9));
        assert!(!is_regular(&[], 1e-9));
    }
}

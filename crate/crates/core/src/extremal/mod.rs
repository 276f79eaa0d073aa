//! Numerical checks of extremal and monotonicity statements.
//!
//! The central objective is the minimax angle `M(α) = max_{j,k} α_{j,k}`
//! over the simplex of side widths. For `n = 4` the regular polygon is its
//! unique minimizer; [`grid_scan`] and [`refine_minimum`] check this from
//! two directions. [`property_suite`] runs the randomized and deterministic
//! lemma checks, and [`majorization_scan`] gathers evidence on the
//! majorization of inverted-angle spectra.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polygon::{inverted_angles, validate_angles};

mod grid;
mod refine;
mod sampling;
mod suites;

pub use grid::{grid_scan, grid_values, lattice_divisions, LatticeValue, MAX_LATTICE_POINTS};
pub use refine::{refine_minimum, refine_multistart, Refinement, MAX_ITERATIONS};
pub use sampling::SimplexSampler;
pub use suites::{majorization_scan, property_suite, property_suite_with, Suite, SuiteOptions};

/// Side widths of an ideal polygon with vertex 0 at turn 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint(Vec<f64>);

impl SimplexPoint {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        validate_angles(&angles)?;
        Ok(Self(angles))
    }

    pub fn regular(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Largest deviation from the regular point.
    pub fn distance_to_regular(&self) -> f64 {
        let target = 1.0 / self.n() as f64;
        self.0
            .iter()
            .map(|a| (a - target).abs())
            .fold(0.0, f64::max)
    }
}

/// `M(p)`: the largest inverted angle of the polygon with widths `p`.
pub fn minimax_objective(p: &SimplexPoint) -> f64 {
    objective_unchecked(p.angles())
}

pub(crate) fn objective_unchecked(angles: &[f64]) -> f64 {
    inverted_angles(angles, 0.0)
        .expect("widths validated by caller")
        .max_entry()
        .value
}

/// A failed check: the input, the relation that should have held, and the
/// values observed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub case: usize,
    pub input: Vec<f64>,
    pub expected: String,
    pub observed: Vec<f64>,
}

/// Outcome of a scan or suite.
///
/// `best_value`/`best_point` hold the scan's extreme: the minimum for
/// objective scans, the tightest margin for relation checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub objective: String,
    /// Lattice points or sampled cases evaluated.
    pub evaluated: usize,
    pub best_value: f64,
    pub best_point: Vec<f64>,
    /// Best point other than the regular one (objective scans only).
    pub runner_up: Option<(Vec<f64>, f64)>,
    /// Ids of sampled cases left out because they fall outside the domain of
    /// the routine under test.
    #[serde(default)]
    pub skipped: Vec<usize>,
    pub violations: Vec<Violation>,
    pub seed: Option<u64>,
    /// Conjecture evidence rather than a check of a proven statement.
    pub evidence: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const M_STAR: f64 = 0.102_416_382_349_566_74;

    #[test]
    fn objective_at_regular_square() {
        let p = SimplexPoint::regular(4).unwrap();
        assert_abs_diff_eq!(minimax_objective(&p), M_STAR, epsilon = 1e-14);
        assert_eq!(p.distance_to_regular(), 0.0);
    }

    #[test]
    fn objective_dihedral_symmetry() {
        let base = vec![0.13, 0.31, 0.22, 0.34];
        let m = minimax_objective(&SimplexPoint::new(base.clone()).unwrap());
        for shift in 1..4 {
            let mut v = base.clone();
            v.rotate_left(shift);
            let got = minimax_objective(&SimplexPoint::new(v.clone()).unwrap());
            assert!((got - m).abs() < 1e-13);
            v.reverse();
            let got = minimax_objective(&SimplexPoint::new(v).unwrap());
            assert!((got - m).abs() < 1e-13);
        }
    }

    #[test]
    fn objective_grows_off_regular() {
        let p = SimplexPoint::new(vec![0.3, 0.2, 0.3, 0.2]).unwrap();
        assert!(minimax_objective(&p) > M_STAR);
    }
}

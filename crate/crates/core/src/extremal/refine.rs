use serde::{Deserialize, Serialize};

use super::{objective_unchecked, SimplexPoint, SimplexSampler};
use crate::disk::ANGLE_EPS;
use crate::error::{Error, Result};

/// Iteration budget shared by all restarts of one refinement.
pub const MAX_ITERATIONS: usize = 200_000;

const MAX_RESTARTS: usize = 200;
const INITIAL_STEP: f64 = 0.02;

/// Result of a local refinement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub point: SimplexPoint,
    pub value: f64,
    pub iterations: usize,
    pub restarts: usize,
}

/// Objective on the reduced coordinates: the first `n - 1` widths, the last
/// one fixed by the unit sum. Points outside the domain evaluate to +∞.
fn reduced_objective(y: &[f64]) -> f64 {
    let last = 1.0 - y.iter().sum::<f64>();
    let inside = |a: f64| (ANGLE_EPS..=0.5 - ANGLE_EPS).contains(&a);
    if !inside(last) || !y.iter().all(|&a| inside(a)) {
        return f64::INFINITY;
    }
    let mut angles = y.to_vec();
    angles.push(last);
    objective_unchecked(&angles)
}

fn full_point(y: &[f64]) -> Vec<f64> {
    let mut angles = y.to_vec();
    angles.push(1.0 - y.iter().sum::<f64>());
    angles
}

struct NelderMead {
    vertices: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl NelderMead {
    fn around(center: &[f64], step: f64) -> Self {
        let mut vertices = vec![center.to_vec()];
        for i in 0..center.len() {
            let mut v = center.to_vec();
            v[i] += step;
            if reduced_objective(&v).is_infinite() {
                v[i] = center[i] - step;
            }
            vertices.push(v);
        }
        let values = vertices.iter().map(|v| reduced_objective(v)).collect();
        Self { vertices, values }
    }

    fn order(&mut self) {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        idx.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        self.vertices = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        self.values = idx.iter().map(|&i| self.values[i]).collect();
    }

    fn spread(&self) -> f64 {
        let hi = self.values[self.values.len() - 1];
        if hi.is_infinite() {
            return f64::INFINITY;
        }
        hi - self.values[0]
    }

    fn step(&mut self) {
        let d = self.vertices.len() - 1;
        let centroid: Vec<f64> = (0..d)
            .map(|i| self.vertices[..d].iter().map(|v| v[i]).sum::<f64>() / d as f64)
            .collect();
        let toward = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&self.vertices[d])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let reflected = toward(-1.0);
        let fr = reduced_objective(&reflected);
        if fr < self.values[0] {
            let expanded = toward(-2.0);
            let fe = reduced_objective(&expanded);
            if fe < fr {
                self.replace_worst(expanded, fe);
            } else {
                self.replace_worst(reflected, fr);
            }
        } else if fr < self.values[d - 1] {
            self.replace_worst(reflected, fr);
        } else {
            let (candidate, t) = if fr < self.values[d] {
                (fr, -0.5)
            } else {
                (self.values[d], 0.5)
            };
            let contracted = toward(t);
            let fc = reduced_objective(&contracted);
            if fc < candidate {
                self.replace_worst(contracted, fc);
            } else {
                self.shrink();
            }
        }
        self.order();
    }

    fn replace_worst(&mut self, v: Vec<f64>, f: f64) {
        let last = self.vertices.len() - 1;
        self.vertices[last] = v;
        self.values[last] = f;
    }

    fn shrink(&mut self) {
        let best = self.vertices[0].clone();
        for i in 1..self.vertices.len() {
            for (x, b) in self.vertices[i].iter_mut().zip(&best) {
                *x = b + 0.5 * (*x - b);
            }
            self.values[i] = reduced_objective(&self.vertices[i]);
        }
    }
}

/// Derivative-free local minimization of the minimax objective on the
/// hyperplane `Σα = 1`.
///
/// Nelder–Mead on the first `n - 1` widths; a run stops when the objective
/// spread across the simplex drops below `tol`, and is restarted from its
/// best vertex until a restart no longer improves the value by `tol`.
pub fn refine_minimum(start: &SimplexPoint, tol: f64) -> Result<Refinement> {
    if !(tol >= 1e-12) {
        return Err(Error::ToleranceTooSmall(tol));
    }
    let n = start.n();
    let mut best_y = start.angles()[..n - 1].to_vec();
    let mut best_value = reduced_objective(&best_y);
    let mut iterations = 0;
    let mut step = INITIAL_STEP;

    for restart in 0..MAX_RESTARTS {
        let mut nm = NelderMead::around(&best_y, step);
        nm.order();
        while nm.spread() >= tol {
            if iterations >= MAX_ITERATIONS {
                return Err(Error::NoConvergence {
                    iterations,
                    best_point: full_point(&nm.vertices[0]),
                    best_value: nm.values[0],
                });
            }
            nm.step();
            iterations += 1;
        }
        let improvement = best_value - nm.values[0];
        if nm.values[0] < best_value {
            best_value = nm.values[0];
            best_y = nm.vertices[0].clone();
        }
        if improvement < tol {
            return Ok(Refinement {
                point: SimplexPoint::new(full_point(&best_y))?,
                value: best_value,
                iterations,
                restarts: restart,
            });
        }
        // the next simplex only needs to span the distance just travelled
        step = (step * 0.5).max(1e-6);
    }
    Err(Error::NoConvergence {
        iterations,
        best_point: full_point(&best_y),
        best_value,
    })
}

/// Refinements from `starts` seeded random starting points.
pub fn refine_multistart(n: usize, starts: usize, seed: u64, tol: f64) -> Result<Vec<Refinement>> {
    use rayon::prelude::*;

    let mut sampler = SimplexSampler::new(seed);
    let points: Vec<SimplexPoint> = (0..starts)
        .map(|_| SimplexPoint::new(sampler.angles(n)))
        .collect::<Result<_>>()?;
    points.par_iter().map(|p| refine_minimum(p, tol)).collect()
}

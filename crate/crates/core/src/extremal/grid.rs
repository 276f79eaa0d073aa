use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{objective_unchecked, ScanReport, Violation};
use crate::error::{Error, Result};

/// Largest lattice a scan will enumerate.
pub const MAX_LATTICE_POINTS: u128 = 50_000_000;

/// Coarsest accepted lattice step.
const MAX_STEP: f64 = 0.01;

/// A lattice point closer than this to the regular value counts as a tie.
const TIE_TOL: f64 = 1e-12;

/// One evaluated lattice point; widths are `point[i] / divisions`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeValue {
    pub point: Vec<u32>,
    pub value: f64,
}

/// Number of lattice cells per unit for `step`, which must be at most
/// `1/100` and divide 1.
pub fn lattice_divisions(step: f64) -> Result<u32> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::NonPositive {
            what: "grid step",
            value: step,
        });
    }
    if step > MAX_STEP * (1.0 + 1e-12) {
        return Err(Error::StepTooCoarse { step });
    }
    let divisions = (1.0 / step).round();
    if (divisions * step - 1.0).abs() > 1e-9 || divisions > u32::MAX as f64 {
        return Err(Error::StepNotDivisor { step });
    }
    Ok(divisions as u32)
}

fn check_side_count(n: usize) -> Result<()> {
    if (3..=8).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedSideCount { n, min: 3, max: 8 })
    }
}

/// Compositions of `total` into `parts` parts, each in `1..=hi`.
fn composition_count(parts: usize, total: u32, hi: u32) -> u128 {
    let total = total as usize;
    let mut ways = vec![0u128; total + 1];
    ways[0] = 1;
    for _ in 0..parts {
        let mut next = vec![0u128; total + 1];
        for (sum, &w) in ways.iter().enumerate().filter(|(_, w)| **w > 0) {
            for m in 1..=hi as usize {
                if sum + m > total {
                    break;
                }
                next[sum + m] = next[sum + m].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[total]
}

/// Visit, in lexicographic order, every composition whose first part is
/// `first`.
fn for_each_with_first(n: usize, total: u32, hi: u32, first: u32, visit: &mut impl FnMut(&[u32])) {
    fn recurse(
        point: &mut Vec<u32>,
        n: usize,
        left: u32,
        hi: u32,
        visit: &mut impl FnMut(&[u32]),
    ) {
        let parts = (n - point.len()) as u32;
        if parts == 1 {
            if (1..=hi).contains(&left) {
                point.push(left);
                visit(point);
                point.pop();
            }
            return;
        }
        let lo = left.saturating_sub(hi * (parts - 1)).max(1);
        let top = hi.min(left.saturating_sub(parts - 1));
        for m in lo..=top {
            point.push(m);
            recurse(point, n, left - m, hi, visit);
            point.pop();
        }
    }
    if first > hi || first >= total {
        return;
    }
    let mut point = Vec::with_capacity(n);
    point.push(first);
    recurse(&mut point, n, total - first, hi, visit);
}

struct Lattice {
    n: usize,
    divisions: u32,
    hi: u32,
}

impl Lattice {
    fn new(n: usize, step: f64) -> Result<Self> {
        check_side_count(n)?;
        let divisions = lattice_divisions(step)?;
        // widths strictly below one half
        let hi = (divisions - 1) / 2;
        let points = composition_count(n, divisions, hi);
        if points > MAX_LATTICE_POINTS {
            return Err(Error::LatticeTooLarge {
                points,
                limit: MAX_LATTICE_POINTS,
            });
        }
        Ok(Self { n, divisions, hi })
    }

    fn widths(&self, point: &[u32]) -> Vec<f64> {
        point
            .iter()
            .map(|&m| m as f64 / self.divisions as f64)
            .collect()
    }

    fn is_regular(&self, point: &[u32]) -> bool {
        point.iter().all(|&m| m as usize * self.n == self.divisions as usize)
    }
}

/// Every lattice point with its objective value, in lexicographic order.
pub fn grid_values(n: usize, step: f64) -> Result<Vec<LatticeValue>> {
    let lattice = Lattice::new(n, step)?;
    let chunks: Vec<Vec<LatticeValue>> = (1..=lattice.hi)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            for_each_with_first(lattice.n, lattice.divisions, lattice.hi, first, &mut |p| {
                out.push(LatticeValue {
                    point: p.to_vec(),
                    value: objective_unchecked(&lattice.widths(p)),
                });
            });
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

#[derive(Default)]
struct ChunkSummary {
    evaluated: usize,
    best: Option<(Vec<u32>, f64)>,
    runner_up: Option<(Vec<u32>, f64)>,
    ties: Vec<(Vec<u32>, f64)>,
}

fn keep_lower(slot: &mut Option<(Vec<u32>, f64)>, point: &[u32], value: f64) {
    if slot.as_ref().is_none_or(|(_, v)| value < *v) {
        *slot = Some((point.to_vec(), value));
    }
}

fn merge_lower(slot: &mut Option<(Vec<u32>, f64)>, other: Option<(Vec<u32>, f64)>) {
    if let Some((p, v)) = other {
        keep_lower(slot, &p, v);
    }
}

/// Exhaustive evaluation of the minimax objective on the lattice of side
/// widths that are multiples of `step`.
///
/// Reports the minimizing lattice point (ties to the lexicographically
/// first), the best non-regular point, and as violations every non-regular
/// point whose value does not exceed the regular polygon's.
pub fn grid_scan(n: usize, step: f64) -> Result<ScanReport> {
    let started = Instant::now();
    let lattice = Lattice::new(n, step)?;
    let regular_value = objective_unchecked(&vec![1.0 / n as f64; n]);

    let summaries: Vec<ChunkSummary> = (1..=lattice.hi)
        .into_par_iter()
        .map(|first| {
            let mut s = ChunkSummary::default();
            for_each_with_first(lattice.n, lattice.divisions, lattice.hi, first, &mut |p| {
                let value = objective_unchecked(&lattice.widths(p));
                s.evaluated += 1;
                keep_lower(&mut s.best, p, value);
                if !lattice.is_regular(p) {
                    keep_lower(&mut s.runner_up, p, value);
                    if value <= regular_value + TIE_TOL {
                        s.ties.push((p.to_vec(), value));
                    }
                }
            });
            s
        })
        .collect();

    let mut total = ChunkSummary::default();
    for s in summaries {
        total.evaluated += s.evaluated;
        merge_lower(&mut total.best, s.best);
        merge_lower(&mut total.runner_up, s.runner_up);
        total.ties.extend(s.ties);
    }
    let (best_point, best_value) = total.best.expect("lattice is non-empty");
    let violations = total
        .ties
        .into_iter()
        .enumerate()
        .map(|(case, (p, v))| Violation {
            case,
            input: lattice.widths(&p),
            expected: format!("M > {regular_value:.15}"),
            observed: vec![v],
        })
        .collect();

    Ok(ScanReport {
        objective: format!("minimax n={n} step=1/{}", lattice.divisions),
        evaluated: total.evaluated,
        best_value,
        best_point: lattice.widths(&best_point),
        runner_up: total
            .runner_up
            .map(|(p, v)| (lattice.widths(&p), v)),
        skipped: Vec::new(),
        violations,
        seed: None,
        evidence: false,
        elapsed: started.elapsed(),
    })
}

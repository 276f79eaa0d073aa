use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ScanReport, SimplexSampler, Violation};
use crate::body::grow_body;
use crate::disk::{invert_on_circle, signed_turn, wrap_turn, GeodesicSide};
use crate::error::{Error, Result};
use crate::measures::{
    area_upper_bound, decreasing_rearrangement, euclidean_area, first_majorization_failure,
    AngleSpectrum,
};
use crate::polygon::{
    inverted_angle_matrix, inverted_angles, is_regular, IdealPolygon, REGULAR_TOL,
};

/// Equalities forced by symmetry must hold to this.
const SYMMETRY_TOL: f64 = 1e-12;
/// Slack on the area bound and on area comparisons.
const AREA_SLACK: f64 = 1e-12;
/// Two inverted angles at the same distance from the reflecting side.
const TIE_TOL: f64 = 1e-13;
/// Side widths used by the single-point monotonicity check.
const WIDTH_MARGIN: f64 = 1e-3;

/// Named numerical checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Inverted angles of the regular polygon decay away from the reflecting side.
    Lemma31,
    /// The image of a point moves backwards as the point moves forwards.
    Lemma32i,
    /// Adjacent sides: the smaller side's image of the larger is the smaller pair entry.
    Lemma32ii,
    /// The same inequality for non-adjacent sides.
    Lemma32iii,
    /// Regularity of first bodies of regular polygons.
    Lemma33,
    /// Bodies of non-regular polygons are never regular.
    Lemma34,
    /// Euclidean area bound attained only at the regular polygon.
    Thm52,
    /// Body area dominated by the regular body's (evidence only).
    Conj51,
    /// Inverted-angle spectrum majorizes the regular one (evidence only).
    Conj52,
    /// Square with two pairs of equal adjacent sides.
    Lemma41,
    /// Square with two pairs of equal opposite sides.
    Lemma42,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Lemma31,
        Suite::Lemma32i,
        Suite::Lemma32ii,
        Suite::Lemma32iii,
        Suite::Lemma33,
        Suite::Lemma34,
        Suite::Thm52,
        Suite::Conj51,
        Suite::Conj52,
        Suite::Lemma41,
        Suite::Lemma42,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma31 => "lemma31",
            Suite::Lemma32i => "lemma32i",
            Suite::Lemma32ii => "lemma32ii",
            Suite::Lemma32iii => "lemma32iii",
            Suite::Lemma33 => "lemma33",
            Suite::Lemma34 => "lemma34",
            Suite::Thm52 => "thm52",
            Suite::Conj51 => "conj51",
            Suite::Conj52 => "conj52",
            Suite::Lemma41 => "lemma41",
            Suite::Lemma42 => "lemma42",
        }
    }

    /// Conjecture suites gather evidence; a violation is a counterexample.
    pub fn is_conjecture(self) -> bool {
        matches!(self, Suite::Conj51 | Suite::Conj52)
    }

    /// Deterministic suites ignore the sample count and seed.
    pub fn is_deterministic(self) -> bool {
        matches!(self, Suite::Lemma31 | Suite::Lemma33)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub samples: usize,
    pub seed: u64,
    /// Side count for the conjecture suites (default 4).
    pub n: Option<usize>,
}

/// Outcome of one case: a violation, plus the case's margin (positive when
/// the checked relation holds) and the input that produced it.
struct CaseOutcome {
    violation: Option<Violation>,
    margin: f64,
    input: Vec<f64>,
    skipped: Option<usize>,
}

impl CaseOutcome {
    fn check(case: usize, input: Vec<f64>, margin: f64, holds: bool, expected: &str, observed: Vec<f64>) -> Self {
        let violation = (!holds).then(|| Violation {
            case,
            input: input.clone(),
            expected: expected.to_string(),
            observed,
        });
        Self {
            violation,
            margin,
            input,
            skipped: None,
        }
    }

    /// A case whose input falls outside the checked routine's domain.
    fn skip(case: usize, input: Vec<f64>) -> Self {
        Self {
            violation: None,
            margin: f64::INFINITY,
            input,
            skipped: Some(case),
        }
    }
}

fn collect(
    suite: Suite,
    seed: Option<u64>,
    started: Instant,
    outcomes: Vec<CaseOutcome>,
) -> ScanReport {
    let skipped: Vec<usize> = outcomes.iter().filter_map(|o| o.skipped).collect();
    let evaluated = outcomes.len() - skipped.len();
    let (best_value, best_point) = outcomes
        .iter()
        .filter(|o| o.skipped.is_none())
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
        .map(|o| (o.margin, o.input.clone()))
        .unwrap_or((f64::INFINITY, Vec::new()));
    ScanReport {
        objective: suite.name().to_string(),
        evaluated,
        best_value,
        best_point,
        runner_up: None,
        skipped,
        violations: outcomes.into_iter().filter_map(|o| o.violation).collect(),
        seed,
        evidence: suite.is_conjecture(),
        elapsed: started.elapsed(),
    }
}

pub fn property_suite(name: &str, samples: usize, seed: u64) -> Result<ScanReport> {
    let suite: Suite = name.parse()?;
    property_suite_with(
        suite,
        &SuiteOptions {
            samples,
            seed,
            n: None,
        },
    )
}

pub fn property_suite_with(suite: Suite, opts: &SuiteOptions) -> Result<ScanReport> {
    let started = Instant::now();
    let seed = (!suite.is_deterministic()).then_some(opts.seed);
    let outcomes = match suite {
        Suite::Lemma31 => lemma31()?,
        Suite::Lemma32i => lemma32i(opts),
        Suite::Lemma32ii => pair_monotonicity(opts, 3, true),
        Suite::Lemma32iii => pair_monotonicity(opts, 4, false),
        Suite::Lemma33 => lemma33()?,
        Suite::Lemma34 => lemma34(opts)?,
        Suite::Thm52 => thm52(opts)?,
        Suite::Conj51 => conj51(opts)?,
        Suite::Conj52 => {
            return majorization_scan(opts.n.unwrap_or(4), opts.samples, opts.seed);
        }
        Suite::Lemma41 => square_symmetry(opts, [[0, 3], [1, 2]], true),
        Suite::Lemma42 => square_symmetry(opts, [[0, 2], [1, 3]], false),
    };
    Ok(collect(suite, seed, started, outcomes))
}

/// Circular distance between sides `j` and `k` of an `n`-gon.
fn side_distance(j: usize, k: usize, n: usize) -> usize {
    let d = (k + n - j) % n;
    d.min(n - d)
}

fn lemma31() -> Result<Vec<CaseOutcome>> {
    (3..=12)
        .enumerate()
        .map(|(case, n)| {
            let m = inverted_angle_matrix(&IdealPolygon::regular(n)?);
            let half = n / 2;
            let mut by_distance: Vec<Vec<f64>> = vec![Vec::new(); half + 1];
            for j in 0..n {
                for (k, v) in m.row(j) {
                    by_distance[side_distance(j, k, n)].push(v);
                }
            }
            let mut margin = f64::INFINITY;
            let mut holds = true;
            for group in &by_distance[1..] {
                let spread = group.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
                    - group.iter().fold(f64::INFINITY, |a, &b| a.min(b));
                holds &= spread <= TIE_TOL;
            }
            let levels: Vec<f64> = by_distance[1..].iter().map(|g| g[0]).collect();
            for pair in levels.windows(2) {
                margin = margin.min(pair[0] - pair[1]);
                holds &= pair[0] > pair[1];
            }
            Ok(CaseOutcome::check(
                case,
                vec![n as f64],
                margin,
                holds,
                "entries strictly decrease with distance from the reflecting side",
                levels,
            ))
        })
        .collect()
}

fn lemma32i(opts: &SuiteOptions) -> Vec<CaseOutcome> {
    let mut sampler = SimplexSampler::new(opts.seed);
    let draws: Vec<[f64; 4]> = (0..opts.samples)
        .map(|_| {
            let start = sampler.uniform(0.0, 1.0);
            let width = sampler.uniform(WIDTH_MARGIN, 0.5 - WIDTH_MARGIN);
            let u = sampler.uniform(0.0, 1.0);
            let v = sampler.uniform(0.0, 1.0);
            [start, width, u.min(v), u.max(v)]
        })
        .collect();
    draws
        .par_iter()
        .enumerate()
        .map(|(case, &[start, width, u1, u2])| {
            let side = GeodesicSide::new(start, width).expect("sampled in domain");
            // positions along the open complementary arc (start + width, start + 1)
            let span = 1.0 - width;
            let beta1 = wrap_turn(start + width + u1 * span);
            let beta2 = wrap_turn(start + width + u2 * span);
            let image = |beta: f64| {
                let x = invert_on_circle(beta, &side).expect("finite");
                signed_turn(x - start)
            };
            let (x1, x2) = (image(beta1), image(beta2));
            let holds = u1 == u2 || x1 > x2;
            CaseOutcome::check(
                case,
                vec![start, width, beta1, beta2],
                if u1 == u2 { f64::INFINITY } else { x1 - x2 },
                holds,
                "x(beta1) > x(beta2) for beta1 < beta2",
                vec![x1, x2],
            )
        })
        .collect()
}

fn pair_monotonicity(opts: &SuiteOptions, min_n: usize, adjacent: bool) -> Vec<CaseOutcome> {
    let mut sampler = SimplexSampler::new(opts.seed);
    let draws: Vec<Vec<f64>> = (0..opts.samples)
        .map(|_| {
            let n = sampler.side_count(min_n, 8);
            sampler.angles(n)
        })
        .collect();
    draws
        .into_par_iter()
        .enumerate()
        .map(|(case, angles)| {
            let n = angles.len();
            let m = inverted_angles(&angles, 0.0).expect("sampled in domain");
            let mut margin = f64::INFINITY;
            let mut worst = Vec::new();
            for k in 0..n {
                for l in 0..n {
                    let is_adjacent = side_distance(k, l, n) == 1;
                    if k == l || is_adjacent != adjacent || !(angles[k] < angles[l]) {
                        continue;
                    }
                    let (small, large) = (m.get(k, l).unwrap(), m.get(l, k).unwrap());
                    if large - small < margin {
                        margin = large - small;
                        worst = vec![k as f64, l as f64, small, large];
                    }
                }
            }
            CaseOutcome::check(
                case,
                angles,
                margin,
                margin > 0.0,
                "alpha[k,l] < alpha[l,k] whenever alpha_k < alpha_l",
                worst,
            )
        })
        .collect()
}

fn lemma33() -> Result<Vec<CaseOutcome>> {
    let mut cases = vec![(3usize, 1usize, true), (3, 2, false)];
    cases.extend((4..=12).map(|n| (n, 1, false)));
    cases
        .into_iter()
        .enumerate()
        .map(|(case, (n, s, want_regular))| {
            let body = grow_body(&IdealPolygon::regular(n)?, s)?;
            let angles = body.boundary_angles();
            let target = 1.0 / angles.len() as f64;
            let deviation = angles.iter().map(|a| (a - target).abs()).fold(0.0, f64::max);
            let regular = is_regular(angles, REGULAR_TOL);
            let expected = if want_regular {
                "body is regular"
            } else {
                "body is not regular"
            };
            Ok(CaseOutcome::check(
                case,
                vec![n as f64, s as f64],
                if want_regular {
                    REGULAR_TOL - deviation
                } else {
                    deviation - REGULAR_TOL
                },
                regular == want_regular,
                expected,
                vec![deviation],
            ))
        })
        .collect()
}

fn lemma34(opts: &SuiteOptions) -> Result<Vec<CaseOutcome>> {
    let mut sampler = SimplexSampler::new(opts.seed);
    let draws: Vec<Vec<f64>> = (0..opts.samples)
        .map(|_| {
            let n = sampler.side_count(3, 8);
            sampler.angles(n)
        })
        .collect();
    draws
        .into_par_iter()
        .enumerate()
        .map(|(case, angles)| {
            let poly = IdealPolygon::new(angles.clone(), 0.0)?;
            let mut deviations = Vec::new();
            for s in 1..=2 {
                // arcs below the resolution guard put the seed out of reach
                let body = match grow_body(&poly, s) {
                    Ok(body) => body,
                    Err(Error::ArcUnderflow { .. }) => return Ok(CaseOutcome::skip(case, angles)),
                    Err(e) => return Err(e),
                };
                let b = body.boundary_angles();
                let target = 1.0 / b.len() as f64;
                deviations.push(b.iter().map(|a| (a - target).abs()).fold(0.0, f64::max));
            }
            let margin = deviations.iter().copied().fold(f64::INFINITY, f64::min) - REGULAR_TOL;
            let seed_regular = is_regular(&angles, REGULAR_TOL);
            Ok(CaseOutcome::check(
                case,
                angles,
                margin,
                seed_regular || margin > 0.0,
                "bodies of generations 1 and 2 are not regular",
                deviations,
            ))
        })
        .collect()
}

fn thm52(opts: &SuiteOptions) -> Result<Vec<CaseOutcome>> {
    let mut inputs: Vec<Vec<f64>> = (3..=12).map(|n| vec![1.0 / n as f64; n]).collect();
    let mut sampler = SimplexSampler::new(opts.seed);
    for _ in 0..opts.samples {
        let n = sampler.side_count(3, 12);
        inputs.push(sampler.angles(n));
    }
    inputs
        .into_par_iter()
        .enumerate()
        .map(|(case, angles)| {
            let area = euclidean_area(&angles)?;
            let bound = area_upper_bound(angles.len())?;
            let slack = bound - area;
            let regular = is_regular(&angles, REGULAR_TOL);
            let (holds, margin, expected) = if regular {
                (
                    slack.abs() < AREA_SLACK,
                    AREA_SLACK - slack.abs(),
                    "area equals the bound at the regular polygon",
                )
            } else {
                (
                    slack > AREA_SLACK,
                    slack,
                    "area strictly below the bound off the regular polygon",
                )
            };
            Ok(CaseOutcome::check(case, angles, margin, holds, expected, vec![area, bound]))
        })
        .collect()
}

fn conj51(opts: &SuiteOptions) -> Result<Vec<CaseOutcome>> {
    let n = opts.n.unwrap_or(4);
    // the boundary of the first body is the multiset of inverted angles
    let reference = euclidean_area(&inverted_angle_matrix(&IdealPolygon::regular(n)?).flatten())?;
    let mut sampler = SimplexSampler::new(opts.seed);
    let draws: Vec<Vec<f64>> = (0..opts.samples).map(|_| sampler.angles(n)).collect();
    draws
        .into_par_iter()
        .enumerate()
        .map(|(case, angles)| {
            let boundary = inverted_angles(&angles, 0.0)?.flatten();
            let area = match euclidean_area(&boundary) {
                Ok(area) => area,
                Err(Error::AngleOutOfRange { .. }) => return Ok(CaseOutcome::skip(case, angles)),
                Err(e) => return Err(e),
            };
            let margin = reference - area;
            Ok(CaseOutcome::check(
                case,
                angles,
                margin,
                margin >= -AREA_SLACK,
                "area of the first body at most the regular body's",
                vec![area, reference],
            ))
        })
        .collect()
}

fn square_symmetry(opts: &SuiteOptions, pairs: [[usize; 2]; 2], adjacent: bool) -> Vec<CaseOutcome> {
    let mut sampler = SimplexSampler::new(opts.seed);
    let draws: Vec<f64> = (0..opts.samples)
        .map(|_| sampler.uniform(0.001, 0.499))
        .collect();
    draws
        .into_par_iter()
        .enumerate()
        .map(|(case, p)| {
            let q = 0.5 - p;
            let angles = if adjacent {
                // α1 = α4 = p, α2 = α3 = q
                vec![p, q, q, p]
            } else {
                // α1 = α3 = p, α2 = α4 = q
                vec![p, q, p, q]
            };
            let m = inverted_angles(&angles, 0.0).expect("sampled in domain");
            let mut observed = Vec::new();
            let mut worst: f64 = 0.0;
            for [a, b] in pairs {
                let (x, y) = (m.get(a, b).unwrap(), m.get(b, a).unwrap());
                worst = worst.max((x - y).abs());
                observed.extend([x, y]);
            }
            CaseOutcome::check(
                case,
                angles,
                SYMMETRY_TOL - worst,
                worst <= SYMMETRY_TOL,
                "symmetric sides have equal mutual inverted angles",
                observed,
            )
        })
        .collect()
}

/// Spectrum of all inverted angles of the polygon with widths `angles`.
pub(crate) fn spectrum(angles: &[f64]) -> Result<AngleSpectrum> {
    decreasing_rearrangement(&inverted_angles(angles, 0.0)?.flatten())
}

/// Checks, on random polygons, whether the inverted-angle spectrum
/// majorizes that of the regular `n`-gon. Every sample must also have a
/// spectrum summing to 1.
pub fn majorization_scan(n: usize, samples: usize, seed: u64) -> Result<ScanReport> {
    let started = Instant::now();
    if n < 3 {
        return Err(Error::TooFewSides(n));
    }
    let reference = spectrum(&vec![1.0 / n as f64; n])?;
    let mut sampler = SimplexSampler::new(seed);
    let draws: Vec<Vec<f64>> = (0..samples).map(|_| sampler.angles(n)).collect();
    let outcomes = draws
        .into_par_iter()
        .enumerate()
        .map(|(case, angles)| {
            let spec = spectrum(&angles)?;
            let total = spec.total();
            let failure = first_majorization_failure(&spec, &reference);
            let margin = spec
                .prefix_sums()
                .iter()
                .zip(reference.prefix_sums())
                .map(|(a, b)| a - b)
                .fold(f64::INFINITY, f64::min);
            let total_ok = (total - 1.0).abs() <= 1e-10;
            let observed = match failure {
                Some((m, gap)) => vec![m as f64, gap, total],
                None => vec![0.0, 0.0, total],
            };
            Ok(CaseOutcome::check(
                case,
                angles,
                margin,
                failure.is_none() && total_ok,
                "spectrum majorizes the regular spectrum and sums to 1",
                observed,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = collect(Suite::Conj52, Some(seed), started, outcomes);
    report.objective = format!("conj52 n={n}");
    Ok(report)
}

//! Generational reflection bodies.
//!
//! Generation 0 is the base polygon. Each cell of generation `g` is
//! reflected across every side it does not share with its parent, giving
//! `n(n-1)^g` cells in generation `g + 1`. All vertices stay on the unit
//! circle, so the body of generations `≤ s` is the ideal polygon whose
//! vertices are the union of all cell vertices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::disk::{CirclePoint, POINT_EPS};
use crate::error::{Error, Result};
use crate::polygon::{reflect_polygon, IdealPolygon};

/// Default cap on the number of boundary sides of a body.
pub const DEFAULT_MAX_SIDES: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_SIDES`].
pub const MAX_SIDES_ENV: &str = "HYPERGON_MAX_SIDES";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthLimits {
    pub max_sides: usize,
    /// Smallest boundary arc (turns) that is still trusted.
    pub min_arc: f64,
}

impl Default for GrowthLimits {
    fn default() -> Self {
        Self {
            max_sides: DEFAULT_MAX_SIDES,
            min_arc: 100.0 * POINT_EPS,
        }
    }
}

impl GrowthLimits {
    /// Defaults, with `max_sides` taken from `HYPERGON_MAX_SIDES` when it
    /// parses as a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(cap) = std::env::var(MAX_SIDES_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            limits.max_sides = cap;
        }
        limits
    }
}

/// One polygon of a body, as a positively ordered vertex cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub vertices: Vec<CirclePoint>,
    /// Index of the side shared with the parent cell; `None` for the base.
    pub parent_side: Option<usize>,
}

impl Cell {
    fn free_sides(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(move |&j| Some(j) != self.parent_side)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Body {
    base: IdealPolygon,
    generations: usize,
    cells: Vec<Vec<Cell>>,
    boundary: Vec<CirclePoint>,
    boundary_angles: Vec<f64>,
}

impl Body {
    pub fn base(&self) -> &IdealPolygon {
        &self.base
    }

    pub fn generations(&self) -> usize {
        self.generations
    }

    /// Cells by generation; `cells()[0]` holds the base polygon alone.
    pub fn cells(&self) -> &[Vec<Cell>] {
        &self.cells
    }

    pub fn polygon_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Boundary vertices in positive order, starting at the base rotation.
    pub fn boundary(&self) -> &[CirclePoint] {
        &self.boundary
    }

    /// Arcs between consecutive boundary vertices; sums to 1.
    pub fn boundary_angles(&self) -> &[f64] {
        &self.boundary_angles
    }
}

/// Number of boundary sides of the body of generations `≤ s`.
pub fn boundary_side_count(n: usize, s: usize) -> u128 {
    let mut count = n as u128;
    for _ in 0..s {
        count = count.saturating_mul(n as u128 - 1);
    }
    count
}

pub fn grow_body(poly: &IdealPolygon, s: usize) -> Result<Body> {
    grow_body_with(poly, s, &GrowthLimits::default())
}

pub fn grow_body_with(poly: &IdealPolygon, s: usize, limits: &GrowthLimits) -> Result<Body> {
    let n = poly.n();
    let sides = boundary_side_count(n, s);
    if sides > limits.max_sides as u128 {
        return Err(Error::DepthLimit {
            sides,
            cap: limits.max_sides,
        });
    }

    let base_cell = Cell {
        vertices: poly.vertices(),
        parent_side: None,
    };
    let mut cells = vec![vec![base_cell]];
    for _ in 0..s {
        let parents = cells.last().expect("generation 0");
        let children: Vec<Cell> = parents
            .par_iter()
            .map(|cell| {
                cell.free_sides()
                    .map(|j| {
                        Ok(Cell {
                            vertices: reflect_polygon(&cell.vertices, j)?,
                            parent_side: Some(n - 1),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        check_arcs(&children, limits.min_arc)?;
        cells.push(children);
    }

    let origin = CirclePoint::new(poly.rotation())?;
    let mut boundary: Vec<CirclePoint> = cells[0][0].vertices.clone();
    for generation in &cells[1..] {
        for cell in generation {
            boundary.extend_from_slice(&cell.vertices[1..n - 1]);
        }
    }
    boundary.sort_by(|a, b| {
        a.offset_from(origin)
            .partial_cmp(&b.offset_from(origin))
            .expect("finite")
    });

    let offsets: Vec<f64> = boundary.iter().map(|p| p.offset_from(origin)).collect();
    let mut boundary_angles: Vec<f64> = offsets.windows(2).map(|w| w[1] - w[0]).collect();
    boundary_angles.push(1.0 - offsets[offsets.len() - 1]);
    if s == 0 {
        boundary_angles = poly.angles().to_vec();
    }
    if let Some(&arc) = boundary_angles
        .iter()
        .min_by(|a, b| a.partial_cmp(b).expect("finite"))
    {
        if arc < limits.min_arc {
            return Err(Error::ArcUnderflow {
                arc,
                guard: limits.min_arc,
            });
        }
    }
    debug_assert_eq!(boundary_angles.len() as u128, sides);

    Ok(Body {
        base: poly.clone(),
        generations: s,
        cells,
        boundary,
        boundary_angles,
    })
}

fn check_arcs(cells: &[Cell], guard: f64) -> Result<()> {
    for cell in cells {
        for pair in cell.vertices.windows(2) {
            let arc = pair[1].offset_from(pair[0]);
            if arc < guard {
                return Err(Error::ArcUnderflow { arc, guard });
            }
        }
    }
    Ok(())
}

//! Python bindings: `import hypergon`.

use ::hypergon as core;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: core::Error) -> PyErr {
    match e {
        core::Error::NoConvergence { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// An ideal polygon given by its side widths in turns.
#[pyclass(name = "IdealPolygon", frozen)]
struct PyIdealPolygon(core::IdealPolygon);

#[pymethods]
impl PyIdealPolygon {
    #[new]
    #[pyo3(signature = (angles, rotation = 0.0))]
    fn new(angles: Vec<f64>, rotation: f64) -> PyResult<Self> {
        core::IdealPolygon::new(angles, rotation).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn regular(n: usize) -> PyResult<Self> {
        core::IdealPolygon::regular(n).map(Self).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn angles(&self) -> Vec<f64> {
        self.0.angles().to_vec()
    }

    #[getter]
    fn rotation(&self) -> f64 {
        self.0.rotation()
    }

    /// Vertex positions in turns.
    fn vertices(&self) -> Vec<f64> {
        self.0.vertices().iter().map(|p| p.turn()).collect()
    }

    /// Inverted angles as an `n x n` nested list; the diagonal is 0.
    fn inverted_angle_matrix(&self) -> Vec<Vec<f64>> {
        let m = core::inverted_angle_matrix(&self.0);
        (0..m.n())
            .map(|j| (0..m.n()).map(|k| m.get(j, k).unwrap_or(0.0)).collect())
            .collect()
    }

    /// `(value, row, col)` of the largest inverted angle, 0-based.
    fn max_inverted_angle(&self) -> (f64, usize, usize) {
        let e = core::max_inverted_angle(&self.0);
        (e.value, e.row, e.col)
    }

    fn euclidean_area(&self) -> PyResult<f64> {
        core::euclidean_area(self.0.angles()).map_err(to_py)
    }

    #[pyo3(signature = (cells = 1_000_000))]
    fn hyperbolic_area(&self, py: Python<'_>, cells: usize) -> PyResult<f64> {
        let poly = self.0.clone();
        py.detach(|| core::hyperbolic_area_quadrature(&poly, cells))
            .map_err(to_py)
    }

    fn grow(&self, py: Python<'_>, generations: usize) -> PyResult<PyBody> {
        let poly = self.0.clone();
        py.detach(|| core::grow_body_with(&poly, generations, &core::GrowthLimits::from_env()))
            .map(PyBody)
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("IdealPolygon({:?}, rotation={})", self.0.angles(), self.0.rotation())
    }
}

/// The union of all generations up to `generations`.
#[pyclass(name = "Body", frozen)]
struct PyBody(core::Body);

#[pymethods]
impl PyBody {
    #[getter]
    fn generations(&self) -> usize {
        self.0.generations()
    }

    #[getter]
    fn polygon_counts(&self) -> Vec<usize> {
        self.0.polygon_counts()
    }

    #[getter]
    fn boundary_angles(&self) -> Vec<f64> {
        self.0.boundary_angles().to_vec()
    }

    /// Vertex positions (turns) of every cell, grouped by generation.
    fn cells(&self) -> Vec<Vec<Vec<f64>>> {
        self.0
            .cells()
            .iter()
            .map(|g| {
                g.iter()
                    .map(|c| c.vertices.iter().map(|p| p.turn()).collect())
                    .collect()
            })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.0.boundary_angles().len()
    }
}

/// Image of the boundary point `beta` under reflection across the side
/// starting at `start` with width `width`.
#[pyfunction]
fn invert_on_circle(beta: f64, start: f64, width: f64) -> PyResult<f64> {
    let side = core::GeodesicSide::new(start, width).map_err(to_py)?;
    core::invert_on_circle(beta, &side).map_err(to_py)
}

#[pyfunction]
fn side_region_area(alpha: f64) -> PyResult<f64> {
    core::side_region_area(alpha).map_err(to_py)
}

#[pyfunction]
fn area_upper_bound(n: usize) -> PyResult<f64> {
    core::area_upper_bound(n).map_err(to_py)
}

#[pyfunction]
fn hyperbolic_area_ideal(n: usize) -> PyResult<f64> {
    core::hyperbolic_area_ideal(n).map_err(to_py)
}

/// Whether `x` majorizes `y` (both rearranged decreasingly first).
#[pyfunction]
fn majorizes(x: Vec<f64>, y: Vec<f64>) -> PyResult<bool> {
    let x = core::decreasing_rearrangement(&x).map_err(to_py)?;
    let y = core::decreasing_rearrangement(&y).map_err(to_py)?;
    core::majorizes(&x, &y).map_err(to_py)
}

#[pyfunction]
fn minimax_objective(angles: Vec<f64>) -> PyResult<f64> {
    let p = core::SimplexPoint::new(angles).map_err(to_py)?;
    Ok(core::minimax_objective(&p))
}

/// `(point, value)` of a local refinement from `start`.
#[pyfunction]
#[pyo3(signature = (start, tol = 1e-10))]
fn refine_minimum(py: Python<'_>, start: Vec<f64>, tol: f64) -> PyResult<(Vec<f64>, f64)> {
    let p = core::SimplexPoint::new(start).map_err(to_py)?;
    let r = py.detach(|| core::refine_minimum(&p, tol)).map_err(to_py)?;
    Ok((r.point.angles().to_vec(), r.value))
}

fn report_dict<'py>(py: Python<'py>, r: &core::ScanReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("objective", &r.objective)?;
    d.set_item("evaluated", r.evaluated)?;
    d.set_item("best_value", r.best_value)?;
    d.set_item("best_point", &r.best_point)?;
    d.set_item("runner_up", &r.runner_up)?;
    d.set_item("skipped", &r.skipped)?;
    let violations: Vec<(usize, Vec<f64>, String, Vec<f64>)> = r
        .violations
        .iter()
        .map(|v| (v.case, v.input.clone(), v.expected.clone(), v.observed.clone()))
        .collect();
    d.set_item("violations", violations)?;
    d.set_item("seed", r.seed)?;
    d.set_item("evidence", r.evidence)?;
    d.set_item("passed", r.passed())?;
    Ok(d)
}

#[pyfunction]
fn grid_scan<'py>(py: Python<'py>, n: usize, step: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = py.detach(|| core::grid_scan(n, step)).map_err(to_py)?;
    report_dict(py, &r)
}

#[pyfunction]
#[pyo3(signature = (name, samples = 10_000, seed = 0))]
fn property_suite<'py>(py: Python<'py>, name: &str, samples: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = py
        .detach(|| core::property_suite(name, samples, seed))
        .map_err(to_py)?;
    report_dict(py, &r)
}

#[pymodule]
#[pyo3(name = "hypergon")]
fn hypergon_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIdealPolygon>()?;
    m.add_class::<PyBody>()?;
    m.add_function(wrap_pyfunction!(invert_on_circle, m)?)?;
    m.add_function(wrap_pyfunction!(side_region_area, m)?)?;
    m.add_function(wrap_pyfunction!(area_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hyperbolic_area_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(majorizes, m)?)?;
    m.add_function(wrap_pyfunction!(minimax_objective, m)?)?;
    m.add_function(wrap_pyfunction!(refine_minimum, m)?)?;
    m.add_function(wrap_pyfunction!(grid_scan, m)?)?;
    m.add_function(wrap_pyfunction!(property_suite, m)?)?;
    Ok(())
}

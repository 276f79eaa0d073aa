//! SVG figures of bodies: every side drawn as an arc of its orthogonal
//! circle.

use std::f64::consts::PI;
use std::fmt::Write as _;

use hypergon::{Body, CirclePoint};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Widths of the side arc closer than this to one half are drawn as
/// diameters.
const DIAMETER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderSpec {
    /// Canvas width and height in pixels.
    pub size: u32,
    /// Stroke widths in disk units.
    pub circle_stroke: f64,
    pub side_stroke: f64,
    /// Stroke color per generation, reused cyclically.
    pub colors: Vec<String>,
    /// Decimals in path data.
    pub precision: usize,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            size: 800,
            circle_stroke: 0.004,
            side_stroke: 0.002,
            colors: ["#1b1b1b", "#c0392b", "#2471a3", "#229954", "#b9770e", "#7d3c98"]
                .map(String::from)
                .to_vec(),
            precision: 6,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Invalid(format!("render spec: {msg}")));
        if self.size == 0 {
            return bad("size must be positive");
        }
        if !(self.circle_stroke > 0.0 && self.circle_stroke.is_finite())
            || !(self.side_stroke > 0.0 && self.side_stroke.is_finite())
        {
            return bad("stroke widths must be positive");
        }
        if self.colors.is_empty() {
            return bad("colors must not be empty");
        }
        if !(3..=12).contains(&self.precision) {
            return bad("precision must be in 3..=12");
        }
        Ok(())
    }

    fn num(&self, x: f64) -> String {
        let s = format!("{x:.*}", self.precision);
        // keep "-0.000" out of the output
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            s.trim_start_matches('-').to_string()
        } else {
            s
        }
    }
}

fn plane(p: CirclePoint) -> (f64, f64) {
    let t = 2.0 * PI * p.turn();
    // SVG's y axis points down
    (t.cos(), -t.sin())
}

/// Path data for one closed cell.
fn cell_path(vertices: &[CirclePoint], spec: &RenderSpec) -> String {
    let (x0, y0) = plane(vertices[0]);
    let mut d = format!("M {} {}", spec.num(x0), spec.num(y0));
    for (i, &p) in vertices.iter().enumerate() {
        let q = vertices[(i + 1) % vertices.len()];
        let span = q.offset_from(p);
        let width = span.min(1.0 - span);
        let (px, py) = plane(p);
        let (qx, qy) = plane(q);
        if width > 0.5 - DIAMETER_TOL {
            let _ = write!(d, " L {} {}", spec.num(qx), spec.num(qy));
            continue;
        }
        let r = spec.num((PI * width).tan());
        // in screen coordinates the arc toward the origin turns against
        // the short way round the unit circle
        let sweep = u8::from(px * qy - py * qx > 0.0);
        let _ = write!(
            d,
            " A {r} {r} 0 0 {sweep} {} {}",
            spec.num(qx),
            spec.num(qy)
        );
    }
    d.push_str(" Z");
    d
}

pub fn render_svg(body: &Body, spec: &RenderSpec) -> Result<String, CliError> {
    spec.validate()?;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="-1.05 -1.05 2.1 2.1">"#,
        spec.size
    );
    let _ = writeln!(
        out,
        r##"<circle cx="0" cy="0" r="1" fill="none" stroke="#000000" stroke-width="{}"/>"##,
        spec.num(spec.circle_stroke)
    );
    for (g, generation) in body.cells().iter().enumerate() {
        let color = &spec.colors[g % spec.colors.len()];
        let _ = writeln!(
            out,
            r#"<g id="generation-{g}" fill="none" stroke="{color}" stroke-width="{}">"#,
            spec.num(spec.side_stroke)
        );
        for cell in generation {
            let _ = writeln!(out, r#"<path d="{}"/>"#, cell_path(&cell.vertices, spec));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

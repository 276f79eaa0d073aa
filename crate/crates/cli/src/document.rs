//! JSON documents read and written by the commands.

use hypergon::{euclidean_area, Body, IdealPolygon};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// A polygon as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonDocument {
    pub n: usize,
    pub angles: Vec<f64>,
    #[serde(default)]
    pub rotation: f64,
}

impl PolygonDocument {
    pub fn to_polygon(&self) -> Result<IdealPolygon, CliError> {
        if self.n != self.angles.len() {
            return Err(CliError::Invalid(format!(
                "n is {} but {} angles were given",
                self.n,
                self.angles.len()
            )));
        }
        Ok(IdealPolygon::new(self.angles.clone(), self.rotation)?)
    }
}

/// A grown body. `base_angles`, `rotation` and `checksum` let `render`
/// regrow the cells and notice edited files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyDocument {
    pub n: usize,
    pub generations: usize,
    pub polygon_counts: Vec<usize>,
    pub boundary_angles: Vec<f64>,
    pub euclidean_area: f64,
    pub base_angles: Vec<f64>,
    pub rotation: f64,
    pub checksum: String,
}

impl BodyDocument {
    pub fn from_body(body: &Body) -> Result<Self, CliError> {
        let base = body.base();
        let boundary_angles = body.boundary_angles().to_vec();
        Ok(Self {
            n: base.n(),
            generations: body.generations(),
            polygon_counts: body.polygon_counts(),
            euclidean_area: euclidean_area(&boundary_angles)?,
            checksum: checksum(&boundary_angles),
            boundary_angles,
            base_angles: base.angles().to_vec(),
            rotation: base.rotation(),
        })
    }

    pub fn base_polygon(&self) -> Result<IdealPolygon, CliError> {
        PolygonDocument {
            n: self.n,
            angles: self.base_angles.clone(),
            rotation: self.rotation,
        }
        .to_polygon()
    }

    pub fn verify(&self) -> Result<(), CliError> {
        if checksum(&self.boundary_angles) != self.checksum {
            return Err(CliError::Invalid(
                "body checksum does not match its boundary angles".into(),
            ));
        }
        Ok(())
    }
}

/// SHA-256 of the boundary angles, each written with 17 significant digits.
pub fn checksum(angles: &[f64]) -> String {
    let mut hasher = Sha256::new();
    for a in angles {
        hasher.update(format!("{a:.16e}\n").as_bytes());
    }
    hex::encode(hasher.finalize())
}

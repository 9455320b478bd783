//! JSON complex format:
//! `{ "ambient_dim": n, "vertices": [["p/q", ...], ...], "maximal_faces": [[0, 1, ...], ...] }`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::exactmath::rational::serde_points;
use crate::exactmath::Point;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub ambient_dim: usize,
    #[serde(with = "serde_points")]
    pub vertices: Vec<Point>,
    pub maximal_faces: Vec<Vec<usize>>,
}

impl From<&SimplicialComplex> for ComplexFile {
    fn from(c: &SimplicialComplex) -> Self {
        ComplexFile {
            ambient_dim: c.ambient_dim(),
            vertices: c.vertices().to_vec(),
            maximal_faces: c.maximal_faces().iter().map(|s| s.vertices().to_vec()).collect(),
        }
    }
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.ambient_dim, self.vertices, self.maximal_faces)
    }
}

/// Parses and validates a complex.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let complex = file.into_complex()?;
    complex.validate()?;
    Ok(complex)
}

pub fn load_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    parse_complex(&std::fs::read_to_string(path)?)
}

pub fn complex_to_json(c: &SimplicialComplex) -> String {
    serde_json::to_string_pretty(&ComplexFile::from(c)).expect("complex serializes")
}

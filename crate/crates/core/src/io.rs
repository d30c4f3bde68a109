//! JSON documents for spaces and operators.
//!
//! Space: `{"dim": n, "vertices": [[..], ..], "facets": [[..], ..],
//! "tolerance": ε, "symmetric": bool}` where `facets`, `tolerance` and
//! `symmetric` are optional. With `"symmetric": true` the file lists one
//! representative per `±` pair and the loader mirrors them.
//!
//! Operator: `{"matrix": [[row], ..]}`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{to_vectors, PolyhedralSpace, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub matrix: Vec<Vec<f64>>,
}

/// Deserializes with the JSON path of the offending field in the error.
fn parse<T: for<'de> Deserialize<'de>>(json: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(json);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::InvalidInput(format!("field `{path}`: {}", e.into_inner()))
    })
}

impl SpaceFile {
    pub fn parse(json: &str) -> Result<Self> {
        parse(json)
    }

    pub fn from_space(space: &PolyhedralSpace) -> Self {
        let rows = |list: &[nalgebra::DVector<f64>]| list.iter().map(|v| v.iter().copied().collect()).collect();
        Self {
            dim: space.dim(),
            vertices: rows(space.vertices()),
            facets: Some(rows(space.facets())),
            tolerance: Some(space.tolerance()),
            symmetric: false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("space file serializes")
    }

    /// Builds the space, mirroring `±` halves and enumerating facets when
    /// none are given.
    pub fn into_space(self, tolerance_override: Option<f64>) -> Result<PolyhedralSpace> {
        let tolerance = tolerance_override.or(self.tolerance).unwrap_or(DEFAULT_TOLERANCE);
        let check = |field: &str, rows: &[Vec<f64>]| -> Result<()> {
            for (i, r) in rows.iter().enumerate() {
                if r.len() != self.dim {
                    return Err(Error::InvalidInput(format!(
                        "field `{field}[{i}]`: DimensionMismatch: expected {}, found {}",
                        self.dim,
                        r.len()
                    )));
                }
            }
            Ok(())
        };
        check("vertices", &self.vertices)?;
        if let Some(f) = &self.facets {
            check("facets", f)?;
        }
        let mirror = |rows: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            if self.symmetric {
                let neg: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
                rows.into_iter().chain(neg).collect()
            } else {
                rows
            }
        };
        let vertices = to_vectors(&mirror(self.vertices.clone()));
        match self.facets.clone() {
            Some(f) => PolyhedralSpace::new(vertices, to_vectors(&mirror(f)), tolerance),
            None => PolyhedralSpace::from_vertices(vertices, tolerance),
        }
    }
}

impl OperatorFile {
    pub fn parse(json: &str) -> Result<Self> {
        parse(json)
    }

    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        Self {
            matrix: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("operator file serializes")
    }

    /// The matrix, checked against the dimension `n` of the target space.
    pub fn into_matrix(self, n: usize) -> Result<DMatrix<f64>> {
        if self.matrix.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.matrix.len(),
            });
        }
        if let Some(bad) = self.matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(DMatrix::from_fn(n, n, |r, c| self.matrix[r][c]))
    }
}

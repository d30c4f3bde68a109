use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use nalgebra::DMatrix;
use nuradius_core::fixtures::operator_fixture;
use nuradius_core::io::{OperatorFile, SpaceFile};
use nuradius_core::PolyhedralSpace;

pub fn tolerance(value: Option<f64>) -> Result<Option<f64>> {
    match value {
        Some(t) if !(t.is_finite() && t > 0.0) => bail!("tolerance must be a positive real, got {t}"),
        other => Ok(other),
    }
}

/// A built-in name, or else a path to a space file.
pub fn space(source: &str, tolerance: Option<f64>) -> Result<PolyhedralSpace> {
    if PolyhedralSpace::builtin_names().iter().any(|n| n == source) {
        let space = PolyhedralSpace::builtin(source)?;
        return Ok(match tolerance {
            Some(t) => space.with_tolerance(t)?,
            None => space,
        });
    }
    let text = read(Path::new(source))?;
    let file = SpaceFile::parse(&text).with_context(|| source.to_string())?;
    file.into_space(tolerance).with_context(|| source.to_string())
}

/// `fixture:<name>` or a path to an operator file.
pub fn operator(source: &str, dim: usize) -> Result<DMatrix<f64>> {
    let matrix = match source.strip_prefix("fixture:") {
        Some(name) => match operator_fixture(name) {
            Some((_, m)) => m,
            None => bail!("unknown operator fixture `{name}` (known: prism-T, hexagon-T)"),
        },
        None => {
            let file = OperatorFile::parse(&read(Path::new(source))?).with_context(|| source.to_string())?;
            return file.into_matrix(dim).with_context(|| source.to_string());
        }
    };
    if matrix.nrows() != dim {
        return Err(nuradius_core::Error::DimensionMismatch {
            expected: dim,
            found: matrix.nrows(),
        })
        .with_context(|| source.to_string());
    }
    Ok(matrix)
}

pub fn matrix_file(path: &Path, dim: usize) -> Result<DMatrix<f64>> {
    let file = OperatorFile::parse(&read(path)?).with_context(|| path.display().to_string())?;
    file.into_matrix(dim).with_context(|| path.display().to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

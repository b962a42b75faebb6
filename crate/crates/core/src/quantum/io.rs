//! JSON files for projector sets and density matrices.
//!
//! ```json
//! {"d": 3, "r": 1, "projectors": [[[[1.0, 0.0], [0.0, 0.0], ...], ...], ...]}
//! {"d": 3, "matrix": [[[0.5, 0.0], ...], ...]}
//! ```
//!
//! Each matrix is a list of rows; each entry is a `[re, im]` pair.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::ComplexMatrix;
use super::projectors::ProjectorSet;
use super::state::DensityMatrix;
use crate::error::{Error, Result};

type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProjectorFile {
    d: usize,
    r: usize,
    projectors: Vec<Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    d: usize,
    matrix: Rows,
}

fn to_rows(m: &ComplexMatrix) -> Rows {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn from_rows(rows: &Rows, d: usize, what: &str) -> Result<ComplexMatrix> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Shape(format!("{what} is not {d}x{d}")));
    }
    Ok(ComplexMatrix::from_fn(d, d, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

pub fn projectors_from_json(text: &str) -> Result<ProjectorSet> {
    let file: ProjectorFile = serde_json::from_str(text)?;
    let projectors = file
        .projectors
        .iter()
        .enumerate()
        .map(|(k, rows)| from_rows(rows, file.d, &format!("projector {}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    ProjectorSet::new(file.d, file.r, projectors)
}

pub fn projectors_to_json(ps: &ProjectorSet) -> String {
    let file = ProjectorFile { d: ps.dim(), r: ps.rank(), projectors: ps.projectors().iter().map(to_rows).collect() };
    serde_json::to_string_pretty(&file).expect("plain data serializes") + "\n"
}

pub fn state_from_json(text: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(text)?;
    DensityMatrix::new(from_rows(&file.matrix, file.d, "density matrix")?)
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    let file = StateFile { d: rho.dim(), matrix: to_rows(rho.matrix()) };
    serde_json::to_string_pretty(&file).expect("plain data serializes") + "\n"
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_projectors(path: impl AsRef<Path>) -> Result<ProjectorSet> {
    projectors_from_json(&read(path.as_ref())?)
}

pub fn read_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    state_from_json(&read(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::realizations::{kcbs, kcbs_state};

    #[test]
    fn round_trips() {
        let ps = kcbs();
        assert_eq!(projectors_from_json(&projectors_to_json(&ps)).unwrap(), ps);
        let rho = kcbs_state();
        assert_eq!(state_from_json(&state_to_json(&rho)).unwrap().matrix(), rho.matrix());
    }

    #[test]
    fn rejects_bad_shapes() {
        let bad = r#"{"d": 2, "r": 1, "projectors": [[[[1, 0]], [[0, 0], [0, 0]]]]}"#;
        assert!(matches!(projectors_from_json(bad), Err(Error::Shape(_))));
        let bad = r#"{"d": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]], "extra": 1}"#;
        assert!(matches!(state_from_json(bad), Err(Error::Json(_))));
    }
}

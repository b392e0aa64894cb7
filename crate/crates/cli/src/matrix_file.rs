//! JSON matrix files.
//!
//! Entries are stored row-major as `[q0, q1, q2, q3, d0, d1, d2, d3]`, the
//! standard then dual quaternion part. Floats are written in shortest
//! round-trip form, so reading back gives the same bits.

use std::fs;
use std::path::Path;

use dqeig::{DualQuaternion, DualQuaternionMatrix};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const FORMAT_TAG: &str = "dqh-1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub format: String,
    pub n: usize,
    pub entries: Vec<[f64; 8]>,
}

impl MatrixFile {
    pub fn from_matrix(q: &DualQuaternionMatrix) -> Result<Self, CliError> {
        if !q.is_square() {
            return Err(CliError::Parse(format!(
                "{}x{} matrix is not square",
                q.rows(),
                q.cols()
            )));
        }
        Ok(Self {
            format: FORMAT_TAG.into(),
            n: q.rows(),
            entries: q.data().iter().map(|e| e.to_array()).collect(),
        })
    }

    pub fn to_matrix(&self) -> Result<DualQuaternionMatrix, CliError> {
        if self.format != FORMAT_TAG {
            return Err(CliError::Parse(format!(
                "unknown format tag {:?}",
                self.format
            )));
        }
        if self.entries.len() != self.n * self.n {
            return Err(CliError::Parse(format!(
                "expected {} entries for n = {}, found {}",
                self.n * self.n,
                self.n,
                self.entries.len()
            )));
        }
        if self.entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(CliError::Parse("non-finite entry".into()));
        }
        let data = self
            .entries
            .iter()
            .map(|&a| DualQuaternion::from_array(a))
            .collect();
        DualQuaternionMatrix::new(self.n, self.n, data).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub fn read_matrix(path: &Path) -> Result<DualQuaternionMatrix, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    MatrixFile::parse(&text)?.to_matrix()
}

pub fn write_matrix(path: &Path, q: &DualQuaternionMatrix) -> Result<(), CliError> {
    fs::write(path, MatrixFile::from_matrix(q)?.to_json())
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

//! JSON matrix files: `{"name", "rows", "cols", "entries": [[re, im], ...]}`
//! with entries in row-major order.

use std::fmt;
use std::path::{Path, PathBuf};

use schatten_lab::cmatrix::{Matrix, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    #[serde(default)]
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug)]
pub struct LoadError {
    pub path: PathBuf,
    /// 1-based position of a syntax or type error.
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some((line, col)) => {
                write!(f, "{}:{line}:{col}: {}", self.path.display(), self.message)
            }
            None => write!(f, "{}: {}", self.path.display(), self.message),
        }
    }
}

impl std::error::Error for LoadError {}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self, (Option<(usize, usize)>, String)> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            // serde_json appends " at line L column C"; the position is reported separately
            let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
            (Some((e.line(), e.column())), msg)
        })?;
        file.validate().map_err(|m| (None, m))?;
        Ok(file)
    }

    fn validate(&self) -> Result<(), String> {
        if self.rows == 0 || self.cols == 0 {
            return Err(format!("empty shape {}x{}", self.rows, self.cols));
        }
        if self.entries.len() != self.rows * self.cols {
            return Err(format!(
                "{} entries for a {}x{} matrix (expected {})",
                self.entries.len(),
                self.rows,
                self.cols,
                self.rows * self.cols
            ));
        }
        if let Some(k) = self
            .entries
            .iter()
            .position(|[re, im]| !re.is_finite() || !im.is_finite())
        {
            return Err(format!(
                "non-finite entry at ({}, {})",
                k / self.cols,
                k % self.cols
            ));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let fail = |position, message| LoadError {
            path: path.to_path_buf(),
            position,
            message,
        };
        let text = std::fs::read_to_string(path).map_err(|e| fail(None, e.to_string()))?;
        Self::parse(&text).map_err(|(pos, msg)| fail(pos, msg))
    }

    pub fn to_matrix(&self) -> Matrix {
        let data = self
            .entries
            .iter()
            .map(|[re, im]| C64::new(*re, *im))
            .collect();
        Matrix::new(self.rows, self.cols, data).expect("validated on load")
    }

    #[cfg(test)]
    pub fn from_matrix(name: &str, m: &Matrix) -> Self {
        MatrixFile {
            name: name.to_string(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Display name: the `name` field, else the file stem.
    pub fn label(&self, path: &Path) -> String {
        if self.name.is_empty() {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        } else {
            self.name.clone()
        }
    }
}

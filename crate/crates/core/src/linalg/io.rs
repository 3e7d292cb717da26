//! Text interchange documents (JSON): matrices, POVMs and Kraus channels.
//!
//! A matrix document carries `rows`, `cols`, and row-major `re` / `im`
//! arrays. State documents may add an optional `dims` field.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::CMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
}

impl MatrixDoc {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.rows * self.cols;
        if self.re.len() != n || self.im.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} entries in `re` and `im`, found {} and {}",
                self.re.len(),
                self.im.len()
            )));
        }
        let data = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        CMatrix::from_vec(self.rows, self.cols, data)
    }

    pub fn from_matrix(m: &CMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: m.as_slice().iter().map(|z| z.re).collect(),
            im: m.as_slice().iter().map(|z| z.im).collect(),
            dims: None,
        }
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = Some(dims);
        self
    }
}

/// A POVM as a list of matrix documents; accepts a bare array or
/// `{"elements": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PovmDoc {
    Wrapped { elements: Vec<MatrixDoc> },
    Bare(Vec<MatrixDoc>),
}

impl PovmDoc {
    pub fn elements(&self) -> &[MatrixDoc] {
        match self {
            PovmDoc::Wrapped { elements } | PovmDoc::Bare(elements) => elements,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelDoc {
    pub dim_in: usize,
    pub dim_out: usize,
    pub kraus: Vec<MatrixDoc>,
}

pub fn parse_matrix(text: &str) -> Result<MatrixDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_povm(text: &str) -> Result<PovmDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_channel(text: &str) -> Result<ChannelDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_doc_roundtrip() {
        let m = CMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64 - 0.5, j as f64 * 0.25));
        let text = to_json(&MatrixDoc::from_matrix(&m));
        assert_eq!(parse_matrix(&text).unwrap().to_matrix().unwrap(), m);
    }

    #[test]
    fn rejects_short_arrays() {
        let doc = parse_matrix(r#"{"rows":2,"cols":2,"re":[1,0,0],"im":[0,0,0,0]}"#).unwrap();
        assert!(matches!(doc.to_matrix(), Err(Error::Parse(_))));
        assert!(parse_matrix("{not json").is_err());
    }

    #[test]
    fn povm_doc_both_shapes() {
        let e = r#"{"rows":1,"cols":1,"re":[1],"im":[0]}"#;
        assert_eq!(parse_povm(&format!("[{e}]")).unwrap().elements().len(), 1);
        assert_eq!(
            parse_povm(&format!("{{\"elements\":[{e},{e}]}}"))
                .unwrap()
                .elements()
                .len(),
            2
        );
    }
}

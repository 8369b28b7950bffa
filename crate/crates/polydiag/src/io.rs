//! JSON input formats and the exact/float value encodings used in reports.
//!
//! Rationals are written as strings (`"1/2"`, `"-3"`, `"0.25"`). JSON numbers
//! are also accepted on input and read exactly from their decimal text, so
//! `0.1` means `1/10`.

use std::fs;
use std::path::Path;

use polydiag_core::parse::{format_rational, parse_rational};
use polydiag_core::{
    BigRational, Complex64, DenseMatrix, GaussianRational, TailedSequence, VertexSet,
};
use serde::{Deserialize, Serialize};

use crate::error::InputError;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Text(String),
    Number(serde_json::Number),
}

impl RationalJson {
    pub fn parse(&self, what: &str) -> Result<BigRational, InputError> {
        let text = match self {
            RationalJson::Text(s) => s.clone(),
            RationalJson::Number(n) => n.to_string(),
        };
        parse_rational(&text).map_err(|e| InputError::field(what, format!("{text:?}: {e}")))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub re: RationalJson,
    #[serde(default)]
    pub im: Option<RationalJson>,
}

impl ComplexJson {
    pub fn parse(&self, what: &str) -> Result<GaussianRational, InputError> {
        let re = self.re.parse(what)?;
        let im = match &self.im {
            Some(im) => im.parse(what)?,
            None => BigRational::from_integer(0.into()),
        };
        Ok(GaussianRational::new(re, im))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerticesJson {
    vertices: Vec<ComplexJson>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceJson {
    head: Vec<ComplexJson>,
    tail: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum MatrixJson {
    Bare(Vec<Vec<ComplexJson>>),
    Wrapped { matrix: Vec<Vec<ComplexJson>> },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum DiagonalJson {
    Bare(Vec<RationalJson>),
    Wrapped { diagonal: Vec<RationalJson> },
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|source| InputError::Json {
        what: what.to_string(),
        source,
    })
}

pub fn read_file(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// `{"vertices": [{"re": .., "im": ..}, ..]}`
pub fn parse_vertices(text: &str) -> Result<VertexSet, InputError> {
    let raw: VerticesJson = from_json(text, "vertex set")?;
    let vertices = raw
        .vertices
        .iter()
        .enumerate()
        .map(|(k, z)| z.parse(&format!("vertex {k}")))
        .collect::<Result<Vec<_>, _>>()?;
    VertexSet::polygon(vertices).map_err(|e| InputError::invariant("vertex set", e))
}

/// `{"head": [{"re": .., "im": ..}, ..], "tail": [vertex indices]}`
pub fn parse_sequence(text: &str, x: &VertexSet) -> Result<TailedSequence, InputError> {
    let raw: SequenceJson = from_json(text, "sequence")?;
    let head = raw
        .head
        .iter()
        .enumerate()
        .map(|(n, z)| z.parse(&format!("head term {n}")))
        .collect::<Result<Vec<_>, _>>()?;
    TailedSequence::new(head, raw.tail, x).map_err(|e| InputError::invariant("sequence", e))
}

/// A rectangular array of `{re, im}` entries, bare or under `"matrix"`.
pub fn parse_matrix(text: &str) -> Result<DenseMatrix<GaussianRational>, InputError> {
    let rows = match from_json::<MatrixJson>(text, "matrix")? {
        MatrixJson::Bare(rows) | MatrixJson::Wrapped { matrix: rows } => rows,
    };
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, z)| z.parse(&format!("matrix entry ({i}, {j})")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    DenseMatrix::from_rows(rows).map_err(|e| InputError::invariant("matrix", e))
}

/// A list of rationals, bare or under `"diagonal"`.
pub fn parse_diagonal(text: &str) -> Result<Vec<BigRational>, InputError> {
    let entries = match from_json::<DiagonalJson>(text, "diagonal")? {
        DiagonalJson::Bare(d) | DiagonalJson::Wrapped { diagonal: d } => d,
    };
    entries
        .iter()
        .enumerate()
        .map(|(k, d)| d.parse(&format!("diagonal entry {k}")))
        .collect()
}

/// Real 3×3 matrix for the orthostochastic test.
pub fn real_3x3(m: &DenseMatrix<GaussianRational>) -> Result<[[BigRational; 3]; 3], InputError> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(InputError::field(
            "matrix",
            format!("expected 3×3, got {}×{}", m.rows(), m.cols()),
        ));
    }
    let mut out: [[BigRational; 3]; 3] = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let z = m.get(i, j);
            if !z.is_real() {
                return Err(InputError::field(
                    "matrix",
                    format!("entry ({i}, {j}) must be real"),
                ));
            }
            *entry = z.re.clone();
        }
    }
    Ok(out)
}

/// Exact entry: rational strings, or surd expressions such as `1/2*sqrt(3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactEntry {
    pub re: String,
    pub im: String,
}

impl From<&GaussianRational> for ExactEntry {
    fn from(z: &GaussianRational) -> Self {
        ExactEntry {
            re: z.re_string(),
            im: z.im_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FloatEntry {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for FloatEntry {
    fn from(z: Complex64) -> Self {
        FloatEntry { re: z.re, im: z.im }
    }
}

pub fn rational_text(q: &BigRational) -> String {
    format_rational(q)
}

pub fn exact_list(values: &[GaussianRational]) -> Vec<ExactEntry> {
    values.iter().map(ExactEntry::from).collect()
}

pub fn float_matrix(m: &DenseMatrix<Complex64>) -> Vec<Vec<FloatEntry>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(FloatEntry::from).collect())
        .collect()
}

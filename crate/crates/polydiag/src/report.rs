//! Versioned JSON reports. Every report carries `schema_version`, the
//! `command`, the command-specific fields, a pass/fail list of the invariants
//! that were checked, and an `outcome`.

use polydiag_core::matrix::{OrthostochasticVerdict, RealizedProjection};
use polydiag_core::{BigInt, BigRational, Certificate, TailedSequence};
use serde::Serialize;
use serde_json::Value;

use crate::io::{float_matrix, rational_text, ExactEntry, FloatEntry};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    /// A mathematical obstruction was found.
    Obstruction,
    /// The counterexample was reproduced.
    Counterexample,
    /// Some invariant check failed.
    ChecksFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

pub fn check(name: &'static str, passed: bool) -> Check {
    Check { name, passed }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub body: T,
    pub checks: Vec<Check>,
    pub outcome: Outcome,
}

impl<T: Serialize> Report<T> {
    /// `finding` is the outcome when every check passes.
    pub fn new(command: &'static str, body: T, checks: Vec<Check>, finding: Outcome) -> Self {
        let outcome = if checks.iter().all(|c| c.passed) {
            finding
        } else {
            Outcome::ChecksFailed
        };
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            body,
            checks,
            outcome,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }
}

/// Integers as JSON numbers when they fit in 64 bits, strings otherwise.
pub fn integer_value(k: &BigInt) -> Value {
    i64::try_from(k).map_or_else(|_| Value::String(k.to_string()), Value::from)
}

pub fn certificate_value(c: &Option<Certificate>) -> Option<Vec<Value>> {
    c.as_ref().map(|c| c.nu.iter().map(integer_value).collect())
}

pub fn rational_list(values: &[BigRational]) -> Vec<String> {
    values.iter().map(rational_text).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceJson {
    pub head: Vec<ExactEntry>,
    pub tail: Vec<usize>,
}

impl From<&TailedSequence> for SequenceJson {
    fn from(s: &TailedSequence) -> Self {
        SequenceJson {
            head: s.head().iter().map(ExactEntry::from).collect(),
            tail: s.tail().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaBody {
    pub mode: &'static str,
    pub vertices: Vec<ExactEntry>,
    pub lattice_basis: Vec<ExactEntry>,
    pub verdict: &'static str,
    /// `Σ (a_n − x_n)` for the nearest-vertex assignment, e.g. `"1+1i"`.
    pub raw_sum: String,
    /// Canonical representative of the class in `ℂ / K_X`.
    pub representative: String,
    /// Integer coefficients `ν_k`, summing to zero, with `Σ ν_k λ_k` equal
    /// to the raw sum; `null` unless the class vanishes.
    pub certificate: Option<Vec<Value>>,
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lim1Json {
    pub terms: usize,
    pub distance_sum: f64,
    pub poly_sum: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

/// Float mode: no verdict, only the distance of the raw sum to the lattice.
#[derive(Clone, Debug, Serialize)]
pub struct GammaFloatBody {
    pub mode: &'static str,
    pub vertices: Vec<ExactEntry>,
    pub lattice_basis: Vec<ExactEntry>,
    pub verdict: Option<&'static str>,
    pub raw_sum: FloatEntry,
    pub near_membership_distance: f64,
    pub tol: f64,
    pub within_tol: bool,
    pub lim1: Lim1Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexBody<T: Serialize> {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub passed: usize,
    pub integer_indices: usize,
    pub indeterminate: usize,
    pub results: Vec<T>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RotationJson {
    pub i: usize,
    pub j: usize,
    pub c: String,
    pub s: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizeBody {
    pub diagonal: Vec<String>,
    pub sum: String,
    pub realizable: bool,
    /// `Σ d_i mod 1` when it is not zero.
    pub defect: Option<String>,
    pub rank: Option<usize>,
    /// Entries are exact: rationals or sums of rational multiples of square
    /// roots, such as `1/4*sqrt(3)`.
    pub matrix: Option<Vec<Vec<ExactEntry>>>,
    pub rotations: Vec<RotationJson>,
}

impl RealizeBody {
    pub fn projection(d: &[BigRational], p: &RealizedProjection) -> Self {
        let matrix = p
            .matrix
            .to_rows()
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|s| ExactEntry {
                        re: s.to_string(),
                        im: "0".into(),
                    })
                    .collect()
            })
            .collect();
        RealizeBody {
            diagonal: rational_list(d),
            sum: rational_text(&d.iter().sum()),
            realizable: true,
            defect: None,
            rank: Some(p.rank),
            matrix: Some(matrix),
            rotations: p
                .rotations
                .iter()
                .map(|g| RotationJson {
                    i: g.i,
                    j: g.j,
                    c: g.c.to_string(),
                    s: g.s.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub unitary: Vec<Vec<FloatEntry>>,
    pub unitarity_defect: f64,
    pub modulus_defect: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthostochasticBody {
    pub matrix: Vec<Vec<String>>,
    pub verdict: &'static str,
    /// Violating row pair, 1-based.
    pub rows: Option<[usize; 2]>,
    /// `a_ik a_jk` for the violating rows.
    pub products: Option<Vec<String>>,
    /// `√(a_ik a_jk)`, the triangle side lengths.
    pub lengths: Option<Vec<String>>,
    pub witness: Option<WitnessJson>,
}

impl OrthostochasticBody {
    pub fn new(a: &[[BigRational; 3]; 3], v: &OrthostochasticVerdict) -> Self {
        let matrix = a.iter().map(|row| rational_list(row)).collect();
        match v {
            OrthostochasticVerdict::Orthostochastic(w) => OrthostochasticBody {
                matrix,
                verdict: "ORTHOSTOCHASTIC",
                rows: None,
                products: None,
                lengths: None,
                witness: Some(WitnessJson {
                    unitary: float_matrix(&w.unitary),
                    unitarity_defect: w.unitarity_defect,
                    modulus_defect: w.modulus_defect,
                }),
            },
            OrthostochasticVerdict::NotOrthostochastic {
                rows,
                products,
                lengths,
            } => OrthostochasticBody {
                matrix,
                verdict: "NOT_ORTHOSTOCHASTIC",
                rows: Some([rows.0 + 1, rows.1 + 1]),
                products: Some(rational_list(products)),
                lengths: Some(lengths.iter().map(ToString::to_string).collect()),
                witness: None,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleBody {
    pub vertices: Vec<ExactEntry>,
    pub sequence: SequenceJson,
    pub raw_sum: String,
    pub lattice_basis: Vec<ExactEntry>,
    pub certificate: Option<Vec<Value>>,
    pub obstruction: &'static str,
    /// Head diagonals of the spectral projections for `1`, `i`, `0`.
    pub diagonals: Vec<Vec<String>>,
    pub orthostochastic: OrthostochasticBody,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct KadisonBody {
    pub sequence: SequenceJson,
    pub a: String,
    pub b: String,
    pub difference: String,
    pub realizable: bool,
    pub integer: Option<Value>,
    pub defect: String,
    pub obstruction: &'static str,
}

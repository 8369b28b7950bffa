//! Finite encoding of polygon-valued sequences in `Lim¹(X)`: a finite head of
//! polygon points followed by a periodic tail of vertices, repeated forever.
//!
//! Every vertex index occurring in the tail occurs infinitely often, and tail
//! terms sit exactly on `X`, so they contribute nothing to any of the sums
//! computed here.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::geometry::{FloatVertexSet, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailedSequence {
    head: Vec<GaussianRational>,
    tail: Vec<usize>,
}

impl TailedSequence {
    /// Validates that every head value lies in `conv X` (exact) and every tail
    /// entry indexes a vertex.
    pub fn new(head: Vec<GaussianRational>, tail: Vec<usize>, x: &VertexSet) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::EmptyTail);
        }
        if let Some((position, &index)) = tail.iter().enumerate().find(|(_, &k)| k >= x.len()) {
            return Err(Error::TailIndexOutOfRange {
                position,
                index,
                vertices: x.len(),
            });
        }
        for (n, value) in head.iter().enumerate() {
            if let Err(witness) = x.contains(value)? {
                return Err(Error::OutsidePolygon {
                    position: Some(n),
                    witness,
                });
            }
        }
        Ok(Self { head, tail })
    }

    pub fn head(&self) -> &[GaussianRational] {
        &self.head
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    /// The `n`-th term (0-based) of the infinite sequence.
    pub fn term(&self, n: usize, x: &VertexSet) -> GaussianRational {
        match self.head.get(n) {
            Some(v) => v.clone(),
            None => x
                .vertex(self.tail[(n - self.head.len()) % self.tail.len()])
                .clone(),
        }
    }

    /// For each vertex, whether it occurs in the tail (and hence infinitely
    /// often).
    pub fn tail_coverage(&self, vertices: usize) -> Vec<bool> {
        let mut seen = alloc::vec![false; vertices];
        for &k in &self.tail {
            seen[k] = true;
        }
        seen
    }

    pub fn missing_tail_vertices(&self, vertices: usize) -> Vec<usize> {
        self.tail_coverage(vertices)
            .iter()
            .enumerate()
            .filter_map(|(k, &seen)| (!seen).then_some(k))
            .collect()
    }

    /// Errors unless every vertex occurs in the tail.
    pub fn require_full_tail(&self, vertices: usize) -> Result<()> {
        let missing = self.missing_tail_vertices(vertices);
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::MissingTailVertices { missing })
        }
    }
}

/// Vertex indices `x_n` for the head terms; tail terms are assigned to
/// themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAssignment {
    head: Vec<usize>,
}

impl VertexAssignment {
    pub fn new(head: Vec<usize>, seq: &TailedSequence, x: &VertexSet) -> Result<Self> {
        if head.len() != seq.head().len() {
            return Err(Error::AssignmentLength {
                expected: seq.head().len(),
                found: head.len(),
            });
        }
        if let Some((position, &index)) = head.iter().enumerate().find(|(_, &k)| k >= x.len()) {
            return Err(Error::AssignmentIndexOutOfRange { position, index });
        }
        Ok(Self { head })
    }

    pub fn indices(&self) -> &[usize] {
        &self.head
    }

    /// `Σ_n (a_n − λ_{x_n})` over the head; the tail contributes zero.
    pub fn deviation_sum(&self, seq: &TailedSequence, x: &VertexSet) -> GaussianRational {
        seq.head()
            .iter()
            .zip(&self.head)
            .map(|(a, &k)| a - x.vertex(k))
            .sum()
    }
}

/// Nearest vertex for every head term, lowest index on ties.
pub fn nearest_assignment(seq: &TailedSequence, x: &VertexSet) -> VertexAssignment {
    VertexAssignment {
        head: seq.head().iter().map(|a| x.distance(a).nearest).collect(),
    }
}

/// Partial sums of `d(a_n, X)` and `|f(a_n)|` for a finite list of samples,
/// together with the two sandwich bounds between them.
#[derive(Clone, Debug, PartialEq)]
pub struct Lim1Diagnostic {
    pub terms: usize,
    pub distance_sum: f64,
    pub poly_sum: f64,
    /// `(δ/2)^{N−1}`
    pub lower_factor: f64,
    /// `(3R)^{N−1}`
    pub upper_factor: f64,
    /// Sums over the samples with `d(a_n, X) ≤ δ/2`.
    pub near_distance_sum: f64,
    pub near_poly_sum: f64,
    /// `near_poly_sum ≥ lower_factor · near_distance_sum`
    pub lower_holds: bool,
    /// Sums over the samples with `|a_n| ≤ 2R`.
    pub bounded_distance_sum: f64,
    pub bounded_poly_sum: f64,
    /// `bounded_poly_sum ≤ upper_factor · bounded_distance_sum`
    pub upper_holds: bool,
}

/// Float diagnostic of the summability conditions; `rel_tol` absorbs
/// rounding in the inequality checks.
pub fn lim1_diagnostic(values: &[Complex64], x: &FloatVertexSet, rel_tol: f64) -> Lim1Diagnostic {
    let n = x.len() as i32;
    let lower_factor = libm::pow(x.delta() / 2.0, (n - 1) as f64);
    let upper_factor = libm::pow(3.0 * x.radius(), (n - 1) as f64);
    let mut out = Lim1Diagnostic {
        terms: values.len(),
        distance_sum: 0.0,
        poly_sum: 0.0,
        lower_factor,
        upper_factor,
        near_distance_sum: 0.0,
        near_poly_sum: 0.0,
        lower_holds: true,
        bounded_distance_sum: 0.0,
        bounded_poly_sum: 0.0,
        upper_holds: true,
    };
    for &z in values {
        let d = x.distance(z);
        let f = x.vanishing_poly(z).norm();
        out.distance_sum += d;
        out.poly_sum += f;
        if d <= x.delta() / 2.0 {
            out.near_distance_sum += d;
            out.near_poly_sum += f;
        }
        if z.norm() <= 2.0 * x.radius() {
            out.bounded_distance_sum += d;
            out.bounded_poly_sum += f;
        }
    }
    let slack = |v: f64| rel_tol * v.abs().max(f64::MIN_POSITIVE);
    let lower_rhs = lower_factor * out.near_distance_sum;
    out.lower_holds = out.near_poly_sum >= lower_rhs - slack(lower_rhs);
    let upper_rhs = upper_factor * out.bounded_distance_sum;
    out.upper_holds = out.bounded_poly_sum <= upper_rhs + slack(upper_rhs);
    out
}

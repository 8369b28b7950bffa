//! The three-point sequence with vanishing renormalized sum that is not the
//! diagonal of any normal operator with spectrum `{0, 1, i}`.
//!
//! `d = (1/2, i/2, (1+i)/2, 0, 1, i, 0, 1, i, …)`. Its renormalized sum is
//! `1 + i ∈ ℤ + ℤi`, so the index obstruction vanishes. But an operator
//! `0·R + 1·P + i·Q` with this diagonal would have the real and imaginary
//! parts `(1/2, 0, 1/2)` and `(0, 1/2, 1/2)` of the head as head diagonals of
//! `P` and `Q`, each summing to one and forcing rank-one compressions; the
//! three compressions would come from orthonormal rows of a unitary, but the
//! matrix of their diagonals is not orthostochastic.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::orthostochastic::{orthostochastic_test_3x3, OrthostochasticVerdict};
use crate::decomposition::decompose;
use crate::error::Result;
use crate::gaussian::GaussianRational;
use crate::geometry::VertexSet;
use crate::lattice::{obstruction_verdict, Certificate, Verdict};
use crate::sequence::TailedSequence;

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub vertices: Vec<GaussianRational>,
    pub sequence: TailedSequence,
    pub raw_sum: GaussianRational,
    pub lattice_basis: Vec<GaussianRational>,
    pub certificate: Option<Certificate>,
    pub obstruction: Verdict,
    /// Head diagonals of the projections onto the eigenspaces of `1`, `i`
    /// and `0`, read off the X-decomposition.
    pub diagonals: [[BigRational; 3]; 3],
    pub orthostochastic: OrthostochasticVerdict,
    /// `false`: no normal operator with spectrum `X` has diagonal `d`.
    pub realizable: bool,
}

impl CounterexampleReport {
    pub fn verdict(&self) -> &'static str {
        if self.realizable {
            "REALIZABLE"
        } else {
            "NOT_REALIZABLE"
        }
    }
}

pub fn cvprop1_counterexample() -> Result<CounterexampleReport> {
    let x = VertexSet::new(vec![
        GaussianRational::zero(),
        GaussianRational::one(),
        GaussianRational::i(),
    ])?;
    let half = |re: i64, im: i64| GaussianRational::from_fracs((re, 2), (im, 2));
    let sequence =
        TailedSequence::new(vec![half(1, 0), half(0, 1), half(1, 1)], vec![0, 1, 2], &x)?;
    let verdict = obstruction_verdict(&sequence, &x)?;

    let dec = decompose(&sequence, &x)?;
    let row = |k: usize| -> [BigRational; 3] {
        let c = dec.column(k);
        [c[0].clone(), c[1].clone(), c[2].clone()]
    };
    let diagonals = [row(1), row(2), row(0)];
    let orthostochastic = orthostochastic_test_3x3(&diagonals)?;
    let realizable = verdict.verdict != Verdict::Obstructed && orthostochastic.is_orthostochastic();
    Ok(CounterexampleReport {
        vertices: x.vertices().to_vec(),
        lattice_basis: verdict.lattice.basis(),
        raw_sum: verdict.raw_sum,
        certificate: verdict.certificate,
        obstruction: verdict.verdict,
        sequence,
        diagonals,
        orthostochastic,
        realizable,
    })
}

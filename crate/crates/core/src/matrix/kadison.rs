//! Kadison's criterion for diagonals of projections with infinite rank and
//! corank: with `a = Σ_{d_n ≤ 1/2} d_n` and `b = Σ_{d_n > 1/2} (1 − d_n)`
//! finite, `d` is such a diagonal iff `a − b ∈ ℤ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::VertexSet;
use crate::lattice::{obstruction_verdict, Verdict};
use crate::sequence::TailedSequence;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KadisonReport {
    pub a: BigRational,
    pub b: BigRational,
    pub difference: BigRational,
    pub realizable: bool,
    /// `a − b` when it is an integer.
    pub integer: Option<BigInt>,
    /// `(a − b) mod 1`
    pub defect: BigRational,
    pub obstruction: Verdict,
    /// Whether `a − b ∈ ℤ` agrees with `s(d) = 0`.
    pub agrees_with_obstruction: bool,
}

pub fn kadison_classifier(seq: &TailedSequence, x: &VertexSet) -> Result<KadisonReport> {
    if !x.is_unit_pair() {
        return Err(Error::NotTwoPointSet);
    }
    seq.require_full_tail(2)?;
    let half = BigRational::new(1.into(), 2.into());
    let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
    for d in seq.head() {
        if d.re <= half {
            a += &d.re;
        } else {
            b += BigRational::one() - &d.re;
        }
    }
    let difference = &a - &b;
    let realizable = difference.is_integer();
    let defect = &difference - difference.floor();
    let obstruction = obstruction_verdict(seq, x)?.verdict;
    let agrees_with_obstruction = realizable == (obstruction != Verdict::Obstructed);
    Ok(KadisonReport {
        integer: realizable.then(|| difference.to_integer()),
        a,
        b,
        difference,
        realizable,
        defect,
        obstruction,
        agrees_with_obstruction,
    })
}

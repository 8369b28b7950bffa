#![allow(dead_code)]

use polydiag_core::{BigInt, BigRational, GaussianRational, TailedSequence, VertexSet};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational point of the unit circle, `((1−t²)/(1+t²), 2t/(1+t²))`.
pub fn circle_point(t: &BigRational) -> GaussianRational {
    let one = q(1, 1);
    let den = &one + t * t;
    GaussianRational::new((&one - t * t) / &den, (q(2, 1) * t) / &den)
}

/// Points on a circle are always in convex position.
pub fn polygon(params: &[(i64, i64)], scale: (i64, i64), shift: (i64, i64)) -> VertexSet {
    let s = q(scale.0, scale.1.max(1));
    let c = GaussianRational::from_fracs((shift.0, 7), (shift.1, 5));
    let vertices = params
        .iter()
        .map(|&(n, d)| &circle_point(&q(n, d)).scale(&s) + &c)
        .collect();
    VertexSet::new(vertices).expect("circle points are in convex position")
}

pub fn arb_polygon(min: usize, max: usize) -> impl Strategy<Value = VertexSet> {
    (
        prop::collection::btree_set(-40i64..=40, min..=max),
        prop::sample::select(vec![2i64, 3, 5, 8]),
        (1i64..6, 1i64..4),
        (-9i64..9, -9i64..9),
        any::<prop::sample::Index>(),
    )
        .prop_map(|(ts, den, scale, shift, rot)| {
            let mut params: Vec<(i64, i64)> = ts.into_iter().map(|t| (t, den)).collect();
            let k = rot.index(params.len());
            params.rotate_left(k);
            let last = params.len() - 1;
            params.swap(0, last);
            polygon(&params, scale, shift)
        })
}

/// A point of the polygon from nonnegative integer weights.
pub fn combination(x: &VertexSet, weights: &[u32]) -> GaussianRational {
    let used = &weights[..x.len().min(weights.len())];
    let total: u32 = used.iter().sum();
    if total == 0 {
        return x.vertex(0).clone();
    }
    used.iter()
        .enumerate()
        .map(|(k, &w)| x.vertex(k).scale(&q(w as i64, total as i64)))
        .sum()
}

pub fn arb_weights(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(prop_oneof![3 => Just(0u32), 7 => 0u32..12], max_len)
}

pub fn sequence(x: &VertexSet, head: &[Vec<u32>]) -> TailedSequence {
    let values = head.iter().map(|w| combination(x, w)).collect();
    TailedSequence::new(values, (0..x.len()).collect(), x).expect("polygon points")
}

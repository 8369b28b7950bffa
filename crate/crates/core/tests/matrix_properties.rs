mod common;

use common::q;
use polydiag_core::gaussian::rational_to_f64;
use polydiag_core::matrix::{
    check_pllem1, kadison_classifier, orthostochastic_test_3x3, realize_diagonal_01,
    OrthostochasticVerdict, Realization,
};
use polydiag_core::{
    obstruction_verdict, BigRational, GaussianRational, TailedSequence, VertexSet,
};
use proptest::prelude::*;

/// Diagonals with integer sum: random fractions, last entry fixes the sum.
fn arb_integer_sum_diagonal() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(
        (0i64..=12, prop::sample::select(vec![2i64, 3, 4, 5, 6, 12])),
        1..8,
    )
    .prop_filter_map("last entry outside [0,1]", |raw| {
        let mut d: Vec<BigRational> = raw.iter().map(|&(n, den)| q(n.min(den), den)).collect();
        let sum: BigRational = d.iter().sum();
        let fix = sum.ceil() - &sum;
        d.push(fix);
        Some(d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn realizer_produces_exact_projections(d in arb_integer_sum_diagonal()) {
        match realize_diagonal_01(&d).unwrap() {
            Realization::Projection(p) => {
                prop_assert!(p.verify(&d));
                let sum: BigRational = d.iter().sum();
                prop_assert_eq!(BigRational::from_integer(p.rank.into()), sum);
                prop_assert!(check_pllem1(&p.matrix).unwrap().difference.is_zero());
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn realizer_reports_fractional_sums(d in arb_integer_sum_diagonal(), k in 1i64..5) {
        let mut d = d;
        // nudge one entry by a non-integer amount, staying in [0,1]
        let idx = d.iter().position(|v| *v < q(1, 1)).unwrap_or(0);
        let room = q(1, 1) - &d[idx];
        prop_assume!(room > q(0, 1));
        let delta = room * q(k, 5 + k);
        d[idx] += &delta;
        match realize_diagonal_01(&d).unwrap() {
            Realization::Obstructed { sum, defect } => {
                prop_assert_eq!(&sum - sum.floor(), defect);
            }
            Realization::Projection(_) => prop_assert!(false, "non-integer sum realized"),
        }
    }

    #[test]
    fn orthostochastic_witnesses_are_sound(w in prop::collection::vec(0i64..6, 6)) {
        // convex combinations of the six permutation matrices
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let total: i64 = w.iter().sum::<i64>().max(1);
        let mut a: [[BigRational; 3]; 3] = core::array::from_fn(|_| core::array::from_fn(|_| q(0, 1)));
        for (p, &wi) in perms.iter().zip(&w) {
            for i in 0..3 {
                a[i][p[i]] += q(wi, total);
            }
        }
        if w.iter().all(|&v| v == 0) {
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = q(1, 1);
            }
        }
        match orthostochastic_test_3x3(&a).unwrap() {
            OrthostochasticVerdict::Orthostochastic(wit) => {
                prop_assert!(wit.unitarity_defect <= 1e-10);
                prop_assert!(wit.modulus_defect <= 1e-10);
            }
            OrthostochasticVerdict::NotOrthostochastic { rows, products, .. } => {
                prop_assert!(rows.0 < rows.1);
                // the longest side exceeds the other two
                let f: Vec<f64> = products.iter().map(|p| rational_to_f64(p).sqrt()).collect();
                let max = f.iter().cloned().fold(0.0, f64::max);
                prop_assert!(2.0 * max > f.iter().sum::<f64>());
            }
        }
    }

    #[test]
    fn kadison_agrees_with_the_obstruction(
        head in prop::collection::vec((0i64..=16, prop::sample::select(vec![2i64, 4, 8, 16])), 0..10),
        tail_first in any::<bool>(),
    ) {
        let x = VertexSet::new(vec![GaussianRational::zero(), GaussianRational::one()]).unwrap();
        let values = head.iter().map(|&(n, d)| GaussianRational::real(q(n.min(d), d))).collect();
        let tail = if tail_first { vec![0, 1] } else { vec![1, 1, 0] };
        let seq = TailedSequence::new(values, tail, &x).unwrap();
        let r = kadison_classifier(&seq, &x).unwrap();
        prop_assert!(r.agrees_with_obstruction);
        prop_assert_eq!(r.realizable, obstruction_verdict(&seq, &x).unwrap().certificate.is_some());
    }
}

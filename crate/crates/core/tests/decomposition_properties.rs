mod common;

use common::{arb_polygon, arb_weights, combination, q, sequence};
use polydiag_core::decomposition::{
    corner_distance, distance_to_01, perturb_row, weight_nullspace,
};
use polydiag_core::{
    barycentric, decompose, simplex_constant, verify_xd_theorem, BigRational, GaussianRational,
    VertexSet, XDecomposition,
};
use proptest::prelude::*;

fn arb_simplex_point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(0i64..50, n).prop_map(|w| {
        let total: i64 = w.iter().sum::<i64>().max(1);
        if w.iter().all(|&v| v == 0) {
            let mut t = vec![q(0, 1); w.len()];
            t[0] = q(1, 1);
            return t;
        }
        w.iter().map(|&v| q(v, total)).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn barycentric_reconstructs(x in arb_polygon(2, 6), w in arb_weights(6)) {
        let p = combination(&x, &w);
        let t = barycentric(&p, &x).unwrap();
        let back: GaussianRational = t.iter().zip(x.vertices()).map(|(w, v)| v.scale(w)).sum();
        prop_assert_eq!(back, p);
        prop_assert_eq!(t.iter().sum::<BigRational>(), q(1, 1));
        prop_assert!(t.iter().all(|v| *v >= q(0, 1)));
        prop_assert!(t.iter().filter(|v| **v != q(0, 1)).count() <= 3);
    }

    #[test]
    fn lemma_constant_bounds_the_simplex(x in arb_polygon(2, 5), t in arb_simplex_point(5)) {
        let t = &t[..x.len()];
        let total: BigRational = t.iter().sum();
        prop_assume!(total == q(1, 1));
        let c = simplex_constant(&x).unwrap();
        prop_assert!(c.check_sample(t, &x).holds);
        // chain step used in the theorem
        let corner = corner_distance(t);
        for tk in t {
            prop_assert!(distance_to_01(tk) <= corner);
        }
    }

    #[test]
    fn theorem_bound_for_every_decomposition(
        x in arb_polygon(4, 6),
        head in prop::collection::vec(arb_weights(6), 1..8),
        steps in prop::collection::vec((0usize..4, 1i64..8), 8),
    ) {
        let seq = sequence(&x, &head);
        let c = simplex_constant(&x).unwrap();
        let dec = decompose(&seq, &x).unwrap();
        let r = verify_xd_theorem(&seq, &x, &dec, &c);
        prop_assert!(r.chain_holds && r.lipschitz_holds);

        // alternative decompositions from the nullspace of the constraints
        let null = weight_nullspace(&x);
        prop_assert_eq!(null.len(), x.len() - 3);
        let rows: Vec<Vec<BigRational>> = dec
            .head()
            .iter()
            .zip(&steps)
            .map(|(row, &(k, s))| perturb_row(row, &null[k % null.len()], &q(s, 7)))
            .collect();
        let alt = XDecomposition::new(rows, &seq, &x).unwrap();
        let r = verify_xd_theorem(&seq, &x, &alt, &c);
        prop_assert!(r.chain_holds && r.lipschitz_holds);
        prop_assert!(r.bound_holds.iter().all(|&b| b));
    }
}

#[test]
fn constant_for_the_unit_pair_is_two() {
    let pair = VertexSet::new(vec![GaussianRational::zero(), GaussianRational::one()]).unwrap();
    assert_eq!(simplex_constant(&pair).unwrap().exact(), Some(q(2, 1)));
}

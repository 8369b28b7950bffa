//! X-decompositions: writing a polygon-valued sequence as `Σ_k λ_k e_k(n)`
//! with nonnegative weights summing to one, and the constant `C` bounding
//! the distance of a weight vector to the simplex corners by the distance
//! of the point it represents to `X`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gaussian::{rational_to_f64, GaussianRational};
use crate::geometry::VertexSet;
use crate::sequence::TailedSequence;

/// Barycentric weights of `point` with respect to `X`.
///
/// The polygon is triangulated as a fan from vertex 0 along the
/// counter-clockwise boundary order; the first triangle containing the
/// point is used, so at most three weights are nonzero.
pub fn barycentric(point: &GaussianRational, x: &VertexSet) -> Result<Vec<BigRational>> {
    let order = x.convex_order()?;
    if let Err(witness) = x.contains(point)? {
        return Err(Error::OutsidePolygon {
            position: None,
            witness,
        });
    }
    let n = x.len();
    let mut weights = vec![BigRational::zero(); n];
    if n == 2 {
        let e = x.vertex(1) - x.vertex(0);
        let t = (point - x.vertex(0)).dot(&e) / e.norm_sqr();
        weights[0] = BigRational::one() - &t;
        weights[1] = t;
        return Ok(weights);
    }
    let a = x.vertex(order[0]);
    let p = point - a;
    for j in 1..n - 1 {
        let (ib, ic) = (order[j], order[j + 1]);
        let u = x.vertex(ib) - a;
        let v = x.vertex(ic) - a;
        let det = u.cross(&v);
        let beta = p.cross(&v) / &det;
        let gamma = u.cross(&p) / &det;
        let alpha = BigRational::one() - &beta - &gamma;
        if !alpha.is_negative() && !beta.is_negative() && !gamma.is_negative() {
            weights[order[0]] = alpha;
            weights[ib] = beta;
            weights[ic] = gamma;
            return Ok(weights);
        }
    }
    unreachable!("a point of the polygon lies in some fan triangle")
}

/// Weight rows for the head of a sequence; tail terms carry indicator
/// weights implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XDecomposition {
    head: Vec<Vec<BigRational>>,
    tail: Vec<usize>,
}

impl XDecomposition {
    /// Validates nonnegativity, unit row sums and exact reconstruction.
    pub fn new(head: Vec<Vec<BigRational>>, seq: &TailedSequence, x: &VertexSet) -> Result<Self> {
        if head.len() != seq.head().len() {
            return Err(Error::AssignmentLength {
                expected: seq.head().len(),
                found: head.len(),
            });
        }
        for (position, (row, a)) in head.iter().zip(seq.head()).enumerate() {
            let bad = |reason| Err(Error::InvalidDecomposition { position, reason });
            if row.len() != x.len() {
                return bad("weight row length differs from the vertex count");
            }
            if row.iter().any(Signed::is_negative) {
                return bad("negative weight");
            }
            if row.iter().sum::<BigRational>() != BigRational::one() {
                return bad("weights do not sum to one");
            }
            if combine(row, x) != *a {
                return bad("weights do not reproduce the sequence value");
            }
        }
        Ok(Self {
            head,
            tail: seq.tail().to_vec(),
        })
    }

    pub fn head(&self) -> &[Vec<BigRational>] {
        &self.head
    }

    /// `e_k(n)` for any `n`, head or tail.
    pub fn weight(&self, k: usize, n: usize) -> BigRational {
        match self.head.get(n) {
            Some(row) => row[k].clone(),
            None if self.tail[(n - self.head.len()) % self.tail.len()] == k => BigRational::one(),
            None => BigRational::zero(),
        }
    }

    /// Head values of the weight sequence `e_k`.
    pub fn column(&self, k: usize) -> Vec<BigRational> {
        self.head.iter().map(|row| row[k].clone()).collect()
    }
}

fn combine(weights: &[BigRational], x: &VertexSet) -> GaussianRational {
    weights
        .iter()
        .zip(x.vertices())
        .map(|(w, v)| v.scale(w))
        .sum()
}

/// The deterministic decomposition built from [`barycentric`].
pub fn decompose(seq: &TailedSequence, x: &VertexSet) -> Result<XDecomposition> {
    let head = seq
        .head()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            barycentric(a, x).map_err(|e| match e {
                Error::OutsidePolygon { witness, .. } => Error::OutsidePolygon {
                    position: Some(n),
                    witness,
                },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(XDecomposition {
        head,
        tail: seq.tail().to_vec(),
    })
}

/// Basis of the rational vectors `v` with `Σ v_k = 0` and `Σ v_k λ_k = 0`.
/// Adding any of them to a weight row keeps reconstruction intact, which
/// parametrises the non-uniqueness of decompositions for `N ≥ 4`.
pub fn weight_nullspace(x: &VertexSet) -> Vec<Vec<BigRational>> {
    let n = x.len();
    let mut rows: Vec<Vec<BigRational>> = vec![
        vec![BigRational::one(); n],
        x.vertices().iter().map(|v| v.re.clone()).collect(),
        x.vertices().iter().map(|v| v.im.clone()).collect(),
    ];
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot = rows[r].clone();
                for (v, p) in rows[i].iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// Moves `row` by `step · direction`, shortening the step if needed so every
/// weight stays nonnegative.
pub fn perturb_row(
    row: &[BigRational],
    direction: &[BigRational],
    step: &BigRational,
) -> Vec<BigRational> {
    let mut s = step.clone();
    for (w, d) in row.iter().zip(direction) {
        let moved = w + &s * d;
        if moved.is_negative() {
            // w + s' d = 0
            s = -(w / d);
        }
    }
    row.iter().zip(direction).map(|(w, d)| w + &s * d).collect()
}

/// The functional used at one vertex and the constant it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexConstant {
    /// `f(v) = functional · v` (real dot product).
    pub functional: GaussianRational,
    /// `min_{j≠k} f(λ_j − λ_k)`, always positive.
    pub min_value: BigRational,
    /// `C_k² = 4‖f‖² / min²`.
    pub c_squared: BigRational,
    /// Whether the centroid direction had to be replaced by the sum of the
    /// inward normals of the two adjacent edges.
    pub used_edge_normals: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexConstant {
    pub per_vertex: Vec<VertexConstant>,
}

impl SimplexConstant {
    /// `C²`, exact.
    pub fn c_squared(&self) -> &BigRational {
        self.per_vertex
            .iter()
            .map(|v| &v.c_squared)
            .max()
            .expect("at least two vertices")
    }

    pub fn value(&self) -> f64 {
        libm::sqrt(rational_to_f64(self.c_squared()))
    }

    /// `C` itself when it is rational.
    pub fn exact(&self) -> Option<BigRational> {
        rational_sqrt(self.c_squared())
    }

    /// Exact check of `‖t − nearest corner‖₁ ≤ C · d(x(t), X)` for a weight
    /// vector `t` in the simplex.
    pub fn check_sample(&self, t: &[BigRational], x: &VertexSet) -> LemmaSample {
        let corner = corner_distance(t);
        let point = combine(t, x);
        let dist_sq = x.distance(&point).squared;
        let holds = &corner * &corner <= self.c_squared() * &dist_sq;
        LemmaSample {
            corner_distance: corner,
            point_distance: libm::sqrt(rational_to_f64(&dist_sq)),
            holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaSample {
    pub corner_distance: BigRational,
    pub point_distance: f64,
    pub holds: bool,
}

/// `‖t − nearest corner‖₁ = 2(1 − max_k t_k)` on the simplex.
pub fn corner_distance(t: &[BigRational]) -> BigRational {
    let max = t.iter().max().cloned().unwrap_or_else(BigRational::zero);
    BigRational::from_integer(2.into()) * (BigRational::one() - max)
}

/// `d(t, {0, 1})` for a real `t`.
pub fn distance_to_01(t: &BigRational) -> BigRational {
    let one_minus = BigRational::one() - t;
    core::cmp::min(t.abs(), one_minus.abs())
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Per-vertex constants from a functional that is positive on every
/// `λ_j − λ_k`: the direction to the centroid of the other vertices when it
/// works, otherwise the sum of the inward normals of the adjacent edges.
pub fn simplex_constant(x: &VertexSet) -> Result<SimplexConstant> {
    let order = x.convex_order()?;
    let n = x.len();
    let min_on = |f: &GaussianRational, k: usize| {
        (0..n)
            .filter(|&j| j != k)
            .map(|j| f.dot(&(x.vertex(j) - x.vertex(k))))
            .min()
            .expect("at least two vertices")
    };
    let per_vertex = (0..n)
        .map(|k| {
            let centroid: GaussianRational = (0..n)
                .filter(|&j| j != k)
                .map(|j| x.vertex(j) - x.vertex(k))
                .sum();
            let mut functional = centroid;
            let mut min_value = min_on(&functional, k);
            let mut used_edge_normals = false;
            if !min_value.is_positive() {
                let pos = order
                    .iter()
                    .position(|&v| v == k)
                    .expect("hull lists every vertex");
                let next = x.vertex(order[(pos + 1) % n]);
                let prev = x.vertex(order[(pos + n - 1) % n]);
                let here = x.vertex(k);
                let left = |e: GaussianRational| GaussianRational::new(-&e.im, e.re);
                functional = left(next - here) + left(here - prev);
                min_value = min_on(&functional, k);
                used_edge_normals = true;
                debug_assert!(min_value.is_positive());
            }
            let four = BigRational::from_integer(BigInt::from(4));
            let c_squared = four * functional.norm_sqr() / (&min_value * &min_value);
            VertexConstant {
                functional,
                min_value,
                c_squared,
                used_edge_normals,
            }
        })
        .collect();
    Ok(SimplexConstant { per_vertex })
}

#[derive(Clone, Debug, PartialEq)]
pub struct XdTheoremReport {
    /// `Σ_head d(e_k(n), {0,1})` for each vertex, exact.
    pub weight_sums: Vec<BigRational>,
    /// `Σ_head d(a_n, X)` (float; each term is a square root).
    pub distance_sum: f64,
    pub c: f64,
    /// `d(e_k(n), {0,1}) ≤ ‖e(n) − nearest corner‖₁` for every `k`, `n`.
    pub chain_holds: bool,
    /// `‖e(n) − nearest corner‖₁ ≤ C · d(a_n, X)` for every `n`.
    pub lipschitz_holds: bool,
    /// `Σ_head d(e_k(n), {0,1}) ≤ C · Σ_head d(a_n, X)` for each `k`,
    /// certified by the two exact termwise inequalities.
    pub bound_holds: Vec<bool>,
}

/// Checks that each weight sequence of `dec` is summably close to `{0, 1}`,
/// with the termwise chain behind the bound verified exactly.
pub fn verify_xd_theorem(
    seq: &TailedSequence,
    x: &VertexSet,
    dec: &XDecomposition,
    c: &SimplexConstant,
) -> XdTheoremReport {
    let n = x.len();
    let mut weight_sums = vec![BigRational::zero(); n];
    let mut distance_sum = 0.0;
    let mut chain_holds = true;
    let mut lipschitz_holds = true;
    for (row, a) in dec.head().iter().zip(seq.head()) {
        let corner = corner_distance(row);
        for (sum, w) in weight_sums.iter_mut().zip(row) {
            let d = distance_to_01(w);
            chain_holds &= d <= corner;
            *sum += d;
        }
        let dist_sq = x.distance(a).squared;
        lipschitz_holds &= &corner * &corner <= c.c_squared() * &dist_sq;
        distance_sum += libm::sqrt(rational_to_f64(&dist_sq));
    }
    let certified = chain_holds && lipschitz_holds;
    XdTheoremReport {
        weight_sums,
        distance_sum,
        c: c.value(),
        chain_holds,
        lipschitz_holds,
        bound_holds: vec![certified; n],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::from_fracs(re, im)
    }

    fn triangle() -> VertexSet {
        VertexSet::new(vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::i(),
        ])
        .unwrap()
    }

    #[test]
    fn barycentric_examples() {
        let x = triangle();
        assert_eq!(
            barycentric(x.vertex(2), &x).unwrap(),
            vec![q(0, 1), q(0, 1), q(1, 1)]
        );
        assert_eq!(
            barycentric(&g((1, 3), (1, 3)), &x).unwrap(),
            vec![q(1, 3); 3]
        );
        assert_eq!(
            barycentric(&g((1, 2), (0, 1)), &x).unwrap(),
            vec![q(1, 2), q(1, 2), q(0, 1)]
        );
        assert!(matches!(
            barycentric(&g((1, 1), (1, 1)), &x),
            Err(Error::OutsidePolygon { position: None, .. })
        ));
    }

    #[test]
    fn fan_follows_the_boundary_not_the_input_order() {
        // input order 0, 2, 1+i... is not the boundary order of the square
        let x = VertexSet::new(vec![
            GaussianRational::zero(),
            GaussianRational::from_ints(1, 1),
            GaussianRational::one(),
            GaussianRational::i(),
        ])
        .unwrap();
        for p in [
            g((1, 2), (1, 2)),
            g((9, 10), (1, 10)),
            g((1, 10), (9, 10)),
            g((1, 1), (1, 2)),
        ] {
            let w = barycentric(&p, &x).unwrap();
            assert_eq!(combine(&w, &x), p);
            assert!(w.iter().filter(|v| !v.is_zero()).count() <= 3);
        }
    }

    #[test]
    fn decompositions_of_the_three_point_sequence() {
        let x = triangle();
        let seq = TailedSequence::new(
            vec![g((1, 2), (0, 1)), g((0, 1), (1, 2)), g((1, 2), (1, 2))],
            vec![0, 1, 2],
            &x,
        )
        .unwrap();
        let dec = decompose(&seq, &x).unwrap();
        assert_eq!(
            dec.head(),
            &[
                vec![q(1, 2), q(1, 2), q(0, 1)],
                vec![q(1, 2), q(0, 1), q(1, 2)],
                vec![q(0, 1), q(1, 2), q(1, 2)],
            ]
        );
        assert_eq!(dec.column(1), vec![q(1, 2), q(0, 1), q(1, 2)]);
        assert_eq!(dec.weight(2, 5), q(1, 1));
        assert_eq!(dec.weight(0, 5), q(0, 1));
        assert!(XDecomposition::new(dec.head().to_vec(), &seq, &x).is_ok());

        let pair = VertexSet::new(vec![GaussianRational::zero(), GaussianRational::one()]).unwrap();
        let seq = TailedSequence::new(vec![g((1, 4), (0, 1))], vec![0, 1], &pair).unwrap();
        assert_eq!(
            decompose(&seq, &pair).unwrap().head(),
            &[vec![q(3, 4), q(1, 4)]]
        );
    }

    #[test]
    fn decomposition_validation() {
        let x = triangle();
        let seq = TailedSequence::new(vec![g((1, 2), (0, 1))], vec![0, 1, 2], &x).unwrap();
        let err = |row: Vec<BigRational>| XDecomposition::new(vec![row], &seq, &x).unwrap_err();
        assert!(matches!(
            err(vec![q(1, 2), q(1, 2)]),
            Error::InvalidDecomposition { .. }
        ));
        assert!(matches!(
            err(vec![q(1, 1), q(1, 2), q(-1, 2)]),
            Error::InvalidDecomposition { .. }
        ));
        assert!(matches!(
            err(vec![q(1, 2), q(1, 2), q(1, 2)]),
            Error::InvalidDecomposition { .. }
        ));
        assert!(matches!(
            err(vec![q(1, 2), q(0, 1), q(1, 2)]),
            Error::InvalidDecomposition { .. }
        ));
    }

    #[test]
    fn constants() {
        let pair = VertexSet::new(vec![GaussianRational::zero(), GaussianRational::one()]).unwrap();
        let c = simplex_constant(&pair).unwrap();
        assert_eq!(c.exact(), Some(q(2, 1)));
        assert!(c.per_vertex.iter().all(|v| v.c_squared == q(4, 1)));

        // at 0 the centroid direction is (1+i), min f = 1, ‖f‖² = 2, C² = 8
        let c = simplex_constant(&triangle()).unwrap();
        assert_eq!(c.per_vertex[0].c_squared, q(8, 1));
        assert!(c.per_vertex.iter().all(|v| !v.used_edge_normals));

        // at 0 the other vertices pull the centroid far to the right, so
        // the direction misses -1 + i/10
        let skewed = VertexSet::new(vec![
            GaussianRational::zero(),
            GaussianRational::from_ints(10, 0),
            GaussianRational::from_ints(11, 1),
            g((-1, 1), (1, 10)),
        ])
        .unwrap();
        let c = simplex_constant(&skewed).unwrap();
        assert!(c.per_vertex[0].used_edge_normals);
        assert!(c.per_vertex.iter().all(|v| v.min_value.is_positive()));

        let collinear = VertexSet::new(vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::from_ints(2, 0),
        ])
        .unwrap();
        assert!(matches!(
            simplex_constant(&collinear),
            Err(Error::NotConvexPosition { .. })
        ));
    }

    #[test]
    fn theorem_bound_examples() {
        let pair = VertexSet::new(vec![GaussianRational::zero(), GaussianRational::one()]).unwrap();
        let seq = TailedSequence::new(vec![g((1, 4), (0, 1))], vec![0, 1], &pair).unwrap();
        let dec = decompose(&seq, &pair).unwrap();
        let c = simplex_constant(&pair).unwrap();
        let r = verify_xd_theorem(&seq, &pair, &dec, &c);
        assert_eq!(r.weight_sums, vec![q(1, 4), q(1, 4)]);
        assert_eq!(r.distance_sum, 0.25);
        assert!(r.chain_holds && r.lipschitz_holds && r.bound_holds.iter().all(|&b| b));

        let vertices_only = TailedSequence::new(vec![], vec![0, 1], &pair).unwrap();
        let r = verify_xd_theorem(
            &vertices_only,
            &pair,
            &decompose(&vertices_only, &pair).unwrap(),
            &c,
        );
        assert!(r.weight_sums.iter().all(Zero::is_zero));
    }

    #[test]
    fn nullspace_perturbations_keep_decompositions_valid() {
        let square = VertexSet::new(vec![
            GaussianRational::zero(),
            GaussianRational::one(),
            GaussianRational::from_ints(1, 1),
            GaussianRational::i(),
        ])
        .unwrap();
        let basis = weight_nullspace(&square);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![q(-1, 1), q(1, 1), q(-1, 1), q(1, 1)]);
        assert!(weight_nullspace(&triangle()).is_empty());

        let p = g((1, 2), (1, 2));
        let seq = TailedSequence::new(vec![p.clone()], vec![0, 1, 2, 3], &square).unwrap();
        let row = barycentric(&p, &square).unwrap();
        let moved = perturb_row(&row, &basis[0], &q(1, 1));
        assert_ne!(moved, row);
        assert!(XDecomposition::new(vec![moved], &seq, &square).is_ok());
    }
}

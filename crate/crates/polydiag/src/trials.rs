//! Seeded random inputs and the randomized verification suites.
//!
//! Trial `k` of a run with seed `s` draws from its own ChaCha8 stream
//! (`seed_from_u64(s)` on stream `k`), so results do not depend on the worker
//! count or on scheduling.

use num_traits::{One, Zero};
use polydiag_core::decomposition::{perturb_row, weight_nullspace};
use polydiag_core::matrix::{
    check_pllem1, kadison_classifier, orthonormalize, pair_index, realize_diagonal_01,
    PairIndexReport, ProjectionPair, RankTolerance, Realization,
};
use polydiag_core::{
    decompose, simplex_constant, verify_xd_theorem, BigRational, Complex64, DenseMatrix,
    GaussianRational, TailedSequence, VertexSet, XDecomposition,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `f(0..trials)` on `workers` threads, results in trial order.
pub fn run_parallel<T, F>(
    trials: usize,
    workers: usize,
    f: F,
) -> Result<Vec<T>, rayon::ThreadPoolBuildError>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()?;
    Ok(pool.install(|| (0..trials).into_par_iter().map(f).collect()))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

const DENOMINATORS: [i64; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

fn unit_fraction<R: Rng>(rng: &mut R) -> BigRational {
    let den = *DENOMINATORS.choose(rng).expect("nonempty");
    q(rng.gen_range(0..=den), den)
}

/// Columns of a random unitary: Gram–Schmidt on uniform complex entries.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<Complex64>> {
    loop {
        let cols: Vec<Vec<Complex64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect()
            })
            .collect();
        let basis = orthonormalize(&cols);
        if basis.len() == n {
            return basis;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// Canonical two-subspace position with prescribed intersection
    /// dimensions, conjugated by a random unitary.
    Structured,
    /// Ranges spanned by leading columns of two independent random unitaries.
    Random,
}

pub struct PairSample {
    pub kind: PairKind,
    pub pair: ProjectionPair,
    pub rank_p: usize,
    pub rank_q: usize,
    /// `(dim M∩N⊥, dim N∩M⊥)` by construction, for structured pairs.
    pub expected: Option<(usize, usize)>,
}

/// Even trials are structured, odd trials fully random.
pub fn random_pair<R: Rng>(n: usize, trial: usize, rng: &mut R) -> PairSample {
    let w = random_unitary(n, rng);
    let (m, nn, kind, expected) = if trial.is_multiple_of(2) {
        let blocks = rng.gen_range(0..=n / 2);
        let mut counts = [0usize; 4];
        for _ in 0..n - 2 * blocks {
            counts[rng.gen_range(0..4)] += 1;
        }
        let [both, m_only, n_only, _neither] = counts;
        let mut m = Vec::new();
        let mut nn = Vec::new();
        let mut next = 0;
        let mut take =
            |k: usize, into: &mut Vec<Vec<Complex64>>, also: Option<&mut Vec<Vec<Complex64>>>| {
                let cols: Vec<Vec<Complex64>> = w[next..next + k].to_vec();
                next += k;
                if let Some(also) = also {
                    also.extend(cols.iter().cloned());
                }
                into.extend(cols);
            };
        take(both, &mut m, Some(&mut nn));
        take(m_only, &mut m, None);
        take(n_only, &mut nn, None);
        let mut scratch = Vec::new();
        take(counts[3], &mut scratch, None);
        for b in 0..blocks {
            let (a, c) = (&w[next + 2 * b], &w[next + 2 * b + 1]);
            let theta: f64 = rng.gen_range(0.15..core::f64::consts::FRAC_PI_2 - 0.15);
            m.push(a.clone());
            nn.push(
                a.iter()
                    .zip(c)
                    .map(|(x, y)| x * theta.cos() + y * theta.sin())
                    .collect(),
            );
        }
        (m, nn, PairKind::Structured, Some((m_only, n_only)))
    } else {
        let w2 = random_unitary(n, rng);
        let p = rng.gen_range(0..=n);
        let r = rng.gen_range(0..=n);
        (w[..p].to_vec(), w2[..r].to_vec(), PairKind::Random, None)
    };
    let pm = DenseMatrix::projection_onto(&m, n);
    let qm = DenseMatrix::projection_onto(&nn, n);
    let pair = ProjectionPair::new(pm, qm, 1e-9).expect("orthonormal columns give projections");
    PairSample {
        kind,
        pair,
        rank_p: m.len(),
        rank_q: nn.len(),
        expected,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairTrial {
    pub trial: usize,
    pub kind: PairKind,
    pub rank_p: usize,
    pub rank_q: usize,
    pub trace: f64,
    pub index: i64,
    pub dim_m_cap_n_perp: usize,
    pub dim_n_cap_m_perp: usize,
    pub integer_defect: f64,
    pub identity_defect: f64,
    pub indeterminate: bool,
    pub passed: bool,
}

pub fn index_trial(seed: u64, trial: usize, n: usize, tol: f64) -> PairTrial {
    let mut rng = trial_rng(seed, trial as u64);
    let sample = random_pair(n, trial, &mut rng);
    let report: PairIndexReport = pair_index(&sample.pair, RankTolerance::default());
    let matches_construction = sample
        .expected
        .is_none_or(|e| e == (report.dim_m_cap_n_perp, report.dim_n_cap_m_perp));
    PairTrial {
        trial,
        kind: sample.kind,
        rank_p: sample.rank_p,
        rank_q: sample.rank_q,
        trace: report.trace,
        index: report.index(),
        dim_m_cap_n_perp: report.dim_m_cap_n_perp,
        dim_n_cap_m_perp: report.dim_n_cap_m_perp,
        integer_defect: report.integer_defect,
        identity_defect: report.identity_defect,
        indeterminate: report.indeterminate,
        passed: report.passed(tol) && matches_construction,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectationTrial {
    pub trial: usize,
    pub n: usize,
    pub rank: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub difference: f64,
    pub passed: bool,
}

/// Float check of `tr((P − E(P))²) = tr(E(P) − E(P)²)` on a random
/// projection of size at most `max_n`.
pub fn expectation_trial(seed: u64, trial: usize, max_n: usize, tol: f64) -> ExpectationTrial {
    let mut rng = trial_rng(seed, trial as u64);
    let n = rng.gen_range(1..=max_n);
    let rank = rng.gen_range(0..=n);
    let w = random_unitary(n, &mut rng);
    let p = DenseMatrix::projection_onto(&w[..rank], n);
    let id = check_pllem1(&p).expect("square");
    let difference = id.difference.norm();
    ExpectationTrial {
        trial,
        n,
        rank,
        lhs: id.lhs.re,
        rhs: id.rhs.re,
        difference,
        passed: difference <= tol,
    }
}

/// Rationals in `[0, 1]`, `1 ≤ n ≤ max_n`, whose sum is an integer or not.
pub fn random_diagonal<R: Rng>(max_n: usize, integer_sum: bool, rng: &mut R) -> Vec<BigRational> {
    let n = rng.gen_range(1..=max_n);
    if integer_sum {
        let mut d: Vec<BigRational> = (0..n - 1).map(|_| unit_fraction(rng)).collect();
        let sum: BigRational = d.iter().sum();
        d.push(sum.ceil() - sum);
        d.shuffle(rng);
        d
    } else {
        let mut d: Vec<BigRational> = (0..n).map(|_| unit_fraction(rng)).collect();
        let sum: BigRational = d.iter().sum();
        if sum.is_integer() {
            let half = q(1, 2);
            let k = rng.gen_range(0..n);
            d[k] = if d[k] <= half {
                &d[k] + &half
            } else {
                &d[k] - &half
            };
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizeTrial {
    pub trial: usize,
    pub n: usize,
    pub integer_sum: bool,
    pub projection: bool,
    pub passed: bool,
}

/// Integer sum: an exact projection with exactly `d` on the diagonal that
/// also satisfies the conditional-expectation identity exactly. Otherwise:
/// the obstruction with the right defect.
pub fn realize_trial(seed: u64, trial: usize, max_n: usize, integer_sum: bool) -> RealizeTrial {
    let mut rng = trial_rng(seed, trial as u64);
    let d = random_diagonal(max_n, integer_sum, &mut rng);
    let sum: BigRational = d.iter().sum();
    let (projection, passed) = match realize_diagonal_01(&d).expect("entries in [0, 1]") {
        Realization::Projection(p) => {
            let identity = check_pllem1(&p.matrix)
                .expect("square")
                .difference
                .is_zero();
            (true, integer_sum && p.verify(&d) && identity)
        }
        Realization::Obstructed { defect, .. } => {
            (false, !integer_sum && defect == &sum - sum.floor())
        }
    };
    RealizeTrial {
        trial,
        n: d.len(),
        integer_sum,
        projection,
        passed,
    }
}

pub fn unit_pair() -> VertexSet {
    VertexSet::new(vec![GaussianRational::zero(), GaussianRational::one()]).expect("distinct")
}

pub fn unit_triangle() -> VertexSet {
    VertexSet::new(vec![
        GaussianRational::zero(),
        GaussianRational::one(),
        GaussianRational::i(),
    ])
    .expect("convex")
}

fn random_tail<R: Rng>(vertices: usize, rng: &mut R) -> Vec<usize> {
    let mut tail: Vec<usize> = (0..vertices).collect();
    for _ in 0..rng.gen_range(0..=3) {
        tail.push(rng.gen_range(0..vertices));
    }
    tail.shuffle(rng);
    tail
}

/// A `{0,1}`-valued tail after a short head in `[0, 1]`; about half of the
/// heads are adjusted so that `a − b` is an integer.
pub fn random_two_point_sequence<R: Rng>(rng: &mut R) -> TailedSequence {
    let x = unit_pair();
    let mut head: Vec<BigRational> = (0..rng.gen_range(0..=10))
        .map(|_| unit_fraction(rng))
        .collect();
    if rng.gen_bool(0.5) {
        let half = q(1, 2);
        let mut ab = BigRational::zero();
        for d in &head {
            ab += if *d <= half {
                d.clone()
            } else {
                d - BigRational::one()
            };
        }
        let f = &ab - ab.floor();
        if !f.is_zero() {
            // e = 1 − f either adds e (e ≤ 1/2) or subtracts 1 − e = f
            head.push(BigRational::one() - f);
        }
    }
    let head = head.into_iter().map(GaussianRational::real).collect();
    TailedSequence::new(head, random_tail(2, rng), &x).expect("values in [0, 1]")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KadisonTrial {
    pub trial: usize,
    pub head_len: usize,
    pub realizable: bool,
    pub obstruction: &'static str,
    pub agrees: bool,
}

pub fn kadison_trial(seed: u64, trial: usize) -> KadisonTrial {
    let mut rng = trial_rng(seed, trial as u64);
    let seq = random_two_point_sequence(&mut rng);
    let r = kadison_classifier(&seq, &unit_pair()).expect("full {0,1} tail");
    KadisonTrial {
        trial,
        head_len: seq.head().len(),
        realizable: r.realizable,
        obstruction: r.obstruction.as_str(),
        agrees: r.agrees_with_obstruction,
    }
}

/// `((1−t²)/(1+t²), 2t/(1+t²))`; distinct parameters give points in convex
/// position.
fn circle_point(t: &BigRational) -> GaussianRational {
    let one = BigRational::one();
    let den = &one + t * t;
    GaussianRational::new((&one - t * t) / &den, (q(2, 1) * t) / &den)
}

/// Four rational points of a scaled, shifted circle, in shuffled order.
pub fn random_quadrilateral<R: Rng>(rng: &mut R) -> VertexSet {
    let den = *[2i64, 3, 5, 8].choose(rng).expect("nonempty");
    let mut params: Vec<i64> = (-40..=40)
        .collect::<Vec<_>>()
        .choose_multiple(rng, 4)
        .copied()
        .collect();
    params.shuffle(rng);
    let scale = q(rng.gen_range(1..6), rng.gen_range(1..4));
    let shift = GaussianRational::from_fracs((rng.gen_range(-9..9), 7), (rng.gen_range(-9..9), 5));
    let vertices = params
        .iter()
        .map(|&t| &circle_point(&q(t, den)).scale(&scale) + &shift)
        .collect();
    VertexSet::new(vertices).expect("circle points are in convex position")
}

/// A point of the standard simplex in `ℝ^n`: mostly spread out, one in four
/// within `10⁻⁴` of a corner.
pub fn simplex_sample<R: Rng>(n: usize, rng: &mut R) -> Vec<BigRational> {
    if rng.gen_bool(0.25) {
        let k = rng.gen_range(0..n);
        let mut t: Vec<BigRational> = (0..n)
            .map(|_| q(rng.gen_range(0..=100), 1_000_000))
            .collect();
        t[k] = BigRational::zero();
        let rest: BigRational = t.iter().sum();
        t[k] = BigRational::one() - rest;
        return t;
    }
    loop {
        let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1000)).collect();
        let total: i64 = raw.iter().sum();
        if total > 0 {
            return raw.into_iter().map(|w| q(w, total)).collect();
        }
    }
}

pub fn combine(t: &[BigRational], x: &VertexSet) -> GaussianRational {
    t.iter().zip(x.vertices()).map(|(w, v)| v.scale(w)).sum()
}

/// The vertex sets of the constant and bound suites: `{0,1}`, `{0,1,i}` and
/// `quads` random quadrilaterals drawn from `seed`.
pub fn suite_vertex_sets(seed: u64, quads: usize) -> Vec<VertexSet> {
    let mut rng = trial_rng(seed, u64::MAX);
    let mut sets = vec![unit_pair(), unit_triangle()];
    sets.extend((0..quads).map(|_| random_quadrilateral(&mut rng)));
    sets
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantSuite {
    pub vertices: usize,
    pub c: f64,
    /// `C` when it is rational.
    pub c_exact: Option<String>,
    pub samples: usize,
    pub holds: usize,
    pub max_ratio: f64,
}

/// Samples `‖t − nearest corner‖₁ ≤ C · d(x(t), X)` on the simplex.
pub fn constant_suite(x: &VertexSet, seed: u64, samples: usize) -> ConstantSuite {
    let c = simplex_constant(x).expect("convex vertex set");
    let mut rng = trial_rng(seed, 0);
    let mut holds = 0;
    let mut max_ratio = 0.0f64;
    for _ in 0..samples {
        let t = simplex_sample(x.len(), &mut rng);
        let s = c.check_sample(&t, x);
        holds += usize::from(s.holds);
        if s.point_distance > 0.0 {
            let corner = polydiag_core::gaussian::rational_to_f64(&s.corner_distance);
            max_ratio = max_ratio.max(corner / s.point_distance);
        }
    }
    ConstantSuite {
        vertices: x.len(),
        c: c.value(),
        c_exact: c.exact().map(|v| crate::io::rational_text(&v)),
        samples,
        holds,
        max_ratio,
    }
}

/// A sequence whose head values lie in the polygon, half of them within a
/// small random distance of a vertex, and whose tail visits every vertex.
pub fn random_lim1_sequence<R: Rng>(x: &VertexSet, rng: &mut R) -> TailedSequence {
    let n = x.len();
    let head = (0..rng.gen_range(1..=12))
        .map(|_| {
            let t = simplex_sample(n, rng);
            let point = combine(&t, x);
            if rng.gen_bool(0.5) {
                let eps = q(1, rng.gen_range(2..=10_000));
                let v = x.vertex(rng.gen_range(0..n));
                &v.scale(&(BigRational::one() - &eps)) + &point.scale(&eps)
            } else {
                point
            }
        })
        .collect();
    TailedSequence::new(head, random_tail(n, rng), x).expect("polygon points")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XdTrial {
    pub trial: usize,
    pub head_len: usize,
    pub distance_sum: f64,
    pub c: f64,
    pub decompositions: usize,
    pub passed: bool,
}

/// The summability bound for the canonical decomposition and, when the
/// weights are not unique, for a second one moved along the nullspace.
pub fn xd_trial(x: &VertexSet, seed: u64, trial: usize) -> XdTrial {
    let mut rng = trial_rng(seed, trial as u64);
    let seq = random_lim1_sequence(x, &mut rng);
    let c = simplex_constant(x).expect("convex vertex set");
    let canonical = decompose(&seq, x).expect("polygon points");
    let mut decs = vec![canonical.clone()];
    if let Some(dir) = weight_nullspace(x).first() {
        let step = q(1, rng.gen_range(2..=50));
        let rows = canonical
            .head()
            .iter()
            .map(|row| perturb_row(row, dir, &step))
            .collect();
        decs.push(XDecomposition::new(rows, &seq, x).expect("nullspace moves keep the point"));
    }
    let mut passed = true;
    let mut distance_sum = 0.0;
    for dec in &decs {
        let r = verify_xd_theorem(&seq, x, dec, &c);
        passed &= r.chain_holds && r.lipschitz_holds && r.bound_holds.iter().all(|&b| b);
        distance_sum = r.distance_sum;
    }
    XdTrial {
        trial,
        head_len: seq.head().len(),
        distance_sum,
        c: c.value(),
        decompositions: decs.len(),
        passed,
    }
}

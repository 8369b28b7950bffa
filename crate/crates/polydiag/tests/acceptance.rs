//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use polydiag::trials::{
    expectation_trial, index_trial, kadison_trial, constant_suite, random_diagonal, realize_trial,
    run_parallel, suite_vertex_sets, trial_rng, unit_pair, unit_triangle, xd_trial,
};
use polydiag_core::matrix::{
    check_pllem1, cvprop1_counterexample, orthostochastic_test_3x3, realize_diagonal_01,
    OrthostochasticVerdict, Realization,
};
use polydiag_core::{simplex_constant, BigRational, GaussianRational, KxLattice, Verdict};
use serde_json::Value;

const SEED: u64 = 20_240_601;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{} [{:.2?}]", o.detail, elapsed);
    if let Some(limit) = limit {
        if elapsed >= limit {
            o.passed = false;
            o.detail = format!("{} exceeds {:?}", o.detail, limit);
        }
    }
    o
}

fn counterexample() -> Outcome {
    let r = cvprop1_counterexample().expect("counterexample builds");
    let mut failures = Vec::new();
    if r.raw_sum != GaussianRational::from_ints(1, 1) {
        failures.push(format!("raw sum {}", r.raw_sum));
    }
    if r.lattice_basis != [GaussianRational::one(), GaussianRational::i()] {
        failures.push("lattice is not Z+Zi".to_string());
    }
    if r.obstruction == Verdict::Obstructed
        || !r
            .certificate
            .as_ref()
            .is_some_and(|c| c.verify(&r.vertices, &r.raw_sum))
    {
        failures.push("renormalized sum not certified zero".to_string());
    }
    match &r.orthostochastic {
        OrthostochasticVerdict::NotOrthostochastic {
            rows: (0, 1),
            products,
            lengths,
        } if *products == [q(0, 1), q(0, 1), q(1, 4)]
            && lengths.iter().map(|l| l.as_rational()).collect::<Vec<_>>()
                == [Some(q(0, 1)), Some(q(0, 1)), Some(q(1, 2))] => {}
        other => failures.push(format!("unexpected orthostochastic verdict {other:?}")),
    }
    if r.verdict() != "NOT_REALIZABLE" {
        failures.push(r.verdict().to_string());
    }

    let cli = Command::new(env!("CARGO_BIN_EXE_polydiag"))
        .arg("counterexample")
        .output()
        .expect("binary runs");
    let json: Value = serde_json::from_slice(&cli.stdout).expect("JSON report");
    if cli.status.code() != Some(1)
        || json["verdict"] != "NOT_REALIZABLE"
        || json["raw_sum"] != "1+1i"
        || json["orthostochastic"]["rows"] != serde_json::json!([1, 2])
    {
        failures.push(format!("CLI report {json}"));
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "raw sum 1+1i, s(d)=0 in Z+Zi, rows 1,2 lengths (0,0,1/2); CLI exit 1 NOT_REALIZABLE"
                .to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn lattice_ground_truths() -> Outcome {
    let pair = KxLattice::build(&unit_pair()).basis();
    let triangle = KxLattice::build(&unit_triangle()).basis();
    let ok = pair == [GaussianRational::one()]
        && triangle == [GaussianRational::one(), GaussianRational::i()];
    let show = |b: &[GaussianRational]| {
        b.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    outcome(
        ok,
        format!(
            "K{{0,1}} = <{}>, K{{0,1,i}} = <{}>",
            show(&pair),
            show(&triangle)
        ),
    )
}

fn kadison() -> Outcome {
    let trials = run_parallel(1000, workers(), |k| kadison_trial(SEED, k)).expect("pool");
    let agree = trials.iter().filter(|t| t.agrees).count();
    let realizable = trials.iter().filter(|t| t.realizable).count();
    outcome(
        agree == 1000,
        format!("{agree}/1000 agree ({realizable} realizable)"),
    )
}

fn projection_index() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in [4usize, 8, 16, 40] {
        let trials = run_parallel(1000, workers(), |k| {
            index_trial(SEED ^ n as u64, k, n, 1e-6)
        })
        .expect("pool");
        let passed = trials.iter().filter(|t| t.passed).count();
        let worst = trials
            .iter()
            .map(|t| t.identity_defect.max(t.integer_defect))
            .fold(0.0, f64::max);
        ok &= passed == 1000;
        lines.push(format!("n={n}: {passed}/1000 (max defect {worst:.1e})"));
    }
    outcome(ok, lines.join(", "))
}

fn expectation_identity() -> Outcome {
    let mut exact = 0;
    let mut seed = SEED;
    let mut drawn = 0;
    while drawn < 100 {
        seed += 1;
        let mut rng = trial_rng(seed, 0);
        let d = random_diagonal(12, true, &mut rng);
        drawn += 1;
        if let Realization::Projection(p) = realize_diagonal_01(&d).expect("entries in [0, 1]") {
            if check_pllem1(&p.matrix)
                .expect("square")
                .difference
                .is_zero()
                && p.verify(&d)
            {
                exact += 1;
            }
        }
    }
    let float =
        run_parallel(1000, workers(), |k| expectation_trial(SEED, k, 40, 1e-9)).expect("pool");
    let float_ok = float.iter().filter(|t| t.passed).count();
    let worst = float.iter().map(|t| t.difference).fold(0.0, f64::max);
    outcome(
        exact == 100 && float_ok == 1000,
        format!("exact {exact}/100 zero, float {float_ok}/1000 (max |difference| {worst:.1e})"),
    )
}

fn simplex_constant_bound() -> Outcome {
    let sets = suite_vertex_sets(SEED, 10);
    let suites = run_parallel(sets.len(), workers(), |k| {
        constant_suite(&sets[k], SEED + k as u64, 10_000)
    })
    .expect("pool");
    let all = suites.iter().all(|s| s.holds == s.samples);
    let c01 = simplex_constant(&unit_pair()).expect("convex").exact();
    let worst = suites.iter().map(|s| s.max_ratio / s.c).fold(0.0, f64::max);
    let total: usize = suites.iter().map(|s| s.holds).sum();
    outcome(
        all && c01 == Some(q(2, 1)),
        format!(
            "{total}/{} samples over {} sets, C{{0,1}} = {}, max ratio/C {worst:.3}",
            suites.len() * 10_000,
            suites.len(),
            c01.map_or("irrational".to_string(), |c| c.to_string())
        ),
    )
}

fn xd_bound() -> Outcome {
    let sets = suite_vertex_sets(SEED, 10);
    let mut passed = 0;
    for (i, x) in sets.iter().enumerate() {
        let trials =
            run_parallel(100, workers(), |k| xd_trial(x, SEED + i as u64, k)).expect("pool");
        passed += trials.iter().filter(|t| t.passed).count();
    }
    let total = 100 * sets.len();
    outcome(
        passed == total,
        format!("{passed}/{total} sequences over {} vertex sets", sets.len()),
    )
}

fn realizer() -> Outcome {
    let whole = run_parallel(500, workers(), |k| realize_trial(SEED, k, 12, true)).expect("pool");
    let fractional =
        run_parallel(500, workers(), |k| realize_trial(SEED + 1, k, 12, false)).expect("pool");
    let a = whole.iter().filter(|t| t.passed).count();
    let b = fractional.iter().filter(|t| t.passed).count();
    let largest = whole.iter().map(|t| t.n).max().unwrap_or(0);
    outcome(
        a == 500 && b == 500,
        format!("{a}/500 exact projections (n up to {largest}), {b}/500 obstructions"),
    )
}

fn orthostochastic() -> Outcome {
    let m = |e: [[(i64, i64); 3]; 3]| e.map(|row| row.map(|(n, d)| q(n, d)));
    let identity = m([
        [(1, 1), (0, 1), (0, 1)],
        [(0, 1), (1, 1), (0, 1)],
        [(0, 1), (0, 1), (1, 1)],
    ]);
    let third = m([[(1, 3); 3]; 3]);
    let half = m([
        [(1, 2), (0, 1), (1, 2)],
        [(0, 1), (1, 2), (1, 2)],
        [(1, 2), (1, 2), (0, 1)],
    ]);
    let mut details = Vec::new();
    let mut ok = true;
    for (name, a) in [("identity", &identity), ("1/3", &third)] {
        match orthostochastic_test_3x3(a).expect("doubly stochastic") {
            OrthostochasticVerdict::Orthostochastic(w) => {
                ok &= w.unitarity_defect <= 1e-10 && w.modulus_defect <= 1e-10;
                details.push(format!(
                    "{name} accepted (defect {:.1e})",
                    w.unitarity_defect
                ));
            }
            _ => {
                ok = false;
                details.push(format!("{name} rejected"));
            }
        }
    }
    let rejected = !orthostochastic_test_3x3(&half)
        .expect("doubly stochastic")
        .is_orthostochastic();
    ok &= rejected;
    details.push(format!(
        "half matrix {}",
        if rejected { "rejected" } else { "accepted" }
    ));
    outcome(ok, details.join(", "))
}

/// Name, runtime limit, check.
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "1 counterexample reproduction",
            Some(Duration::from_secs(1)),
            counterexample,
        ),
        ("2 lattice ground truths", None, lattice_ground_truths),
        (
            "3 Kadison dichotomy consistency",
            Some(Duration::from_secs(10)),
            kadison,
        ),
        (
            "4 projection-pair index",
            Some(Duration::from_secs(60)),
            projection_index,
        ),
        (
            "5 conditional-expectation identity",
            None,
            expectation_identity,
        ),
        ("6 simplex constant", None, simplex_constant_bound),
        ("7 X-decomposition bound", None, xd_bound),
        ("8 Schur-Horn realizer", None, realizer),
        ("9 orthostochastic witness", None, orthostochastic),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let o = timed(limit, run);
        failed += usize::from(!o.passed);
        println!(
            "{} criterion {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Command-line configuration and dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use polydiag_core::matrix::{
    check_pllem1, cvprop1_counterexample, kadison_classifier, orthostochastic_test_3x3,
    realize_diagonal_01, Realization,
};
use polydiag_core::{
    decompose, lim1_diagnostic, obstruction_verdict, Complex64, KxLattice, Verdict, VertexSet,
};

use crate::error::InputError;
use crate::io::{self, exact_list, rational_text, FloatEntry};
use crate::report::*;
use crate::trials::{index_trial, run_parallel, unit_pair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Debug, Parser)]
#[command(
    name = "polydiag",
    version,
    about = "Index obstructions for diagonals of normal operators with finite spectrum"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Renormalized sum of a sequence in ℂ / K_X and the obstruction verdict.
    Gamma {
        #[arg(long)]
        vertices: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Float mode: distance to the lattice treated as "near".
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Per-vertex weights of the head terms, as CSV.
    Decompose {
        #[arg(long)]
        vertices: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Randomized check that tr(QPQ + Q⊥PQ⊥ − Q) = dim(M∩N⊥) − dim(N∩M⊥).
    VerifyIndex {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Worker threads; the report does not depend on this.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Exact projection with a prescribed diagonal in [0, 1].
    Realize {
        #[arg(long)]
        diagonal: PathBuf,
    },
    /// Whether a doubly stochastic 3×3 matrix is |u_ij|² for a unitary.
    Orthostochastic {
        #[arg(long)]
        matrix: PathBuf,
        /// Bound on the witness defects.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// The three-point sequence with vanishing index obstruction that is not
    /// a diagonal.
    Counterexample,
    /// Kadison's a − b test on a sequence accumulating at {0, 1}.
    Kadison {
        #[arg(long)]
        sequence: PathBuf,
        /// Defaults to {0, 1}, the only vertex set accepted.
        #[arg(long)]
        vertices: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    pub exit_code: u8,
}

impl RunOutput {
    fn from_report<T: serde::Serialize>(report: Report<T>) -> Self {
        RunOutput {
            exit_code: report.outcome.exit_code(),
            text: report.to_json(),
        }
    }
}

fn vertex_set(path: &Path) -> Result<VertexSet, InputError> {
    io::parse_vertices(&io::read_file(path)?)
}

pub fn run(config: &RunConfig) -> Result<RunOutput, InputError> {
    match &config.command {
        Command::Gamma {
            vertices,
            sequence,
            mode,
            tol,
        } => {
            let x = vertex_set(vertices)?;
            let seq = io::parse_sequence(&io::read_file(sequence)?, &x)?;
            match mode {
                Mode::Exact => gamma_exact(&x, &seq),
                Mode::Float => Ok(gamma_float(&x, &seq, *tol)),
            }
        }
        Command::Decompose {
            vertices,
            sequence,
            mode,
        } => {
            let x = vertex_set(vertices)?;
            let seq = io::parse_sequence(&io::read_file(sequence)?, &x)?;
            decompose_csv(&x, &seq, *mode)
        }
        Command::VerifyIndex {
            n,
            trials,
            seed,
            tol,
            workers,
        } => verify_index(*n, *trials, *seed, *tol, *workers),
        Command::Realize { diagonal } => realize(&io::parse_diagonal(&io::read_file(diagonal)?)?),
        Command::Orthostochastic { matrix, tol } => {
            let m = io::parse_matrix(&io::read_file(matrix)?)?;
            orthostochastic(&io::real_3x3(&m)?, *tol)
        }
        Command::Counterexample => counterexample(),
        Command::Kadison { sequence, vertices } => {
            let x = match vertices {
                Some(path) => vertex_set(path)?,
                None => unit_pair(),
            };
            let seq = io::parse_sequence(&io::read_file(sequence)?, &x)?;
            kadison(&x, &seq)
        }
    }
}

/// Writes to `--out` or standard output.
pub fn emit(config: &RunConfig, output: &RunOutput) -> Result<(), InputError> {
    match &config.out {
        Some(path) => std::fs::write(path, &output.text).map_err(|source| InputError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{}", output.text);
            Ok(())
        }
    }
}

fn gamma_exact(
    x: &VertexSet,
    seq: &polydiag_core::TailedSequence,
) -> Result<RunOutput, InputError> {
    let r = obstruction_verdict(seq, x).map_err(|e| InputError::invariant("sequence", e))?;
    let certified = r
        .certificate
        .as_ref()
        .is_none_or(|c| c.verify(x.vertices(), &r.raw_sum));
    let body = GammaBody {
        mode: "exact",
        vertices: exact_list(x.vertices()),
        lattice_basis: exact_list(&r.lattice.basis()),
        verdict: r.verdict.as_str(),
        raw_sum: r.raw_sum.to_string(),
        representative: r.representative.to_string(),
        certificate: certificate_value(&r.certificate),
        assignment: r.assignment.indices().to_vec(),
    };
    let finding = if r.verdict == Verdict::Obstructed {
        Outcome::Obstruction
    } else {
        Outcome::Ok
    };
    Ok(RunOutput::from_report(Report::new(
        "gamma",
        body,
        vec![check("certificate_verifies", certified)],
        finding,
    )))
}

fn gamma_float(x: &VertexSet, seq: &polydiag_core::TailedSequence, tol: f64) -> RunOutput {
    let fx = x.to_float();
    let values: Vec<Complex64> = seq.head().iter().map(|z| z.to_complex64()).collect();
    let raw: Complex64 = values
        .iter()
        .map(|&a| {
            let nearest = fx
                .vertices()
                .iter()
                .min_by(|u, v| (a - **u).norm().total_cmp(&(a - **v).norm()));
            a - nearest.expect("at least two vertices")
        })
        .sum();
    let lattice = KxLattice::build(x);
    let distance = lattice.float_distance(raw);
    let d = lim1_diagnostic(&values, &fx, 1e-9);
    let body = GammaFloatBody {
        mode: "float",
        vertices: exact_list(x.vertices()),
        lattice_basis: exact_list(&lattice.basis()),
        verdict: None,
        raw_sum: FloatEntry::from(raw),
        near_membership_distance: distance,
        tol,
        within_tol: distance <= tol,
        lim1: Lim1Json {
            terms: d.terms,
            distance_sum: d.distance_sum,
            poly_sum: d.poly_sum,
            lower_holds: d.lower_holds,
            upper_holds: d.upper_holds,
        },
    };
    let checks = vec![
        check("lim1_lower_bound", d.lower_holds),
        check("lim1_upper_bound", d.upper_holds),
    ];
    RunOutput::from_report(Report::new("gamma", body, checks, Outcome::Ok))
}

fn decompose_csv(
    x: &VertexSet,
    seq: &polydiag_core::TailedSequence,
    mode: Mode,
) -> Result<RunOutput, InputError> {
    let dec = decompose(seq, x).map_err(|e| InputError::invariant("sequence", e))?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["term".to_string(), "re".to_string(), "im".to_string()];
    header.extend((0..x.len()).map(|k| format!("w{k}")));
    w.write_record(&header)?;
    for (n, (row, a)) in dec.head().iter().zip(seq.head()).enumerate() {
        let mut record = vec![n.to_string()];
        match mode {
            Mode::Exact => {
                record.push(a.re_string());
                record.push(a.im_string());
                record.extend(row.iter().map(rational_text));
            }
            Mode::Float => {
                let z = a.to_complex64();
                record.push(z.re.to_string());
                record.push(z.im.to_string());
                record.extend(
                    row.iter()
                        .map(|v| polydiag_core::gaussian::rational_to_f64(v).to_string()),
                );
            }
        }
        w.write_record(&record)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| InputError::field("CSV output", e.to_string()))?;
    Ok(RunOutput {
        text: String::from_utf8(bytes).expect("CSV of UTF-8 fields"),
        exit_code: 0,
    })
}

fn verify_index(
    n: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    workers: usize,
) -> Result<RunOutput, InputError> {
    if n == 0 {
        return Err(InputError::field("--n", "dimension must be positive"));
    }
    let results = run_parallel(trials, workers, |k| index_trial(seed, k, n, tol))?;
    let integer = results.iter().filter(|t| t.integer_defect <= tol).count();
    let identity = results.iter().all(|t| t.identity_defect <= tol);
    let indeterminate = results.iter().filter(|t| t.indeterminate).count();
    let passed = results.iter().filter(|t| t.passed).count();
    let checks = vec![
        check("trace_is_integer", integer == trials),
        check("trace_equals_dimension_difference", identity),
        check("ranks_determinate", indeterminate == 0),
        check("all_trials_passed", passed == trials),
    ];
    let body = IndexBody {
        n,
        trials,
        seed,
        tol,
        passed,
        integer_indices: integer,
        indeterminate,
        results,
    };
    Ok(RunOutput::from_report(Report::new(
        "verify-index",
        body,
        checks,
        Outcome::Ok,
    )))
}

fn realize(d: &[polydiag_core::BigRational]) -> Result<RunOutput, InputError> {
    let r = realize_diagonal_01(d).map_err(|e| InputError::invariant("diagonal", e))?;
    let report = match &r {
        Realization::Projection(p) => {
            let identity = check_pllem1(&p.matrix)
                .map(|i| i.difference.is_zero())
                .unwrap_or(false);
            let checks = vec![
                check("diagonal_matches", p.diagonal_matches(d)),
                check("symmetric", p.is_symmetric()),
                check("unitary_orthogonal", p.unitary_is_orthogonal()),
                check("idempotent", p.matrix.is_exact_projection()),
                check("trace_equals_rank", p.verify(d)),
                check("conditional_expectation_identity", identity),
            ];
            Report::new(
                "realize",
                RealizeBody::projection(d, p),
                checks,
                Outcome::Ok,
            )
        }
        Realization::Obstructed { sum, defect } => {
            let body = RealizeBody {
                diagonal: rational_list(d),
                sum: rational_text(sum),
                realizable: false,
                defect: Some(rational_text(defect)),
                rank: None,
                matrix: None,
                rotations: Vec::new(),
            };
            Report::new("realize", body, Vec::new(), Outcome::Obstruction)
        }
    };
    Ok(RunOutput::from_report(report))
}

fn orthostochastic(
    a: &[[polydiag_core::BigRational; 3]; 3],
    tol: f64,
) -> Result<RunOutput, InputError> {
    let v = orthostochastic_test_3x3(a).map_err(|e| InputError::invariant("matrix", e))?;
    let body = OrthostochasticBody::new(a, &v);
    let (checks, finding) = match &body.witness {
        Some(w) => (
            vec![
                check("witness_unitary", w.unitarity_defect <= tol),
                check("witness_moduli", w.modulus_defect <= tol),
            ],
            Outcome::Ok,
        ),
        None => (Vec::new(), Outcome::Obstruction),
    };
    Ok(RunOutput::from_report(Report::new(
        "orthostochastic",
        body,
        checks,
        finding,
    )))
}

fn counterexample() -> Result<RunOutput, InputError> {
    let r = cvprop1_counterexample().map_err(|e| InputError::invariant("counterexample", e))?;
    let certified = r
        .certificate
        .as_ref()
        .is_some_and(|c| c.verify(&r.vertices, &r.raw_sum));
    let body = CounterexampleBody {
        vertices: exact_list(&r.vertices),
        sequence: SequenceJson::from(&r.sequence),
        raw_sum: r.raw_sum.to_string(),
        lattice_basis: exact_list(&r.lattice_basis),
        certificate: certificate_value(&r.certificate),
        obstruction: r.obstruction.as_str(),
        diagonals: r.diagonals.iter().map(|row| rational_list(row)).collect(),
        orthostochastic: OrthostochasticBody::new(&r.diagonals, &r.orthostochastic),
        verdict: r.verdict(),
    };
    let checks = vec![
        check(
            "renormalized_sum_vanishes",
            r.obstruction != Verdict::Obstructed,
        ),
        check("certificate_verifies", certified),
        check(
            "diagonal_matrix_not_orthostochastic",
            !r.orthostochastic.is_orthostochastic(),
        ),
    ];
    let finding = if r.realizable {
        Outcome::Ok
    } else {
        Outcome::Counterexample
    };
    Ok(RunOutput::from_report(Report::new(
        "counterexample",
        body,
        checks,
        finding,
    )))
}

fn kadison(x: &VertexSet, seq: &polydiag_core::TailedSequence) -> Result<RunOutput, InputError> {
    let r = kadison_classifier(seq, x).map_err(|e| InputError::invariant("sequence", e))?;
    let body = KadisonBody {
        sequence: SequenceJson::from(seq),
        a: rational_text(&r.a),
        b: rational_text(&r.b),
        difference: rational_text(&r.difference),
        realizable: r.realizable,
        integer: r.integer.as_ref().map(integer_value),
        defect: rational_text(&r.defect),
        obstruction: r.obstruction.as_str(),
    };
    let checks = vec![check("agrees_with_obstruction", r.agrees_with_obstruction)];
    let finding = if r.realizable {
        Outcome::Ok
    } else {
        Outcome::Obstruction
    };
    Ok(RunOutput::from_report(Report::new(
        "kadison", body, checks, finding,
    )))
}

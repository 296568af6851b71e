//! `permopt`: solve, verify, and cross-check permutation-matrix encodings of
//! combinatorial problems from the command line.
//!
//! Exit codes: 0 success/feasible/valid, 1 usage or parse error,
//! 2 infeasible best-effort result, 3 invalid certificate, 4 certificate /
//! instance digest mismatch, 5 oracle size limit exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use permopt::io::{
    certificate_for, parse_dimacs_cnf, parse_dimacs_graph, parse_tsplib, read_certificate,
    verify_certificate, write_certificate, Certificate, ParseMode,
};
use permopt::oracles::{
    brute_chromatic, brute_maxcut, brute_qap, brute_sat, brute_subset, brute_tsp,
    formulation_search, OracleLimits, OracleResult,
};
use permopt::solvers::{anneal, relax_solve, AnnealParams, RelaxParams, RelaxTrajectory};
use permopt::{
    evaluate, extract_solution, CandidateSolution, DiscreteSolution, Error, Evaluation, Instance,
    Permutation, Problem, QapInstance, SatEncoding,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_DIGEST: u8 = 4;
const EXIT_TOO_LARGE: u8 = 5;

const ORACLE_LIMIT_ENV: &str = "PERMOPT_ORACLE_LIMIT";

#[derive(Parser)]
#[command(name = "permopt", version, about = "Permutation-matrix combinatorial optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and optionally write a certificate.
    Solve(SolveArgs),
    /// Re-check a certificate against its instance.
    Verify(VerifyArgs),
    /// Exact brute-force optimum for small instances.
    Oracle(OracleArgs),
    /// Emit the SAT graph encoding matrices as JSON.
    Encode(EncodeArgs),
    /// Run a manifest of solve jobs and print an aggregate table.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Anneal,
    Relax,
    Exact,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Anneal => "anneal",
            Method::Relax => "relax",
            Method::Exact => "exact",
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Problem name: tsp, qap, mis, maxcut, coloring, mvc, mds, clique, gi, sat
    #[arg(long)]
    problem: String,
    /// Instance file (DIMACS graph, DIMACS CNF, TSPLIB, or QAP JSON)
    #[arg(long)]
    input: PathBuf,
    /// Second graph file (gi only)
    #[arg(long)]
    second: Option<PathBuf>,
    /// Warn instead of failing on header count mismatches
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Anneal iterations per restart
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Anneal initial temperature
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long)]
    cooling_rate: Option<f64>,
    /// Relaxation gradient steps
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    sinkhorn_iters: Option<usize>,
    /// Relaxation softmax temperature
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    tau_decay: Option<f64>,
    #[arg(long)]
    penalty: Option<f64>,
    #[arg(long)]
    penalty_growth: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Machine-readable output with stable key order
    #[arg(long)]
    json: bool,
    /// Write the certificate to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    certificate: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Also run the (pi, k) exhaustion and assert agreement
    #[arg(long)]
    formulation_search: bool,
    /// Override the oracle size limit for every enumeration kind
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// JSON manifest: {"rows": [{"problem", "input", "method", "seed"}]}
    #[arg(long)]
    suite: PathBuf,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap's help/version on stdout with success
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
    };
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Encode(args) => cmd_encode(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match code {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e))
        }
    }
}

fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } => EXIT_TOO_LARGE,
        Error::DigestMismatch { .. } => EXIT_DIGEST,
        Error::Schema(_) => EXIT_INVALID,
        _ => EXIT_USAGE,
    }
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInstance(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(args: &InputArgs) -> Result<(Problem, Instance, Vec<String>), Error> {
    let problem: Problem = args.problem.parse()?;
    let mode = if args.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    };
    let text = read_text(&args.input)?;
    let (instance, warnings) = match problem {
        Problem::Tsp => {
            let parsed = parse_tsplib(&text, mode)?;
            (Instance::Tsp(parsed.value), parsed.warnings)
        }
        Problem::Sat => {
            let parsed = parse_dimacs_cnf(&text, mode)?;
            (Instance::Sat(parsed.value), parsed.warnings)
        }
        Problem::Qap => {
            #[derive(serde::Deserialize)]
            struct QapFile {
                flow: Vec<Vec<f64>>,
                dist: Vec<Vec<f64>>,
            }
            let raw: QapFile = serde_json::from_str(&text)?;
            (Instance::Qap(QapInstance::new(raw.flow, raw.dist)?), vec![])
        }
        Problem::Gi => {
            let second = args.second.as_ref().ok_or_else(|| {
                Error::InvalidInstance("gi needs --second with the other graph".into())
            })?;
            let first = parse_dimacs_graph(&text, mode)?;
            let other = parse_dimacs_graph(&read_text(second)?, mode)?;
            let mut warnings = first.warnings;
            warnings.extend(other.warnings);
            (Instance::GraphPair(first.value, other.value), warnings)
        }
        _ => {
            let parsed = parse_dimacs_graph(&text, mode)?;
            (Instance::Graph(parsed.value), parsed.warnings)
        }
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    Ok((problem, instance, warnings))
}

fn oracle_limits(override_limit: Option<usize>) -> OracleLimits {
    let mut limits = OracleLimits::default();
    let env_limit = std::env::var(ORACLE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(x) = override_limit.or(env_limit) {
        limits = OracleLimits {
            subset: x,
            perm: x,
            tour: x,
            sat_vars: x,
        };
    }
    limits
}

fn run_oracle(
    problem: Problem,
    instance: &Instance,
    limits: &OracleLimits,
) -> Result<OracleResult, Error> {
    match (problem, instance) {
        (Problem::Mis | Problem::Mvc | Problem::Mds | Problem::Clique, Instance::Graph(g)) => {
            brute_subset(problem, g, limits)
        }
        (Problem::MaxCut, Instance::Graph(g)) => brute_maxcut(g, limits),
        (Problem::Coloring, Instance::Graph(g)) => brute_chromatic(g, limits),
        (Problem::Tsp, Instance::Tsp(t)) => brute_tsp(t, limits),
        (Problem::Qap, Instance::Qap(q)) => brute_qap(q, limits),
        (Problem::Sat, Instance::Sat(s)) => brute_sat(s, limits),
        (Problem::Gi, Instance::GraphPair(..)) => formulation_search(problem, instance, limits),
        _ => Err(Error::UnsupportedProblem(format!(
            "oracle: {problem} does not match the given instance"
        ))),
    }
}

/// Rebuilds a permutation candidate from an oracle witness so exact solves
/// can emit the same certificates the heuristics do.
fn witness_to_candidate(
    problem: Problem,
    instance: &Instance,
    witness: &DiscreteSolution,
) -> Result<CandidateSolution, Error> {
    let n = instance.perm_size();
    let perm_from_groups = |groups: &[&[usize]]| -> Result<Permutation, Error> {
        let mut order: Vec<usize> = groups.iter().flat_map(|g| g.iter().copied()).collect();
        let mut seen = vec![false; n];
        for &v in &order {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation("bad witness vertex list".into()));
            }
            seen[v - 1] = true;
        }
        order.extend((1..=n).filter(|&v| !seen[v - 1]));
        Permutation::from_one_based(&order)
    };
    match witness {
        DiscreteSolution::VertexSet(set) => {
            let pi = perm_from_groups(&[set])?;
            Ok(CandidateSolution::with_k(problem, pi, set.len()))
        }
        DiscreteSolution::Bipartition(left, right) => {
            let pi = perm_from_groups(&[left, right])?;
            Ok(CandidateSolution::with_k(problem, pi, left.len()))
        }
        DiscreteSolution::Coloring(classes) => {
            let refs: Vec<&[usize]> = classes.iter().map(|c| c.as_slice()).collect();
            let pi = perm_from_groups(&refs)?;
            let blocks = classes.iter().map(|c| c.len()).collect();
            Ok(CandidateSolution::with_blocks(pi, blocks))
        }
        DiscreteSolution::Tour(order) | DiscreteSolution::Mapping(order) => Ok(
            CandidateSolution::new(problem, Permutation::from_one_based(order)?),
        ),
        DiscreteSolution::Assignment(assignment) => {
            let Instance::Sat(s) = instance else {
                return Err(Error::UnsupportedProblem(
                    "assignment witness without a SAT instance".into(),
                ));
            };
            Ok(CandidateSolution::new(
                Problem::Sat,
                permopt::sat::assignment_to_permutation(s, assignment)?,
            ))
        }
    }
}

#[derive(Serialize)]
struct RunReport {
    problem: String,
    instance: String,
    method: String,
    seed: u64,
    wall_time_ms: u128,
    objective: Option<f64>,
    violation: i64,
    feasible: bool,
    solution: Option<DiscreteSolution>,
    certificate: Option<Certificate>,
    trajectory: Option<RelaxTrajectory>,
}

fn print_report(report: &RunReport, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
        return;
    }
    println!("problem: {}", report.problem);
    println!("instance: {}", report.instance);
    println!("method: {}", report.method);
    println!("seed: {}", report.seed);
    match report.objective {
        Some(obj) => println!("objective: {obj}"),
        None => println!("objective: none"),
    }
    println!("violation: {}", report.violation);
    println!("feasible: {}", report.feasible);
    if let Some(sol) = &report.solution {
        println!(
            "solution: {}",
            serde_json::to_string(sol).expect("solution serializes")
        );
    }
    if let Some(t) = &report.trajectory {
        println!(
            "relaxation: value {:.6}, residual {:.2e}, steps {}, penalty {}",
            t.final_value, t.final_residual, t.steps, t.final_penalty
        );
    }
    println!("wall_time_ms: {}", report.wall_time_ms);
}

fn anneal_params(args: &SolveArgs) -> Result<AnnealParams, Error> {
    let mut p = AnnealParams {
        seed: args.seed,
        ..AnnealParams::default()
    };
    if let Some(x) = args.iterations {
        p.iterations = x;
    }
    if let Some(x) = args.restarts {
        p.restarts = x;
    }
    if let Some(x) = args.temperature {
        p.initial_temperature = x;
    }
    if let Some(x) = args.cooling_rate {
        p.cooling_rate = x;
    }
    p.validate()?;
    Ok(p)
}

fn relax_params(args: &SolveArgs) -> Result<RelaxParams, Error> {
    let mut p = RelaxParams {
        seed: args.seed,
        ..RelaxParams::default()
    };
    if let Some(x) = args.steps {
        p.steps = x;
    }
    if let Some(x) = args.learning_rate {
        p.learning_rate = x;
    }
    if let Some(x) = args.sinkhorn_iters {
        p.sinkhorn_iters = x;
    }
    if let Some(x) = args.tau {
        p.temperature = x;
    }
    if let Some(x) = args.tau_decay {
        p.temperature_decay = x;
    }
    if let Some(x) = args.penalty {
        p.penalty = x;
    }
    if let Some(x) = args.penalty_growth {
        p.penalty_growth = x;
    }
    if let Some(x) = args.tolerance {
        p.tolerance = x;
    }
    p.validate()?;
    Ok(p)
}

fn cmd_solve(args: SolveArgs) -> Result<u8, Error> {
    let (problem, instance, _) = load_instance(&args.input)?;
    let start = Instant::now();
    let (candidate, evaluation, trajectory): (
        Option<CandidateSolution>,
        Evaluation,
        Option<RelaxTrajectory>,
    ) = match args.method {
        Method::Anneal => {
            let outcome = anneal(problem, &instance, &anneal_params(&args)?)?;
            (Some(outcome.candidate), outcome.evaluation, None)
        }
        Method::Relax => {
            let outcome = relax_solve(problem, &instance, &relax_params(&args)?)?;
            (
                Some(outcome.candidate),
                outcome.evaluation,
                Some(outcome.trajectory),
            )
        }
        Method::Exact => {
            let result = run_oracle(problem, &instance, &oracle_limits(None))?;
            match &result.witness {
                Some(witness) => {
                    let candidate = witness_to_candidate(problem, &instance, witness)?;
                    let evaluation = evaluate(&instance, &candidate)?;
                    (Some(candidate), evaluation, None)
                }
                None => (
                    // unsatisfiable SAT instance: nothing to certify
                    None,
                    Evaluation {
                        objective: result.optimum,
                        violation: 0,
                        feasible: false,
                    },
                    None,
                ),
            }
        }
    };
    let wall_time_ms = start.elapsed().as_millis();

    let certificate = candidate
        .as_ref()
        .map(|c| certificate_for(&instance, c, &evaluation));
    let solution = match (&candidate, evaluation.feasible) {
        (Some(c), true) => Some(extract_solution(&instance, c)?),
        _ => None,
    };
    if let (Some(path), Some(cert)) = (&args.out, &certificate) {
        fs::write(path, write_certificate(cert))
            .map_err(|e| Error::InvalidInstance(format!("cannot write {}: {e}", path.display())))?;
    }
    let report = RunReport {
        problem: problem.name().to_string(),
        instance: args.input.input.display().to_string(),
        method: args.method.name().to_string(),
        seed: args.seed,
        wall_time_ms,
        objective: Some(evaluation.objective),
        violation: evaluation.violation,
        feasible: evaluation.feasible,
        solution,
        certificate,
        trajectory,
    };
    print_report(&report, args.json);
    Ok(if evaluation.feasible {
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    })
}

#[derive(Serialize)]
struct VerifyReport {
    valid: bool,
    objective: f64,
    violation: i64,
    feasible: bool,
    claimed_objective: f64,
    claimed_feasible: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    let (_, instance, _) = load_instance(&args.input)?;
    let text = read_text(&args.certificate)?;
    let cert = read_certificate(&text).map_err(|e| match e {
        Error::Json(e) => Error::Schema(format!("malformed certificate: {e}")),
        other => other,
    })?;
    let evaluation = verify_certificate(&instance, &cert)?;
    let valid = evaluation.feasible
        && cert.feasible
        && (evaluation.objective - cert.objective).abs() <= 1e-9;
    let report = VerifyReport {
        valid,
        objective: evaluation.objective,
        violation: evaluation.violation,
        feasible: evaluation.feasible,
        claimed_objective: cert.objective,
        claimed_feasible: cert.feasible,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));
    } else if valid {
        println!(
            "valid: objective {} re-verified, violation 0",
            evaluation.objective
        );
    } else {
        println!(
            "invalid: re-evaluation gives objective {}, violation {}, feasible {}",
            evaluation.objective, evaluation.violation, evaluation.feasible
        );
    }
    Ok(if valid { EXIT_OK } else { EXIT_INVALID })
}

#[derive(Serialize)]
struct OracleReport {
    problem: String,
    optimum: f64,
    witness: Option<DiscreteSolution>,
    formulation_search: Option<f64>,
    agree: Option<bool>,
}

fn cmd_oracle(args: OracleArgs) -> Result<u8, Error> {
    let (problem, instance, _) = load_instance(&args.input)?;
    let limits = oracle_limits(args.limit);
    let brute = run_oracle(problem, &instance, &limits)?;
    let mut report = OracleReport {
        problem: problem.name().to_string(),
        optimum: brute.optimum,
        witness: brute.witness.clone(),
        formulation_search: None,
        agree: None,
    };
    if args.formulation_search {
        let formulated = formulation_search(problem, &instance, &limits)?;
        report.formulation_search = Some(formulated.optimum);
        report.agree = Some(formulated.optimum == brute.optimum);
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));
    } else {
        println!("optimum: {}", report.optimum);
        if let Some(w) = &report.witness {
            println!(
                "witness: {}",
                serde_json::to_string(w).expect("witness serializes")
            );
        }
        if let Some(f) = report.formulation_search {
            let verdict = if report.agree == Some(true) {
                "AGREE"
            } else {
                "DISAGREE"
            };
            println!("formulation search: {} = {}, {verdict}", f, report.optimum);
        }
    }
    Ok(if report.agree == Some(false) {
        EXIT_INVALID
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct EncodingDump {
    num_vars: usize,
    num_clauses: usize,
    n_vertices: usize,
    conflict: Vec<Vec<i64>>,
    incidence: Vec<Vec<i64>>,
    adjacency: Vec<Vec<i64>>,
    clause_selector: Vec<Vec<i64>>,
    literal_selector: Vec<Vec<i64>>,
}

fn matrix_rows(m: &ndarray::Array2<i64>) -> Vec<Vec<i64>> {
    m.outer_iter().map(|r| r.to_vec()).collect()
}

fn cmd_encode(args: EncodeArgs) -> Result<u8, Error> {
    let (problem, instance, _) = load_instance(&args.input)?;
    let Instance::Sat(s) = &instance else {
        return Err(Error::UnsupportedProblem(format!(
            "encode supports sat only, got {problem}"
        )));
    };
    let enc = SatEncoding::build(s)?;
    let dump = EncodingDump {
        num_vars: enc.n_vars,
        num_clauses: enc.m_clauses,
        n_vertices: enc.n_vertices(),
        conflict: enc.conflict.clone(),
        incidence: enc.incidence.clone(),
        adjacency: matrix_rows(&enc.adjacency()),
        clause_selector: matrix_rows(&enc.clause_selector()),
        literal_selector: matrix_rows(&enc.literal_selector()),
    };
    let text = serde_json::to_string_pretty(&dump).expect("encoding serializes");
    fs::write(&args.out, text)
        .map_err(|e| Error::InvalidInstance(format!("cannot write {}: {e}", args.out.display())))?;
    println!(
        "wrote {} ({} literal vertices, {} clause vertices)",
        args.out.display(),
        2 * enc.n_vars,
        enc.m_clauses
    );
    Ok(EXIT_OK)
}

#[derive(serde::Deserialize)]
struct BenchManifest {
    rows: Vec<BenchJob>,
}

#[derive(serde::Deserialize)]
struct BenchJob {
    problem: String,
    input: String,
    #[serde(default)]
    second: Option<String>,
    method: String,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    iterations: Option<usize>,
    #[serde(default)]
    steps: Option<usize>,
}

#[derive(Serialize)]
struct BenchRow {
    index: usize,
    problem: String,
    input: String,
    method: String,
    seed: u64,
    objective: Option<f64>,
    feasible: bool,
    wall_time_ms: u128,
    oracle_optimum: Option<f64>,
    gap: Option<f64>,
    note: Option<String>,
}

#[derive(Serialize)]
struct BenchReport {
    rows: Vec<BenchRow>,
    aggregate: BenchAggregate,
}

#[derive(Serialize)]
struct BenchAggregate {
    rows: usize,
    feasible_rows: usize,
    oracle_rows: usize,
    mean_gap: Option<f64>,
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Error> {
    let text = read_text(&args.suite)?;
    let manifest: BenchManifest = serde_json::from_str(&text)?;
    let base = args.suite.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut rows = Vec::new();
    for (index, job) in manifest.rows.iter().enumerate() {
        rows.push(bench_row(index, job, &base)?);
    }
    let feasible_rows = rows.iter().filter(|r| r.feasible).count();
    let gaps: Vec<f64> = rows.iter().filter_map(|r| r.gap).collect();
    let report = BenchReport {
        aggregate: BenchAggregate {
            rows: rows.len(),
            feasible_rows,
            oracle_rows: gaps.len(),
            mean_gap: if gaps.is_empty() {
                None
            } else {
                Some(gaps.iter().sum::<f64>() / gaps.len() as f64)
            },
        },
        rows,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));
    } else {
        for row in &report.rows {
            let oracle = match (&row.note, row.oracle_optimum) {
                (Some(note), _) => note.clone(),
                (None, Some(opt)) => format!("oracle {opt}, gap {}", row.gap.unwrap_or(0.0)),
                (None, None) => "oracle: skipped".to_string(),
            };
            println!(
                "{:>3} {:<9} {:<7} seed {:<4} objective {:<10} feasible {:<5} {}",
                row.index,
                row.problem,
                row.method,
                row.seed,
                row.objective.map_or("-".into(), |o| format!("{o}")),
                row.feasible,
                oracle
            );
        }
        let a = &report.aggregate;
        println!(
            "rows {}, feasible {}, oracle-checked {}, mean gap {}",
            a.rows,
            a.feasible_rows,
            a.oracle_rows,
            a.mean_gap.map_or("-".into(), |g| format!("{g:.4}"))
        );
    }
    Ok(EXIT_OK)
}

fn bench_row(index: usize, job: &BenchJob, base: &Path) -> Result<BenchRow, Error> {
    let resolve = |p: &str| -> PathBuf {
        let path = Path::new(p);
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            base.join(path)
        }
    };
    let input = InputArgs {
        problem: job.problem.clone(),
        input: resolve(&job.input),
        second: job.second.as_deref().map(resolve),
        lenient: false,
    };
    let (problem, instance, _) = load_instance(&input)?;
    let start = Instant::now();
    let solved: Result<Evaluation, Error> = match job.method.as_str() {
        "anneal" => {
            let mut p = AnnealParams {
                seed: job.seed,
                ..AnnealParams::default()
            };
            if let Some(x) = job.iterations {
                p.iterations = x;
            }
            anneal(problem, &instance, &p).map(|o| o.evaluation)
        }
        "relax" => {
            let mut p = RelaxParams {
                seed: job.seed,
                ..RelaxParams::default()
            };
            if let Some(x) = job.steps {
                p.steps = x;
            }
            relax_solve(problem, &instance, &p).map(|o| o.evaluation)
        }
        "exact" => run_oracle(problem, &instance, &oracle_limits(None)).map(|r| Evaluation {
            objective: r.optimum,
            violation: 0,
            feasible: r.witness.is_some() || problem != Problem::Sat,
        }),
        other => Err(Error::InvalidInstance(format!("unknown method '{other}'"))),
    };
    let wall_time_ms = start.elapsed().as_millis();
    let evaluation = solved?;
    let (oracle_optimum, gap, note) = match run_oracle(problem, &instance, &oracle_limits(None)) {
        Ok(oracle) => {
            let gap = (evaluation.objective - oracle.optimum).abs();
            (Some(oracle.optimum), Some(gap), None)
        }
        Err(Error::TooLarge { .. }) => (None, None, Some("oracle: out of range".to_string())),
        Err(e) => return Err(e),
    };
    Ok(BenchRow {
        index,
        problem: problem.name().to_string(),
        input: job.input.clone(),
        method: job.method.clone(),
        seed: job.seed,
        objective: Some(evaluation.objective),
        feasible: evaluation.feasible,
        wall_time_ms,
        oracle_optimum,
        gap,
        note,
    })
}

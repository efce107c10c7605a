//! Command-line surface: solve, verify, bench, oracle.
//!
//! Exit codes: 0 success/feasible, 1 verification failure, 2 infeasible,
//! 3 iteration limit, 64 usage error, 65 oracle size-bound refusal,
//! 66 i/o error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use poslp::graph::{Graph, MmOptions};
use poslp::model::{self, MixedInstance, ObjBound};
use poslp::oracle;
use poslp::problems::{self, ProblemKind};
use poslp::solver::{solve_feasibility, SolveStatus, SolverConfig, StepMode};
use poslp::Error as CoreError;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_ITER_LIMIT: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_SIZE_BOUND: u8 = 65;
const EXIT_IO: u8 = 66;

#[derive(Parser)]
#[command(
    name = "poslp",
    about = "Parallel (1+eps)-approximate positive LP solver",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and print a run record as JSON.
    Solve(SolveArgs),
    /// Sweep configurations and print one CSV row per run.
    Bench(BenchArgs),
    /// Check a solution vector against an instance.
    Verify(VerifyArgs),
    /// Exact desk-scale references.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemFlag {
    Match,
    Bmatch,
    Domset,
    Vcover,
    Densesub,
    Genmatch,
    Feas,
}

impl ProblemFlag {
    fn name(&self) -> &'static str {
        match self {
            ProblemFlag::Match => "match",
            ProblemFlag::Bmatch => "bmatch",
            ProblemFlag::Domset => "domset",
            ProblemFlag::Vcover => "vcover",
            ProblemFlag::Densesub => "densesub",
            ProblemFlag::Genmatch => "genmatch",
            ProblemFlag::Feas => "feas",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StepFlag {
    Standard,
    Binary,
    Newton,
}

impl StepFlag {
    fn mode(&self) -> StepMode {
        match self {
            StepFlag::Standard => StepMode::Standard,
            StepFlag::Binary => StepMode::BinarySearch,
            StepFlag::Newton => StepMode::Newton,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            StepFlag::Standard => "standard",
            StepFlag::Binary => "binary",
            StepFlag::Newton => "newton",
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: ProblemFlag,
    /// Matrix Market graph path (all problems except feas).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Instance JSON path (feas only).
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, value_enum, default_value = "newton")]
    step: StepFlag,
    #[arg(long, default_value_t = 5000)]
    max_iter: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the solution vector as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    deterministic: bool,
    /// Keep satisfied covering constraints (disable to drop them).
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    keep_satisfied: bool,
    /// Uniform per-vertex lower bound for genmatch.
    #[arg(long, default_value_t = 1)]
    lb: u32,
    /// Uniform per-vertex upper bound for genmatch.
    #[arg(long, default_value_t = 1)]
    ub: u32,
    /// JSON file {"lb": [...], "ub": [...]} with per-vertex bounds.
    #[arg(long)]
    bounds: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Problems to sweep.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "match")]
    problems: Vec<ProblemFlag>,
    /// Matrix Market graph paths.
    #[arg(long)]
    graph: Vec<PathBuf>,
    /// Generator specs: rgg:N:DEG:SEED | er:N:P:SEED | bip:NL:NR:P:SEED.
    #[arg(long = "gen")]
    gen_specs: Vec<String>,
    /// Step strategies to sweep.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "standard,binary,newton"
    )]
    steps: Vec<StepFlag>,
    /// Worker counts to sweep (0 = leave the pool as-is).
    #[arg(long, value_delimiter = ',', default_value = "0")]
    threads_list: Vec<usize>,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 5000)]
    max_iter: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Rebuild the instance from a graph problem...
    #[arg(long, value_enum)]
    problem: Option<ProblemFlag>,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// ...or load it from an instance JSON dump.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Solution JSON {"x": [...]}.
    #[arg(long)]
    solution: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Density bound (densesub only).
    #[arg(long)]
    bound: Option<f64>,
    /// Objective bound for match/bmatch/vcover/domset instances.
    #[arg(long)]
    objective_bound: Option<f64>,
    #[arg(long, default_value_t = 1)]
    lb: u32,
    #[arg(long, default_value_t = 1)]
    ub: u32,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    which: OracleCommand,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Maximum subgraph density by exhaustive search (n <= 15).
    Densest {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Vertex cover LP optimum by half-integral enumeration (n <= 14).
    VcoverLp {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Dominating set LP optimum by vertex enumeration.
    DomsetLp {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Matching LP optimum by vertex enumeration.
    MatchingLp {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Maximum bipartite matching size (reads the file as biadjacency).
    Hk {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Serialize)]
struct RunRecord {
    schema_version: u32,
    problem: String,
    graph: Option<String>,
    epsilon: f64,
    step: String,
    threads: usize,
    seed: Option<u64>,
    deterministic: bool,
    status: String,
    value: Option<f64>,
    iterations: u64,
    search_evals: u64,
    probes: u64,
    max_packing: f64,
    min_covering: f64,
    wall_s: f64,
    matvec_s: f64,
    search_s: f64,
    vec_s: f64,
}

const CSV_HEADER: &str = "problem,graph,epsilon,step,threads,seed,status,value,iterations,search_evals,probes,wall_s,matvec_s,search_s,vec_s";

impl RunRecord {
    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6}",
            self.problem,
            self.graph.as_deref().unwrap_or("-"),
            self.epsilon,
            self.step,
            self.threads,
            self.seed.map_or("-".into(), |s| s.to_string()),
            self.status,
            self.value.map_or("-".into(), |v| format!("{v}")),
            self.iterations,
            self.search_evals,
            self.probes,
            self.wall_s,
            self.matvec_s,
            self.search_s,
            self.vec_s,
        )
    }
}

fn status_name(s: SolveStatus) -> &'static str {
    match s {
        SolveStatus::Feasible => "feasible",
        SolveStatus::Infeasible => "infeasible",
        SolveStatus::IterLimit => "iter_limit",
    }
}

fn exit_for(e: &CoreError) -> u8 {
    match e {
        CoreError::Io { .. } | CoreError::MatrixMarket { .. } | CoreError::Json(_) => EXIT_IO,
        CoreError::SizeBound(_) => EXIT_SIZE_BOUND,
        _ => EXIT_USAGE,
    }
}

fn fail(e: &CoreError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_for(e))
}

fn read_graph(path: &Path, biadjacency: bool) -> Result<Arc<Graph>, CoreError> {
    let (g, report) = if biadjacency {
        Graph::read_biadjacency(path)?
    } else {
        Graph::from_matrix_market(path, MmOptions::default())?
    };
    if report.self_loops_dropped > 0 {
        eprintln!("note: dropped {} self-loop(s)", report.self_loops_dropped);
    }
    if report.duplicates_merged > 0 {
        eprintln!(
            "note: merged {} duplicate entr(ies)",
            report.duplicates_merged
        );
    }
    Ok(Arc::new(g))
}

fn genmatch_bounds(
    g: &Graph,
    lb: u32,
    ub: u32,
    bounds: Option<&Path>,
) -> Result<(Vec<f64>, Vec<f64>), CoreError> {
    if let Some(path) = bounds {
        #[derive(serde::Deserialize)]
        struct Bounds {
            lb: Vec<f64>,
            ub: Vec<f64>,
        }
        let text = std::fs::read_to_string(path).map_err(|source| CoreError::Io {
            path: path.into(),
            source,
        })?;
        let b: Bounds = serde_json::from_str(&text)?;
        Ok((b.lb, b.ub))
    } else {
        let n = g.vertex_count();
        Ok((vec![lb as f64; n], vec![ub as f64; n]))
    }
}

/// Run under a worker pool of the requested size; 0 or None keeps the
/// ambient pool (RAYON_NUM_THREADS still applies there).
fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> (usize, T) {
    match threads {
        Some(t) if t > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("worker pool");
            (t, pool.install(f))
        }
        _ => (rayon::current_num_threads(), f()),
    }
}

fn cmd_solve(args: SolveArgs) -> ExitCode {
    let cfg = SolverConfig {
        epsilon: args.epsilon,
        max_iter: args.max_iter,
        step_mode: args.step.mode(),
        keep_satisfied_constraints: args.keep_satisfied,
        deterministic: args.deterministic,
        ..Default::default()
    };

    let (threads, outcome) = with_pool(args.threads, || run_problem(&args, cfg));
    let (record, x) = match outcome {
        Ok(pair) => pair,
        Err(e) => return fail(&e),
    };

    if let Some(out) = &args.out {
        let payload = serde_json::json!({ "schema_version": 1, "x": x });
        if let Err(e) = std::fs::write(out, serde_json::to_string(&payload).unwrap()) {
            return fail(&CoreError::Io {
                path: out.clone(),
                source: e,
            });
        }
    }
    let mut record = record;
    record.threads = threads;
    println!("{}", serde_json::to_string_pretty(&record).unwrap());
    match record.status.as_str() {
        "feasible" => ExitCode::from(EXIT_OK),
        "infeasible" => ExitCode::from(EXIT_INFEASIBLE),
        _ => ExitCode::from(EXIT_ITER_LIMIT),
    }
}

fn run_problem(args: &SolveArgs, cfg: SolverConfig) -> Result<(RunRecord, Vec<f64>), CoreError> {
    let graph_name = args.graph.as_ref().map(|p| p.display().to_string());
    let base = |status: SolveStatus| RunRecord {
        schema_version: 1,
        problem: args.problem.name().into(),
        graph: graph_name.clone(),
        epsilon: cfg.epsilon,
        step: args.step.name().into(),
        threads: 0,
        seed: args.seed,
        deterministic: cfg.deterministic,
        status: status_name(status).into(),
        value: None,
        iterations: 0,
        search_evals: 0,
        probes: 0,
        max_packing: 0.0,
        min_covering: 0.0,
        wall_s: 0.0,
        matvec_s: 0.0,
        search_s: 0.0,
        vec_s: 0.0,
    };

    if args.problem == ProblemFlag::Feas {
        let path = args
            .instance
            .as_ref()
            .ok_or_else(|| CoreError::Config("--instance is required for --problem feas".into()))?;
        let inst = model::load_instance_json(path)?;
        let res = solve_feasibility(&inst, cfg)?;
        let mut rec = base(res.status);
        rec.value = res.objective;
        rec.iterations = res.iterations;
        rec.search_evals = res.search_evals;
        rec.probes = 1;
        rec.max_packing = res.max_packing;
        rec.min_covering = res.min_covering;
        rec.wall_s = res.wall;
        rec.matvec_s = res.phases.matvec;
        rec.search_s = res.phases.search;
        rec.vec_s = res.phases.vec;
        return Ok((rec, res.x));
    }

    let path = args
        .graph
        .as_ref()
        .ok_or_else(|| CoreError::Config("--graph is required".into()))?;
    let g = read_graph(path, args.problem == ProblemFlag::Bmatch)?;
    let kind = match args.problem {
        ProblemFlag::Match => ProblemKind::Match,
        ProblemFlag::Bmatch => ProblemKind::BMatch,
        ProblemFlag::Domset => ProblemKind::DomSet,
        ProblemFlag::Vcover => ProblemKind::VCover,
        ProblemFlag::Densesub => ProblemKind::DenseSub,
        ProblemFlag::Genmatch => {
            let (lb, ub) = genmatch_bounds(&g, args.lb, args.ub, args.bounds.as_deref())?;
            ProblemKind::GenMatch { lb, ub }
        }
        ProblemFlag::Feas => unreachable!(),
    };
    let out = problems::solve_problem(&kind, g, cfg)?;
    let mut rec = base(out.status);
    rec.value = out.value;
    rec.iterations = out.iterations;
    rec.search_evals = out.search_evals;
    rec.probes = out.probes;
    rec.max_packing = out.max_packing;
    rec.min_covering = out.min_covering;
    rec.wall_s = out.wall;
    rec.matvec_s = out.phases.matvec;
    rec.search_s = out.phases.search;
    rec.vec_s = out.phases.vec;
    Ok((rec, out.x))
}

fn parse_gen_spec(spec: &str, fallback_seed: u64) -> Result<(String, Arc<Graph>), CoreError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let err = |msg: &str| CoreError::Config(format!("bad --gen spec {spec:?}: {msg}"));
    match parts.as_slice() {
        ["rgg", n, deg, rest @ ..] => {
            let n: usize = n.parse().map_err(|_| err("bad vertex count"))?;
            let deg: f64 = deg.parse().map_err(|_| err("bad degree"))?;
            let seed = parse_seed(rest, fallback_seed).ok_or_else(|| err("bad seed"))?;
            let radius = (deg / (std::f64::consts::PI * n as f64)).sqrt();
            Ok((
                spec.into(),
                Arc::new(poslp::gen::random_geometric(n, radius, seed)),
            ))
        }
        ["er", n, p, rest @ ..] => {
            let n: usize = n.parse().map_err(|_| err("bad vertex count"))?;
            let p: f64 = p.parse().map_err(|_| err("bad probability"))?;
            let seed = parse_seed(rest, fallback_seed).ok_or_else(|| err("bad seed"))?;
            Ok((spec.into(), Arc::new(poslp::gen::erdos_renyi(n, p, seed))))
        }
        ["bip", nl, nr, p, rest @ ..] => {
            let nl: usize = nl.parse().map_err(|_| err("bad left count"))?;
            let nr: usize = nr.parse().map_err(|_| err("bad right count"))?;
            let p: f64 = p.parse().map_err(|_| err("bad probability"))?;
            let seed = parse_seed(rest, fallback_seed).ok_or_else(|| err("bad seed"))?;
            Ok((
                spec.into(),
                Arc::new(poslp::gen::random_bipartite(nl, nr, p, seed)),
            ))
        }
        _ => Err(err(
            "expected rgg:N:DEG[:SEED], er:N:P[:SEED] or bip:NL:NR:P[:SEED]",
        )),
    }
}

fn parse_seed(rest: &[&str], fallback: u64) -> Option<u64> {
    match rest {
        [] => Some(fallback),
        [s] => s.parse().ok(),
        _ => None,
    }
}

fn cmd_bench(args: BenchArgs) -> ExitCode {
    let mut rows = vec![CSV_HEADER.to_string()];
    let mut graphs: Vec<(String, Arc<Graph>)> = Vec::new();
    for path in &args.graph {
        match read_graph(path, false) {
            Ok(g) => graphs.push((path.display().to_string(), g)),
            Err(e) => return fail(&e),
        }
    }
    for spec in &args.gen_specs {
        match parse_gen_spec(spec, args.seed) {
            Ok(pair) => graphs.push(pair),
            Err(e) => return fail(&e),
        }
    }

    for (name, g) in &graphs {
        for problem in &args.problems {
            for step in &args.steps {
                for &threads in &args.threads_list {
                    let cfg = SolverConfig {
                        epsilon: args.epsilon,
                        max_iter: args.max_iter,
                        step_mode: step.mode(),
                        ..Default::default()
                    };
                    let kind = match problem {
                        ProblemFlag::Match => ProblemKind::Match,
                        ProblemFlag::Bmatch => ProblemKind::BMatch,
                        ProblemFlag::Domset => ProblemKind::DomSet,
                        ProblemFlag::Vcover => ProblemKind::VCover,
                        ProblemFlag::Densesub => ProblemKind::DenseSub,
                        ProblemFlag::Genmatch => ProblemKind::GenMatch {
                            lb: vec![1.0; g.vertex_count()],
                            ub: vec![1.0; g.vertex_count()],
                        },
                        ProblemFlag::Feas => continue,
                    };
                    // record per-run failures and keep sweeping
                    let (used, outcome) =
                        with_pool(if threads == 0 { None } else { Some(threads) }, || {
                            std::panic::catch_unwind(|| {
                                problems::solve_problem(&kind, g.clone(), cfg)
                            })
                        });
                    let row = match outcome {
                        Ok(Ok(out)) => RunRecord {
                            schema_version: 1,
                            problem: problem.name().into(),
                            graph: Some(name.clone()),
                            epsilon: args.epsilon,
                            step: step.name().into(),
                            threads: used,
                            seed: Some(args.seed),
                            deterministic: false,
                            status: status_name(out.status).into(),
                            value: out.value,
                            iterations: out.iterations,
                            search_evals: out.search_evals,
                            probes: out.probes,
                            max_packing: out.max_packing,
                            min_covering: out.min_covering,
                            wall_s: out.wall,
                            matvec_s: out.phases.matvec,
                            search_s: out.phases.search,
                            vec_s: out.phases.vec,
                        }
                        .csv_row(),
                        Ok(Err(e)) => format!(
                            "{},{},{},{},{},{},error:{},-,-,-,-,-,-,-,-",
                            problem.name(),
                            name,
                            args.epsilon,
                            step.name(),
                            used,
                            args.seed,
                            format!("{e}").replace(',', ";"),
                        ),
                        Err(_) => format!(
                            "{},{},{},{},{},{},panic,-,-,-,-,-,-,-,-",
                            problem.name(),
                            name,
                            args.epsilon,
                            step.name(),
                            used,
                            args.seed
                        ),
                    };
                    rows.push(row);
                }
            }
        }
    }

    let csv = rows.join("\n") + "\n";
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, csv) {
                return fail(&CoreError::Io {
                    path: path.clone(),
                    source: e,
                });
            }
        }
        None => print!("{csv}"),
    }
    ExitCode::from(EXIT_OK)
}

fn load_solution(path: &Path) -> Result<Vec<f64>, CoreError> {
    #[derive(serde::Deserialize)]
    struct Solution {
        x: Vec<f64>,
    }
    let text = std::fs::read_to_string(path).map_err(|source| CoreError::Io {
        path: path.into(),
        source,
    })?;
    let sol: Solution = serde_json::from_str(&text)?;
    Ok(sol.x)
}

/// Rebuild the instance a solution claims to satisfy. Without an
/// explicit objective bound the solution's own value is embedded, so
/// verification reduces to the real constraint rows plus the claim
/// "this x achieves its stated value".
fn verify_instance(args: &VerifyArgs, x: &[f64]) -> Result<MixedInstance, CoreError> {
    if let Some(path) = &args.instance {
        return model::load_instance_json(path);
    }
    let problem = args.problem.ok_or_else(|| {
        CoreError::Config("verify needs either --instance or --problem with --graph".into())
    })?;
    let path = args
        .graph
        .as_ref()
        .ok_or_else(|| CoreError::Config("--graph is required".into()))?;
    let g = read_graph(path, problem == ProblemFlag::Bmatch)?;
    let own_value = x.iter().sum::<f64>().max(f64::MIN_POSITIVE);
    let bound = ObjBound::new(args.objective_bound.unwrap_or(own_value))?;
    match problem {
        ProblemFlag::Match | ProblemFlag::Bmatch => {
            let inst = if problem == ProblemFlag::Match {
                problems::build_matching(g)?
            } else {
                problems::build_bipartite_matching(g)?
            };
            MixedInstance::embed_packing(inst.packing().clone(), bound)
        }
        ProblemFlag::Vcover | ProblemFlag::Domset => {
            let inst = if problem == ProblemFlag::Vcover {
                problems::build_vertex_cover(g)?
            } else {
                problems::build_dominating_set(g)?
            };
            MixedInstance::embed_covering(inst.covering().clone(), bound)
        }
        ProblemFlag::Densesub => {
            let bound = args
                .bound
                .ok_or_else(|| CoreError::Config("densesub verification needs --bound D".into()))?;
            problems::build_densest_feasibility(g, bound)
        }
        ProblemFlag::Genmatch => {
            let (lb, ub) = genmatch_bounds(&g, args.lb, args.ub, None)?;
            problems::build_generalized_matching(g, &lb, &ub)
        }
        ProblemFlag::Feas => Err(CoreError::Config("use --instance for feas".into())),
    }
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let x = match load_solution(&args.solution) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let inst = match verify_instance(&args, &x) {
        Ok(inst) => inst,
        Err(e) => return fail(&e),
    };
    match oracle::verify_solution(&inst, &x, args.epsilon) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if report.pass {
                ExitCode::from(EXIT_OK)
            } else {
                ExitCode::from(EXIT_VERIFY_FAIL)
            }
        }
        Err(e) => fail(&e),
    }
}

fn cmd_oracle(args: OracleArgs) -> ExitCode {
    let run = || -> Result<f64, CoreError> {
        match &args.which {
            OracleCommand::Densest { graph } => {
                let g = read_graph(graph, false)?;
                oracle::brute_densest(&g)
            }
            OracleCommand::VcoverLp { graph } => {
                let g = read_graph(graph, false)?;
                oracle::half_integral_vcover(&g)
            }
            OracleCommand::DomsetLp { graph } => {
                let g = read_graph(graph, false)?;
                oracle::lp_vertex_enumeration(&oracle::domset_lp(&g))
            }
            OracleCommand::MatchingLp { graph } => {
                let g = read_graph(graph, false)?;
                oracle::lp_vertex_enumeration(&oracle::matching_lp(&g))
            }
            OracleCommand::Hk { graph } => {
                let g = read_graph(graph, true)?;
                oracle::hopcroft_karp(&g).map(|v| v as f64)
            }
        }
    };
    match run() {
        Ok(value) => {
            println!("{value:?}");
            ExitCode::from(EXIT_OK)
        }
        Err(e) => fail(&e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version output is not a usage error
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::from(EXIT_OK);
        }
    };
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

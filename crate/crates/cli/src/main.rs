//! Command-line front end: instance I/O, solver dispatch, verification,
//! generation and benchmarking.
//!
//! Exit codes: 0 solution found / checks passed, 1 usage or parse error,
//! 2 infeasible verdict / failed checks, 3 resource limit hit.

mod record;

use clap::{Parser, Subcommand, ValueEnum};
use conncover_core::encode::{self, SetSystem};
use conncover_core::format::{
    parse_instance, to_canonical_string, GraphFile, Metadata, SetSystemFile,
};
use conncover_core::generate::{Family, GenParams};
use conncover_core::oracle::{
    brute_force_best_coverage, brute_force_decide, brute_force_min_size, OracleLimits,
};
use conncover_core::{
    epas_solve, exact_solve_by_t, pas_outer, Epsilon, Instance, Outcome, SearchMode, SolverConfig,
    SolverError,
};
use record::{RunRecord, Verdict, CSV_HEADER};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "conncover",
    version,
    about = "Solvers for connectivity-constrained partial coverage on red-blue graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    #[value(name = "exact-t")]
    ExactT,
    Epas,
    Pas,
    Brute,
}

impl std::fmt::Display for Algo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algo::ExactT => write!(f, "exact-t"),
            Algo::Epas => write!(f, "epas"),
            Algo::Pas => write!(f, "pas"),
            Algo::Brute => write!(f, "brute"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Randomized,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Maxcov,
    Pds,
    Bcds,
    Pvc,
    Phs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EncMode {
    Clique,
    Star,
    Gadget,
    Custom,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file with the chosen algorithm.
    Solve {
        file: PathBuf,
        #[arg(long)]
        algo: Algo,
        /// Exact rational accuracy, e.g. 1/2 (required for epas and pas).
        #[arg(long)]
        epsilon: Option<String>,
        /// Biclique-freeness parameter (required for epas and pas).
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial count override for randomized stages.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Randomized)]
        mode: Mode,
        /// Comma-separated red indices that must be in the solution,
        /// overriding the file's terminal set.
        #[arg(long)]
        terminals: Option<String>,
    },
    /// Verify a candidate solution or check biclique-freeness.
    Check {
        file: PathBuf,
        /// Comma-separated red indices.
        #[arg(long)]
        solution: Option<String>,
        /// Coverage target the solution must meet (defaults to the file's t).
        #[arg(long)]
        target: Option<usize>,
        /// Check K_{d,d}-freeness for this d instead.
        #[arg(long)]
        kdd: Option<usize>,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        nr: usize,
        #[arg(long)]
        nb: usize,
        #[arg(long, default_value_t = 4)]
        max_red_degree: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        t: Option<usize>,
        /// Resample until the coverage graph is K_{d,d}-free for this d.
        #[arg(long)]
        d_free: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a classical problem instance into the red-blue model.
    Encode {
        /// Source file: a graph file for pds/bcds/pvc, a set-system file
        /// for maxcov/phs.
        source: PathBuf,
        #[arg(long)]
        from: Source,
        #[arg(long, value_enum, default_value_t = EncMode::Clique)]
        conn_mode: EncMode,
        /// Connectivity graph file for maxcov with --conn-mode custom.
        #[arg(long)]
        conn_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a corpus of instance files against a list of algorithms.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        /// Comma-separated list, e.g. brute,exact-t,epas.
        #[arg(long)]
        algos: String,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Randomized)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; the CSV row order never depends on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the error too
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let code = match cli.command {
        Command::Solve {
            file,
            algo,
            epsilon,
            d,
            seed,
            trials,
            mode,
            terminals,
        } => cmd_solve(&file, algo, epsilon, d, seed, trials, mode, terminals),
        Command::Check {
            file,
            solution,
            target,
            kdd,
        } => cmd_check(&file, solution, target, kdd),
        Command::Gen {
            family,
            nr,
            nb,
            max_red_degree,
            k,
            t,
            d_free,
            seed,
            out,
        } => cmd_gen(&family, nr, nb, max_red_degree, k, t, d_free, seed, out),
        Command::Encode {
            source,
            from,
            conn_mode,
            conn_file,
            k,
            t,
            out,
        } => cmd_encode(&source, from, conn_mode, conn_file, k, t, out),
        Command::Bench {
            corpus,
            algos,
            epsilon,
            d,
            seed,
            trials,
            mode,
            out,
            jobs,
        } => cmd_bench(&corpus, &algos, epsilon, d, seed, trials, mode, out, jobs),
    };
    ExitCode::from(code)
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn error_code(e: &SolverError) -> u8 {
    match e {
        SolverError::ResourceLimit(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn read_instance(path: &Path) -> Result<(Instance, Option<Metadata>), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_vertex_list(s: &str) -> Result<Vec<usize>, String> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{tok}` is not a vertex index"))
        })
        .collect()
}

struct AlgoParams {
    epsilon: Option<Epsilon>,
    d: Option<usize>,
    seed: u64,
    trials: Option<u64>,
    mode: Mode,
}

impl AlgoParams {
    fn config(&self) -> SolverConfig {
        match self.mode {
            Mode::Exhaustive => SolverConfig::completeness(),
            Mode::Randomized => {
                let mut config = SolverConfig::randomized(self.seed);
                if self.trials.is_some() {
                    let m = SearchMode::Randomized {
                        trials: self.trials,
                        seed: self.seed,
                    };
                    config.exact_mode = m;
                    config.coloring_mode = m;
                    config.tree_mode = m;
                }
                config
            }
        }
    }

    fn require_approx(&self, algo: Algo) -> Result<(Epsilon, usize), String> {
        match (self.epsilon, self.d) {
            (Some(e), Some(d)) => Ok((e, d)),
            _ => Err(format!("--algo {algo} requires --epsilon and --d")),
        }
    }
}

fn run_algo(inst: &Instance, algo: Algo, params: &AlgoParams) -> Result<Outcome, SolverError> {
    let config = params.config();
    match algo {
        Algo::Brute => brute_force_decide(inst, &OracleLimits::default()),
        Algo::ExactT => exact_solve_by_t(inst, config.exact_mode, &config.limits),
        Algo::Epas => {
            let (eps, d) = params
                .require_approx(algo)
                .map_err(SolverError::InvalidParameter)?;
            epas_solve(inst, eps, d, &config)
        }
        Algo::Pas => {
            let (eps, d) = params
                .require_approx(algo)
                .map_err(SolverError::InvalidParameter)?;
            pas_outer(inst, eps, d, &config)
        }
    }
}

/// The trials column is only meaningful for randomized runs of the
/// randomized algorithms.
fn trials_column(algo: Algo, mode: Mode, trials: Option<u64>) -> Option<String> {
    match (algo, mode) {
        (Algo::Brute, _) | (_, Mode::Exhaustive) => None,
        (_, Mode::Randomized) => Some(trials.map_or_else(|| "auto".to_string(), |n| n.to_string())),
    }
}

/// The verification gate every printed solution passes: size, terminals and
/// connectivity always; coverage against `t`, relaxed to `(1-ε)t` for the
/// coverage-approximation algorithm.
fn solution_gate(inst: &Instance, algo: Algo, eps: Option<Epsilon>, coverage: usize) -> bool {
    match (algo, eps) {
        (Algo::Epas, Some(e)) => e.coverage_acceptable(coverage, inst.t),
        _ => coverage >= inst.t,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    file: &Path,
    algo: Algo,
    epsilon: Option<String>,
    d: Option<usize>,
    seed: u64,
    trials: Option<u64>,
    mode: Mode,
    terminals: Option<String>,
) -> u8 {
    let (mut inst, _meta) = match read_instance(file) {
        Ok(x) => x,
        Err(e) => return usage_error(&e),
    };
    if let Some(spec) = terminals {
        let list = match parse_vertex_list(&spec) {
            Ok(l) => l,
            Err(e) => return usage_error(&e),
        };
        match Instance::new(inst.conn.clone(), inst.cov.clone(), inst.k, inst.t, list) {
            Ok(updated) => inst = updated,
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    let epsilon = match epsilon.map(|e| e.parse::<Epsilon>()).transpose() {
        Ok(e) => e,
        Err(e) => return usage_error(&e.to_string()),
    };
    let params = AlgoParams {
        epsilon,
        d,
        seed,
        trials,
        mode,
    };
    if matches!(algo, Algo::Epas | Algo::Pas) {
        if let Err(e) = params.require_approx(algo) {
            return usage_error(&e);
        }
    }

    let started = Instant::now();
    let outcome = match run_algo(&inst, algo, &params) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let wall_time_ms = started.elapsed().as_millis();

    let trials_field = trials_column(algo, mode, trials);
    println!("algo: {algo}");
    match outcome {
        Outcome::Feasible(sol) => {
            let report = inst.verify(&sol.vertices, inst.t);
            let coverage_ok = solution_gate(&inst, algo, epsilon, report.coverage);
            if !(report.size_ok && report.terminals_ok && report.connected && coverage_ok) {
                eprintln!("error: solver returned a set that failed re-verification: {report:?}");
                return EXIT_USAGE;
            }
            let record = RunRecord {
                algo: algo.to_string(),
                epsilon: epsilon.map(|e| e.to_string()),
                d,
                seed,
                trials: trials_field,
                verdict: Verdict::Solution,
                vertices: sol.vertices.clone(),
                size: Some(sol.size()),
                coverage: Some(report.coverage),
                wall_time_ms,
            };
            println!("verdict: solution");
            println!(
                "vertices: {}",
                record
                    .vertices
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            println!("size: {}", sol.size());
            println!("coverage: {}", report.coverage);
            println!(
                "checks: size_ok={} terminals_ok={} connected={} coverage_ok={}",
                report.size_ok, report.terminals_ok, report.connected, coverage_ok
            );
            println!("record: {}", record.base_fields());
            EXIT_OK
        }
        Outcome::Infeasible(reason) => {
            let record = RunRecord {
                algo: algo.to_string(),
                epsilon: epsilon.map(|e| e.to_string()),
                d,
                seed,
                trials: trials_field,
                verdict: Verdict::Infeasible,
                vertices: vec![],
                size: None,
                coverage: None,
                wall_time_ms,
            };
            println!("verdict: infeasible");
            println!("reason: {reason}");
            println!("record: {}", record.base_fields());
            EXIT_INFEASIBLE
        }
    }
}

fn cmd_check(
    file: &Path,
    solution: Option<String>,
    target: Option<usize>,
    kdd: Option<usize>,
) -> u8 {
    let (inst, _meta) = match read_instance(file) {
        Ok(x) => x,
        Err(e) => return usage_error(&e),
    };
    if let Some(d) = kdd {
        if d == 0 {
            return usage_error("--kdd needs d >= 1");
        }
        match inst.cov.is_kdd_free(d, 2_000_000) {
            Ok(free) => {
                println!("kdd_free: {free} (d={d})");
                return if free { EXIT_OK } else { EXIT_INFEASIBLE };
            }
            Err(e) => {
                eprintln!("error: {e}");
                return error_code(&e);
            }
        }
    }
    let Some(solution) = solution else {
        return usage_error("check needs --solution or --kdd");
    };
    let set = match parse_vertex_list(&solution) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    if set.iter().any(|&v| v >= inst.red_count()) {
        return usage_error("solution vertex out of range");
    }
    let target = target.unwrap_or(inst.t);
    let report = inst.verify(&set, target);
    println!(
        "size_ok: {}\nterminals_ok: {}\nconnected: {}\ncoverage: {}\nmeets_target: {} (target {})",
        report.size_ok,
        report.terminals_ok,
        report.connected,
        report.coverage,
        report.meets_target,
        target
    );
    if report.all_ok() {
        println!("result: pass");
        EXIT_OK
    } else {
        println!("result: fail");
        EXIT_INFEASIBLE
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    family: &str,
    nr: usize,
    nb: usize,
    max_red_degree: usize,
    k: usize,
    t: Option<usize>,
    d_free: Option<usize>,
    seed: u64,
    out: Option<PathBuf>,
) -> u8 {
    let family: Family = match family.parse() {
        Ok(f) => f,
        Err(e) => return usage_error(&e.to_string()),
    };
    let params = GenParams {
        family,
        red_count: nr,
        blue_count: nb,
        max_red_degree,
        k,
        t,
        d_free,
        seed,
    };
    let inst = match conncover_core::generate::generate(&params) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let meta = Metadata {
        name: None,
        d_hint: d_free,
        seed: Some(seed),
    };
    emit(&to_canonical_string(&inst, Some(meta)), out)
}

fn cmd_encode(
    source: &Path,
    from: Source,
    conn_mode: EncMode,
    conn_file: Option<PathBuf>,
    k: usize,
    t: usize,
    out: Option<PathBuf>,
) -> u8 {
    let text = match std::fs::read_to_string(source) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", source.display())),
    };
    let mode = match conn_mode {
        EncMode::Clique => encode::ConnMode::Clique,
        EncMode::Star => encode::ConnMode::Star,
        EncMode::Gadget => encode::ConnMode::Gadget,
        EncMode::Custom => {
            let Some(path) = conn_file else {
                return usage_error("--conn-mode custom needs --conn-file");
            };
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return usage_error(&format!("cannot read {}: {e}", path.display())),
            };
            let gf: GraphFile = match serde_json::from_str(&text) {
                Ok(g) => g,
                Err(e) => return usage_error(&format!("{}: {e}", path.display())),
            };
            match gf.into_graph() {
                Ok(g) => encode::ConnMode::Custom(g),
                Err(e) => return usage_error(&e.to_string()),
            }
        }
    };
    let encoded = match from {
        Source::Maxcov | Source::Phs => {
            let ssf: SetSystemFile = match serde_json::from_str(&text) {
                Ok(s) => s,
                Err(e) => return usage_error(&format!("{}: {e}", source.display())),
            };
            let ss: SetSystem = match ssf.into_set_system() {
                Ok(s) => s,
                Err(e) => return usage_error(&e.to_string()),
            };
            match from {
                Source::Maxcov => encode::from_max_coverage(&ss, k, t, mode),
                _ => encode::from_partial_hitting_set(&ss, k, t),
            }
        }
        Source::Pds | Source::Bcds | Source::Pvc => {
            let gf: GraphFile = match serde_json::from_str(&text) {
                Ok(g) => g,
                Err(e) => return usage_error(&format!("{}: {e}", source.display())),
            };
            let g = match gf.into_graph() {
                Ok(g) => g,
                Err(e) => return usage_error(&e.to_string()),
            };
            match from {
                Source::Pds => encode::from_partial_dominating_set(&g, k, t, mode),
                Source::Bcds => encode::from_budgeted_cds(&g, k, t),
                _ => encode::from_partial_vertex_cover(&g, k, t, mode),
            }
        }
    };
    match encoded {
        Ok(inst) => emit(&to_canonical_string(&inst, None), out),
        Err(e) => usage_error(&e.to_string()),
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> u8 {
    match out {
        Some(path) => match std::fs::write(&path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => usage_error(&format!("cannot write {}: {e}", path.display())),
        },
        None => {
            print!("{text}");
            EXIT_OK
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    corpus: &Path,
    algos: &str,
    epsilon: Option<String>,
    d: Option<usize>,
    seed: u64,
    trials: Option<u64>,
    mode: Mode,
    out: Option<PathBuf>,
    jobs: usize,
) -> u8 {
    let epsilon = match epsilon.map(|e| e.parse::<Epsilon>()).transpose() {
        Ok(e) => e,
        Err(e) => return usage_error(&e.to_string()),
    };
    let algos: Vec<Algo> = match algos
        .split(',')
        .map(|a| Algo::from_str(a.trim(), true))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(a) if !a.is_empty() => a,
        _ => return usage_error("--algos needs a comma-separated list of algorithms"),
    };
    if algos.iter().any(|a| matches!(a, Algo::Epas | Algo::Pas))
        && (epsilon.is_none() || d.is_none())
    {
        return usage_error("benchmarking epas or pas requires --epsilon and --d");
    }
    let mut files: Vec<PathBuf> = match std::fs::read_dir(corpus) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => return usage_error(&format!("cannot read {}: {e}", corpus.display())),
    };
    files.sort();
    if files.is_empty() {
        return usage_error("corpus contains no .json instance files");
    }

    // one cell per (file, algo), row order fixed regardless of job count
    let cells: Vec<(usize, &PathBuf, Algo)> = files
        .iter()
        .flat_map(|f| algos.iter().map(move |&a| (f, a)))
        .enumerate()
        .map(|(i, (f, a))| (i, f, a))
        .collect();
    let rows: Vec<std::sync::Mutex<Option<String>>> =
        cells.iter().map(|_| std::sync::Mutex::new(None)).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let (_, file, algo) = cells[i];
                let trials_field = trials_column(algo, mode, trials);
                let row = bench_cell(file, algo, epsilon, d, seed, trials, mode, &trials_field);
                *rows[i].lock().unwrap() = Some(row);
            });
        }
    });

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(row.lock().unwrap().as_ref().expect("all cells ran"));
        csv.push('\n');
    }
    emit(&csv, out)
}

#[allow(clippy::too_many_arguments)]
fn bench_cell(
    file: &Path,
    algo: Algo,
    epsilon: Option<Epsilon>,
    d: Option<usize>,
    seed: u64,
    trials: Option<u64>,
    mode: Mode,
    trials_field: &Option<String>,
) -> String {
    let algo_name = algo.to_string();
    let base_record = |verdict: Verdict, size, coverage, ms| RunRecord {
        algo: algo_name.clone(),
        epsilon: epsilon.map(|e| e.to_string()),
        d,
        seed,
        trials: trials_field.clone(),
        verdict,
        vertices: vec![],
        size,
        coverage,
        wall_time_ms: ms,
    };
    let Ok((inst, _)) = read_instance(file) else {
        return base_record(Verdict::ResourceError, None, None, 0).csv_row(None, None);
    };
    let params = AlgoParams {
        epsilon,
        d,
        seed,
        trials,
        mode,
    };
    let started = Instant::now();
    let outcome = run_algo(&inst, algo, &params);
    let ms = started.elapsed().as_millis();

    // oracle columns, where the instance fits the oracle limits
    let limits = OracleLimits::default();
    let opt_coverage = brute_force_best_coverage(&inst, inst.k, &limits)
        .ok()
        .map(|(c, _)| c);
    let opt_size = brute_force_min_size(&inst, inst.t, &limits)
        .ok()
        .flatten()
        .map(|(s, _)| s);

    match outcome {
        Ok(Outcome::Feasible(sol)) => {
            base_record(Verdict::Solution, Some(sol.size()), Some(sol.coverage), ms)
                .csv_row(opt_coverage, opt_size)
        }
        Ok(Outcome::Infeasible(_)) => {
            base_record(Verdict::Infeasible, None, None, ms).csv_row(opt_coverage, opt_size)
        }
        Err(_) => {
            base_record(Verdict::ResourceError, None, None, ms).csv_row(opt_coverage, opt_size)
        }
    }
}

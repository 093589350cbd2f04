//! Command-line front end: generate instances, compute decompositions, run
//! the bounded-width construction, solve small instances exactly, verify
//! certificates, audit bound formulas, and run experiment sweeps.
//!
//! Exit codes: 0 success, 1 asserted-invariant violation, 2 input error,
//! 3 capacity or budget exhaustion with partial output.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tpw::bounds::{audit, AuditBudget, CSV_HEADER};
use tpw::construct::{construct_with_report, lemma3_width_bound};
use tpw::decomp::{
    clique_tree_from_peo, parse_td, treewidth_exact, treewidth_heuristic,
    verify_tree_decomposition, write_td, TreeDecomposition,
};
use tpw::error::Error;
use tpw::experiment::{run_experiment, suite_by_name, ExperimentPlan, NODES_PER_MS};
use tpw::generators::{gen_by_name, parse_instance, write_instance};
use tpw::graph::{to_dot, Chordality, Graph};
use tpw::partition::{
    exact_tpw, parse_tp, verify_tree_partition, write_tp, TpVerification, TpwOptions, TpwOutcome,
};

#[derive(Parser)]
#[command(
    name = "tpw",
    about = "Tree-partition-width toolkit: generators, constructions, oracles, and bound audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance family and write it as graph text or DOT
    Gen(GenArgs),
    /// Compute a tree decomposition of a graph
    Tdecomp(TdecompArgs),
    /// Build a tree-partition with the bounded-width recursive construction
    Construct(ConstructArgs),
    /// Exact tree-partition-width by iterative-deepening search
    Exact(ExactArgs),
    /// Verify a decomposition or tree-partition against a graph
    Verify(VerifyArgs),
    /// Audit all width bounds on one instance and print a CSV report
    Audit(AuditArgs),
    /// Run a full experiment plan and write one CSV row per instance
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    Text,
    Dot,
}

#[derive(Args)]
struct GenArgs {
    /// Family: path, cycle, clique, wheel, random_ktree, grid_h,
    /// lower_general, lower_tw2
    family: String,
    /// Vertex-count-like parameter (rim size for wheel)
    #[arg(long)]
    n: Option<i64>,
    /// Clique/width parameter for grid_h, random_ktree, lower_general
    #[arg(long)]
    k: Option<i64>,
    /// Degree parameter for lower_general and lower_tw2
    #[arg(long)]
    delta: Option<i64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = GenFormat::Text)]
    format: GenFormat,
    /// Output path; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TdMethod {
    /// Exact when chordal or small, heuristic otherwise
    Auto,
    Exact,
    Heuristic,
}

#[derive(Args)]
struct TdecompArgs {
    /// Graph file in `p tpw` text format
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = TdMethod::Auto)]
    method: TdMethod,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(short, long)]
    graph: PathBuf,
    /// Tree decomposition file; computed automatically when omitted
    #[arg(short = 'd', long)]
    decomposition: Option<PathBuf>,
    /// Degree bound; defaults to the graph's maximum degree
    #[arg(long)]
    delta: Option<usize>,
    /// Emit a JSON-lines recursion trace on stderr
    #[arg(long)]
    trace: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(short, long)]
    graph: PathBuf,
    /// Complete-search size cap
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    /// Budget in milliseconds, converted to a deterministic node count
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Restrict to connected bags (sound for chordal graphs)
    #[arg(long)]
    chordal_pruning: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    graph: PathBuf,
    /// Tree decomposition to verify
    #[arg(short = 'd', long)]
    decomposition: Option<PathBuf>,
    /// Tree-partition to verify
    #[arg(short = 'p', long)]
    partition: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    /// Instance file (graph text, `c meta` comments carry the claims)
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 20)]
    budget_ms: u64,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Plan file (JSON: instances, budget_ms, max_n)
    #[arg(long, conflicts_with = "suite")]
    plan: Option<PathBuf>,
    /// Built-in suite name (lemma3)
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    budget_ms: Option<u64>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Tdecomp(args) => cmd_tdecomp(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Experiment(args) => cmd_experiment(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Input(_) | Error::Parse { .. } | Error::Io(_) => 2u8,
                Error::Capacity(_) => 3u8,
                Error::Contract(_) => 1u8,
            })
        }
    }
}

const EXIT_OK: ExitCode = ExitCode::SUCCESS;
const EXIT_VIOLATION: ExitCode = ExitCode::FAILURE;

fn exit_partial() -> ExitCode {
    ExitCode::from(3u8)
}

fn emit(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(Error::from),
        None => {
            print!("{content}");
            std::io::stdout().flush().map_err(Error::from)
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path)?;
    let (g, _) = tpw::graph::parse_graph(&text)?;
    Ok(g)
}

fn auto_decomposition(g: &Graph) -> Result<TreeDecomposition, Error> {
    match g.chordality() {
        Chordality::Chordal { peo } => clique_tree_from_peo(g, &peo),
        Chordality::NotChordal { .. } if g.vertex_count() <= tpw::decomp::EXACT_TW_MAX_N => {
            treewidth_exact(g).map(|(_, td)| td)
        }
        Chordality::NotChordal { .. } => Ok(treewidth_heuristic(g)),
    }
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, Error> {
    let mut params: BTreeMap<String, i64> = BTreeMap::new();
    if let Some(n) = args.n {
        params.insert("n".into(), n);
    }
    if let Some(k) = args.k {
        params.insert("k".into(), k);
    }
    if let Some(d) = args.delta {
        params.insert("delta".into(), d);
    }
    let (g, meta) = gen_by_name(&args.family, &params, args.seed)?;
    let content = match args.format {
        GenFormat::Text => write_instance(&g, &meta),
        GenFormat::Dot => to_dot(&g, Some(&meta.vertex_labels)),
    };
    emit(&args.output, &content)?;
    Ok(EXIT_OK)
}

fn cmd_tdecomp(args: TdecompArgs) -> Result<ExitCode, Error> {
    let g = load_graph(&args.graph)?;
    let td = match args.method {
        TdMethod::Auto => auto_decomposition(&g)?,
        TdMethod::Exact => treewidth_exact(&g).map(|(_, td)| td)?,
        TdMethod::Heuristic => treewidth_heuristic(&g),
    };
    emit(&args.output, &write_td(&td, g.vertex_count()))?;
    eprintln!("width {}", td.width());
    Ok(EXIT_OK)
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode, Error> {
    let g = load_graph(&args.graph)?;
    let td = match &args.decomposition {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let (td, n) = parse_td(&text)?;
            if n != g.vertex_count() {
                return Err(Error::input(format!(
                    "decomposition declares {n} vertices, graph has {}",
                    g.vertex_count()
                )));
            }
            td
        }
        None => auto_decomposition(&g)?,
    };
    let delta = args.delta.unwrap_or_else(|| g.max_degree());
    let report = construct_with_report(&g, &td, delta, args.trace)?;
    if args.trace {
        let mut err = std::io::stderr().lock();
        for event in &report.trace {
            let line = serde_json::to_string(event)
                .map_err(|e| Error::contract(format!("trace serialization: {e}")))?;
            writeln!(err, "{line}")?;
        }
    }
    emit(&args.output, &write_tp(&report.partition))?;
    let bound = lemma3_width_bound(td.width(), delta);
    eprintln!(
        "width {} (guarantee {} ~ {:.2})",
        report.partition.width(),
        bound,
        bound.to_f64()
    );
    Ok(EXIT_OK)
}

fn cmd_exact(args: ExactArgs) -> Result<ExitCode, Error> {
    let g = load_graph(&args.graph)?;
    let opts = TpwOptions {
        max_n: args.max_n,
        node_budget: args.budget_ms.map(|ms| ms.saturating_mul(NODES_PER_MS)),
        chordal_pruning: args.chordal_pruning,
    };
    match exact_tpw(&g, &opts)? {
        TpwOutcome::Exact { width, partition } => {
            emit(&args.output, &write_tp(&partition))?;
            eprintln!("exact width {width}");
            Ok(EXIT_OK)
        }
        TpwOutcome::LowerBound {
            certified,
            best,
            nodes_used,
        } => {
            emit(&args.output, &write_tp(&best))?;
            eprintln!(
                "budget exhausted after {nodes_used} nodes: width >= {certified}, best witness {}",
                best.width()
            );
            Ok(exit_partial())
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let g = load_graph(&args.graph)?;
    match (&args.decomposition, &args.partition) {
        (Some(td_path), None) => {
            let text = std::fs::read_to_string(td_path)?;
            let (td, n) = parse_td(&text)?;
            if n != g.vertex_count() {
                println!(
                    "violation: decomposition declares {n} vertices, graph has {}",
                    g.vertex_count()
                );
                return Ok(EXIT_VIOLATION);
            }
            match verify_tree_decomposition(&g, &td) {
                Ok(width) => {
                    println!("ok: tree decomposition of width {width}");
                    Ok(EXIT_OK)
                }
                Err(v) => {
                    println!("violation: {v}");
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        (None, Some(tp_path)) => {
            let text = std::fs::read_to_string(tp_path)?;
            let tp = parse_tp(&text)?;
            match verify_tree_partition(&g, &tp) {
                TpVerification::Valid { width } => {
                    println!("ok: tree-partition of width {width}");
                    Ok(EXIT_OK)
                }
                TpVerification::NotPartition { reason } => {
                    println!("violation: not a partition: {reason}");
                    Ok(EXIT_VIOLATION)
                }
                TpVerification::QuotientCycle { cycle } => {
                    println!(
                        "violation: quotient cycle through bags {}",
                        cycle
                            .iter()
                            .map(|b| (b + 1).to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        _ => Err(Error::input(
            "verify needs exactly one of --decomposition or --partition",
        )),
    }
}

fn cmd_audit(args: AuditArgs) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(&args.graph)?;
    let (g, meta) = parse_instance(&text)?;
    let budget = AuditBudget {
        exact_nodes: args.budget_ms.saturating_mul(NODES_PER_MS),
        exact_max_n: args.max_n,
    };
    let report = audit(&g, &meta, &budget);
    let mut content = String::from(CSV_HEADER);
    content.push('\n');
    content.push_str(&report.csv_row());
    content.push('\n');
    emit(&args.output, &content)?;
    if report.violations.is_empty() {
        Ok(EXIT_OK)
    } else {
        for v in &report.violations {
            eprintln!("violation: {v}");
        }
        Ok(EXIT_VIOLATION)
    }
}

fn cmd_experiment(args: ExperimentArgs) -> Result<ExitCode, Error> {
    let mut plan: ExperimentPlan = match (&args.plan, &args.suite) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            ExperimentPlan::from_json(&text)?
        }
        (None, Some(name)) => suite_by_name(name)?,
        (None, None) => suite_by_name("lemma3")?,
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    if let Some(ms) = args.budget_ms {
        plan.budget_ms = ms;
    }
    if let Some(n) = args.max_n {
        plan.max_n = Some(n);
    }
    let outcome = run_experiment(&plan)?;
    emit(&args.output, &outcome.csv)?;
    if outcome.violations.is_empty() {
        Ok(EXIT_OK)
    } else {
        for v in &outcome.violations {
            eprintln!("violation: {v}");
        }
        Ok(EXIT_VIOLATION)
    }
}

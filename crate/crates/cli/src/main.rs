//! `longpath`: command-line front end for the streaming longest-path
//! toolkit.
//!
//! Subcommands: `gen` (seeded graphs and planted instances), `stream` (order
//! a graph file into an event stream), `run` (the one-pass sample-and-extract
//! pipeline), `exact` (the exponential-time oracle), `verify` (structural
//! checks), and `experiment` (named seeded experiment suites).  `--seed`
//! flags default to the `LONGPATH_SEED` environment variable, then to 0.
//!
//! Exit codes: 0 on success (including an experiment that passes its
//! threshold), 1 for an experiment that completes but fails its threshold,
//! 2 for usage and operational errors.

mod gen;
mod meta;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use longpath_core::graph::Graph;
use longpath_core::path::{SamplerChoice, DEFAULT_NODE_BUDGET, SKETCH_DELTA};
use longpath_core::stream::OrderPolicy;
use longpath_core::{
    emit_report, emit_report_file, exact_longest_path, hybrid_run, run_experiment,
    run_semi_streaming_with_sampler, EventStream, ExperimentConfig, ExtractMode, ReportFormat,
};

#[derive(Parser)]
#[command(
    name = "longpath",
    version,
    about = "One-pass streaming longest-path toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded graph or planted instance directory.
    Gen {
        #[command(subcommand)]
        kind: gen::GenKind,
    },
    /// Order a graph file into an edge event stream.
    Stream(StreamArgs),
    /// One pass over a stream: sample, extract a path, validate it.
    Run(RunArgs),
    /// Exact longest path of a graph file.
    Exact(ExactArgs),
    /// Check decompositions, paths, and generated instances.
    Verify {
        #[command(subcommand)]
        kind: verify::VerifyKind,
    },
    /// Run a named seeded experiment and report per-trial results.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct StreamArgs {
    /// Input graph file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Event order: the file's edge order, or a seeded shuffle.
    #[arg(long, value_enum, default_value_t = OrderArg::Natural)]
    order: OrderArg,
    #[arg(long, env = "LONGPATH_SEED", default_value_t = 0)]
    seed: u64,
    /// Output stream file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Natural,
    Random,
}

#[derive(Args)]
struct RunArgs {
    /// Input stream file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Path extraction mode.
    #[arg(long, default_value = "core-verify", value_parser = parse_mode)]
    mode: ExtractMode,
    /// Sampler: auto picks by stream model (reservoir, l0 force one).
    #[arg(long, default_value = "auto", value_parser = parse_sampler)]
    sampler: SamplerChoice,
    /// Sample size: `auto` for ceil(10 n ln n), or an explicit edge count.
    #[arg(long, default_value = "auto", value_parser = parse_k)]
    k: KArg,
    /// Sketch failure probability per support query.
    #[arg(long, default_value_t = SKETCH_DELTA)]
    delta: f64,
    /// Expected full graph; the replayed stream must rebuild it exactly.
    #[arg(long)]
    oracle: Option<PathBuf>,
    #[arg(long, env = "LONGPATH_SEED", default_value_t = 0)]
    seed: u64,
    /// Search-node budget for exact extraction.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Keep every distinct edge up to this count and solve exactly, falling
    /// back to the sampled pipeline when the stream exceeds it.
    #[arg(long, conflicts_with_all = ["sampler", "k", "delta"])]
    hybrid_space: Option<usize>,
    /// Write the key=value report here (it is always printed to stdout).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the extracted path file here.
    #[arg(long)]
    path_out: Option<PathBuf>,
    /// Write the retained edge sample as an edge-list file here.
    #[arg(long)]
    sample_out: Option<PathBuf>,
}

/// `auto` or an explicit sample size.
#[derive(Clone, Copy)]
struct KArg(Option<usize>);

fn parse_k(s: &str) -> Result<KArg, String> {
    if s == "auto" {
        return Ok(KArg(None));
    }
    s.parse()
        .map(|v| KArg(Some(v)))
        .map_err(|_| format!("expected `auto` or an edge count, got {s:?}"))
}

fn parse_mode(s: &str) -> Result<ExtractMode, String> {
    s.parse()
}

fn parse_sampler(s: &str) -> Result<SamplerChoice, String> {
    s.parse()
}

#[derive(Args)]
struct ExactArgs {
    /// Input graph file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Search-node budget before giving up.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Write the optimum path file here.
    #[arg(long)]
    path_out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment name (theorem1, golomb, sampler-uniformity, dlp-struct,
    /// undir-lemmas, insdel-lemmas, hybrid, index-roundtrip).
    #[arg(long)]
    name: String,
    /// Trial count override.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, env = "LONGPATH_SEED", default_value_t = 0)]
    seed: u64,
    /// Vertex count, or side size for matching-family experiments.
    #[arg(long)]
    n: Option<usize>,
    /// Target average degree (edge probability d/(n-1) unless --p is set).
    #[arg(long)]
    d: Option<usize>,
    /// Explicit edge probability.
    #[arg(long)]
    p: Option<f64>,
    /// Matching size of the instance family.
    #[arg(long)]
    r: Option<usize>,
    /// Matching count of the instance family.
    #[arg(long)]
    t: Option<usize>,
    /// Planted index length in bits.
    #[arg(long)]
    bits: Option<usize>,
    /// Subdivision length of the undirected reduction.
    #[arg(long)]
    ell: Option<usize>,
    /// Edge budget of the hybrid's exact store.
    #[arg(long)]
    space: Option<usize>,
    /// Sketch failure probability per support query.
    #[arg(long)]
    delta: Option<f64>,
    /// Multiplier C in the default sample size ceil(C n ln n).
    #[arg(long)]
    sample_constant: Option<f64>,
    /// Use the near-regular graph family instead of the binomial one.
    #[arg(long)]
    regular: bool,
    /// Interleave inserted-then-deleted decoy edges into each stream.
    #[arg(long)]
    decoys: bool,
    /// Extraction mode override for streaming runs.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<ExtractMode>,
    /// Write the report here (stdout gets the full table when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Format of the --out file.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Table,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> ReportFormat {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Table => ReportFormat::Table,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { kind } => gen::generate(&kind)?,
        Command::Stream(args) => cmd_stream(args)?,
        Command::Run(args) => cmd_run(args)?,
        Command::Exact(args) => cmd_exact(args)?,
        Command::Verify { kind } => verify::verify(&kind)?,
        Command::Experiment(args) => return cmd_experiment(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    Graph::read_file(path).with_context(|| format!("reading {}", path.display()))
}

fn read_stream(path: &PathBuf) -> Result<EventStream> {
    EventStream::read_file(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_stream(args: StreamArgs) -> Result<()> {
    let g = read_graph(&args.input)?;
    let order = match args.order {
        OrderArg::Natural => OrderPolicy::Natural,
        OrderArg::Random => OrderPolicy::Random(args.seed),
    };
    let stream = EventStream::from_graph(&g, order);
    stream
        .write_file(&args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "wrote {} ({} events, n={})",
        args.out.display(),
        stream.events.len(),
        stream.n
    );
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let stream = read_stream(&args.input)?;
    if let Some(oracle_path) = &args.oracle {
        let oracle = read_graph(oracle_path)?;
        let applied = stream.apply().context("replaying the stream")?;
        if oracle.n() != applied.n()
            || oracle.is_directed() != applied.is_directed()
            || oracle.edges() != applied.edges()
        {
            bail!(
                "{} does not rebuild the oracle graph {}",
                args.input.display(),
                oracle_path.display()
            );
        }
    }
    let report = match args.hybrid_space {
        Some(space) => hybrid_run(&stream, space, args.mode, args.seed, args.budget)?,
        None => run_semi_streaming_with_sampler(
            &stream,
            args.k.0,
            args.mode,
            args.sampler,
            args.delta,
            args.seed,
            args.budget,
        )?,
    };
    let kv = report.to_kv();
    print!("{kv}");
    if let Some(p) = &args.report {
        fs::write(p, &kv).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = &args.path_out {
        report
            .path
            .write_file(p)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = &args.sample_out {
        let sampled = Graph::new(report.n, stream.directed, &report.sample_edges)?;
        sampled
            .write_file(p)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn cmd_exact(args: ExactArgs) -> Result<()> {
    let g = read_graph(&args.input)?;
    let path = exact_longest_path(&g, args.budget)?;
    println!("length={}", path.len());
    let verts: Vec<String> = path.vertices.iter().map(|v| v.to_string()).collect();
    println!("path={}", verts.join(" "));
    if let Some(p) = &args.path_out {
        path.write_file(p)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> Result<ExitCode> {
    let mut cfg = ExperimentConfig::new(&args.name, args.seed);
    cfg.trials = args.trials;
    cfg.n = args.n;
    cfg.d = args.d;
    cfg.p = args.p;
    cfg.r = args.r;
    cfg.t = args.t;
    cfg.index_bits = args.bits;
    cfg.ell = args.ell;
    cfg.space = args.space;
    cfg.delta = args.delta;
    cfg.sample_constant = args.sample_constant;
    cfg.regular = args.regular;
    cfg.decoys = args.decoys;
    cfg.mode = args.mode;

    let report = run_experiment(&cfg)?;
    match &args.out {
        Some(out) => {
            emit_report_file(&report, args.format.into(), out)
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "{}: {} - {}",
                report.name,
                if report.passed { "pass" } else { "FAIL" },
                report.summary
            );
            println!("wrote {}", out.display());
        }
        None => {
            let stdout = std::io::stdout();
            emit_report(&report, ReportFormat::Table, &mut stdout.lock())
                .context("writing the report to stdout")?;
        }
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use immunet::bench::{run_cell, write_bench_csv, BenchRecord, SCHEMA_LINE};
use immunet::episim::{sis_simulate_with, InitialInfected, SisConfig, RNG_NAME};
use immunet::spectral::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use immunet::{eigendrop, lambda1, Error, Graph, Method, PowerIteration, SelectOptions, VertexSet};

#[derive(Parser)]
#[command(
    name = "immunet",
    version,
    about = "Select vertices whose removal most reduces λ₁"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select k vertices with one method and report the eigendrop.
    Immunize(ImmunizeArgs),
    /// Eigendrop of removing a given set of vertices.
    Eval(EvalArgs),
    /// SIS simulation, optionally with immunized vertices removed.
    Sis(SisArgs),
    /// Methods × budgets sweep over one or more graphs.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SpectralArgs {
    /// Convergence threshold on successive Rayleigh quotients.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
}

impl SpectralArgs {
    fn power(&self) -> PowerIteration {
        PowerIteration {
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }
}

#[derive(Args)]
struct ImmunizeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, conflicts_with = "k_sweep", required_unless_present = "k_sweep")]
    k: Option<usize>,
    /// Comma-separated budgets, e.g. "1,2,5,10".
    #[arg(long, value_delimiter = ',')]
    k_sweep: Option<Vec<usize>>,
    #[arg(long, default_value = "greedy3")]
    method: String,
    /// Walk length for greedy2.
    #[arg(long, default_value_t = 4)]
    p: usize,
    /// Recorded in the output metadata; every method is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    spectral: SpectralArgs,
    /// Fill the wall_ms column (otherwise NA, for reproducible output).
    #[arg(long)]
    timing: bool,
    /// Write the label sidecar (line i = label of dense index i).
    #[arg(long)]
    ids_out: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated external labels; may be empty.
    #[arg(long, allow_hyphen_values = true)]
    nodes: String,
    #[command(flatten)]
    spectral: SpectralArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SisArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fraction of surviving vertices infected at step 0.
    #[arg(long, default_value_t = 0.1)]
    initial_fraction: f64,
    /// One label per line; these vertices are removed before simulating.
    #[arg(long)]
    immunize_file: Option<PathBuf>,
    #[command(flatten)]
    spectral: SpectralArgs,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long = "graph", required = true)]
    graphs: Vec<PathBuf>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "greedy3,netshield,maxdeg,updmaxdeg"
    )]
    methods: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    k_sweep: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    p: usize,
    #[command(flatten)]
    spectral: SpectralArgs,
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Argument(_) | Error::DeadVertex(_) => 1,
        Error::Parse { .. }
        | Error::Io(_)
        | Error::UnknownLabel(_)
        | Error::VertexOutOfRange { .. } => 2,
        Error::Capability(_) => 3,
        Error::NonConvergence { .. } => 4,
    }
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `karate.txt.gz` → `karate`
fn dataset_name(path: &Path) -> String {
    let mut name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    for ext in [".gz", ".txt", ".edges", ".tsv", ".csv"] {
        if let Some(stripped) = name.strip_suffix(ext) {
            name = stripped.to_owned();
        }
    }
    name
}

fn parse_methods(names: &[String]) -> Result<Vec<Method>, Error> {
    names.iter().map(|s| s.trim().parse()).collect()
}

fn cmd_immunize(args: ImmunizeArgs) -> Result<(), Error> {
    let method: Method = args.method.parse()?;
    let g = Graph::load(&args.graph)?;
    if let Some(path) = &args.ids_out {
        g.write_ids(BufWriter::new(File::create(path)?))?;
    }
    let ks = match (args.k, args.k_sweep) {
        (Some(k), _) => vec![k],
        (None, Some(ks)) => ks,
        (None, None) => unreachable!("clap requires one of --k / --k-sweep"),
    };
    let opts = SelectOptions {
        p: args.p,
        power: args.spectral.power(),
    };
    let dataset = dataset_name(&args.graph);
    let before = lambda1(&g, opts.power)?.lambda1;
    let rows = ks
        .iter()
        .map(|&k| run_cell(&g, &dataset, method, k, &opts, before))
        .collect::<Result<Vec<_>, _>>()?;
    let meta = vec![
        ("command".to_owned(), "immunize".to_owned()),
        ("graph".to_owned(), args.graph.display().to_string()),
        ("n".to_owned(), g.n().to_string()),
        ("m".to_owned(), g.m().to_string()),
        ("p".to_owned(), args.p.to_string()),
        ("tol".to_owned(), args.spectral.tol.to_string()),
        ("seed".to_owned(), args.seed.to_string()),
    ];
    write_bench_csv(open_output(&args.output)?, &meta, &rows, args.timing)
}

fn cmd_eval(args: EvalArgs) -> Result<(), Error> {
    let g = Graph::load(&args.graph)?;
    let labels: Vec<&str> = args
        .nodes
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let s = g.resolve(labels.iter().copied())?;
    let r = eigendrop(&g, &s, args.spectral.power())?;
    let mut out = open_output(&args.output)?;
    writeln!(out, "{SCHEMA_LINE}")?;
    writeln!(out, "# command=eval")?;
    writeln!(out, "# graph={}", args.graph.display())?;
    writeln!(out, "# nodes={}", labels.join(";"))?;
    writeln!(out, "lambda_before,lambda_after,drop,drop_pct")?;
    writeln!(
        out,
        "{},{},{},{}",
        r.lambda_before, r.lambda_after, r.drop, r.drop_pct
    )?;
    out.flush()?;
    Ok(())
}

fn read_labels(path: &Path) -> Result<Vec<String>, Error> {
    let mut labels = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            labels.push(t.to_owned());
        }
    }
    Ok(labels)
}

fn cmd_sis(args: SisArgs) -> Result<(), Error> {
    let cfg = SisConfig {
        beta: args.beta,
        delta: args.delta,
        steps: args.steps,
        trials: args.trials,
        seed: args.seed,
        initial_infected: InitialInfected::Fraction(args.initial_fraction),
    };
    cfg.validate()?;
    let g = Graph::load(&args.graph)?;
    let immunized = match &args.immunize_file {
        Some(p) => {
            let labels = read_labels(p)?;
            g.resolve(labels.iter().map(String::as_str))?
        }
        None => VertexSet::new(),
    };
    let r = sis_simulate_with(&g, &cfg, &immunized, args.spectral.power())?;

    let mut out = open_output(&args.output)?;
    writeln!(out, "{SCHEMA_LINE}")?;
    writeln!(out, "# command=sis")?;
    writeln!(out, "# graph={}", args.graph.display())?;
    writeln!(out, "# beta={}", cfg.beta)?;
    writeln!(out, "# delta={}", cfg.delta)?;
    writeln!(out, "# steps={}", cfg.steps)?;
    writeln!(out, "# trials={}", cfg.trials)?;
    writeln!(out, "# seed={}", cfg.seed)?;
    writeln!(out, "# initial_fraction={}", args.initial_fraction)?;
    writeln!(
        out,
        "# immunized={}",
        immunized
            .order()
            .iter()
            .map(|&v| g.label(v))
            .collect::<Vec<_>>()
            .join(";")
    )?;
    writeln!(out, "# rng={RNG_NAME}")?;
    writeln!(out, "# beta_over_delta={}", r.threshold.beta_over_delta)?;
    writeln!(out, "# threshold={}", r.threshold.threshold)?;
    writeln!(out, "step,mean_infected,min,max")?;
    for (t, mean) in r.infected_ts.iter().enumerate() {
        writeln!(out, "{t},{mean},{},{}", r.min_ts[t], r.max_ts[t])?;
    }
    let fmin = r.final_counts.iter().min().unwrap();
    let fmax = r.final_counts.iter().max().unwrap();
    writeln!(out, "summary,{},{fmin},{fmax}", r.final_mean)?;
    out.flush()?;
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), Error> {
    let methods = parse_methods(&args.methods)?;
    let opts = SelectOptions {
        p: args.p,
        power: args.spectral.power(),
    };
    let mut rows = Vec::new();
    for path in &args.graphs {
        let g = Graph::load(path)?;
        let dataset = dataset_name(path);
        let before = lambda1(&g, opts.power)?.lambda1;
        let cells: Vec<(Method, usize)> = methods
            .iter()
            .flat_map(|&m| args.k_sweep.iter().map(move |&k| (m, k)))
            .collect();
        // Timing runs stay sequential so cells do not compete for cores.
        let run = |&(m, k): &(Method, usize)| {
            run_cell(&g, &dataset, m, k, &opts, before)
                .unwrap_or_else(|e| BenchRecord::failed(&dataset, m, k, &e))
        };
        if args.timing {
            rows.extend(cells.iter().map(run));
        } else {
            rows.extend(cells.par_iter().map(run).collect::<Vec<_>>());
        }
    }
    let meta = vec![
        ("command".to_owned(), "bench".to_owned()),
        ("p".to_owned(), args.p.to_string()),
        ("tol".to_owned(), args.spectral.tol.to_string()),
    ];
    write_bench_csv(open_output(&args.output)?, &meta, &rows, args.timing)
}

fn configure_threads() {
    if let Some(n) = std::env::var("IMMUNET_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let result = match cli.command {
        Command::Immunize(a) => cmd_immunize(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Sis(a) => cmd_sis(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("immunet: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

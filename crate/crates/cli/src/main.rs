use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hyperlap_core::metrics::{fit_histogram, fit_power_law, graph_degree_histogram};
use hyperlap_core::spectral::{verify_bound_with, SpectralOptions, DENSE_EIGEN_LIMIT, DEFAULT_TOLERANCE};
use hyperlap_core::{
    degree_histogram, full_report, grow, line_graph, load_memberships, GrowthConfig, Histogram, Hypergraph,
    LineGraph, PathMode, Side,
};
use serde_json::json;

/// Hypergraph models of social networks with overlapping communities.
#[derive(Debug, Parser)]
#[command(name = "hyperlap", version)]
struct Cli {
    /// Worker threads for metrics and line-graph construction.
    #[arg(long, global = true, env = "HYPERLAP_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Grow a hypergraph by preferential attachment.
    Generate(GenerateArgs),
    /// Write the line graph of a hypergraph as an edge list.
    Linegraph(LinegraphArgs),
    /// Check the smallest line-graph eigenvalue against -k_max.
    Spectrum(SpectrumArgs),
    /// Compute clustering, assortativity, path length and degree fits.
    Metrics(MetricsArgs),
    /// Load a membership file and write it back in canonical form.
    Ingest(IngestArgs),
    /// Fit a power law to a degree distribution.
    Fit(FitArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Number of growth steps.
    #[arg(long)]
    steps: Option<usize>,
    /// Seed of the random number generator.
    #[arg(long)]
    rng_seed: Option<u64>,
    /// Seed hypergraph in HGM-CSV (replaces the built-in seed).
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Growth configuration (JSON or key = value); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    max_retries: Option<usize>,
    /// Output HGM-CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Run manifest path [default: <out>.manifest.json].
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LinegraphArgs {
    /// Hypergraph in HGM-CSV (.gz accepted).
    #[arg(long = "in")]
    input: PathBuf,
    /// Edge-list output [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Largest line graph solved densely; larger ones use Lanczos.
    #[arg(long, default_value_t = DENSE_EIGEN_LIMIT)]
    dense_limit: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
struct MetricsArgs {
    /// Graph as an edge list.
    #[arg(long = "in", group = "source")]
    input: Option<PathBuf>,
    /// Hypergraph in HGM-CSV; its line graph is analyzed and the
    /// community-size distribution is fitted too.
    #[arg(long, group = "source")]
    hypergraph: Option<PathBuf>,
    /// `exact` or `sample:COUNT:SEED`.
    #[arg(long, default_value = "exact")]
    paths: PathMode,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Degree histogram CSV (k,count,probability).
    #[arg(long)]
    hist_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// Membership file in HGM-CSV (.gz accepted).
    #[arg(long = "in")]
    input: PathBuf,
    /// Canonical HGM-CSV output [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the projected social graph as an edge list.
    #[arg(long)]
    edges_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Node,
    Link,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
struct FitArgs {
    /// Distribution CSV with `k,count[,probability]` rows.
    #[arg(long = "in", group = "source")]
    input: Option<PathBuf>,
    /// Fit a degree distribution of this hypergraph (see --side).
    #[arg(long, group = "source")]
    hypergraph: Option<PathBuf>,
    /// Fit the degree distribution of this edge-list graph.
    #[arg(long, group = "source")]
    edges: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "node")]
    side: SideArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plot data CSV (k,count,probability) of the fitted distribution.
    #[arg(long)]
    plot_out: Option<PathBuf>,
}

fn write_output(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => {
            let file = File::create(p).with_context(|| format!("cannot write {}", p.display()))?;
            let mut out = BufWriter::new(file);
            write(&mut out)?;
            out.flush()?;
        }
        _ => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    write_output(path, |w| {
        w.write_all(text.as_bytes())?;
        Ok(())
    })
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let parsed = load_memberships(path).with_context(|| format!("cannot load {}", path.display()))?;
    if parsed.skipped > 0 {
        eprintln!(
            "warning: {}: skipped {} malformed line(s), first at {:?}",
            path.display(),
            parsed.skipped,
            parsed.skipped_examples
        );
    }
    Ok(parsed.hypergraph)
}

fn read_edges(path: &Path) -> Result<LineGraph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    LineGraph::read_edge_list(BufReader::new(file)).with_context(|| format!("cannot parse {}", path.display()))
}

fn generate(args: GenerateArgs) -> Result<()> {
    let mut config = match &args.config {
        Some(p) => GrowthConfig::parse(&fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?)
            .with_context(|| format!("invalid config {}", p.display()))?,
        None => GrowthConfig::default(),
    };
    if let Some(p) = &args.seed_file {
        let seed = read_hypergraph(p)?;
        config.seed_links = seed
            .links()
            .iter()
            .map(|l| l.iter().map(|&j| j as usize).collect())
            .collect();
    }
    if let Some(steps) = args.steps {
        config.steps = steps;
    }
    if let Some(seed) = args.rng_seed {
        config.rng_seed = seed;
    }
    if let Some(r) = args.max_retries {
        config.max_retries = r;
    }
    if args.config.is_none() && args.steps.is_none() {
        bail!("--steps is required unless --config supplies it");
    }

    let h = grow(&config)?;
    write_output(Some(&args.out), |w| Ok(h.write_hgm_csv(w)?))?;

    let manifest = json!({
        "config": config,
        "nodes": h.node_count(),
        "links": h.link_count(),
        "memberships": h.incidence_count(),
        "k_max": h.k_max()?,
        "linear": h.is_linear(),
    });
    let manifest_path = args.manifest.unwrap_or_else(|| {
        let mut name = args.out.clone().into_os_string();
        name.push(".manifest.json");
        PathBuf::from(name)
    });
    write_text(Some(&manifest_path), &(serde_json::to_string_pretty(&manifest)? + "\n"))
}

fn linegraph(args: LinegraphArgs) -> Result<()> {
    let g = line_graph(&read_hypergraph(&args.input)?);
    write_output(args.out.as_deref(), |w| Ok(g.write_edge_list(w)?))
}

fn spectrum(args: SpectrumArgs) -> Result<()> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        bail!("--tol must be positive");
    }
    let h = read_hypergraph(&args.input)?;
    let opts = SpectralOptions {
        tolerance: args.tol,
        dense_limit: args.dense_limit,
        ..SpectralOptions::default()
    };
    let report = verify_bound_with(&h, &opts)?;
    write_text(args.out.as_deref(), &(report.to_json() + "\n"))
}

fn write_histogram(path: &Path, hist: &Histogram) -> Result<()> {
    write_output(Some(path), |w| Ok(hist.write_csv(w)?))
}

fn metrics(args: MetricsArgs) -> Result<()> {
    let (g, h) = match (&args.input, &args.hypergraph) {
        (Some(p), _) => (read_edges(p)?, None),
        (None, Some(p)) => {
            let h = read_hypergraph(p)?;
            (line_graph(&h), Some(h))
        }
        (None, None) => unreachable!("clap enforces one source"),
    };
    let report = full_report(&g, h.as_ref(), args.paths)?;
    if let Some(p) = &args.hist_out {
        write_histogram(p, &graph_degree_histogram(&g))?;
    }
    write_text(args.out.as_deref(), &(report.to_json() + "\n"))
}

fn ingest(args: IngestArgs) -> Result<()> {
    let parsed = load_memberships(&args.input).with_context(|| format!("cannot load {}", args.input.display()))?;
    let h = &parsed.hypergraph;
    eprintln!(
        "{}: {} valid line(s), {} skipped; {} communities, {} individuals",
        args.input.display(),
        parsed.valid_lines,
        parsed.skipped,
        h.node_count(),
        h.link_count()
    );
    write_output(args.out.as_deref(), |w| Ok(h.write_hgm_csv(w)?))?;
    if let Some(p) = &args.edges_out {
        let g = hyperlap_core::project_social_graph(h);
        write_output(Some(p), |w| Ok(g.write_edge_list(w)?))?;
    }
    Ok(())
}

fn fit(args: FitArgs) -> Result<()> {
    let side = match args.side {
        SideArg::Node => Side::Node,
        SideArg::Link => Side::Link,
    };
    let (fit, hist) = match (&args.input, &args.hypergraph, &args.edges) {
        (Some(p), _, _) => {
            let file = File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
            let points = hyperlap_core::histogram::read_distribution_csv(BufReader::new(file))?;
            (fit_power_law(&points)?, None)
        }
        (_, Some(p), _) => {
            let hist = degree_histogram(&read_hypergraph(p)?, side);
            (fit_histogram(&hist)?, Some(hist))
        }
        (_, _, Some(p)) => {
            let hist = graph_degree_histogram(&read_edges(p)?);
            (fit_histogram(&hist)?, Some(hist))
        }
        _ => unreachable!("clap enforces one source"),
    };
    if let Some(p) = &args.plot_out {
        match &hist {
            Some(hist) => write_histogram(p, hist)?,
            None => bail!("--plot-out needs --hypergraph or --edges input"),
        }
    }
    write_text(args.out.as_deref(), &(serde_json::to_string_pretty(&fit)? + "\n"))
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure thread pool")?;
    }
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Linegraph(a) => linegraph(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Metrics(a) => metrics(a),
        Command::Ingest(a) => ingest(a),
        Command::Fit(a) => fit(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! Benchmark CLI over the landmark-sampling library.
//!
//! Subcommands: `bench` (method sweep -> metrics CSV), `spectrum` (kernel
//! eigenvalues -> CSV), `summarize` (greedy landmarks + 2-D KPCA -> CSV).
//! Exit codes: 0 success, 1 configuration or data error, 2 when the sweep
//! completed but some rows carry an error column.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use kdpp::bench::{
    self, records_to_csv, run_benchmark, spectrum_to_csv, summary_to_csv, DatasetSpec,
    ExperimentConfig, KernelChoice, MethodChoice, NormChoice, SummarizeConfig,
};
use kdpp::error::Error;

#[derive(Parser)]
#[command(
    name = "kdpp",
    version,
    about = "Diverse landmark sampling and Nystrom approximation benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep sampling methods over landmark counts and emit a metrics CSV
    Bench(BenchArgs),
    /// Dump the kernel eigenvalue spectrum, descending, as index,eigenvalue
    Spectrum(SpectrumArgs),
    /// Select k landmarks greedily and emit KPCA plot coordinates
    Summarize(SummarizeArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Dataset: path to a headerless numeric CSV, or synthetic:<n>:<clusters>
    #[arg(long)]
    dataset: String,

    /// Kernel function: gaussian|hik|precomputed
    #[arg(long, default_value = "gaussian")]
    kernel: String,

    /// Gaussian bandwidth (applied after standardization)
    #[arg(long, default_value_t = bench::DEFAULT_SIGMA)]
    sigma: f64,

    /// L1-normalize histogram rows before the intersection kernel
    #[arg(long)]
    normalize_histograms: bool,

    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Comma-separated subset of uniform,dpp,kdpp,greedy,das
    #[arg(long, value_delimiter = ',', default_value = "uniform,kdpp,greedy,das")]
    methods: Vec<String>,

    /// Comma-separated landmark counts
    #[arg(long, value_delimiter = ',', default_value = "5,10,20")]
    k: Vec<usize>,

    /// Trials per method and landmark count
    #[arg(long, default_value_t = bench::DEFAULT_TRIALS)]
    trials: usize,

    /// Base seed; trial t draws from base_seed + 1000*t
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Comma-separated ridge grid for das (default 1e0..1e-6)
    #[arg(long = "gamma-grid", value_delimiter = ',')]
    gamma_grid: Option<Vec<f64>>,

    /// Regularization added to the landmark block
    #[arg(long, default_value_t = bench::DEFAULT_EPSILON)]
    epsilon: f64,

    /// Norm minimized when picking the best gamma: op|max
    #[arg(long, default_value = "op")]
    norm: String,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SummarizeArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Number of landmarks to select
    #[arg(long, default_value_t = 3)]
    k: usize,

    /// Seed for the synthetic dataset stream
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Skip double-centering of the Gram matrix before KPCA
    #[arg(long)]
    no_center: bool,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Bench(args) => {
            let cfg = bench_config(&args)?;
            let records = run_benchmark(&cfg)?;
            let partial = records.iter().any(|r| r.error.is_some());
            write_output(args.common.out.as_deref(), &records_to_csv(&records))?;
            if partial {
                eprintln!("warning: some rows failed; see the error column");
                Ok(2)
            } else {
                Ok(0)
            }
        }
        Command::Spectrum(args) => {
            let mut cfg = ExperimentConfig::new(DatasetSpec::parse(&args.common.dataset)?);
            apply_common(&mut cfg, &args.common)?;
            let spectrum = bench::dump_spectrum(&cfg)?;
            write_output(args.common.out.as_deref(), &spectrum_to_csv(&spectrum))?;
            Ok(0)
        }
        Command::Summarize(args) => {
            let mut cfg = SummarizeConfig::new(DatasetSpec::parse(&args.common.dataset)?, args.k);
            cfg.kernel = KernelChoice::parse(&args.common.kernel)?;
            cfg.sigma = args.common.sigma;
            cfg.normalize_histograms = args.common.normalize_histograms;
            cfg.base_seed = args.seed;
            cfg.center = !args.no_center;
            let out = bench::summarize(&cfg)?;
            eprintln!("landmarks: {}", out.landmarks.to_csv_line());
            write_output(args.common.out.as_deref(), &summary_to_csv(&out))?;
            Ok(0)
        }
    }
}

fn apply_common(cfg: &mut ExperimentConfig, common: &CommonArgs) -> Result<(), Error> {
    cfg.kernel = KernelChoice::parse(&common.kernel)?;
    cfg.sigma = common.sigma;
    cfg.normalize_histograms = common.normalize_histograms;
    Ok(())
}

fn bench_config(args: &BenchArgs) -> Result<ExperimentConfig, Error> {
    let mut cfg = ExperimentConfig::new(DatasetSpec::parse(&args.common.dataset)?);
    apply_common(&mut cfg, &args.common)?;
    cfg.methods = args
        .methods
        .iter()
        .map(|s| MethodChoice::parse(s))
        .collect::<Result<Vec<_>, _>>()?;
    cfg.k_values = args.k.clone();
    cfg.trials = args.trials;
    cfg.base_seed = args.seed;
    if let Some(grid) = &args.gamma_grid {
        cfg.gamma_grid = grid.clone();
    }
    cfg.epsilon = args.epsilon;
    cfg.norm = NormChoice::parse(&args.norm)?;
    Ok(cfg)
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

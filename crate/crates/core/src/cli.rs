//! Command-line front end. `main` is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric/parameter
//! error. Failures print one JSON line to stderr and nothing to stdout.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analytic::{expected_coverage, select_k};
use crate::error::{Error, ErrorClass, Result};
use crate::io::{format_scores, load_embeddings, write_embeddings, EmbeddingFormat, ScoreFormat};
use crate::knn::{KnnConfig, DEFAULT_BLOCK_SIZE};
use crate::metrics::{Evaluator, MetricConfig, DEFAULT_K_DC, DEFAULT_K_PR};
use crate::simulation::{
    run_identical_experiment, run_mode_drop_experiment, run_translation_experiment, split_outliers, DropKind,
    IdenticalExperimentSpec, ModeDropSpec, OutlierMode, ScoreTable, TranslationExperimentSpec, DEFAULT_INLIER_RATIO,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_PARAMETER: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "prdc", version, about = "Precision, recall, density and coverage for generative model embeddings")]
struct Cli {
    /// Master seed for simulations.
    #[arg(long, global = true, help_heading = "Global options", default_value_t = 0)]
    seed: u64,
    /// Monte Carlo trials per grid point (simulations).
    #[arg(long, global = true, help_heading = "Global options")]
    trials: Option<usize>,
    /// Worker threads for the distance kernels; 0 uses all cores.
    #[arg(long, global = true, help_heading = "Global options", default_value_t = 0)]
    threads: usize,
    /// Query rows per distance tile.
    #[arg(long, global = true, help_heading = "Global options", default_value_t = DEFAULT_BLOCK_SIZE)]
    block_size: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score a fake embedding file against a real one.
    Compute(ComputeArgs),
    /// Expected coverage for identically distributed real and fake sets.
    ExpectedCoverage {
        /// Real sample count N.
        n_real: u64,
        /// Fake sample count M.
        n_fake: u64,
        /// Neighbour rank.
        k: u64,
        /// Decimal places printed.
        #[arg(long, default_value_t = 3)]
        decimals: usize,
    },
    /// Smallest k whose expected coverage exceeds 1 - epsilon.
    SelectK {
        /// Real sample count N.
        n_real: u64,
        /// Fake sample count M.
        n_fake: u64,
        /// Allowed shortfall from full coverage, in (0, 1).
        epsilon: f64,
    },
    /// Run a toy experiment and print a score table.
    Simulate {
        #[command(subcommand)]
        experiment: Experiment,
    },
    /// Split samples into inliers and outliers by k-NN distance.
    SplitOutliers(SplitArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputKind {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Real embeddings.
    real: PathBuf,
    /// Fake (generated) embeddings.
    fake: PathBuf,
    /// k for all four metrics (overridden by --k-pr / --k-dc).
    #[arg(short, long)]
    k: Option<usize>,
    /// k for precision and recall [default: 3].
    #[arg(long)]
    k_pr: Option<usize>,
    /// k for density and coverage [default: 5].
    #[arg(long)]
    k_dc: Option<usize>,
    /// Input format: csv, raw-f32, raw-f64, npy. Default: by extension.
    #[arg(long)]
    format: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputKind,
}

#[derive(Debug, Args)]
struct SplitArgs {
    /// Embedding file to split.
    path: PathBuf,
    /// Neighbour rank used as the isolation score.
    #[arg(short, long, default_value_t = DEFAULT_K_DC)]
    k: usize,
    /// Inliers per outlier.
    #[arg(long, default_value_t = DEFAULT_INLIER_RATIO)]
    ratio: usize,
    /// Input format, as for `compute`.
    #[arg(long)]
    format: Option<String>,
    /// Also write the inlier rows here (format by extension).
    #[arg(long)]
    inliers: Option<PathBuf>,
    /// Also write the outlier rows here (format by extension).
    #[arg(long)]
    outliers: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Sequential,
    Simultaneous,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutlierArg {
    None,
    Real,
    Fake,
}

#[derive(Debug, Subcommand)]
enum Experiment {
    /// Real and fake from the same standard normal, over N = M and k grids.
    Identical {
        /// Sample counts N = M.
        #[arg(long, value_delimiter = ',', default_value = "500,1000,2000")]
        n: Vec<usize>,
        /// Neighbour ranks, used for all four metrics.
        #[arg(short, long, value_delimiter = ',', default_value = "1,3,5,10")]
        k: Vec<usize>,
        #[arg(long, default_value_t = 64)]
        dim: usize,
        #[arg(long, value_enum, default_value = "csv")]
        output: OutputKind,
    },
    /// Fake distribution shifted by mu along the all-ones direction.
    Translate {
        /// Explicit mu values; default is 21 evenly spaced points in [-1, 1].
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mu: Option<Vec<f64>>,
        #[arg(long, default_value_t = 64)]
        dim: usize,
        #[arg(long, default_value_t = 2000)]
        n_real: usize,
        #[arg(long, default_value_t = 2000)]
        n_fake: usize,
        /// Side that receives one outlier sample.
        #[arg(long, value_enum, default_value = "none")]
        outlier: OutlierArg,
        /// Every coordinate of the injected outlier.
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        outlier_value: f64,
        #[arg(long, default_value_t = DEFAULT_K_PR)]
        k_pr: usize,
        #[arg(long, default_value_t = DEFAULT_K_DC)]
        k_dc: usize,
        #[arg(long, value_enum, default_value = "csv")]
        output: OutputKind,
    },
    /// Fake mixture losing modes, sequentially or simultaneously.
    ModeDrop {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 64)]
        dim: usize,
        #[arg(long, default_value_t = 5000)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_K_PR)]
        k_pr: usize,
        #[arg(long, default_value_t = DEFAULT_K_DC)]
        k_dc: usize,
        #[arg(long, default_value_t = 10)]
        modes: usize,
        /// Distance of each mode centre from the origin, along its own axis.
        #[arg(long, default_value_t = 10.0)]
        separation: f64,
        #[arg(long, value_enum, default_value = "csv")]
        output: OutputKind,
    },
}

fn parse_format(s: Option<&str>) -> Result<Option<EmbeddingFormat>> {
    s.map(str::parse).transpose()
}

fn render_table(table: &ScoreTable, output: OutputKind) -> String {
    match output {
        OutputKind::Csv => table.to_csv(),
        OutputKind::Json => table.to_json() + "\n",
    }
}

fn execute(cli: Cli) -> Result<String> {
    let config = KnnConfig { block_size: cli.block_size, threads: cli.threads };
    if cli.block_size == 0 {
        return Err(Error::InvalidParameter("--block-size must be at least 1".into()));
    }
    let trials = cli.trials.unwrap_or(1);
    match cli.command {
        Command::Compute(args) => {
            let format = parse_format(args.format.as_deref())?;
            let real = load_embeddings(&args.real, format)?;
            let fake = load_embeddings(&args.fake, format)?;
            let metric = MetricConfig {
                k_pr: args.k_pr.or(args.k).unwrap_or(DEFAULT_K_PR),
                k_dc: args.k_dc.or(args.k).unwrap_or(DEFAULT_K_DC),
            };
            let scores = Evaluator::new(config).prdc(&real, &fake, metric)?;
            let output = match args.output {
                OutputKind::Json => ScoreFormat::Json,
                OutputKind::Csv => ScoreFormat::Csv,
            };
            Ok(format_scores(&scores, output) + "\n")
        }
        Command::ExpectedCoverage { n_real, n_fake, k, decimals } => {
            let v = expected_coverage(n_real, n_fake, k)?;
            Ok(format!("{v:.decimals$}\n"))
        }
        Command::SelectK { n_real, n_fake, epsilon } => Ok(format!("{}\n", select_k(n_real, n_fake, epsilon)?.k)),
        Command::Simulate { experiment } => match experiment {
            Experiment::Identical { n, k, dim, output } => {
                let spec = IdenticalExperimentSpec { n_grid: n, k_grid: k, dim, trials, seed: cli.seed };
                Ok(render_table(&run_identical_experiment(&spec, &config)?, output))
            }
            Experiment::Translate { mu, dim, n_real, n_fake, outlier, outlier_value, k_pr, k_dc, output } => {
                let spec = TranslationExperimentSpec {
                    mu_grid: mu.unwrap_or_else(|| TranslationExperimentSpec::uniform_mu_grid(21)),
                    dim,
                    n_real,
                    n_fake,
                    outlier_mode: match outlier {
                        OutlierArg::None => OutlierMode::None,
                        OutlierArg::Real => OutlierMode::RealOutlier,
                        OutlierArg::Fake => OutlierMode::FakeOutlier,
                    },
                    outlier_point: vec![outlier_value; dim],
                    k_pr,
                    k_dc,
                    trials,
                    seed: cli.seed,
                };
                Ok(render_table(&run_translation_experiment(&spec, &config)?, output))
            }
            Experiment::ModeDrop { kind, dim, n, k_pr, k_dc, modes, separation, output } => {
                let spec = ModeDropSpec {
                    kind: match kind {
                        KindArg::Sequential => DropKind::Sequential,
                        KindArg::Simultaneous => DropKind::Simultaneous,
                    },
                    dim,
                    n,
                    k_pr,
                    k_dc,
                    trials,
                    seed: cli.seed,
                    n_modes: modes,
                    separation,
                    component_scale: 1.0,
                };
                Ok(render_table(&run_mode_drop_experiment(&spec, &config)?, output))
            }
        },
        Command::SplitOutliers(args) => {
            let format = parse_format(args.format.as_deref())?;
            let samples = load_embeddings(&args.path, format)?;
            let split = split_outliers(&samples, args.k, args.ratio, &config)?;
            if let Some(path) = &args.inliers {
                write_embeddings(path, &split.inliers, None)?;
            }
            if let Some(path) = &args.outliers {
                write_embeddings(path, &split.outliers, None)?;
            }
            let mut is_outlier = vec![false; samples.n_samples()];
            for &i in &split.outlier_indices {
                is_outlier[i] = true;
            }
            let mut out = String::from("index,radius,outlier\n");
            for (i, (r, o)) in split.radii.iter().zip(&is_outlier).enumerate() {
                out.push_str(&format!("{i},{r:?},{}\n", u8::from(*o)));
            }
            Ok(out)
        }
    }
}

fn error_line(err: &Error) -> (i32, String) {
    let (code, class) = match err.class() {
        ErrorClass::Data => (EXIT_DATA, "data"),
        ErrorClass::Parameter => (EXIT_PARAMETER, "parameter"),
    };
    let message = err.to_string().replace('\n', " ");
    let line = serde_json::json!({ "error": class, "code": code, "message": message });
    (code, line.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `stdout` only on success.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli) {
        Ok(text) => {
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return EXIT_DATA;
            }
            EXIT_OK
        }
        Err(err) => {
            let (code, line) = error_line(&err);
            let _ = writeln!(stderr, "{line}");
            code
        }
    }
}

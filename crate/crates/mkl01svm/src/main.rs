//! Thin command-line front end over the library pipeline.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mkl01svm::admm::SolverParams;
use mkl01svm::cli::{
    self, BenchConfig, CliError, CvConfig, ParamGrid, PredictConfig, SynthConfig, TrainConfig,
    DEFAULT_FOLDS, DEFAULT_REPEATS, DEFAULT_TRAIN_FRAC, DEFAULT_SIGMAS,
};
use mkl01svm::data::DataFormat;

#[derive(Parser)]
#[command(
    name = "mkl01svm",
    version,
    about = "Multiple-kernel SVM with the (0,1) loss, trained by a working-set ADMM"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a model on a dataset and write model/metrics/trace files
    Train(TrainArgs),
    /// Apply a stored model to a dataset
    Predict(PredictArgs),
    /// Cross-validation grid search over (C, rho1, rho2, rho3)
    Cv(CvArgs),
    /// Repeated train/test benchmark over one or more datasets
    Bench(BenchArgs),
    /// Generate the synthetic 2-d disk/annulus dataset as CSV
    Synth(SynthArgs),
}

#[derive(Args)]
struct DataArgs {
    /// Dataset path
    #[arg(long)]
    data: PathBuf,
    /// Dataset format: csv or libsvm
    #[arg(long, default_value = "csv")]
    format: DataFormat,
    /// Comma-separated Gaussian bandwidths (default: the ten-kernel bank)
    #[arg(long, value_delimiter = ',')]
    sigmas: Option<Vec<f64>>,
}

impl DataArgs {
    fn sigmas(&self) -> Vec<f64> {
        self.sigmas.clone().unwrap_or_else(|| DEFAULT_SIGMAS.to_vec())
    }
}

#[derive(Args)]
struct TrainArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Regularization weight
    #[arg(long = "C", default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    rho1: f64,
    #[arg(long, default_value_t = 1.0)]
    rho2: f64,
    #[arg(long, default_value_t = 1.0)]
    rho3: f64,
    /// Stopping tolerance on successive-iterate differences
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = 1000)]
    max_iter: usize,
    #[arg(long = "out-model", default_value = "model.json")]
    out_model: PathBuf,
    #[arg(long = "out-metrics", default_value = "metrics.json")]
    out_metrics: PathBuf,
    #[arg(long = "out-trace", default_value = "trace.csv")]
    out_trace: PathBuf,
}

#[derive(Args)]
struct PredictArgs {
    /// Stored model JSON
    #[arg(long, default_value = "model.json")]
    model: PathBuf,
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = "csv")]
    format: DataFormat,
    /// Predictions CSV (index, decision, prediction, label)
    #[arg(long, default_value = "predictions.csv")]
    out: PathBuf,
    #[arg(long = "out-metrics")]
    out_metrics: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    /// Comma-separated C grid (default: reduced grid axis)
    #[arg(long = "C", value_delimiter = ',')]
    c: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    rho1: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    rho2: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    rho3: Option<Vec<f64>>,
    /// Use the full 11^4 protocol grid (slow; prints a warning)
    #[arg(long = "full-grid", default_value_t = false)]
    full_grid: bool,
}

impl GridArgs {
    fn build(&self) -> ParamGrid {
        if self.full_grid {
            eprintln!(
                "warning: full 11^4 grid requested ({} cells x folds solves); this is slow",
                ParamGrid::full().len()
            );
            return ParamGrid::full();
        }
        if self.c.is_none() && self.rho1.is_none() && self.rho2.is_none() && self.rho3.is_none() {
            return ParamGrid::reduced();
        }
        let coarse: Vec<f64> = [-2i32, 0, 2, 4, 6, 8]
            .iter()
            .map(|&e| 2f64.powi(e))
            .collect();
        let pair = vec![1.0, 16.0];
        ParamGrid::from_axes(
            self.c.as_deref().unwrap_or(&coarse),
            self.rho1.as_deref().unwrap_or(&coarse),
            self.rho2.as_deref().unwrap_or(&pair),
            self.rho3.as_deref().unwrap_or(&pair),
        )
    }
}

#[derive(Args)]
struct CvArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = DEFAULT_FOLDS)]
    folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = 1000)]
    max_iter: usize,
    /// Parallel workers (0 = all cores)
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long = "out-metrics", default_value = "cv_best.json")]
    out_metrics: PathBuf,
    #[arg(long = "out-grid", default_value = "cv_grid.csv")]
    out_grid: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Dataset paths (repeat the flag or separate with commas)
    #[arg(long = "data", required = true, value_delimiter = ',')]
    data: Vec<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: DataFormat,
    #[arg(long, value_delimiter = ',')]
    sigmas: Option<Vec<f64>>,
    /// Fixed C; with all four of C/rho1/rho2/rho3 set, CV selection is skipped
    #[arg(long = "C")]
    c: Option<f64>,
    #[arg(long)]
    rho1: Option<f64>,
    #[arg(long)]
    rho2: Option<f64>,
    #[arg(long)]
    rho3: Option<f64>,
    /// Select parameters over the full 11^4 grid instead of the reduced one
    #[arg(long = "full-grid", default_value_t = false)]
    full_grid: bool,
    #[arg(long, default_value_t = DEFAULT_REPEATS)]
    repeats: usize,
    #[arg(long = "train-frac", default_value_t = DEFAULT_TRAIN_FRAC)]
    train_frac: f64,
    #[arg(long, default_value_t = DEFAULT_FOLDS)]
    folds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = 1000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long = "out-metrics", default_value = "bench.json")]
    out_metrics: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long = "m-per-class", default_value_t = 100)]
    m_per_class: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "synthetic.csv")]
    out: PathBuf,
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Train(args) => {
            let params = SolverParams::new(
                args.c,
                args.rho1,
                args.rho2,
                args.rho3,
                args.tol,
                args.max_iter,
            )
            .map_err(|e| CliError::Config(e.to_string()))?;
            let cfg = TrainConfig {
                data: args.data.data.clone(),
                format: args.data.format,
                sigmas: args.data.sigmas(),
                params,
                out_model: Some(args.out_model.clone()),
                out_metrics: Some(args.out_metrics.clone()),
                out_trace: Some(args.out_trace.clone()),
            };
            let outcome = cli::cmd_train(&cfg)?;
            println!(
                "trained: {} iterations, converged={}, J={:.6}, train ACC={:.4}, |SV|={}, stationary={}",
                outcome.metrics.iterations,
                outcome.metrics.converged,
                outcome.metrics.final_objective,
                outcome.metrics.train_accuracy,
                outcome.metrics.support_vectors,
                outcome.metrics.stationarity.satisfied,
            );
            println!(
                "wrote {}, {}, {}",
                args.out_model.display(),
                args.out_metrics.display(),
                args.out_trace.display()
            );
            Ok(())
        }
        Command::Predict(args) => {
            let cfg = PredictConfig {
                model: args.model,
                data: args.data,
                format: args.format,
                out_predictions: Some(args.out.clone()),
                out_metrics: args.out_metrics,
            };
            let outcome = cli::cmd_predict(&cfg)?;
            println!(
                "predicted {} samples, ACC={:.4}; wrote {}",
                outcome.metrics.samples,
                outcome.metrics.accuracy,
                args.out.display()
            );
            Ok(())
        }
        Command::Cv(args) => {
            let cfg = CvConfig {
                data: args.data.data.clone(),
                format: args.data.format,
                sigmas: args.data.sigmas(),
                grid: args.grid.build(),
                folds: args.folds,
                seed: args.seed,
                tol: args.tol,
                max_iter: args.max_iter,
                workers: args.workers,
                out_best: Some(args.out_metrics.clone()),
                out_grid: Some(args.out_grid.clone()),
            };
            let outcome = cli::cmd_cv(&cfg)?;
            println!(
                "best cell: C={} rho1={} rho2={} rho3={} (CV ACC {:.4} over {} folds, {} cells)",
                outcome.best.c,
                outcome.best.rho1,
                outcome.best.rho2,
                outcome.best.rho3,
                outcome.best_accuracy,
                outcome.folds,
                outcome.cells.len()
            );
            Ok(())
        }
        Command::Bench(args) => {
            let fixed_params = match (args.c, args.rho1, args.rho2, args.rho3) {
                (Some(c), Some(r1), Some(r2), Some(r3)) => Some(
                    SolverParams::new(c, r1, r2, r3, args.tol, args.max_iter)
                        .map_err(|e| CliError::Config(e.to_string()))?,
                ),
                (None, None, None, None) => None,
                _ => {
                    return Err(CliError::Usage(
                        "bench needs either all of --C/--rho1/--rho2/--rho3 or none".into(),
                    ))
                }
            };
            let grid = if args.full_grid {
                eprintln!(
                    "warning: full 11^4 grid requested ({} cells x folds solves); this is slow",
                    ParamGrid::full().len()
                );
                ParamGrid::full()
            } else {
                ParamGrid::reduced()
            };
            let cfg = BenchConfig {
                datasets: args.data,
                format: args.format,
                sigmas: args.sigmas.unwrap_or_else(|| DEFAULT_SIGMAS.to_vec()),
                repeats: args.repeats,
                train_frac: args.train_frac,
                folds: args.folds,
                seed: args.seed,
                fixed_params,
                grid,
                tol: args.tol,
                max_iter: args.max_iter,
                workers: args.workers,
                out_metrics: Some(args.out_metrics),
            };
            let report = cli::cmd_bench(&cfg)?;
            println!("dataset            mean ACC   std     iters   |SV|   kernels  converged");
            for row in &report.rows {
                if row.ok {
                    println!(
                        "{:<18} {:.4}     {:.4}  {:>6.1}  {:>5.1}  {:>7.2}  {}/{}",
                        row.dataset,
                        row.mean_accuracy,
                        row.std_accuracy,
                        row.mean_iterations,
                        row.mean_support,
                        row.mean_kernel_nonzeros,
                        row.converged_repeats,
                        row.repeats.len()
                    );
                } else {
                    println!("{:<18} skipped: {}", row.dataset, row.message);
                }
            }
            Ok(())
        }
        Command::Synth(args) => {
            let cfg = SynthConfig {
                m_per_class: args.m_per_class,
                seed: args.seed,
                out: args.out.clone(),
            };
            let ds = cli::cmd_synth(&cfg)?;
            println!("wrote {} rows to {}", ds.len(), args.out.display());
            Ok(())
        }
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
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

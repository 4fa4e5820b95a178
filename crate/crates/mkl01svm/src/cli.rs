//! Command implementations behind the binary: train, predict,
//! cross-validation grid search, benchmark repeats, synthetic data export.
//!
//! Everything here is a plain function over a config struct so the pipeline
//! is drivable from tests and examples without spawning processes. All
//! commands are deterministic given their config (seeds included): parallel
//! grid cells and benchmark repeats are collected by index, never by
//! completion order.

use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::admm::{solve, SolveOutput, SolverError, SolverParams, StationarityReport};
use crate::data::{
    apply_normalizer, fit_normalizer, load_dataset, make_folds, split, synth_2d, write_csv,
    DataError, DataFormat, Dataset, NormStats,
};
use crate::kernels::{KernelBank, KernelError};
use crate::model::{accuracy, Model, ModelError};

/// Bandwidths of the default ten-kernel Gaussian bank.
pub const DEFAULT_SIGMAS: [f64; 10] = [0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.2, 1.5, 1.7, 2.0];

pub const DEFAULT_TRAIN_FRAC: f64 = 0.7;
pub const DEFAULT_FOLDS: usize = 10;
pub const DEFAULT_REPEATS: usize = 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("failed to write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl CliError {
    /// Process exit code: 1 usage/config, 2 data, 3 solver abort.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Data(_) | CliError::Model(_) | CliError::Io { .. } => 2,
            CliError::Solver(_) => 3,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value).expect("serializable metrics");
    write_file(path, &json)
}

/// Runs `f` inside a rayon pool of the requested width; 0 means the global
/// default pool.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        f()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(f)
    }
}

// ---------------------------------------------------------------------------
// Parameter grids
// ---------------------------------------------------------------------------

/// Enumerated (C, rho1, rho2, rho3) cells in lexicographic order; ties in
/// accuracy resolve to the earliest cell.
#[derive(Debug, Clone)]
pub struct ParamGrid {
    cells: Vec<(f64, f64, f64, f64)>,
}

impl ParamGrid {
    /// The full protocol grid: `{2^-2, ..., 2^8}` on all four axes.
    pub fn full() -> Self {
        let axis = Self::full_axis();
        Self::from_axes(&axis, &axis, &axis, &axis)
    }

    pub fn full_axis() -> Vec<f64> {
        (-2..=8).map(|e| 2f64.powi(e)).collect()
    }

    /// Desk-scale default: C and rho1 over `{2^-2, 2^0, ..., 2^8}`, with
    /// rho2 = rho3 tied over `{1, 16}`.
    pub fn reduced() -> Self {
        let coarse: Vec<f64> = [-2i32, 0, 2, 4, 6, 8]
            .iter()
            .map(|&e| 2f64.powi(e))
            .collect();
        let mut cells = Vec::new();
        for &c in &coarse {
            for &r1 in &coarse {
                for &r in &[1.0, 16.0] {
                    cells.push((c, r1, r, r));
                }
            }
        }
        cells.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ParamGrid { cells }
    }

    /// Cartesian product of explicit axes.
    pub fn from_axes(c: &[f64], rho1: &[f64], rho2: &[f64], rho3: &[f64]) -> Self {
        let mut cells = Vec::with_capacity(c.len() * rho1.len() * rho2.len() * rho3.len());
        for &cv in c {
            for &r1 in rho1 {
                for &r2 in rho2 {
                    for &r3 in rho3 {
                        cells.push((cv, r1, r2, r3));
                    }
                }
            }
        }
        cells.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ParamGrid { cells }
    }

    pub fn cells(&self) -> &[(f64, f64, f64, f64)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.cells.is_empty() {
            return Err(CliError::Config("parameter grid is empty".into()));
        }
        for &(c, r1, r2, r3) in &self.cells {
            if !(c > 0.0 && r1 > 0.0 && r2 > 0.0 && r3 > 0.0) {
                return Err(CliError::Config(format!(
                    "grid cell ({c}, {r1}, {r2}, {r3}) has a non-positive entry"
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

/// Mean validation accuracy of one grid cell (-1 marks a failed cell).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridCellResult {
    #[serde(rename = "C")]
    pub c: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
    pub mean_accuracy: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CvOutcome {
    pub best: SolverParams,
    pub best_accuracy: f64,
    pub folds: usize,
    pub cells: Vec<GridCellResult>,
}

struct FoldContext {
    train_ds: Dataset,
    bank: KernelBank,
    val_labels: DVector<f64>,
    /// Per kernel: validation x fold-train slice of the precomputed gram.
    val_slices: Vec<DMatrix<f64>>,
}

/// Decision values on a validation fold straight from precomputed gram
/// slices: `f_j = sum_l d_l sum_sv w_sv K_l[val_j, sv] + b`.
fn gram_decisions(model: &Model, slices: &[DMatrix<f64>]) -> DVector<f64> {
    let p = slices.first().map_or(0, |s| s.nrows());
    let mut f = DVector::from_element(p, model.intercept());
    for (l, &dl) in model.weights().values().iter().enumerate() {
        if dl == 0.0 {
            continue;
        }
        for sv in model.support() {
            let coeff = dl * (-sv.lambda * sv.label);
            f.axpy(coeff, &slices[l].column(sv.index).into_owned(), 1.0);
        }
    }
    f
}

/// K-fold grid search on an already-normalized training set. One kernel
/// bank is precomputed on the full set and sliced per fold, for both the
/// fold gram matrices and the validation cross-kernels.
pub fn cv_select(
    train: &Dataset,
    bank: &KernelBank,
    grid: &ParamGrid,
    folds: usize,
    seed: u64,
    tol: f64,
    max_iter: usize,
) -> Result<CvOutcome, CliError> {
    grid.validate()?;
    let plan = make_folds(train, folds, seed)?;

    let contexts: Vec<FoldContext> = plan
        .splits()
        .map(|(train_idx, val_idx)| {
            let val_slices = (0..bank.len())
                .map(|l| bank.slice(l, val_idx, &train_idx))
                .collect();
            FoldContext {
                train_ds: train.subset(&train_idx),
                bank: bank.subset(&train_idx),
                val_labels: train.subset(val_idx).labels().clone(),
                val_slices,
            }
        })
        .collect();

    let cell_results: Vec<GridCellResult> = grid
        .cells()
        .par_iter()
        .map(|&(c, rho1, rho2, rho3)| {
            let params = SolverParams {
                c,
                rho1,
                rho2,
                rho3,
                tol,
                max_iter,
            };
            let mut total = 0.0;
            let mut failed = false;
            for ctx in &contexts {
                match solve(&ctx.train_ds, &ctx.bank, &params) {
                    Ok(out) => {
                        let f = gram_decisions(&out.model, &ctx.val_slices);
                        let preds = f.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
                        total +=
                            accuracy(&preds, &ctx.val_labels).expect("fold sizes are consistent");
                    }
                    Err(_) => {
                        failed = true;
                        break;
                    }
                }
            }
            let mean_accuracy = if failed {
                -1.0
            } else {
                total / contexts.len() as f64
            };
            GridCellResult {
                c,
                rho1,
                rho2,
                rho3,
                mean_accuracy,
            }
        })
        .collect();

    // Strict argmax over cells in lexicographic order: ties keep the
    // smallest (C, rho1, rho2, rho3).
    let best_cell = cell_results
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.mean_accuracy
                .partial_cmp(&b.mean_accuracy)
                .unwrap()
                .then(ib.cmp(ia))
        })
        .map(|(_, cell)| *cell)
        .expect("grid validated nonempty");

    Ok(CvOutcome {
        best: SolverParams {
            c: best_cell.c,
            rho1: best_cell.rho1,
            rho2: best_cell.rho2,
            rho3: best_cell.rho3,
            tol,
            max_iter,
        },
        best_accuracy: best_cell.mean_accuracy,
        folds,
        cells: cell_results,
    })
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub data: PathBuf,
    pub format: DataFormat,
    pub sigmas: Vec<f64>,
    pub params: SolverParams,
    pub out_model: Option<PathBuf>,
    pub out_metrics: Option<PathBuf>,
    pub out_trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainMetrics {
    pub converged: bool,
    pub iterations: usize,
    pub final_objective: f64,
    pub betas: [f64; 8],
    pub size_t: usize,
    pub size_s: usize,
    pub train_accuracy: f64,
    pub support_vectors: usize,
    pub stationarity: StationarityReport,
    pub params: SolverParams,
}

#[derive(Debug, Clone, Serialize)]
struct AbortMetrics {
    aborted: bool,
    error: String,
    params: SolverParams,
}

#[derive(Debug)]
pub struct TrainOutcome {
    pub model: Model,
    pub metrics: TrainMetrics,
    pub output: SolveOutput,
}

/// Loads, normalizes, builds the bank, solves, and writes the three
/// artifacts. A solver abort still writes metrics before the error
/// propagates (nonzero exit).
pub fn cmd_train(cfg: &TrainConfig) -> Result<TrainOutcome, CliError> {
    cfg.params
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let raw = load_dataset(&cfg.data, cfg.format)?;
    let stats = fit_normalizer(&raw)?;
    let train = apply_normalizer(&stats, &raw)?;
    let bank = KernelBank::build(train.features(), &cfg.sigmas)?;

    let output = match solve(&train, &bank, &cfg.params) {
        Ok(out) => out,
        Err(e) => {
            if let Some(path) = &cfg.out_metrics {
                let _ = write_json(
                    path,
                    &AbortMetrics {
                        aborted: true,
                        error: e.to_string(),
                        params: cfg.params.clone(),
                    },
                );
            }
            return Err(e.into());
        }
    };

    let model = output.model.clone().with_norm(stats);
    let preds = model.predict(train.features())?;
    let train_accuracy = accuracy(&preds, train.labels())?;
    let last = output.trace.last().expect("max_iter >= 1 ran a sweep");
    let metrics = TrainMetrics {
        converged: output.converged,
        iterations: output.iterations,
        final_objective: last.objective,
        betas: last.betas,
        size_t: last.size_t,
        size_s: last.size_s,
        train_accuracy,
        support_vectors: model.support().len(),
        stationarity: output.report.clone(),
        params: cfg.params.clone(),
    };

    if let Some(path) = &cfg.out_model {
        model.save(path)?;
    }
    if let Some(path) = &cfg.out_metrics {
        write_json(path, &metrics)?;
    }
    if let Some(path) = &cfg.out_trace {
        output
            .trace
            .write_csv(path)
            .map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
    }

    Ok(TrainOutcome {
        model,
        metrics,
        output,
    })
}

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PredictConfig {
    pub model: PathBuf,
    pub data: PathBuf,
    pub format: DataFormat,
    pub out_predictions: Option<PathBuf>,
    pub out_metrics: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictMetrics {
    pub samples: usize,
    pub accuracy: f64,
}

#[derive(Debug)]
pub struct PredictOutcome {
    pub decisions: DVector<f64>,
    pub predictions: DVector<f64>,
    pub metrics: PredictMetrics,
}

/// Applies a stored model to a dataset: normalizes with the model's own
/// statistics, writes decision values and signs, reports accuracy against
/// the file's labels.
pub fn cmd_predict(cfg: &PredictConfig) -> Result<PredictOutcome, CliError> {
    let model = Model::load(&cfg.model)?;
    let raw = load_dataset(&cfg.data, cfg.format)?;
    let normed = apply_normalizer(model.norm(), &raw)?;
    let decisions = model.decision_values(normed.features())?;
    let predictions = decisions.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
    let acc = accuracy(&predictions, normed.labels())?;

    if let Some(path) = &cfg.out_predictions {
        let mut out = String::from("index,decision,prediction,label\n");
        for i in 0..predictions.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                i,
                decisions[i],
                predictions[i] as i64,
                normed.labels()[i] as i64
            ));
        }
        write_file(path, &out)?;
    }
    let metrics = PredictMetrics {
        samples: predictions.len(),
        accuracy: acc,
    };
    if let Some(path) = &cfg.out_metrics {
        write_json(path, &metrics)?;
    }
    Ok(PredictOutcome {
        decisions,
        predictions,
        metrics,
    })
}

// ---------------------------------------------------------------------------
// cv
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CvConfig {
    pub data: PathBuf,
    pub format: DataFormat,
    pub sigmas: Vec<f64>,
    pub grid: ParamGrid,
    pub folds: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iter: usize,
    pub workers: usize,
    pub out_best: Option<PathBuf>,
    pub out_grid: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CvMetrics {
    pub best: SolverParams,
    pub best_accuracy: f64,
    pub folds: usize,
    pub cells_evaluated: usize,
}

/// Grid search over (C, rho1, rho2, rho3): writes the best cell as JSON and
/// the full grid as CSV sorted by accuracy (ties by smaller parameters).
pub fn cmd_cv(cfg: &CvConfig) -> Result<CvOutcome, CliError> {
    let raw = load_dataset(&cfg.data, cfg.format)?;
    let stats = fit_normalizer(&raw)?;
    let train = apply_normalizer(&stats, &raw)?;
    let bank = KernelBank::build(train.features(), &cfg.sigmas)?;

    let outcome = with_workers(cfg.workers, || {
        cv_select(
            &train,
            &bank,
            &cfg.grid,
            cfg.folds,
            cfg.seed,
            cfg.tol,
            cfg.max_iter,
        )
    })?;

    if let Some(path) = &cfg.out_best {
        write_json(
            path,
            &CvMetrics {
                best: outcome.best.clone(),
                best_accuracy: outcome.best_accuracy,
                folds: outcome.folds,
                cells_evaluated: outcome.cells.len(),
            },
        )?;
    }
    if let Some(path) = &cfg.out_grid {
        let mut sorted = outcome.cells.clone();
        sorted.sort_by(|a, b| {
            b.mean_accuracy.partial_cmp(&a.mean_accuracy).unwrap().then(
                (a.c, a.rho1, a.rho2, a.rho3)
                    .partial_cmp(&(b.c, b.rho1, b.rho2, b.rho3))
                    .unwrap(),
            )
        });
        let mut out = String::from("C,rho1,rho2,rho3,mean_accuracy\n");
        for cell in &sorted {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                cell.c, cell.rho1, cell.rho2, cell.rho3, cell.mean_accuracy
            ));
        }
        write_file(path, &out)?;
    }
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub datasets: Vec<PathBuf>,
    pub format: DataFormat,
    pub sigmas: Vec<f64>,
    pub repeats: usize,
    pub train_frac: f64,
    pub folds: usize,
    pub seed: u64,
    /// Fixed parameters skip the per-dataset CV selection.
    pub fixed_params: Option<SolverParams>,
    pub grid: ParamGrid,
    pub tol: f64,
    pub max_iter: usize,
    pub workers: usize,
    pub out_metrics: Option<PathBuf>,
}

/// One train/test repetition.
#[derive(Debug, Clone, Serialize)]
pub struct RepeatOutcome {
    pub seed: u64,
    pub accuracy: f64,
    pub iterations: usize,
    pub converged: bool,
    pub support_size: usize,
    pub kernel_nonzeros: usize,
    /// Largest deviation of a support vector from its margin hyperplane,
    /// `max_i |y_i (f(x_i) + b) - 1|` over the training support set.
    pub max_margin_gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub dataset: String,
    pub ok: bool,
    pub message: String,
    pub samples: usize,
    pub features: usize,
    pub params: Option<SolverParams>,
    pub cv_accuracy: Option<f64>,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
    pub mean_iterations: f64,
    pub mean_support: f64,
    pub mean_kernel_nonzeros: f64,
    pub converged_repeats: usize,
    pub repeats: Vec<RepeatOutcome>,
}

impl BenchRow {
    fn missing(name: String, message: String) -> Self {
        BenchRow {
            dataset: name,
            ok: false,
            message,
            samples: 0,
            features: 0,
            params: None,
            cv_accuracy: None,
            mean_accuracy: -1.0,
            std_accuracy: 0.0,
            mean_iterations: 0.0,
            mean_support: 0.0,
            mean_kernel_nonzeros: 0.0,
            converged_repeats: 0,
            repeats: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

/// One 70/30 repetition: split, normalize on the training part, build the
/// bank, solve, score on the held-out part.
pub fn run_repeat(
    ds: &Dataset,
    sigmas: &[f64],
    params: &SolverParams,
    train_frac: f64,
    seed: u64,
) -> Result<RepeatOutcome, CliError> {
    let (train_raw, test_raw) = split(ds, train_frac, seed)?;
    let stats = fit_normalizer(&train_raw)?;
    let train = apply_normalizer(&stats, &train_raw)?;
    let test = apply_normalizer(&stats, &test_raw)?;
    let bank = KernelBank::build(train.features(), sigmas)?;
    let out = solve(&train, &bank, params)?;

    let preds = out.model.predict(test.features())?;
    let acc = accuracy(&preds, test.labels())?;

    let train_decisions = out.model.decision_values(train.features())?;
    let max_margin_gap = out
        .model
        .support()
        .iter()
        .map(|sv| (train.labels()[sv.index] * train_decisions[sv.index] - 1.0).abs())
        .fold(0.0, f64::max);

    Ok(RepeatOutcome {
        seed,
        accuracy: acc,
        iterations: out.iterations,
        converged: out.converged,
        support_size: out.model.support().len(),
        kernel_nonzeros: out
            .model
            .weights()
            .values()
            .iter()
            .filter(|&&v| v != 0.0)
            .count(),
        max_margin_gap,
    })
}

/// Full benchmark protocol for one dataset: parameters are selected once by
/// CV on the first split's training part (unless fixed), then `repeats`
/// seeded splits are trained and scored.
pub fn bench_dataset(ds: &Dataset, name: &str, cfg: &BenchConfig) -> Result<BenchRow, CliError> {
    let (params, cv_accuracy) = match &cfg.fixed_params {
        Some(p) => (p.clone(), None),
        None => {
            let (train_raw, _) = split(ds, cfg.train_frac, cfg.seed)?;
            let stats = fit_normalizer(&train_raw)?;
            let train = apply_normalizer(&stats, &train_raw)?;
            let bank = KernelBank::build(train.features(), &cfg.sigmas)?;
            let outcome = cv_select(
                &train,
                &bank,
                &cfg.grid,
                cfg.folds,
                cfg.seed,
                cfg.tol,
                cfg.max_iter,
            )?;
            (outcome.best, Some(outcome.best_accuracy))
        }
    };

    let repeats: Vec<RepeatOutcome> = (0..cfg.repeats)
        .into_par_iter()
        .map(|r| {
            run_repeat(
                ds,
                &cfg.sigmas,
                &params,
                cfg.train_frac,
                cfg.seed + r as u64,
            )
        })
        .collect::<Result<_, _>>()?;

    let n = repeats.len() as f64;
    let mean_accuracy = repeats.iter().map(|r| r.accuracy).sum::<f64>() / n;
    let var = repeats
        .iter()
        .map(|r| (r.accuracy - mean_accuracy).powi(2))
        .sum::<f64>()
        / n;
    Ok(BenchRow {
        dataset: name.to_string(),
        ok: true,
        message: String::new(),
        samples: ds.len(),
        features: ds.dim(),
        params: Some(params),
        cv_accuracy,
        mean_accuracy,
        std_accuracy: var.sqrt(),
        mean_iterations: repeats.iter().map(|r| r.iterations as f64).sum::<f64>() / n,
        mean_support: repeats.iter().map(|r| r.support_size as f64).sum::<f64>() / n,
        mean_kernel_nonzeros: repeats
            .iter()
            .map(|r| r.kernel_nonzeros as f64)
            .sum::<f64>()
            / n,
        converged_repeats: repeats.iter().filter(|r| r.converged).count(),
        repeats,
    })
}

/// Runs the benchmark over every dataset path; a missing or unreadable
/// dataset produces a warning row instead of an error.
pub fn cmd_bench(cfg: &BenchConfig) -> Result<BenchReport, CliError> {
    if cfg.repeats == 0 {
        return Err(CliError::Config("repeats must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for path in &cfg.datasets {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let row = match load_dataset(path, cfg.format) {
            Ok(ds) => with_workers(cfg.workers, || bench_dataset(&ds, &name, cfg))?,
            Err(e) => BenchRow::missing(name, e.to_string()),
        };
        rows.push(row);
    }
    let report = BenchReport { rows };
    if let Some(path) = &cfg.out_metrics {
        write_json(path, &report)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub m_per_class: usize,
    pub seed: u64,
    pub out: PathBuf,
}

/// Generates the synthetic disk/annulus dataset and writes it as CSV.
pub fn cmd_synth(cfg: &SynthConfig) -> Result<Dataset, CliError> {
    let ds = synth_2d(cfg.m_per_class, cfg.seed)?;
    write_csv(&ds, &cfg.out)?;
    Ok(ds)
}

/// Normalization pipeline shared by the commands: fit on the training rows,
/// apply to both sides.
pub fn normalize_pair(
    train: &Dataset,
    test: &Dataset,
) -> Result<(Dataset, Dataset, NormStats), CliError> {
    let stats = fit_normalizer(train)?;
    let train_n = apply_normalizer(&stats, train)?;
    let test_n = apply_normalizer(&stats, test)?;
    Ok((train_n, test_n, stats))
}

//! The repeated-split benchmark protocol: twenty seeded 70/30 splits,
//! parameters fixed here so the example stays fast (drop `fixed_params`
//! to select them by cross validation on the first split instead).
//!
//! ```bash
//! cargo run --release --example benchmark
//! ```

use mkl01svm::admm::SolverParams;
use mkl01svm::cli::{bench_dataset, BenchConfig, ParamGrid, DEFAULT_SIGMAS};
use mkl01svm::data::{synth_2d, DataFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ds = synth_2d(100, 0)?;
    let cfg = BenchConfig {
        datasets: vec![],
        format: DataFormat::Csv,
        sigmas: DEFAULT_SIGMAS.to_vec(),
        repeats: 20,
        train_frac: 0.7,
        folds: 10,
        seed: 0,
        fixed_params: Some(SolverParams {
            c: 16.0,
            rho1: 4.0,
            rho2: 16.0,
            rho3: 16.0,
            ..SolverParams::default()
        }),
        grid: ParamGrid::reduced(),
        tol: 1e-3,
        max_iter: 1000,
        workers: 0,
        out_metrics: None,
    };
    let row = bench_dataset(&ds, "synthetic", &cfg)?;

    println!("per-repeat test accuracies:");
    for r in &row.repeats {
        println!(
            "  seed {:>2}: ACC {:.4}  ({} iterations, converged: {}, |SV| {})",
            r.seed, r.accuracy, r.iterations, r.converged, r.support_size
        );
    }
    println!();
    println!(
        "mean ACC {:.4} +- {:.4}, mean iterations {:.1}, converged {}/{}",
        row.mean_accuracy,
        row.std_accuracy,
        row.mean_iterations,
        row.converged_repeats,
        row.repeats.len()
    );
    Ok(())
}

//! End-to-end quick start: generate the synthetic disk/annulus data, split,
//! normalize, build the kernel bank, train, and score on held-out points.
//!
//! ```bash
//! cargo run --release --example synthetic_quickstart
//! ```

use mkl01svm::admm::{solve, SolverParams};
use mkl01svm::cli::DEFAULT_SIGMAS;
use mkl01svm::data::{apply_normalizer, fit_normalizer, split, synth_2d};
use mkl01svm::kernels::KernelBank;
use mkl01svm::model::accuracy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let raw = synth_2d(100, 0)?; // 200 points, disk = -1, annulus = +1
    let (train_raw, test_raw) = split(&raw, 0.7, 0)?;

    // z-score statistics come from the training part only.
    let stats = fit_normalizer(&train_raw)?;
    let train = apply_normalizer(&stats, &train_raw)?;
    let test = apply_normalizer(&stats, &test_raw)?;

    let bank = KernelBank::build(train.features(), &DEFAULT_SIGMAS)?;
    let params = SolverParams {
        c: 16.0,
        rho1: 4.0,
        rho2: 16.0,
        rho3: 16.0,
        ..SolverParams::default()
    };

    let out = solve(&train, &bank, &params)?;
    println!(
        "solved in {} iterations (converged: {})",
        out.iterations, out.converged
    );
    println!(
        "support vectors: {} of {} training points",
        out.model.support().len(),
        train.len()
    );
    let weights: Vec<f64> = out.model.weights().values().to_vec();
    println!("kernel weights: {weights:.3?}");

    let model = out.model.with_norm(stats);
    let train_acc = accuracy(&model.predict(train.features())?, train.labels())?;
    let test_acc = accuracy(&model.predict(test.features())?, test.labels())?;
    println!("training accuracy: {train_acc:.4}");
    println!("test accuracy:     {test_acc:.4}");
    Ok(())
}

//! Saving a trained model as JSON and loading it back: the round trip is
//! bit-exact, and the stored normalization statistics let the loaded model
//! consume raw (unnormalized) features.
//!
//! ```bash
//! cargo run --release --example model_persistence
//! ```

use mkl01svm::admm::{solve, SolverParams};
use mkl01svm::data::{apply_normalizer, fit_normalizer, synth_2d};
use mkl01svm::kernels::KernelBank;
use mkl01svm::model::{accuracy, Model};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let raw = synth_2d(50, 11)?;
    let stats = fit_normalizer(&raw)?;
    let ds = apply_normalizer(&stats, &raw)?;
    let bank = KernelBank::build(ds.features(), &[0.5, 1.0, 2.0])?;
    let params = SolverParams {
        c: 16.0,
        rho1: 4.0,
        rho2: 16.0,
        rho3: 16.0,
        ..SolverParams::default()
    };
    let out = solve(&ds, &bank, &params)?;
    let model = out.model.with_norm(stats.clone());

    let dir = std::env::temp_dir();
    let path = dir.join("mkl01svm_example_model.json");
    model.save(&path)?;
    println!(
        "saved {} support vectors to {}",
        model.support().len(),
        path.display()
    );

    let loaded = Model::load(&path)?;
    let before = model.decision_values(ds.features())?;
    let after = loaded.decision_values(ds.features())?;
    println!(
        "decision values identical after reload: {}",
        before
            .iter()
            .zip(after.iter())
            .all(|(a, b)| a.to_bits() == b.to_bits())
    );

    // Prediction pipelines feed raw features through the stored statistics.
    let raw_again = synth_2d(50, 12)?;
    let normed = apply_normalizer(loaded.norm(), &raw_again)?;
    let acc = accuracy(&loaded.predict(normed.features())?, normed.labels())?;
    println!("accuracy on fresh raw data through the stored normalizer: {acc:.4}");

    std::fs::remove_file(&path).ok();
    Ok(())
}

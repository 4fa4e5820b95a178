//! Building the Gaussian kernel bank and combining it with simplex weights.
//!
//! Shows the ten-bandwidth bank, the diagonal jitter that keeps coincident
//! samples positive definite, and the eigenvalue floor over the simplex
//! that bounds the valid proximal stepsize.
//!
//! ```bash
//! cargo run --release --example kernel_bank
//! ```

use mkl01svm::cli::DEFAULT_SIGMAS;
use mkl01svm::data::{apply_normalizer, fit_normalizer, synth_2d};
use mkl01svm::kernels::{combine, gamma_upper_bound, gaussian, smallest_eigenvalue, KernelBank};
use nalgebra::DVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = [0.0, 0.0];
    let y = [1.0, 1.0];
    for sigma in [0.5, 1.0, 2.0] {
        println!(
            "kappa({x:?}, {y:?}; sigma={sigma}) = {:.6}",
            gaussian(&x, &y, sigma)?
        );
    }
    println!();

    let raw = synth_2d(50, 3)?;
    let stats = fit_normalizer(&raw)?;
    let ds = apply_normalizer(&stats, &raw)?;
    let bank = KernelBank::build(ds.features(), &DEFAULT_SIGMAS)?;
    println!(
        "bank: L = {} kernels on m = {} points, jitter = {:.1e}",
        bank.len(),
        bank.size(),
        bank.jitter()
    );
    for l in 0..bank.len() {
        println!(
            "  sigma = {:>4}: lambda_min(K_l) = {:.6e}",
            bank.sigmas()[l],
            smallest_eigenvalue(bank.matrix(l))
        );
    }

    let floor = gamma_upper_bound(&bank);
    println!("eigenvalue floor over the simplex: {floor:.6e}");

    // Any convex combination stays at or above the floor.
    let uniform = DVector::from_element(bank.len(), 1.0 / bank.len() as f64);
    let ck = combine(&bank, &uniform)?;
    println!(
        "lambda_min(K(uniform d)) = {:.6e}",
        smallest_eigenvalue(ck.matrix())
    );
    Ok(())
}

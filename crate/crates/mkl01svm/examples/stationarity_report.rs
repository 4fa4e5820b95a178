//! Certifying a solution: the verifier measures the KKT-like first-order
//! conditions at the final iterate and flags violations when the point is
//! perturbed.
//!
//! ```bash
//! cargo run --release --example stationarity_report
//! ```

use mkl01svm::admm::{check_p_stationary, solve, SolverParams};
use mkl01svm::data::{apply_normalizer, fit_normalizer, synth_2d};
use mkl01svm::kernels::KernelBank;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let raw = synth_2d(100, 0)?;
    let stats = fit_normalizer(&raw)?;
    let ds = apply_normalizer(&stats, &raw)?;
    let bank = KernelBank::build(ds.features(), &[0.5, 1.0, 2.0])?;
    let params = SolverParams::default(); // C = 1, rho = 1, tol = 1e-3

    let out = solve(&ds, &bank, &params)?;
    println!(
        "converged: {} in {} iterations; gamma = 1/rho1 = {}",
        out.converged, out.iterations, out.report.gamma_used
    );
    println!("relative residuals (tolerance {}):", out.report.tolerance);
    for (name, value) in out.report.residuals.named() {
        println!("  {name:<20} {value:.3e}");
    }
    println!("satisfied: {}", out.report.satisfied);

    // Nudging the intercept breaks the affine feasibility condition.
    let perturbed = check_p_stationary(
        &out.state.w,
        &out.state.d,
        out.state.b + 0.1,
        &out.state.u,
        &out.state.theta,
        out.state.alpha,
        &out.state.lambda,
        &bank,
        ds.labels(),
        params.c,
        1.0 / params.rho1,
        out.report.tolerance,
    );
    println!();
    println!(
        "after perturbing b by 0.1: primal_affine {:.3e} (raw {:.3e}), satisfied: {}",
        perturbed.residuals.primal_affine,
        perturbed.raw_residuals.primal_affine,
        perturbed.satisfied
    );
    Ok(())
}

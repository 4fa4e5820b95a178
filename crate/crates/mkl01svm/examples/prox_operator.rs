//! The proximal map of the step-function penalty and the data working set
//! it induces.
//!
//! Values in `(0, sqrt(2*gamma*C)]` collapse to zero (the point is pulled
//! onto the margin), everything else passes through (the violation is
//! written off). The working set collects the indices strictly inside the
//! open interval; its limit indexes the support vectors.
//!
//! ```bash
//! cargo run --example prox_operator
//! ```

use mkl01svm::prox01::{prox_scalar, prox_vector, working_set, ProxParams};
use nalgebra::DVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma = 0.5;
    let c = 1.0;
    let p = ProxParams::new(gamma, c)?;
    println!(
        "gamma = {gamma}, C = {c}, threshold sqrt(2*gamma*C) = {}",
        p.threshold()
    );
    println!();

    for z in [-2.0, 0.0, 0.5, 0.999, 1.0, 1.001, 3.0] {
        println!("prox({z:>6}) = {}", prox_scalar(z, &p));
    }

    println!();
    let z = DVector::from_vec(vec![-1.0, 0.25, 0.5, 1.0, 1.5, 3.0]);
    let out = prox_vector(&z, &p);
    println!("componentwise: {:?} -> {:?}", z.as_slice(), out.as_slice());

    // The working set uses rho1 in place of 1/gamma and an open interval.
    let rho1 = 1.0 / gamma;
    let t = working_set(&z, c, rho1);
    println!(
        "working set (s_i in (0, sqrt(2C/rho1)) = (0, {})): {:?}",
        (2.0 * c / rho1).sqrt(),
        t.indices()
    );
    println!(
        "note: the boundary point belongs to the prox's zero interval but not to the working set"
    );
    Ok(())
}

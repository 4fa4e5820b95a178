//! Euclidean projection onto the probability simplex, the repair step of
//! the kernel-weight update.
//!
//! ```bash
//! cargo run --example simplex_projection
//! ```

use mkl01svm::simplex::project_simplex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inputs: &[&[f64]] = &[
        &[0.2, 0.3, 0.5],        // already feasible: fixed point
        &[2.0, 0.0],             // clips to a vertex
        &[0.6, 0.6],             // symmetry forces an even split
        &[-1.0, -2.0, -3.0],     // all mass goes to the largest entry
        &[0.4, -0.1, 0.3, 0.05], // mixed signs
        &[7.0],                  // the 0-simplex is a single point
    ];
    for v in inputs {
        let p = project_simplex(v)?;
        let sum: f64 = p.values().iter().sum();
        println!("{v:.2?} -> {:.4?} (sum {sum})", p.values());
    }
    Ok(())
}

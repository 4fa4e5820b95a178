//! Dataset ingestion rules: CSV with header detection and {0,1} label
//! mapping, sparse libsvm rows densified on load, z-score normalization
//! with the constant-feature convention.
//!
//! ```bash
//! cargo run --example dataset_io
//! ```

use mkl01svm::data::{apply_normalizer, fit_normalizer, parse_dataset, DataFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let csv = "x1,x2,label\n1.0,5.0,1\n2.0,5.0,0\n3.0,5.0,1\n4.0,5.0,0\n";
    let ds = parse_dataset(csv, DataFormat::Csv)?;
    println!(
        "csv: {} rows, {} features, labels {:?} (0 mapped to -1)",
        ds.len(),
        ds.dim(),
        ds.labels().as_slice()
    );

    let stats = fit_normalizer(&ds)?;
    println!("per-feature mean {:?}, std {:?}", stats.mean, stats.std);
    let normed = apply_normalizer(&stats, &ds)?;
    println!(
        "normalized first column: {:?} (constant second column maps to 0: {:?})",
        normed
            .features()
            .column(0)
            .iter()
            .copied()
            .collect::<Vec<_>>(),
        normed
            .features()
            .column(1)
            .iter()
            .copied()
            .collect::<Vec<_>>()
    );
    println!();

    let libsvm = "+1 1:0.5 3:2.5\n-1 2:1.25\n+1 1:-0.75 2:0.1 3:9\n";
    let sparse = parse_dataset(libsvm, DataFormat::Libsvm)?;
    println!(
        "libsvm: {} rows densified to {} features",
        sparse.len(),
        sparse.dim()
    );
    for i in 0..sparse.len() {
        let row: Vec<f64> = sparse.features().row(i).iter().copied().collect();
        println!("  y = {:>2}, x = {row:?}", sparse.labels()[i]);
    }
    println!();

    // Malformed inputs are rejected with the offending line.
    for bad in ["1,2,1\n3,4\n", "1,2,7\n", "1 0:3\n"] {
        let format = if bad.contains(':') {
            DataFormat::Libsvm
        } else {
            DataFormat::Csv
        };
        match parse_dataset(bad, format) {
            Err(e) => println!("rejected {bad:?}: {e}"),
            Ok(_) => unreachable!(),
        }
    }
    Ok(())
}

//! Dataset ingestion (CSV and libsvm), z-score normalization, seeded
//! train/test splitting, cross-validation folds, and the synthetic 2-d
//! disk/annulus generator used by the benchmark suite.
//!
//! Everything here is pure given (input, seed): splits and folds reproduce
//! bit-exactly, which the determinism checks in the acceptance suite rely on.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: inconsistent column count (expected {expected}, found {found})")]
    ColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: label {value} is outside the accepted encodings {{-1,+1}} and {{0,1}}")]
    BadLabel { line: usize, value: f64 },
    #[error("file mixes the {{-1,+1}} and {{0,1}} label encodings")]
    MixedLabelEncodings,
    #[error("dataset has no rows")]
    Empty,
    #[error("labels must be -1 or +1, found {0}")]
    InvalidLabel(f64),
    #[error("feature rows ({rows}) do not match label count ({labels})")]
    ShapeMismatch { rows: usize, labels: usize },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("normalizer has {stats} features, dataset has {data}")]
    DimensionMismatch { stats: usize, data: usize },
    #[error("train_frac must lie strictly between 0 and 1, got {0}")]
    BadTrainFrac(f64),
    #[error("split leaves a training set with a single class")]
    SingleClassSplit,
    #[error("fold count {k} out of range 2..={m}")]
    BadFoldCount { k: usize, m: usize },
    #[error("m_per_class must be at least 1")]
    EmptySynth,
}

/// On-disk dataset encodings understood by [`load_dataset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataFormat {
    Csv,
    Libsvm,
}

impl FromStr for DataFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(DataFormat::Csv),
            "libsvm" => Ok(DataFormat::Libsvm),
            other => Err(format!("unknown format '{other}' (expected csv or libsvm)")),
        }
    }
}

impl fmt::Display for DataFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataFormat::Csv => write!(f, "csv"),
            DataFormat::Libsvm => write!(f, "libsvm"),
        }
    }
}

/// Feature matrix (rows = samples) with a +/-1 label per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: DMatrix<f64>,
    labels: DVector<f64>,
}

impl Dataset {
    pub fn new(features: DMatrix<f64>, labels: DVector<f64>) -> Result<Self, DataError> {
        if features.nrows() == 0 {
            return Err(DataError::Empty);
        }
        if features.nrows() != labels.len() {
            return Err(DataError::ShapeMismatch {
                rows: features.nrows(),
                labels: labels.len(),
            });
        }
        for &y in labels.iter() {
            if y != 1.0 && y != -1.0 {
                return Err(DataError::InvalidLabel(y));
            }
        }
        Ok(Dataset { features, labels })
    }

    /// Number of samples m.
    pub fn len(&self) -> usize {
        self.features.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.features.nrows() == 0
    }

    /// Feature dimension n.
    pub fn dim(&self) -> usize {
        self.features.ncols()
    }

    pub fn features(&self) -> &DMatrix<f64> {
        &self.features
    }

    pub fn labels(&self) -> &DVector<f64> {
        &self.labels
    }

    /// Counts of (positive, negative) labels.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|&&y| y == 1.0).count();
        (pos, self.len() - pos)
    }

    pub fn has_both_classes(&self) -> bool {
        let (pos, neg) = self.class_counts();
        pos > 0 && neg > 0
    }

    /// Rows at the given indices, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        let features = DMatrix::from_fn(indices.len(), self.dim(), |r, c| {
            self.features[(indices[r], c)]
        });
        let labels = DVector::from_fn(indices.len(), |r, _| self.labels[indices[r]]);
        Dataset { features, labels }
    }
}

/// Per-feature mean and standard deviation, fit on training data only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormStats {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl NormStats {
    /// Identity statistics (mean 0, std 1): applying them changes nothing.
    pub fn identity(dim: usize) -> Self {
        NormStats {
            mean: vec![0.0; dim],
            std: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }
}

/// Per-feature mean and population standard deviation over the rows.
/// Constant features get std 0 and are later mapped to 0 by the applier.
pub fn fit_normalizer(train: &Dataset) -> Result<NormStats, DataError> {
    let m = train.len();
    if m < 2 {
        return Err(DataError::TooFewSamples { needed: 2, got: m });
    }
    let x = train.features();
    let mut mean = Vec::with_capacity(train.dim());
    let mut std = Vec::with_capacity(train.dim());
    for j in 0..train.dim() {
        let mu = x.column(j).sum() / m as f64;
        let var = x.column(j).iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / m as f64;
        mean.push(mu);
        std.push(var.sqrt());
    }
    Ok(NormStats { mean, std })
}

/// Replaces each value by `(x - mean) / std`; features with std 0 map to 0.
pub fn apply_normalizer(stats: &NormStats, ds: &Dataset) -> Result<Dataset, DataError> {
    if stats.dim() != ds.dim() {
        return Err(DataError::DimensionMismatch {
            stats: stats.dim(),
            data: ds.dim(),
        });
    }
    let features = DMatrix::from_fn(ds.len(), ds.dim(), |i, j| {
        if stats.std[j] == 0.0 {
            0.0
        } else {
            (ds.features[(i, j)] - stats.mean[j]) / stats.std[j]
        }
    });
    Ok(Dataset {
        features,
        labels: ds.labels.clone(),
    })
}

/// Seeded random split into train and test; train size is
/// `round(train_frac * m)` and the training part must contain both classes.
pub fn split(ds: &Dataset, train_frac: f64, seed: u64) -> Result<(Dataset, Dataset), DataError> {
    if !(train_frac > 0.0 && train_frac < 1.0) {
        return Err(DataError::BadTrainFrac(train_frac));
    }
    let m = ds.len();
    let n_train = (train_frac * m as f64).round() as usize;

    let mut order: Vec<usize> = (0..m).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let mut train_idx: Vec<usize> = order[..n_train].to_vec();
    let mut test_idx: Vec<usize> = order[n_train..].to_vec();
    train_idx.sort_unstable();
    test_idx.sort_unstable();

    let train = ds.subset(&train_idx);
    if !train.has_both_classes() {
        return Err(DataError::SingleClassSplit);
    }
    Ok((train, ds.subset(&test_idx)))
}

/// A partition of `{0..m-1}` into k folds whose sizes differ by at most one.
#[derive(Debug, Clone)]
pub struct FoldPlan {
    k: usize,
    assignments: Vec<Vec<usize>>,
}

impl FoldPlan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fold(&self, i: usize) -> &[usize] {
        &self.assignments[i]
    }

    /// Iterates (train indices, validation indices) per fold.
    pub fn splits(&self) -> impl Iterator<Item = (Vec<usize>, &[usize])> + '_ {
        (0..self.k).map(move |i| {
            let val = &self.assignments[i];
            let train = self
                .assignments
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .flat_map(|(_, f)| f.iter().copied())
                .collect::<Vec<_>>();
            (train, val.as_slice())
        })
    }
}

/// Seeded balanced k-fold assignment.
pub fn make_folds(ds: &Dataset, k: usize, seed: u64) -> Result<FoldPlan, DataError> {
    let m = ds.len();
    if k < 2 || k > m {
        return Err(DataError::BadFoldCount { k, m });
    }
    let mut order: Vec<usize> = (0..m).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let base = m / k;
    let extra = m % k;
    let mut assignments = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let size = base + usize::from(i < extra);
        let mut fold: Vec<usize> = order[start..start + size].to_vec();
        fold.sort_unstable();
        assignments.push(fold);
        start += size;
    }
    Ok(FoldPlan { k, assignments })
}

/// Synthetic 2-d benchmark data: class -1 uniform in the unit disk
/// (radius `sqrt(u)`), class +1 uniform in the annulus with radius
/// `sqrt(3u + 1)`, both with uniform angles. Disk rows come first.
pub fn synth_2d(m_per_class: usize, seed: u64) -> Result<Dataset, DataError> {
    if m_per_class == 0 {
        return Err(DataError::EmptySynth);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 2 * m_per_class;
    let mut features = DMatrix::zeros(m, 2);
    let mut labels = DVector::zeros(m);

    for i in 0..m_per_class {
        let r = rng.random::<f64>().sqrt();
        let t = rng.random::<f64>() * std::f64::consts::TAU;
        features[(i, 0)] = r * t.cos();
        features[(i, 1)] = r * t.sin();
        labels[i] = -1.0;
    }
    for i in 0..m_per_class {
        let r = (3.0 * rng.random::<f64>() + 1.0).sqrt();
        let t = rng.random::<f64>() * std::f64::consts::TAU;
        features[(m_per_class + i, 0)] = r * t.cos();
        features[(m_per_class + i, 1)] = r * t.sin();
        labels[m_per_class + i] = 1.0;
    }
    Dataset::new(features, labels)
}

/// Loads a dataset from disk.
///
/// CSV: the first n columns are features and the last column is the label;
/// a header row is detected by any non-numeric field. libsvm: sparse
/// `label idx:val ...` rows with 1-based indices, densified on load.
/// Labels may be encoded as {-1,+1} or {0,1}; the latter maps 0 to -1.
pub fn load_dataset(path: &Path, format: DataFormat) -> Result<Dataset, DataError> {
    let text = fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_dataset(&text, format)
}

/// Parses dataset text; see [`load_dataset`] for the format rules.
pub fn parse_dataset(text: &str, format: DataFormat) -> Result<Dataset, DataError> {
    let (rows, raw_labels, lines) = match format {
        DataFormat::Csv => parse_csv(text)?,
        DataFormat::Libsvm => parse_libsvm(text)?,
    };
    if rows.is_empty() {
        return Err(DataError::Empty);
    }

    let has_neg = raw_labels.iter().any(|&y| y == -1.0);
    let has_zero = raw_labels.contains(&0.0);
    if has_neg && has_zero {
        return Err(DataError::MixedLabelEncodings);
    }
    let labels = DVector::from_vec(
        raw_labels
            .iter()
            .map(|&y| if y == 0.0 { -1.0 } else { y })
            .collect(),
    );

    let n = rows[0].len();
    let mut features = DMatrix::zeros(rows.len(), n);
    for (i, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), n, "line {}", lines[i]);
        for (j, &v) in row.iter().enumerate() {
            features[(i, j)] = v;
        }
    }
    Dataset::new(features, labels)
}

type ParsedRows = (Vec<Vec<f64>>, Vec<f64>, Vec<usize>);

fn validate_raw_label(value: f64, line: usize) -> Result<f64, DataError> {
    if value == -1.0 || value == 0.0 || value == 1.0 {
        Ok(value)
    } else {
        Err(DataError::BadLabel { line, value })
    }
}

fn parse_csv(text: &str) -> Result<ParsedRows, DataError> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut line_numbers = Vec::new();
    let mut expected_cols: Option<usize> = None;
    let mut first_data_row = true;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let parsed: Result<Vec<f64>, _> = fields.iter().map(|f| f.parse::<f64>()).collect();
        let values = match parsed {
            Ok(v) => v,
            Err(_) if first_data_row => {
                // Non-numeric first row is a header.
                first_data_row = false;
                continue;
            }
            Err(_) => {
                return Err(DataError::Malformed {
                    line: line_no,
                    msg: "non-numeric field".into(),
                })
            }
        };
        first_data_row = false;
        if values.len() < 2 {
            return Err(DataError::Malformed {
                line: line_no,
                msg: "need at least one feature column and a label column".into(),
            });
        }
        match expected_cols {
            None => expected_cols = Some(values.len()),
            Some(expected) if expected != values.len() => {
                return Err(DataError::ColumnCount {
                    line: line_no,
                    expected,
                    found: values.len(),
                });
            }
            Some(_) => {}
        }
        let label = validate_raw_label(values[values.len() - 1], line_no)?;
        rows.push(values[..values.len() - 1].to_vec());
        labels.push(label);
        line_numbers.push(line_no);
    }
    Ok((rows, labels, line_numbers))
}

fn parse_libsvm(text: &str) -> Result<ParsedRows, DataError> {
    let mut sparse_rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut labels = Vec::new();
    let mut line_numbers = Vec::new();
    let mut max_index = 0usize;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let label_tok = tokens.next().expect("non-empty line has a token");
        let label: f64 = label_tok.parse().map_err(|_| DataError::Malformed {
            line: line_no,
            msg: format!("bad label token '{label_tok}'"),
        })?;
        let label = validate_raw_label(label, line_no)?;

        let mut entries = Vec::new();
        for tok in tokens {
            let (idx_str, val_str) = tok.split_once(':').ok_or_else(|| DataError::Malformed {
                line: line_no,
                msg: format!("expected idx:val, got '{tok}'"),
            })?;
            let index: usize = idx_str.parse().map_err(|_| DataError::Malformed {
                line: line_no,
                msg: format!("bad feature index '{idx_str}'"),
            })?;
            if index == 0 {
                return Err(DataError::Malformed {
                    line: line_no,
                    msg: "libsvm feature indices are 1-based".into(),
                });
            }
            let value: f64 = val_str.parse().map_err(|_| DataError::Malformed {
                line: line_no,
                msg: format!("bad feature value '{val_str}'"),
            })?;
            max_index = max_index.max(index);
            entries.push((index - 1, value));
        }
        sparse_rows.push(entries);
        labels.push(label);
        line_numbers.push(line_no);
    }

    let rows = sparse_rows
        .into_iter()
        .map(|entries| {
            let mut dense = vec![0.0; max_index];
            for (j, v) in entries {
                dense[j] = v;
            }
            dense
        })
        .collect();
    Ok((rows, labels, line_numbers))
}

/// Writes a dataset as CSV with header `x1,..,xn,label`.
pub fn write_csv(ds: &Dataset, path: &Path) -> Result<(), DataError> {
    let mut out = String::new();
    for j in 0..ds.dim() {
        out.push_str(&format!("x{},", j + 1));
    }
    out.push_str("label\n");
    for i in 0..ds.len() {
        for j in 0..ds.dim() {
            out.push_str(&format!("{},", ds.features[(i, j)]));
        }
        out.push_str(&format!("{}\n", ds.labels[i] as i64));
    }
    fs::write(path, out).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(labels: &[f64]) -> Dataset {
        let m = labels.len();
        let features = DMatrix::from_fn(m, 2, |i, j| (i * 2 + j) as f64);
        Dataset::new(features, DVector::from_vec(labels.to_vec())).unwrap()
    }

    #[test]
    fn csv_parses_plain_labels() {
        let ds = parse_dataset("1.0,2.0,1\n3.0,4.0,-1\n5.0,6.0,1\n", DataFormat::Csv).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.dim(), 2);
        assert_eq!(ds.labels().as_slice(), &[1.0, -1.0, 1.0]);
        assert_eq!(ds.features()[(1, 0)], 3.0);
    }

    #[test]
    fn csv_maps_zero_one_labels() {
        let ds = parse_dataset("1.0,2.0,1\n3.0,4.0,0\n5.0,6.0,1\n", DataFormat::Csv).unwrap();
        assert_eq!(ds.labels().as_slice(), &[1.0, -1.0, 1.0]);
    }

    #[test]
    fn csv_rejects_mixed_encodings_and_bad_labels() {
        assert!(matches!(
            parse_dataset("1,2,0\n3,4,-1\n", DataFormat::Csv),
            Err(DataError::MixedLabelEncodings)
        ));
        assert!(matches!(
            parse_dataset("1,2,3\n", DataFormat::Csv),
            Err(DataError::BadLabel { line: 1, .. })
        ));
    }

    #[test]
    fn csv_rejects_inconsistent_columns() {
        let err = parse_dataset("1,2,1\n3,1\n", DataFormat::Csv).unwrap_err();
        assert!(matches!(
            err,
            DataError::ColumnCount {
                line: 2,
                expected: 3,
                found: 2
            }
        ));
    }

    #[test]
    fn csv_detects_header() {
        let ds = parse_dataset("x1,x2,label\n1,2,1\n3,4,-1\n", DataFormat::Csv).unwrap();
        assert_eq!(ds.len(), 2);
    }

    #[test]
    fn csv_row_order_preserved() {
        let ds = parse_dataset("9,9,1\n1,1,-1\n", DataFormat::Csv).unwrap();
        assert_eq!(ds.features()[(0, 0)], 9.0);
        assert_eq!(ds.features()[(1, 0)], 1.0);
    }

    #[test]
    fn libsvm_densifies() {
        let ds = parse_dataset("1 1:0.5 3:2.0\n-1 2:1.0\n", DataFormat::Libsvm).unwrap();
        assert_eq!(ds.dim(), 3);
        assert_eq!(
            ds.features().row(0).iter().copied().collect::<Vec<_>>(),
            vec![0.5, 0.0, 2.0]
        );
        assert_eq!(
            ds.features().row(1).iter().copied().collect::<Vec<_>>(),
            vec![0.0, 1.0, 0.0]
        );
        assert_eq!(ds.labels().as_slice(), &[1.0, -1.0]);
    }

    #[test]
    fn libsvm_rejects_zero_index_and_garbage() {
        assert!(parse_dataset("1 0:0.5\n", DataFormat::Libsvm).is_err());
        assert!(parse_dataset("1 2-0.5\n", DataFormat::Libsvm).is_err());
        assert!(parse_dataset("abc 1:1\n", DataFormat::Libsvm).is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_dataset(Path::new("/nonexistent/x.csv"), DataFormat::Csv).unwrap_err();
        assert!(matches!(err, DataError::Io { .. }));
    }

    #[test]
    fn normalizer_two_point_column() {
        let ds = Dataset::new(
            DMatrix::from_row_slice(2, 1, &[0.0, 2.0]),
            DVector::from_vec(vec![1.0, -1.0]),
        )
        .unwrap();
        let stats = fit_normalizer(&ds).unwrap();
        assert_eq!(stats.mean, vec![1.0]);
        assert_eq!(stats.std, vec![1.0]);
    }

    #[test]
    fn normalizer_constant_feature() {
        let ds = Dataset::new(
            DMatrix::from_row_slice(2, 1, &[5.0, 5.0]),
            DVector::from_vec(vec![1.0, -1.0]),
        )
        .unwrap();
        let stats = fit_normalizer(&ds).unwrap();
        assert_eq!(stats.mean, vec![5.0]);
        assert_eq!(stats.std, vec![0.0]);
        // Degenerate feature maps to 0, not an error.
        let normed = apply_normalizer(&stats, &ds).unwrap();
        assert_eq!(normed.features()[(0, 0)], 0.0);
    }

    #[test]
    fn normalizer_per_column() {
        let ds = Dataset::new(
            DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]),
            DVector::from_vec(vec![1.0, -1.0]),
        )
        .unwrap();
        let stats = fit_normalizer(&ds).unwrap();
        assert_eq!(stats.mean, vec![2.0, 3.0]);
        assert_eq!(stats.std, vec![1.0, 1.0]);
    }

    #[test]
    fn normalizer_roundtrip_centers_and_scales() {
        let ds = synth_2d(20, 42).unwrap();
        let stats = fit_normalizer(&ds).unwrap();
        let normed = apply_normalizer(&stats, &ds).unwrap();
        let restats = fit_normalizer(&normed).unwrap();
        for j in 0..2 {
            assert!(restats.mean[j].abs() <= 1e-12);
            assert!((restats.std[j] - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn affine_map_example() {
        let stats = NormStats {
            mean: vec![1.0],
            std: vec![1.0],
        };
        let ds = Dataset::new(
            DMatrix::from_row_slice(1, 1, &[3.0]),
            DVector::from_vec(vec![1.0]),
        )
        .unwrap();
        let normed = apply_normalizer(&stats, &ds).unwrap();
        assert_eq!(normed.features()[(0, 0)], 2.0);
    }

    #[test]
    fn apply_normalizer_dimension_check() {
        let stats = NormStats::identity(3);
        let ds = toy(&[1.0, -1.0]);
        assert!(matches!(
            apply_normalizer(&stats, &ds),
            Err(DataError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn split_sizes_and_determinism() {
        let ds = toy(&[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0]);
        let (train, test) = split(&ds, 0.7, 123).unwrap();
        assert_eq!((train.len(), test.len()), (7, 3));

        let (train2, test2) = split(&ds, 0.7, 123).unwrap();
        assert_eq!(train, train2);
        assert_eq!(test, test2);

        let (train3, _) = split(&ds, 0.7, 124).unwrap();
        assert_ne!(train, train3); // overwhelmingly likely for a different seed
    }

    #[test]
    fn split_no_overlap() {
        let ds = synth_2d(20, 7).unwrap();
        let (train, test) = split(&ds, 0.7, 99).unwrap();
        assert_eq!(train.len() + test.len(), ds.len());
        // Feature rows of train and test together are a permutation of ds.
        let mut seen: Vec<(u64, u64)> = Vec::new();
        for set in [&train, &test] {
            for i in 0..set.len() {
                seen.push((
                    set.features()[(i, 0)].to_bits(),
                    set.features()[(i, 1)].to_bits(),
                ));
            }
        }
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), ds.len());
    }

    #[test]
    fn split_seventy_thirty_sizes() {
        let ds = synth_2d(100, 1).unwrap();
        let (train, test) = split(&ds, 0.7, 0).unwrap();
        assert_eq!((train.len(), test.len()), (140, 60));
    }

    #[test]
    fn split_rejects_bad_frac_and_single_class() {
        let ds = toy(&[1.0, -1.0, 1.0, -1.0]);
        assert!(split(&ds, 0.0, 0).is_err());
        assert!(split(&ds, 1.0, 0).is_err());

        let single = toy(&[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            split(&single, 0.5, 0),
            Err(DataError::SingleClassSplit)
        ));
    }

    #[test]
    fn folds_balanced_partition() {
        let ds = synth_2d(50, 3).unwrap(); // m = 100
        let plan = make_folds(&ds, 10, 5).unwrap();
        let mut all: Vec<usize> = Vec::new();
        for i in 0..10 {
            assert_eq!(plan.fold(i).len(), 10);
            all.extend_from_slice(plan.fold(i));
        }
        all.sort_unstable();
        assert_eq!(all, (0..100).collect::<Vec<_>>());
    }

    #[test]
    fn folds_remainder_rule() {
        let ds = toy(&[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0]);
        let plan = make_folds(&ds, 10, 5).unwrap();
        let sizes: Vec<usize> = (0..10).map(|i| plan.fold(i).len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 1);
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 9);
    }

    #[test]
    fn folds_deterministic_and_range_checked() {
        let ds = synth_2d(10, 3).unwrap();
        let a = make_folds(&ds, 5, 9).unwrap();
        let b = make_folds(&ds, 5, 9).unwrap();
        for i in 0..5 {
            assert_eq!(a.fold(i), b.fold(i));
        }
        assert!(make_folds(&ds, 1, 0).is_err());
        assert!(make_folds(&ds, 21, 0).is_err());
    }

    #[test]
    fn fold_splits_cover_everything() {
        let ds = synth_2d(11, 0).unwrap();
        let plan = make_folds(&ds, 4, 2).unwrap();
        for (train, val) in plan.splits() {
            assert_eq!(train.len() + val.len(), ds.len());
            let mut joined = train.clone();
            joined.extend_from_slice(val);
            joined.sort_unstable();
            assert_eq!(joined, (0..ds.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn synth_geometry() {
        let ds = synth_2d(100, 17).unwrap();
        assert_eq!(ds.len(), 200);
        let (pos, neg) = ds.class_counts();
        assert_eq!((pos, neg), (100, 100));
        for i in 0..200 {
            let r = (ds.features()[(i, 0)].powi(2) + ds.features()[(i, 1)].powi(2)).sqrt();
            if ds.labels()[i] == -1.0 {
                assert!(r <= 1.0, "disk point {i} has radius {r}");
            } else {
                assert!((1.0..=2.0).contains(&r), "annulus point {i} has radius {r}");
            }
        }
    }

    #[test]
    fn synth_deterministic_and_validated() {
        let a = synth_2d(5, 3).unwrap();
        let b = synth_2d(5, 3).unwrap();
        assert_eq!(a, b);
        assert!(matches!(synth_2d(0, 3), Err(DataError::EmptySynth)));
    }

    #[test]
    fn csv_roundtrip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("synth.csv");
        let ds = synth_2d(10, 5).unwrap();
        write_csv(&ds, &path).unwrap();
        let loaded = load_dataset(&path, DataFormat::Csv).unwrap();
        assert_eq!(loaded.labels(), ds.labels());
        let diff = (loaded.features() - ds.features()).abs().max();
        assert_eq!(diff, 0.0); // shortest round-trip float formatting is exact
    }

    #[test]
    fn dataset_validation() {
        assert!(Dataset::new(DMatrix::zeros(0, 2), DVector::zeros(0)).is_err());
        assert!(Dataset::new(DMatrix::zeros(2, 2), DVector::from_vec(vec![1.0, 0.5])).is_err());
        assert!(Dataset::new(DMatrix::zeros(2, 2), DVector::from_vec(vec![1.0])).is_err());
    }
}

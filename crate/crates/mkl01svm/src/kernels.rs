//! Gaussian kernel bank: the L precomputed Gram matrices sharing one set of
//! anchor points, their convex combination, the label-signed variant, and
//! cross-kernels for evaluating a trained model on new points.
//!
//! Every matrix gets a scaled diagonal jitter (`1e-8 * trace / m`) right
//! after construction so that numerically coincident samples cannot break
//! the positive-definiteness the solver relies on.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use thiserror::Error;

const JITTER_SCALE: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("feature dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("sigma must be positive, got {0}")]
    BadSigma(f64),
    #[error("kernel bank needs at least one sigma")]
    EmptyBank,
    #[error("weight vector has length {got}, bank has {expected} kernels")]
    WeightLength { got: usize, expected: usize },
    #[error("label vector has length {got}, kernel is {expected}x{expected}")]
    LabelLength { got: usize, expected: usize },
    #[error("weight vector contains a non-finite entry")]
    NonFiniteWeights,
}

/// Gaussian kernel value `exp(-||x - y||^2 / (2 sigma^2))`, in `(0, 1]`.
pub fn gaussian(x: &[f64], y: &[f64], sigma: f64) -> Result<f64, KernelError> {
    if x.len() != y.len() {
        return Err(KernelError::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(KernelError::BadSigma(sigma));
    }
    let sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((-sq / (2.0 * sigma * sigma)).exp())
}

/// The L jittered Gram matrices together with the anchor rows they were
/// built from. Immutable after construction; cheap to share across threads.
#[derive(Debug, Clone)]
pub struct KernelBank {
    sigmas: Vec<f64>,
    matrices: Vec<DMatrix<f64>>,
    anchors: DMatrix<f64>,
    jitter: f64,
}

impl KernelBank {
    /// Builds all Gram matrices for `x` (rows = samples) and the given
    /// bandwidths, then applies the diagonal jitter.
    pub fn build(x: &DMatrix<f64>, sigmas: &[f64]) -> Result<Self, KernelError> {
        if sigmas.is_empty() {
            return Err(KernelError::EmptyBank);
        }
        for &s in sigmas {
            if !(s > 0.0 && s.is_finite()) {
                return Err(KernelError::BadSigma(s));
            }
        }
        let m = x.nrows();

        // Squared distances are shared by every bandwidth. Filling both
        // triangles from one computed value keeps the matrices exactly
        // symmetric with an exactly zero diagonal.
        let mut sq_dist = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in (i + 1)..m {
                let mut sq = 0.0;
                for k in 0..x.ncols() {
                    let diff = x[(i, k)] - x[(j, k)];
                    sq += diff * diff;
                }
                sq_dist[(i, j)] = sq;
                sq_dist[(j, i)] = sq;
            }
        }

        // Each bandwidth is independent; collection preserves sigma order.
        let matrices: Vec<DMatrix<f64>> = sigmas
            .par_iter()
            .map(|&sigma| {
                let denom = 2.0 * sigma * sigma;
                let mut k = sq_dist.map(|sq| (-sq / denom).exp());
                let jitter = JITTER_SCALE * k.trace() / m as f64;
                for i in 0..m {
                    k[(i, i)] += jitter;
                }
                k
            })
            .collect();
        let jitter = JITTER_SCALE; // trace is exactly m for Gaussian kernels

        Ok(KernelBank {
            sigmas: sigmas.to_vec(),
            matrices,
            anchors: x.clone(),
            jitter,
        })
    }

    /// Number of kernels L.
    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    /// Number of anchor points m.
    pub fn size(&self) -> usize {
        self.anchors.nrows()
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn matrix(&self, l: usize) -> &DMatrix<f64> {
        &self.matrices[l]
    }

    pub fn anchors(&self) -> &DMatrix<f64> {
        &self.anchors
    }

    /// Diagonal shift that was added to every Gram matrix.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Restriction of the bank to a subset of anchor rows. Principal
    /// submatrices of the jittered Gram matrices are exactly what a fresh
    /// build on the selected rows would produce, so cross-validation folds
    /// can slice one precomputed bank instead of re-evaluating kernels.
    pub fn subset(&self, rows: &[usize]) -> KernelBank {
        let n = self.anchors.ncols();
        let anchors = DMatrix::from_fn(rows.len(), n, |r, c| self.anchors[(rows[r], c)]);
        let matrices = self
            .matrices
            .iter()
            .map(|k| DMatrix::from_fn(rows.len(), rows.len(), |r, c| k[(rows[r], rows[c])]))
            .collect();
        KernelBank {
            sigmas: self.sigmas.clone(),
            matrices,
            anchors,
            jitter: self.jitter,
        }
    }

    /// Rectangular slice `K_l[rows, cols]` of one Gram matrix.
    pub fn slice(&self, l: usize, rows: &[usize], cols: &[usize]) -> DMatrix<f64> {
        let k = &self.matrices[l];
        DMatrix::from_fn(rows.len(), cols.len(), |r, c| k[(rows[r], cols[c])])
    }
}

/// A convex (or diagnostic, for arbitrary finite weights) combination of
/// the bank's Gram matrices.
#[derive(Debug, Clone)]
pub struct CombinedKernel {
    matrix: DMatrix<f64>,
    weights: DVector<f64>,
}

impl CombinedKernel {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn weights(&self) -> &DVector<f64> {
        &self.weights
    }
}

/// Forms `sum_l d_l K_l`. Any finite weight vector is accepted; the solver
/// only ever passes simplex points.
pub fn combine(bank: &KernelBank, weights: &DVector<f64>) -> Result<CombinedKernel, KernelError> {
    if weights.len() != bank.len() {
        return Err(KernelError::WeightLength {
            got: weights.len(),
            expected: bank.len(),
        });
    }
    if !weights.iter().all(|w| w.is_finite()) {
        return Err(KernelError::NonFiniteWeights);
    }
    let m = bank.size();
    let mut matrix = DMatrix::zeros(m, m);
    for (l, k) in bank.matrices.iter().enumerate() {
        let w = weights[l];
        if w != 0.0 {
            matrix.zip_apply(k, |acc, kv| *acc += w * kv);
        }
    }
    Ok(CombinedKernel {
        matrix,
        weights: weights.clone(),
    })
}

/// Row-scales the combined kernel by the labels: row i becomes `y_i * K_i`.
pub fn signed_kernel(
    ck: &CombinedKernel,
    labels: &DVector<f64>,
) -> Result<DMatrix<f64>, KernelError> {
    let m = ck.matrix.nrows();
    if labels.len() != m {
        return Err(KernelError::LabelLength {
            got: labels.len(),
            expected: m,
        });
    }
    let mut out = ck.matrix.clone();
    for i in 0..m {
        out.row_mut(i).scale_mut(labels[i]);
    }
    Ok(out)
}

/// Kernel values between new points and the anchors: entry `(j, i)` is
/// `kappa(x_new_j, anchor_i)`. Shape p x m, empty p allowed.
pub fn cross_kernel(
    anchors: &DMatrix<f64>,
    x_new: &DMatrix<f64>,
    sigma: f64,
) -> Result<DMatrix<f64>, KernelError> {
    if x_new.nrows() > 0 && x_new.ncols() != anchors.ncols() {
        return Err(KernelError::DimensionMismatch {
            left: x_new.ncols(),
            right: anchors.ncols(),
        });
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(KernelError::BadSigma(sigma));
    }
    let denom = 2.0 * sigma * sigma;
    Ok(DMatrix::from_fn(x_new.nrows(), anchors.nrows(), |j, i| {
        let mut sq = 0.0;
        for k in 0..anchors.ncols() {
            let diff = x_new[(j, k)] - anchors[(i, k)];
            sq += diff * diff;
        }
        (-sq / denom).exp()
    }))
}

/// Smallest eigenvalue over the bank, `min_l lambda_min(K_l)`.
///
/// The smallest eigenvalue of the combination is concave in the weights, so
/// its minimum over the simplex sits at a vertex; this value bounds the
/// valid range of the proximal stepsize in the optimality conditions.
pub fn gamma_upper_bound(bank: &KernelBank) -> f64 {
    bank.matrices
        .iter()
        .map(smallest_eigenvalue)
        .fold(f64::INFINITY, f64::min)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn smallest_eigenvalue(k: &DMatrix<f64>) -> f64 {
    k.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> DMatrix<f64> {
        DMatrix::from_fn(m, n, |_, _| rng.random_range(-2.0..2.0))
    }

    #[test]
    fn gaussian_at_zero_distance_is_one() {
        let x = [0.3, -1.2, 4.0];
        assert_eq!(gaussian(&x, &x, 0.7).unwrap(), 1.0);
    }

    #[test]
    fn gaussian_at_characteristic_distance() {
        // ||x - y||^2 = 2 sigma^2 gives exactly exp(-1).
        let sigma: f64 = 1.3;
        let x = [0.0];
        let y = [(2.0 * sigma * sigma).sqrt()];
        let v = gaussian(&x, &y, sigma).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-12);
        assert!((v - 0.367_879_441_171_442_3).abs() < 1e-12);
    }

    #[test]
    fn gaussian_vanishes_for_tiny_sigma() {
        let v = gaussian(&[0.0], &[1.0], 1e-3).unwrap();
        assert!((0.0..1e-300).contains(&v));
    }

    #[test]
    fn gaussian_input_validation() {
        assert!(gaussian(&[1.0], &[1.0, 2.0], 1.0).is_err());
        assert!(gaussian(&[1.0], &[2.0], 0.0).is_err());
        assert!(gaussian(&[1.0], &[2.0], -1.0).is_err());
    }

    #[test]
    fn bank_single_point() {
        let x = DMatrix::from_row_slice(1, 2, &[0.5, -0.5]);
        let bank = KernelBank::build(&x, &[0.1, 1.0]).unwrap();
        for l in 0..2 {
            assert_eq!(bank.matrix(l).nrows(), 1);
            assert!((bank.matrix(l)[(0, 0)] - 1.0 - bank.jitter()).abs() < 1e-16);
        }
        // A convex combination of equal matrices reproduces them.
        let uniform = DVector::from_element(2, 0.5);
        let ck = combine(&bank, &uniform).unwrap();
        assert!((ck.matrix()[(0, 0)] - 1.0 - bank.jitter()).abs() < 1e-15);
    }

    #[test]
    fn bank_duplicate_rows_stay_positive_definite() {
        let x = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 1.0, 2.0]);
        let bank = KernelBank::build(&x, &[0.5]).unwrap();
        let k = bank.matrix(0);
        assert_eq!(k[(0, 1)], 1.0);
        assert!(smallest_eigenvalue(k) > 0.0);
    }

    #[test]
    fn bank_symmetry_and_diagonal_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = random_matrix(&mut rng, 12, 3);
        let bank = KernelBank::build(&x, &[0.3, 1.0, 2.0]).unwrap();
        for l in 0..bank.len() {
            let k = bank.matrix(l);
            for i in 0..k.nrows() {
                // Diagonal is exactly 1 before the jitter shift.
                assert!((k[(i, i)] - bank.jitter() - 1.0).abs() < 1e-15);
                for j in 0..k.ncols() {
                    assert_eq!(k[(i, j)], k[(j, i)]);
                }
            }
        }
    }

    #[test]
    fn default_bank_has_ten_kernels() {
        let sigmas = [0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.2, 1.5, 1.7, 2.0];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_matrix(&mut rng, 5, 2);
        let bank = KernelBank::build(&x, &sigmas).unwrap();
        assert_eq!(bank.len(), 10);
    }

    #[test]
    fn combine_basis_vector_selects_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random_matrix(&mut rng, 6, 2);
        let bank = KernelBank::build(&x, &[0.4, 1.1]).unwrap();
        let e1 = DVector::from_vec(vec![1.0, 0.0]);
        let ck = combine(&bank, &e1).unwrap();
        assert_eq!(ck.matrix(), bank.matrix(0));

        let zero = DVector::zeros(2);
        assert_eq!(combine(&bank, &zero).unwrap().matrix().sum(), 0.0);
    }

    #[test]
    fn combine_length_and_finite_checks() {
        let x = DMatrix::from_row_slice(2, 1, &[0.0, 1.0]);
        let bank = KernelBank::build(&x, &[1.0]).unwrap();
        assert!(combine(&bank, &DVector::from_vec(vec![0.5, 0.5])).is_err());
        assert!(combine(&bank, &DVector::from_vec(vec![f64::NAN])).is_err());
    }

    #[test]
    fn signed_kernel_scales_rows() {
        let x = DMatrix::from_row_slice(2, 1, &[0.0, 10.0]);
        let bank = KernelBank::build(&x, &[0.1]).unwrap();
        let ck = combine(&bank, &DVector::from_vec(vec![1.0])).unwrap();

        let all_pos = signed_kernel(&ck, &DVector::from_vec(vec![1.0, 1.0])).unwrap();
        assert_eq!(&all_pos, ck.matrix());

        let all_neg = signed_kernel(&ck, &DVector::from_vec(vec![-1.0, -1.0])).unwrap();
        assert_eq!(all_neg, -ck.matrix());

        let mixed = signed_kernel(&ck, &DVector::from_vec(vec![1.0, -1.0])).unwrap();
        for j in 0..2 {
            assert_eq!(mixed[(0, j)], ck.matrix()[(0, j)]);
            assert_eq!(mixed[(1, j)], -ck.matrix()[(1, j)]);
        }
    }

    #[test]
    fn cross_kernel_reproduces_gram_without_jitter() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = random_matrix(&mut rng, 7, 3);
        let bank = KernelBank::build(&x, &[0.8]).unwrap();
        let cross = cross_kernel(bank.anchors(), &x, 0.8).unwrap();
        let gram = bank.matrix(0);
        for i in 0..7 {
            for j in 0..7 {
                let expected = if i == j {
                    gram[(i, j)] - bank.jitter()
                } else {
                    gram[(i, j)]
                };
                assert!((cross[(i, j)] - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn cross_kernel_far_point_and_empty() {
        let anchors = DMatrix::from_row_slice(2, 1, &[0.0, 1.0]);
        let far = DMatrix::from_row_slice(1, 1, &[100.0]);
        let row = cross_kernel(&anchors, &far, 0.05).unwrap();
        assert!(row.iter().all(|&v| v < 1e-300));

        let empty = DMatrix::<f64>::zeros(0, 1);
        let out = cross_kernel(&anchors, &empty, 1.0).unwrap();
        assert_eq!((out.nrows(), out.ncols()), (0, 2));
    }

    #[test]
    fn gamma_bound_identity_banks() {
        // Hand-built banks: identity-like matrices arise from far-apart
        // points with a tiny bandwidth (off-diagonal underflows to 0).
        let x = DMatrix::from_row_slice(3, 1, &[0.0, 1e8, 2e8]);
        let bank = KernelBank::build(&x, &[1.0]).unwrap();
        let bound = gamma_upper_bound(&bank);
        assert!((bound - (1.0 + bank.jitter())).abs() < 1e-12);
    }

    #[test]
    fn gamma_bound_matches_simplex_grid_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let x = random_matrix(&mut rng, 5, 2);
        let bank = KernelBank::build(&x, &[0.5, 1.0, 2.0]).unwrap();
        let bound = gamma_upper_bound(&bank);

        // Dense sweep over the 2-simplex.
        let steps = 40;
        let mut grid_min = f64::INFINITY;
        for a in 0..=steps {
            for b in 0..=(steps - a) {
                let d1 = a as f64 / steps as f64;
                let d2 = b as f64 / steps as f64;
                let d = DVector::from_vec(vec![d1, d2, 1.0 - d1 - d2]);
                let ck = combine(&bank, &d).unwrap();
                grid_min = grid_min.min(smallest_eigenvalue(ck.matrix()));
            }
        }
        assert!((bound - grid_min).abs() < 1e-8);
        assert!(bound > 0.0);
    }

    #[test]
    fn combination_eigenvalue_dominates_bank_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let x = random_matrix(&mut rng, 8, 2);
        let bank = KernelBank::build(&x, &[0.3, 0.9, 1.7]).unwrap();
        let floor = gamma_upper_bound(&bank);
        for _ in 0..20 {
            let raw: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            let d = DVector::from_vec(raw.iter().map(|v| v / sum).collect());
            let ck = combine(&bank, &d).unwrap();
            assert!(smallest_eigenvalue(ck.matrix()) >= floor - 1e-10);
        }
    }

    #[test]
    fn subset_matches_fresh_build() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x = random_matrix(&mut rng, 9, 2);
        let bank = KernelBank::build(&x, &[0.6, 1.4]).unwrap();
        let rows = [1usize, 4, 6, 8];
        let sub = bank.subset(&rows);

        let x_sub = DMatrix::from_fn(rows.len(), 2, |r, c| x[(rows[r], c)]);
        let fresh = KernelBank::build(&x_sub, &[0.6, 1.4]).unwrap();
        for l in 0..2 {
            assert_eq!(sub.matrix(l), fresh.matrix(l));
        }
        assert_eq!(sub.anchors(), fresh.anchors());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn combine_is_linear(seed in 0u64..1000, a in -2.0f64..2.0, b in -2.0f64..2.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_matrix(&mut rng, 4, 2);
            let bank = KernelBank::build(&x, &[0.5, 1.5]).unwrap();
            let d1 = DVector::from_vec(vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]);
            let d2 = DVector::from_vec(vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]);
            let lhs = combine(&bank, &(&d1 * a + &d2 * b)).unwrap();
            let rhs = combine(&bank, &d1).unwrap().matrix() * a + combine(&bank, &d2).unwrap().matrix() * b;
            let diff = (lhs.matrix() - rhs).abs().max();
            prop_assert!(diff <= 1e-12);
        }
    }
}

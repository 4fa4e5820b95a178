//! Trained-model representation, decision function, prediction, accuracy,
//! and JSON persistence.
//!
//! The model keeps only the support vectors (training points with a nonzero
//! multiplier) together with the kernel weights, the intercept, the
//! bandwidth list, and the normalization statistics of the training
//! pipeline. The decision function is
//! `f(x) = -sum_l d_l sum_i lambda_i y_i kappa_l(x, x_i) + b`,
//! summed over the stored support vectors only.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::admm::{SolverParams, SolverState};
use crate::data::{Dataset, NormStats};
use crate::kernels::{cross_kernel, KernelBank};
use crate::simplex::SimplexPoint;

/// Bumped whenever the on-disk layout changes.
pub const MODEL_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("failed to access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("model file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported model schema version {found} (expected {expected})")]
    SchemaVersion { found: u32, expected: u32 },
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("feature dimension mismatch: model expects {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("prediction and truth vectors have different lengths ({pred} vs {truth})")]
    LengthMismatch { pred: usize, truth: usize },
    #[error("accuracy of an empty prediction vector is undefined")]
    EmptyInput,
}

/// One stored support vector: training index, multiplier, label, features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportVector {
    pub index: usize,
    pub lambda: f64,
    pub label: f64,
    pub x: Vec<f64>,
}

/// Trained MKL-SVM artifact, sufficient to evaluate the decision function
/// on new points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Model {
    version: u32,
    sigmas: Vec<f64>,
    d: SimplexPoint,
    b: f64,
    support: Vec<SupportVector>,
    norm: NormStats,
    params: SolverParams,
}

impl Model {
    /// Assembles the model from a final solver iterate: support vectors are
    /// exactly the training points with a nonzero multiplier.
    pub fn from_solution(
        state: &SolverState,
        ds: &Dataset,
        bank: &KernelBank,
        params: &SolverParams,
    ) -> Model {
        let support = state
            .lambda
            .iter()
            .enumerate()
            .filter(|(_, &l)| l != 0.0)
            .map(|(i, &lambda)| SupportVector {
                index: i,
                lambda,
                label: ds.labels()[i],
                x: ds.features().row(i).iter().copied().collect(),
            })
            .collect();
        Model {
            version: MODEL_SCHEMA_VERSION,
            sigmas: bank.sigmas().to_vec(),
            d: SimplexPoint::new_unchecked(state.d.iter().copied().collect()),
            b: state.b,
            support,
            norm: NormStats::identity(ds.dim()),
            params: params.clone(),
        }
    }

    /// Attaches the normalization statistics the training pipeline used, so
    /// prediction on raw features can reproduce them.
    pub fn with_norm(mut self, norm: NormStats) -> Model {
        self.norm = norm;
        self
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }

    pub fn weights(&self) -> &SimplexPoint {
        &self.d
    }

    pub fn intercept(&self) -> f64 {
        self.b
    }

    pub fn support(&self) -> &[SupportVector] {
        &self.support
    }

    pub fn norm(&self) -> &NormStats {
        &self.norm
    }

    pub fn params(&self) -> &SolverParams {
        &self.params
    }

    /// Feature dimension the model expects.
    pub fn dim(&self) -> usize {
        self.support
            .first()
            .map_or(self.norm.dim(), |sv| sv.x.len())
    }

    /// Decision values `f(x) + b` for rows of `x_new` (already normalized
    /// with the model's stats). Only support vectors enter the sums, and
    /// kernels with zero weight are skipped entirely.
    pub fn decision_values(&self, x_new: &DMatrix<f64>) -> Result<DVector<f64>, ModelError> {
        let p = x_new.nrows();
        if self.support.is_empty() {
            return Ok(DVector::from_element(p, self.b));
        }
        let n = self.dim();
        if p > 0 && x_new.ncols() != n {
            return Err(ModelError::DimensionMismatch {
                expected: n,
                got: x_new.ncols(),
            });
        }

        let sv_count = self.support.len();
        let sv_matrix = DMatrix::from_fn(sv_count, n, |i, j| self.support[i].x[j]);
        // Reconstructed coefficients w_i = -lambda_i y_i.
        let coeffs = DVector::from_fn(sv_count, |i, _| {
            -self.support[i].lambda * self.support[i].label
        });

        let mut f = DVector::from_element(p, self.b);
        for (l, &sigma) in self.sigmas.iter().enumerate() {
            let dl = self.d.values()[l];
            if dl == 0.0 {
                continue;
            }
            let cross = cross_kernel(&sv_matrix, x_new, sigma).map_err(|_| {
                ModelError::DimensionMismatch {
                    expected: n,
                    got: x_new.ncols(),
                }
            })?;
            f.axpy(dl, &(cross * &coeffs), 1.0);
        }
        Ok(f)
    }

    /// Sign of the decision values, with an exact zero mapped to +1.
    pub fn predict(&self, x_new: &DMatrix<f64>) -> Result<DVector<f64>, ModelError> {
        let f = self.decision_values(x_new)?;
        Ok(f.map(|v| if v >= 0.0 { 1.0 } else { -1.0 }))
    }

    /// Serializes to pretty JSON. Floats go through the shortest
    /// round-trip representation, so reloading reproduces them bit-exactly.
    pub fn save(&self, path: &Path) -> Result<(), ModelError> {
        let json = serde_json::to_string_pretty(self)?;
        fs::write(path, json).map_err(|source| ModelError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Model, ModelError> {
        let text = fs::read_to_string(path).map_err(|source| ModelError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let model: Model = serde_json::from_str(&text)?;
        if model.version != MODEL_SCHEMA_VERSION {
            return Err(ModelError::SchemaVersion {
                found: model.version,
                expected: MODEL_SCHEMA_VERSION,
            });
        }
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.sigmas.len() != self.d.len() {
            return Err(ModelError::Invalid(format!(
                "{} sigmas but {} kernel weights",
                self.sigmas.len(),
                self.d.len()
            )));
        }
        if !self.sigmas.iter().all(|&s| s > 0.0 && s.is_finite()) {
            return Err(ModelError::Invalid("non-positive sigma".into()));
        }
        let sum: f64 = self.d.values().iter().sum();
        if !self.d.values().iter().all(|&v| v >= 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(ModelError::Invalid(
                "kernel weights are not on the simplex".into(),
            ));
        }
        for sv in &self.support {
            if sv.label != 1.0 && sv.label != -1.0 {
                return Err(ModelError::Invalid(format!(
                    "support vector {} has label {}",
                    sv.index, sv.label
                )));
            }
            if sv.x.len() != self.dim() {
                return Err(ModelError::Invalid(
                    "support vectors disagree on the feature dimension".into(),
                ));
            }
        }
        self.params
            .validate()
            .map_err(|e| ModelError::Invalid(e.to_string()))?;
        Ok(())
    }
}

/// Fraction of agreeing signs: `1 - sum|pred - truth| / (2 m)`.
pub fn accuracy(pred: &DVector<f64>, truth: &DVector<f64>) -> Result<f64, ModelError> {
    if pred.len() != truth.len() {
        return Err(ModelError::LengthMismatch {
            pred: pred.len(),
            truth: truth.len(),
        });
    }
    if pred.is_empty() {
        return Err(ModelError::EmptyInput);
    }
    let matches = pred
        .iter()
        .zip(truth.iter())
        .filter(|(p, t)| p == t)
        .count();
    Ok(matches as f64 / pred.len() as f64)
}

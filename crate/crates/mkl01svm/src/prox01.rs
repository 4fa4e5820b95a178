//! Proximal operator of the scaled step-function penalty `C * ||(.)_+||_0`
//! and the data working set derived from it.
//!
//! The scalar map has a closed form: values in `(0, sqrt(2*gamma*C)]` drop
//! to zero, everything else passes through unchanged. Non-finite inputs
//! propagate so the solver's state guard can catch divergence.

use nalgebra::DVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProxError {
    #[error("gamma must be positive, got {0}")]
    BadGamma(f64),
    #[error("C must be positive, got {0}")]
    BadC(f64),
}

/// Parameters of the proximal map, with the derived threshold `sqrt(2*gamma*C)`.
#[derive(Debug, Clone, Copy)]
pub struct ProxParams {
    gamma: f64,
    c: f64,
    threshold: f64,
}

impl ProxParams {
    pub fn new(gamma: f64, c: f64) -> Result<Self, ProxError> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(ProxError::BadGamma(gamma));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(ProxError::BadC(c));
        }
        Ok(ProxParams {
            gamma,
            c,
            threshold: (2.0 * gamma * c).sqrt(),
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// The jump location `sqrt(2*gamma*C)`.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

/// Data working set: indices whose shifted margin lies strictly inside
/// `(0, sqrt(2C/rho1))`. Its limit indexes the support vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkingSetT {
    indices: Vec<usize>,
}

impl WorkingSetT {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// Scalar proximal map: 0 on `(0, threshold]`, identity elsewhere.
///
/// The boundary `z == threshold` maps to 0 (the interval is right-closed),
/// which is also the tie rule when both candidates attain the same objective.
pub fn prox_scalar(z: f64, p: &ProxParams) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z <= 0.0 || z > p.threshold {
        z
    } else {
        0.0
    }
}

/// Componentwise application of [`prox_scalar`]; the objective separates
/// across components so no coupling occurs.
pub fn prox_vector(z: &DVector<f64>, p: &ProxParams) -> DVector<f64> {
    z.map(|zi| prox_scalar(zi, p))
}

/// Builds the working set `{i : s_i in (0, sqrt(2C/rho1))}`.
///
/// Both interval ends are open, exactly as the update rule defines it; this
/// differs from the proximal map at the single point `s_i == sqrt(2C/rho1)`.
pub fn working_set(s: &DVector<f64>, c: f64, rho1: f64) -> WorkingSetT {
    debug_assert!(c > 0.0 && rho1 > 0.0);
    let bound = (2.0 * c / rho1).sqrt();
    let indices = s
        .iter()
        .enumerate()
        .filter(|(_, &si)| si > 0.0 && si < bound)
        .map(|(i, _)| i)
        .collect();
    WorkingSetT { indices }
}

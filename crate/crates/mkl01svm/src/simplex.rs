//! Euclidean projection onto the standard probability simplex.
//!
//! The kernel-weight update of the ADMM solver produces an unconstrained
//! solution of a linear system; this module repairs it so that the weights
//! stay nonnegative and sum to one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimplexError {
    #[error("cannot project an empty vector")]
    Empty,
    #[error("input contains a non-finite entry")]
    NonFinite,
}

/// A point on the standard simplex: nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimplexPoint(Vec<f64>);

impl SimplexPoint {
    /// Validates the simplex invariants (entries >= 0, sum within 1e-12 of 1).
    pub fn new(values: Vec<f64>) -> Result<Self, SimplexError> {
        if values.is_empty() {
            return Err(SimplexError::Empty);
        }
        if !values.iter().all(|v| v.is_finite() && *v >= 0.0) {
            return Err(SimplexError::NonFinite);
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(SimplexError::NonFinite);
        }
        Ok(SimplexPoint(values))
    }

    pub(crate) fn new_unchecked(values: Vec<f64>) -> Self {
        SimplexPoint(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// Projects `v` onto the standard simplex in the Euclidean norm.
///
/// Sort-and-threshold algorithm: sort the entries in decreasing order,
/// find the largest prefix whose shifted entries stay positive, then shift
/// every entry by the prefix offset and clip at zero. Exact in O(L log L).
pub fn project_simplex(v: &[f64]) -> Result<SimplexPoint, SimplexError> {
    if v.is_empty() {
        return Err(SimplexError::Empty);
    }
    if !v.iter().all(|x| x.is_finite()) {
        return Err(SimplexError::NonFinite);
    }

    // Ties broken by original index: the projection is unique anyway, but a
    // deterministic sort keeps intermediate steps reproducible.
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[b].partial_cmp(&v[a]).unwrap().then(a.cmp(&b)));

    let mut prefix = 0.0;
    let mut tau = 0.0;
    for (j, &idx) in order.iter().enumerate() {
        prefix += v[idx];
        let candidate = (1.0 - prefix) / (j + 1) as f64;
        if v[idx] + candidate > 0.0 {
            tau = candidate;
        }
    }

    let projected = v.iter().map(|&x| (x + tau).max(0.0)).collect();
    Ok(SimplexPoint(projected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force oracle: try every nonempty support pattern, solve the
    /// equality-constrained least squares on that support, keep the feasible
    /// candidate with the smallest distance to `v`.
    pub(crate) fn project_by_enumeration(v: &[f64]) -> Vec<f64> {
        let l = v.len();
        let mut best: Option<(f64, Vec<f64>)> = None;
        for mask in 1u32..(1 << l) {
            let support: Vec<usize> = (0..l).filter(|i| mask & (1 << i) != 0).collect();
            let shift = (1.0 - support.iter().map(|&i| v[i]).sum::<f64>()) / support.len() as f64;
            let mut x = vec![0.0; l];
            let mut feasible = true;
            for &i in &support {
                x[i] = v[i] + shift;
                if x[i] < -1e-12 {
                    feasible = false;
                    break;
                }
            }
            if !feasible {
                continue;
            }
            let dist: f64 = x.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
            if best.as_ref().is_none_or(|(d, _)| dist < *d) {
                best = Some((dist, x));
            }
        }
        best.expect("some support is always feasible").1
    }

    #[test]
    fn feasible_point_is_fixed() {
        let p = project_simplex(&[0.2, 0.3, 0.5]).unwrap();
        for (a, b) in p.values().iter().zip([0.2, 0.3, 0.5]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn clips_to_vertex() {
        // Frozen from the enumeration oracle.
        let p = project_simplex(&[2.0, 0.0]).unwrap();
        assert_eq!(p.values(), &[1.0, 0.0]);
        let oracle = project_by_enumeration(&[2.0, 0.0]);
        assert_eq!(oracle, vec![1.0, 0.0]);
    }

    #[test]
    fn symmetric_input_splits_evenly() {
        let p = project_simplex(&[0.6, 0.6]).unwrap();
        assert!((p.values()[0] - 0.5).abs() < 1e-15);
        assert!((p.values()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_entry_maps_to_one() {
        for v in [-5.0, 0.0, 0.3, 7.0] {
            let p = project_simplex(&[v]).unwrap();
            assert_eq!(p.values(), &[1.0]);
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(project_simplex(&[]), Err(SimplexError::Empty)));
    }

    #[test]
    fn non_finite_rejected() {
        assert!(project_simplex(&[1.0, f64::NAN]).is_err());
        assert!(project_simplex(&[1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::new(vec![0.5, 0.5]).is_ok());
        assert!(SimplexPoint::new(vec![0.5, 0.4]).is_err());
        assert!(SimplexPoint::new(vec![1.1, -0.1]).is_err());
        assert!(SimplexPoint::new(vec![]).is_err());
    }

    proptest! {
        #[test]
        fn output_is_on_simplex(v in proptest::collection::vec(-10.0f64..10.0, 1..8)) {
            let p = project_simplex(&v).unwrap();
            prop_assert!(p.values().iter().all(|&x| x >= 0.0));
            let sum: f64 = p.values().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
        }

        #[test]
        fn idempotent(v in proptest::collection::vec(-10.0f64..10.0, 1..8)) {
            let once = project_simplex(&v).unwrap();
            let twice = project_simplex(once.values()).unwrap();
            for (a, b) in once.values().iter().zip(twice.values()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn order_preserving(v in proptest::collection::vec(-10.0f64..10.0, 2..8)) {
            let p = project_simplex(&v).unwrap();
            for i in 0..v.len() {
                for j in 0..v.len() {
                    if v[i] >= v[j] {
                        prop_assert!(p.values()[i] >= p.values()[j] - 1e-12);
                    }
                }
            }
        }

        #[test]
        fn matches_enumeration_oracle(v in proptest::collection::vec(-3.0f64..3.0, 1..6)) {
            let p = project_simplex(&v).unwrap();
            let oracle = project_by_enumeration(&v);
            for (a, b) in p.values().iter().zip(&oracle) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

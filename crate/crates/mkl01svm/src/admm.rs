//! Working-set ADMM for the multiple-kernel SVM with the (0,1) loss.
//!
//! One sweep updates, in this exact order: the slack vector `u` (via the
//! proximal map and the data working set T), the coefficient vector `w`
//! (an SPD linear solve), the intercept `b`, the auxiliary weights `z`
//! (positive part, defining the kernel working set S), the kernel weights
//! `d` (linear solve, then simplex projection, then masking off S), and the
//! three multipliers `theta`, `alpha`, `lambda`. The `alpha` update must see
//! the *pre-projection* `d`, otherwise the sum constraint multiplier never
//! moves; the sweep threads that vector through explicitly.
//!
//! The stationarity verifier measures the KKT-like first-order conditions
//! of the problem at a given point, with the multiplier convention
//! `(-theta, alpha, lambda)` and proximal stepsize `gamma = 1/rho1` that the
//! limit of the iteration delivers.

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::data::Dataset;
use crate::kernels::{combine, CombinedKernel, KernelBank, KernelError};
use crate::model::Model;
use crate::prox01::{prox_vector, working_set, ProxParams, WorkingSetT};
use crate::simplex::project_simplex;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("labels must contain both classes")]
    SingleClass,
    #[error("labels must be -1 or +1, found {0}")]
    InvalidLabel(f64),
    #[error("dataset has {data} rows but the kernel bank was built on {bank}")]
    SizeMismatch { data: usize, bank: usize },
    #[error("invalid solver parameter: {0}")]
    BadParam(String),
    #[error("linear solve for the {system}-system failed; the kernel bank lost positive definiteness or the state carries non-finite values")]
    LinearSolve { system: &'static str },
    #[error("solver aborted at iteration {iter}: {reason}")]
    Aborted {
        iter: usize,
        reason: String,
        trace: Box<Trace>,
    },
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// All knobs of the ADMM sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    #[serde(rename = "C")]
    pub c: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl SolverParams {
    pub fn new(
        c: f64,
        rho1: f64,
        rho2: f64,
        rho3: f64,
        tol: f64,
        max_iter: usize,
    ) -> Result<Self, SolverError> {
        let params = SolverParams {
            c,
            rho1,
            rho2,
            rho3,
            tol,
            max_iter,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        for (name, v) in [
            ("C", self.c),
            ("rho1", self.rho1),
            ("rho2", self.rho2),
            ("rho3", self.rho3),
            ("tol", self.tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SolverError::BadParam(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.max_iter == 0 {
            return Err(SolverError::BadParam("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            c: 1.0,
            rho1: 1.0,
            rho2: 1.0,
            rho3: 1.0,
            tol: 1e-3,
            max_iter: 1000,
        }
    }
}

/// The full iterate of the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub w: DVector<f64>,
    pub d: DVector<f64>,
    pub b: f64,
    pub u: DVector<f64>,
    pub z: DVector<f64>,
    pub theta: DVector<f64>,
    pub alpha: f64,
    pub lambda: DVector<f64>,
    pub iter: usize,
}

impl SolverState {
    pub fn is_finite(&self) -> bool {
        self.b.is_finite()
            && self.alpha.is_finite()
            && self.w.iter().all(|v| v.is_finite())
            && self.d.iter().all(|v| v.is_finite())
            && self.u.iter().all(|v| v.is_finite())
            && self.z.iter().all(|v| v.is_finite())
            && self.theta.iter().all(|v| v.is_finite())
            && self.lambda.iter().all(|v| v.is_finite())
    }
}

/// Kernel working set: indices with `d_l + theta_l / rho2 > 0` (strict).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkingSetS {
    indices: Vec<usize>,
}

impl WorkingSetS {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, l: usize) -> bool {
        self.indices.binary_search(&l).is_ok()
    }
}

/// Working sets of one sweep plus the pre-projection kernel weights that
/// the `alpha` update consumed.
#[derive(Debug, Clone)]
pub struct SweepSets {
    pub t: WorkingSetT,
    pub s: WorkingSetS,
    pub d_pre_projection: DVector<f64>,
}

/// Norms of the differences between two successive iterates, in the order
/// (u, w, b, z, d, theta, alpha, lambda).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Betas {
    pub u: f64,
    pub w: f64,
    pub b: f64,
    pub z: f64,
    pub d: f64,
    pub theta: f64,
    pub alpha: f64,
    pub lambda: f64,
}

impl Betas {
    pub fn as_array(&self) -> [f64; 8] {
        [
            self.u,
            self.w,
            self.b,
            self.z,
            self.d,
            self.theta,
            self.alpha,
            self.lambda,
        ]
    }

    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, f64::max)
    }
}

/// Successive-iterate differences and whether their maximum fell below `tol`.
pub fn stopping(prev: &SolverState, curr: &SolverState, tol: f64) -> (Betas, bool) {
    let betas = Betas {
        u: (&curr.u - &prev.u).norm(),
        w: (&curr.w - &prev.w).norm(),
        b: (curr.b - prev.b).abs(),
        z: (&curr.z - &prev.z).norm(),
        d: (&curr.d - &prev.d).norm(),
        theta: (&curr.theta - &prev.theta).norm(),
        alpha: (curr.alpha - prev.alpha).abs(),
        lambda: (&curr.lambda - &prev.lambda).norm(),
    };
    let stop = betas.max() < tol;
    (betas, stop)
}

/// One line of the per-iteration trace.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRecord {
    pub iter: usize,
    pub objective: f64,
    pub betas: [f64; 8],
    pub size_t: usize,
    pub size_s: usize,
    pub d: Vec<f64>,
}

/// Per-iteration history of a solve.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }

    /// CSV with columns `iter,J,beta1..beta8,sizeT,sizeS,d_1..d_L`.
    pub fn to_csv_string(&self) -> String {
        let l = self.records.first().map_or(0, |r| r.d.len());
        let mut out =
            String::from("iter,J,beta1,beta2,beta3,beta4,beta5,beta6,beta7,beta8,sizeT,sizeS");
        for i in 1..=l {
            out.push_str(&format!(",d_{i}"));
        }
        out.push('\n');
        for r in &self.records {
            out.push_str(&format!("{},{}", r.iter, r.objective));
            for b in r.betas {
                out.push_str(&format!(",{b}"));
            }
            out.push_str(&format!(",{},{}", r.size_t, r.size_s));
            for v in &r.d {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &std::path::Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv_string())
    }
}

/// The working-set ADMM bound to one kernel bank and label vector.
pub struct AdmmSolver<'a> {
    bank: &'a KernelBank,
    labels: DVector<f64>,
    params: SolverParams,
}

impl<'a> AdmmSolver<'a> {
    pub fn new(
        bank: &'a KernelBank,
        labels: &DVector<f64>,
        params: SolverParams,
    ) -> Result<Self, SolverError> {
        params.validate()?;
        if labels.len() != bank.size() {
            return Err(SolverError::SizeMismatch {
                data: labels.len(),
                bank: bank.size(),
            });
        }
        for &y in labels.iter() {
            if y != 1.0 && y != -1.0 {
                return Err(SolverError::InvalidLabel(y));
            }
        }
        let has_pos = labels.iter().any(|&y| y == 1.0);
        let has_neg = labels.iter().any(|&y| y == -1.0);
        if !(has_pos && has_neg) {
            return Err(SolverError::SingleClass);
        }
        Ok(AdmmSolver {
            bank,
            labels: labels.clone(),
            params,
        })
    }

    pub fn params(&self) -> &SolverParams {
        &self.params
    }

    pub fn labels(&self) -> &DVector<f64> {
        &self.labels
    }

    pub fn bank(&self) -> &KernelBank {
        self.bank
    }

    fn m(&self) -> usize {
        self.labels.len()
    }

    fn num_kernels(&self) -> usize {
        self.bank.len()
    }

    /// Starting point: everything zero except uniform kernel weights and an
    /// intercept sign chosen so the initial objective is `C * min(m+, m-)`.
    pub fn init_state(&self) -> SolverState {
        let m = self.m();
        let l = self.num_kernels();
        let pos = self.labels.iter().filter(|&&y| y == 1.0).count();
        let neg = m - pos;
        let b = if neg <= pos { 1.0 } else { -1.0 };
        SolverState {
            w: DVector::zeros(m),
            d: DVector::from_element(l, 1.0 / l as f64),
            b,
            u: DVector::zeros(m),
            z: DVector::zeros(l),
            theta: DVector::zeros(l),
            alpha: 0.0,
            lambda: DVector::zeros(m),
            iter: 0,
        }
    }

    /// Objective `J = w' K(d) w / 2 + C * #(strict margin violations)` at
    /// the state's (w, d, b).
    pub fn objective(&self, state: &SolverState) -> f64 {
        objective_value(
            &state.w,
            &state.d,
            state.b,
            self.bank,
            &self.labels,
            self.params.c,
        )
    }

    /// Slack update `u = prox(s)` with `s = 1 - A(d)w - by - lambda/rho1`,
    /// returning the data working set of `s`.
    pub fn update_u(&self, state: &mut SolverState) -> Result<WorkingSetT, SolverError> {
        let kd = combine(self.bank, &state.d)?;
        Ok(self.update_u_with(state, &kd))
    }

    fn update_u_with(&self, state: &mut SolverState, kd: &CombinedKernel) -> WorkingSetT {
        let kw = kd.matrix() * &state.w;
        let m = self.m();
        let mut s = DVector::zeros(m);
        for i in 0..m {
            let y = self.labels[i];
            s[i] = 1.0 - y * kw[i] - state.b * y - state.lambda[i] / self.params.rho1;
        }
        let prox = ProxParams::new(1.0 / self.params.rho1, self.params.c)
            .expect("validated params yield a valid prox");
        state.u = prox_vector(&s, &prox);
        working_set(&s, self.params.c, self.params.rho1)
    }

    /// Coefficient update: the unique solution of
    /// `(I + rho1 K(d)) w = -D_y [lambda + rho1 (u + b y - 1)]`.
    pub fn update_w(&self, state: &mut SolverState) -> Result<(), SolverError> {
        let kd = combine(self.bank, &state.d)?;
        self.update_w_with(state, &kd)
    }

    fn update_w_with(
        &self,
        state: &mut SolverState,
        kd: &CombinedKernel,
    ) -> Result<(), SolverError> {
        let m = self.m();
        let rho1 = self.params.rho1;
        let mut lhs = kd.matrix() * rho1;
        for i in 0..m {
            lhs[(i, i)] += 1.0;
        }
        let mut rhs = DVector::zeros(m);
        for i in 0..m {
            let y = self.labels[i];
            rhs[i] = -y * (state.lambda[i] + rho1 * (state.u[i] + state.b * y - 1.0));
        }
        #[cfg(debug_assertions)]
        let lhs_check = lhs.clone();
        let chol = Cholesky::new(lhs).ok_or(SolverError::LinearSolve { system: "w" })?;
        state.w = chol.solve(&rhs);
        #[cfg(debug_assertions)]
        {
            let residual = (&lhs_check * &state.w - &rhs).norm();
            debug_assert!(
                residual <= 1e-8 * (1.0 + rhs.norm()),
                "w-solve residual {residual}"
            );
        }
        Ok(())
    }

    /// Intercept update `b = -y'[lambda + rho1 (u + A(d)w - 1)] / (m rho1)`.
    pub fn update_b(&self, state: &mut SolverState) -> Result<(), SolverError> {
        let kd = combine(self.bank, &state.d)?;
        self.update_b_with(state, &kd);
        Ok(())
    }

    fn update_b_with(&self, state: &mut SolverState, kd: &CombinedKernel) {
        let kw = kd.matrix() * &state.w;
        let m = self.m();
        let rho1 = self.params.rho1;
        let mut acc = 0.0;
        for i in 0..m {
            let y = self.labels[i];
            acc += y * (state.lambda[i] + rho1 * (state.u[i] + y * kw[i] - 1.0));
        }
        state.b = -acc / (m as f64 * rho1);
    }

    /// Auxiliary update `z = (d + theta/rho2)_+` and the kernel working set
    /// (the strict-positive support of the shifted weights).
    pub fn update_z(&self, state: &mut SolverState) -> WorkingSetS {
        let l = self.num_kernels();
        let rho2 = self.params.rho2;
        let mut indices = Vec::new();
        let mut z = DVector::zeros(l);
        for i in 0..l {
            let shifted = state.d[i] + state.theta[i] / rho2;
            if shifted > 0.0 {
                z[i] = shifted;
                indices.push(i);
            }
        }
        state.z = z;
        WorkingSetS { indices }
    }

    /// Kernel-weight update: solve the L x L SPD system, project onto the
    /// simplex, zero the entries off the kernel working set (renormalizing
    /// if the mask removed mass). Returns the pre-projection solution,
    /// which the `alpha` update needs.
    pub fn update_d(
        &self,
        state: &mut SolverState,
        s_set: &WorkingSetS,
    ) -> Result<DVector<f64>, SolverError> {
        let products = self.kernel_products(&state.w);
        self.update_d_with(state, &products, s_set)
    }

    /// Matrix with columns `K_l w`.
    fn kernel_products(&self, w: &DVector<f64>) -> DMatrix<f64> {
        let m = self.m();
        let l = self.num_kernels();
        let mut products = DMatrix::zeros(m, l);
        for j in 0..l {
            products.set_column(j, &(self.bank.matrix(j) * w));
        }
        products
    }

    fn update_d_with(
        &self,
        state: &mut SolverState,
        products: &DMatrix<f64>,
        s_set: &WorkingSetS,
    ) -> Result<DVector<f64>, SolverError> {
        let m = self.m();
        let l = self.num_kernels();
        let (rho1, rho2, rho3) = (self.params.rho1, self.params.rho2, self.params.rho3);

        let mut lhs = products.tr_mul(products) * rho1;
        for i in 0..l {
            for j in 0..l {
                lhs[(i, j)] += rho3;
            }
            lhs[(i, i)] += rho2;
        }

        // v_l = -(K_l w)' [w/2 + D_y(lambda + rho1 (u + b y - 1))]
        let mut q = DVector::zeros(m);
        for i in 0..m {
            let y = self.labels[i];
            q[i] =
                0.5 * state.w[i] + y * (state.lambda[i] + rho1 * (state.u[i] + state.b * y - 1.0));
        }
        let v = -products.tr_mul(&q);

        let mut rhs = v - &state.theta;
        rhs.axpy(rho2, &state.z, 1.0);
        rhs.add_scalar_mut(rho3 - state.alpha);

        #[cfg(debug_assertions)]
        let lhs_check = lhs.clone();
        let chol = Cholesky::new(lhs).ok_or(SolverError::LinearSolve { system: "d" })?;
        let d_pre = chol.solve(&rhs);
        #[cfg(debug_assertions)]
        {
            let residual = (&lhs_check * &d_pre - &rhs).norm();
            debug_assert!(
                residual <= 1e-8 * (1.0 + rhs.norm()),
                "d-solve residual {residual}"
            );
        }

        let projected = project_simplex(d_pre.as_slice())
            .map_err(|_| SolverError::LinearSolve { system: "d" })?;
        let mut d_new = DVector::from_vec(projected.into_vec());
        let mut removed = 0.0;
        for i in 0..l {
            if !s_set.contains(i) {
                removed += d_new[i];
                d_new[i] = 0.0;
            }
        }
        if removed > 0.0 {
            let sum = d_new.sum();
            // sum == 0 turns d into NaN here and the state guard aborts.
            d_new /= sum;
        }
        state.d = d_new;
        Ok(d_pre)
    }

    /// Multiplier updates: `theta` on the kernel working set, `alpha` from
    /// the pre-projection weights, `lambda` on the data working set with
    /// everything else removed.
    pub fn update_duals(
        &self,
        state: &mut SolverState,
        t_set: &WorkingSetT,
        s_set: &WorkingSetS,
        d_pre_projection: &DVector<f64>,
    ) {
        let products = self.kernel_products(&state.w);
        self.update_duals_with(state, &products, t_set, s_set, d_pre_projection);
    }

    fn update_duals_with(
        &self,
        state: &mut SolverState,
        products: &DMatrix<f64>,
        t_set: &WorkingSetT,
        s_set: &WorkingSetS,
        d_pre_projection: &DVector<f64>,
    ) {
        let (rho1, rho2, rho3) = (self.params.rho1, self.params.rho2, self.params.rho3);

        for &l in s_set.indices() {
            state.theta[l] += rho2 * (state.d[l] - state.z[l]);
        }

        state.alpha += rho3 * (d_pre_projection.sum() - 1.0);

        // residual r = u + A(d_new) w + b y - 1, with A(d)w = D_y (sum_l d_l K_l w)
        let f = products * &state.d;
        let mut new_lambda = DVector::zeros(self.m());
        for &i in t_set.indices() {
            let y = self.labels[i];
            let r = state.u[i] + y * f[i] + state.b * y - 1.0;
            new_lambda[i] = state.lambda[i] + rho1 * r;
        }
        state.lambda = new_lambda;
    }

    /// One full sweep in the fixed update order; shares the combined kernel
    /// and the `K_l w` products across the steps that need them.
    pub fn sweep(&self, state: &mut SolverState) -> Result<SweepSets, SolverError> {
        let kd = combine(self.bank, &state.d)?;
        let t_set = self.update_u_with(state, &kd);
        self.update_w_with(state, &kd)?;
        self.update_b_with(state, &kd);
        let s_set = self.update_z(state);
        let products = self.kernel_products(&state.w);
        let d_pre = self.update_d_with(state, &products, &s_set)?;
        self.update_duals_with(state, &products, &t_set, &s_set, &d_pre);
        state.iter += 1;
        Ok(SweepSets {
            t: t_set,
            s: s_set,
            d_pre_projection: d_pre,
        })
    }
}

/// Objective `J(w, d, b) = w' K(d) w / 2 + C * #{i : y_i f(x_i) < 1}`.
pub fn objective_value(
    w: &DVector<f64>,
    d: &DVector<f64>,
    b: f64,
    bank: &KernelBank,
    labels: &DVector<f64>,
    c: f64,
) -> f64 {
    let m = bank.size();
    let mut f = DVector::zeros(m);
    for l in 0..bank.len() {
        if d[l] != 0.0 {
            f.axpy(d[l], &(bank.matrix(l) * w), 1.0);
        }
    }
    let quad = 0.5 * w.dot(&f);
    let mut violations = 0usize;
    for i in 0..m {
        if 1.0 - labels[i] * (f[i] + b) > 0.0 {
            violations += 1;
        }
    }
    quad + c * violations as f64
}

/// Everything a finished solve hands back: the trained model, the full
/// per-iteration trace, a stationarity report at `gamma = 1/rho1`, the raw
/// final iterate, the final data working set, and the convergence flag
/// (hitting `max_iter` is a flagged outcome, not an error).
#[derive(Debug)]
pub struct SolveOutput {
    pub model: Model,
    pub trace: Trace,
    pub report: StationarityReport,
    pub state: SolverState,
    pub support: WorkingSetT,
    pub converged: bool,
    pub iterations: usize,
}

/// Runs the sweep until the stopping criterion fires or `max_iter` sweeps
/// have been applied.
pub fn solve(
    ds: &Dataset,
    bank: &KernelBank,
    params: &SolverParams,
) -> Result<SolveOutput, SolverError> {
    if ds.len() != bank.size() {
        return Err(SolverError::SizeMismatch {
            data: ds.len(),
            bank: bank.size(),
        });
    }
    let solver = AdmmSolver::new(bank, ds.labels(), params.clone())?;
    let mut state = solver.init_state();
    let mut prev = state.clone();
    let mut trace = Trace::default();
    let mut converged = false;
    let mut support = working_set(&DVector::zeros(ds.len()), params.c, params.rho1);

    for _ in 0..params.max_iter {
        let sets = match solver.sweep(&mut state) {
            Ok(sets) => sets,
            Err(SolverError::LinearSolve { system }) => {
                return Err(SolverError::Aborted {
                    iter: state.iter,
                    reason: format!("linear solve for the {system}-system failed"),
                    trace: Box::new(trace),
                });
            }
            Err(e) => return Err(e),
        };
        let (betas, stop) = stopping(&prev, &state, params.tol);
        trace.records.push(TraceRecord {
            iter: state.iter,
            objective: solver.objective(&state),
            betas: betas.as_array(),
            size_t: sets.t.len(),
            size_s: sets.s.len(),
            d: state.d.iter().copied().collect(),
        });
        if !state.is_finite() {
            return Err(SolverError::Aborted {
                iter: state.iter,
                reason: "non-finite state".into(),
                trace: Box::new(trace),
            });
        }
        support = sets.t;
        if stop {
            converged = true;
            break;
        }
        prev.clone_from(&state);
    }

    let report = check_p_stationary(
        &state.w,
        &state.d,
        state.b,
        &state.u,
        &state.theta,
        state.alpha,
        &state.lambda,
        bank,
        ds.labels(),
        params.c,
        1.0 / params.rho1,
        10.0 * params.tol,
    );
    let model = Model::from_solution(&state, ds, bank, params);
    let iterations = state.iter;
    Ok(SolveOutput {
        model,
        trace,
        report,
        state,
        support,
        converged,
        iterations,
    })
}

/// The nine first-order condition residuals, in one struct so the report
/// schema stays fixed.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ResidualSet {
    pub primal_d_nonneg: f64,
    pub primal_d_sum: f64,
    pub primal_affine: f64,
    pub dual_theta_nonneg: f64,
    pub complementarity: f64,
    pub stationarity_w: f64,
    pub stationarity_d: f64,
    pub stationarity_b: f64,
    pub prox_fixed_point: f64,
}

impl ResidualSet {
    pub fn named(&self) -> [(&'static str, f64); 9] {
        [
            ("primal_d_nonneg", self.primal_d_nonneg),
            ("primal_d_sum", self.primal_d_sum),
            ("primal_affine", self.primal_affine),
            ("dual_theta_nonneg", self.dual_theta_nonneg),
            ("complementarity", self.complementarity),
            ("stationarity_w", self.stationarity_w),
            ("stationarity_d", self.stationarity_d),
            ("stationarity_b", self.stationarity_b),
            ("prox_fixed_point", self.prox_fixed_point),
        ]
    }

    pub fn max(&self) -> f64 {
        self.named().into_iter().fold(0.0, |acc, (_, v)| acc.max(v))
    }
}

/// Result of measuring the first-order conditions at a point.
///
/// `residuals` are relative (each raw residual divided by one plus the
/// magnitude of the quantities entering the condition); `satisfied` holds
/// exactly when their maximum is at most `tolerance`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StationarityReport {
    pub residuals: ResidualSet,
    pub raw_residuals: ResidualSet,
    pub gamma_used: f64,
    pub tolerance: f64,
    pub satisfied: bool,
}

/// Measures the KKT-like conditions at `(w, d, b, u)` with multipliers
/// `(-theta, alpha, lambda)`, i.e. the sign convention the ADMM limit
/// delivers. A report is always produced, never an error.
#[allow(clippy::too_many_arguments)]
pub fn check_p_stationary(
    w: &DVector<f64>,
    d: &DVector<f64>,
    b: f64,
    u: &DVector<f64>,
    theta: &DVector<f64>,
    alpha: f64,
    lambda: &DVector<f64>,
    bank: &KernelBank,
    labels: &DVector<f64>,
    c: f64,
    gamma: f64,
    tol: f64,
) -> StationarityReport {
    assert!(gamma > 0.0, "gamma must be positive");
    let m = bank.size();
    let l_count = bank.len();

    // Per-kernel products K_l w and quadratic forms w' K_l w.
    let mut f = DVector::zeros(m);
    let mut quad_forms = DVector::zeros(l_count);
    for l in 0..l_count {
        let kw = bank.matrix(l) * w;
        quad_forms[l] = w.dot(&kw);
        f.axpy(d[l], &kw, 1.0);
    }

    let sqrt_m = (m as f64).sqrt();
    let sqrt_l = (l_count as f64).sqrt();

    // d >= 0
    let raw_d_nonneg = d.iter().map(|&v| v.min(0.0).powi(2)).sum::<f64>().sqrt();
    let scale_d_nonneg = d.norm();

    // sum d = 1
    let raw_d_sum = (d.sum() - 1.0).abs();
    let scale_d_sum = d.iter().map(|v| v.abs()).sum::<f64>();

    // u + A(d) w + b y = 1
    let mut affine = DVector::zeros(m);
    for i in 0..m {
        affine[i] = u[i] + labels[i] * f[i] + b * labels[i] - 1.0;
    }
    let raw_affine = affine.norm();
    let scale_affine = u.norm() + f.norm() + b.abs() * sqrt_m + sqrt_m;

    // Definition multiplier is -theta, so feasibility asks theta <= 0.
    let raw_theta_nonneg = theta
        .iter()
        .map(|&v| v.max(0.0).powi(2))
        .sum::<f64>()
        .sqrt();
    let scale_theta_nonneg = theta.norm();

    // complementarity theta_l d_l = 0
    let raw_complementarity = theta
        .iter()
        .zip(d.iter())
        .map(|(&t, &dl)| (t * dl).powi(2))
        .sum::<f64>()
        .sqrt();
    let scale_complementarity = theta.norm() * d.norm();

    // w + D_y lambda = 0
    let mut w_res = DVector::zeros(m);
    for i in 0..m {
        w_res[i] = w[i] + labels[i] * lambda[i];
    }
    let raw_w = w_res.norm();
    let scale_w = w.norm() + lambda.norm();

    // -w' K_l w / 2 + alpha - (-theta_l) = 0
    let mut d_res = DVector::zeros(l_count);
    for l in 0..l_count {
        d_res[l] = -0.5 * quad_forms[l] + alpha + theta[l];
    }
    let raw_d_stat = d_res.norm();
    let scale_d_stat = 0.5 * quad_forms.norm() + alpha.abs() * sqrt_l + theta.norm();

    // y' lambda = 0
    let raw_b = labels.dot(lambda).abs();
    let scale_b = sqrt_m * lambda.norm();

    // prox fixed point: prox(u - gamma lambda) = u
    let prox = ProxParams::new(gamma, c).expect("gamma, C positive");
    let shifted = u - lambda * gamma;
    let raw_prox = (prox_vector(&shifted, &prox) - u).norm();
    let scale_prox = u.norm() + gamma * lambda.norm();

    let raw = ResidualSet {
        primal_d_nonneg: raw_d_nonneg,
        primal_d_sum: raw_d_sum,
        primal_affine: raw_affine,
        dual_theta_nonneg: raw_theta_nonneg,
        complementarity: raw_complementarity,
        stationarity_w: raw_w,
        stationarity_d: raw_d_stat,
        stationarity_b: raw_b,
        prox_fixed_point: raw_prox,
    };
    let rel = ResidualSet {
        primal_d_nonneg: raw_d_nonneg / (1.0 + scale_d_nonneg),
        primal_d_sum: raw_d_sum / (1.0 + scale_d_sum),
        primal_affine: raw_affine / (1.0 + scale_affine),
        dual_theta_nonneg: raw_theta_nonneg / (1.0 + scale_theta_nonneg),
        complementarity: raw_complementarity / (1.0 + scale_complementarity),
        stationarity_w: raw_w / (1.0 + scale_w),
        stationarity_d: raw_d_stat / (1.0 + scale_d_stat),
        stationarity_b: raw_b / (1.0 + scale_b),
        prox_fixed_point: raw_prox / (1.0 + scale_prox),
    };
    let satisfied = rel.max() <= tol;
    StationarityReport {
        residuals: rel,
        raw_residuals: raw,
        gamma_used: gamma,
        tolerance: tol,
        satisfied,
    }
}

//! Iteratively reweighted l1-ball projection onto the lp quasi-norm ball.
//!
//! Starting from x^0 = 0 and a perturbation eps^0, each iteration linearizes
//! a concave smoothing of the constraint at the current iterate, yielding a
//! weighted l1 ball that sits inside the quasi-norm ball. The next iterate is
//! the exact projection onto that ball. The perturbation is shrunk whenever a
//! step-length trigger fires, and the loop stops once the stationarity and
//! feasibility residuals drop below the configured tolerance.
//!
//! Two subproblem constructions are provided: the enhanced scheme (weights
//! from the local surrogate phi, `Algorithm::Erbp`) and the baseline global
//! smoothing (t + eps)^p (`Algorithm::Irbp`). Both run the same outer loop.
//!
//! Signed signals are handled by the support/sign reduction: the solver
//! projects |y| restricted to the support of y and restores zeros and signs
//! afterwards, which is exact for this problem.

use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::quasinorm::{
    irbp_smooth, kahan_sum, phi_raw, residuals, sum_pow, ProjectionProblem, SmoothingParams,
};
use crate::weighted_l1::{project_weighted_l1, Subproblem};

/// Which subproblem construction the solver uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Enhanced reweighting from the local concave surrogate.
    Erbp,
    /// Baseline reweighting from the global smoothing (t + eps)^p.
    Irbp,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Erbp => "ERBP",
            Algorithm::Irbp => "IRBP",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "erbp" => Ok(Algorithm::Erbp),
            "irbp" => Ok(Algorithm::Irbp),
            other => Err(Error::InvalidInput(format!(
                "unknown algorithm '{other}', expected erbp or irbp"
            ))),
        }
    }
}

/// Solver parameters. Defaults follow the reference experimental setup:
/// tau = 2, M = 100, delta floor 1e-6, eps^0 = 0.4 (gamma/n)^(1/p), and a
/// 1e-12 safeguard added to every weight base before raising to p - 1.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub p: f64,
    pub gamma: f64,
    /// Dual tolerance upsilon applied to both residuals.
    pub tol: f64,
    pub max_iter: usize,
    /// Exponent on the trigger's sign-vector norm; must exceed 1.
    pub tau: f64,
    /// Trigger threshold M > 0.
    pub big_m: f64,
    /// Floor on the shrink factor delta^{k+1}.
    pub delta_floor: f64,
    /// eps^0 = eps0_factor * (gamma/n)^(1/p) unless overridden.
    pub eps0_factor: f64,
    /// Explicit eps^0, bypassing the factor formula.
    pub eps0_override: Option<f64>,
    /// Safeguard added to weight bases to keep (.)^(p-1) finite.
    pub weight_guard: f64,
    pub algorithm: Algorithm,
    /// Retain the per-iteration trajectory in the report.
    pub record_iterates: bool,
}

impl SolverConfig {
    pub fn new(p: f64, gamma: f64) -> Self {
        Self {
            p,
            gamma,
            tol: 1e-8,
            max_iter: 1000,
            tau: 2.0,
            big_m: 100.0,
            delta_floor: 1e-6,
            eps0_factor: 0.4,
            eps0_override: None,
            weight_guard: 1e-12,
            algorithm: Algorithm::Erbp,
            record_iterates: true,
        }
    }

    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    fn validate(&self) -> Result<()> {
        crate::quasinorm::check_exponent(self.p)?;
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidInput("max_iter must be at least 1".into()));
        }
        if !(self.tau > 1.0) {
            return Err(Error::InvalidInput(format!(
                "tau must exceed 1, got {}",
                self.tau
            )));
        }
        if !(self.big_m > 0.0) {
            return Err(Error::InvalidInput(format!(
                "M must be positive, got {}",
                self.big_m
            )));
        }
        if !(self.delta_floor > 0.0) {
            return Err(Error::InvalidInput(format!(
                "delta floor must be positive, got {}",
                self.delta_floor
            )));
        }
        if !(self.eps0_factor > 0.0) {
            return Err(Error::InvalidInput(format!(
                "eps0 factor must be positive, got {}",
                self.eps0_factor
            )));
        }
        if let Some(e0) = self.eps0_override {
            if !(e0 > 0.0) || !e0.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "eps0 override must be positive and finite, got {e0}"
                )));
            }
        }
        if !(self.weight_guard >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "weight guard must be nonnegative, got {}",
                self.weight_guard
            )));
        }
        Ok(())
    }
}

/// Support/sign reduction of a signed signal.
#[derive(Debug, Clone)]
pub struct Preprocessed {
    /// |y_i| for i in the support, in original order.
    pub values: Vec<f64>,
    /// Original index of each retained entry.
    pub indices: Vec<usize>,
    /// Sign (+1/-1) of each retained entry.
    pub signs: Vec<f64>,
    /// Length of the original signal.
    pub input_len: usize,
}

/// Reduces a signed signal to the magnitudes on its support, recording the
/// index map and sign pattern so [`postprocess`] can reverse it exactly.
pub fn preprocess(y_raw: &[f64]) -> Result<Preprocessed> {
    let mut values = Vec::new();
    let mut indices = Vec::new();
    let mut signs = Vec::new();
    for (i, &v) in y_raw.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "signal entry {i} is not finite: {v}"
            )));
        }
        if v != 0.0 {
            values.push(v.abs());
            indices.push(i);
            signs.push(if v > 0.0 { 1.0 } else { -1.0 });
        }
    }
    Ok(Preprocessed {
        values,
        indices,
        signs,
        input_len: y_raw.len(),
    })
}

/// Scatters a solution of the reduced problem back to full length, restoring
/// zeros and signs.
pub fn postprocess(pre: &Preprocessed, x: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), pre.values.len(), "reduced solution length mismatch");
    let mut full = vec![0.0; pre.input_len];
    for ((&idx, &sign), &xi) in pre.indices.iter().zip(&pre.signs).zip(x) {
        full[idx] = sign * xi;
    }
    full
}

/// Feasibility slack tolerated before declaring an internal invariant broken.
const FEASIBILITY_SLACK: f64 = 1e-9;

/// Builds the weighted l1 subproblem at iterate `x_k` with perturbation
/// `epsilon_k`.
///
/// ERBP uses the local surrogate: weight base max(x_i, eps) and budget
/// gamma - sum phi(x_i) + sum w_i x_i. IRBP uses the global smoothing:
/// weight base x_i + eps and budget gamma - sum (x_i + eps)^p + sum w_i x_i.
/// `weight_guard` is added to every base before raising to p - 1.
pub fn build_subproblem(
    x_k: &[f64],
    epsilon_k: f64,
    prob: &ProjectionProblem,
    algorithm: Algorithm,
    weight_guard: f64,
) -> Result<Subproblem> {
    if x_k.len() != prob.dim() {
        return Err(Error::DimensionMismatch(format!(
            "iterate has length {}, problem has length {}",
            x_k.len(),
            prob.dim()
        )));
    }
    let p = prob.p;
    let sp = SmoothingParams::new(epsilon_k, p)?;

    let surrogate_sum = match algorithm {
        Algorithm::Erbp => kahan_sum(x_k.iter().map(|&xi| phi_raw(xi, sp))),
        Algorithm::Irbp => kahan_sum(x_k.iter().map(|&xi| (xi + epsilon_k).powf(p))),
    };
    let slack = prob.gamma - surrogate_sum;
    if slack < -FEASIBILITY_SLACK * prob.gamma.max(1.0) {
        return Err(Error::InternalInvariant(format!(
            "iterate infeasible for its own surrogate: sum = {surrogate_sum}, gamma = {}",
            prob.gamma
        )));
    }

    let weights: Vec<f64> = match algorithm {
        Algorithm::Erbp => x_k
            .iter()
            .map(|&xi| p * (xi.max(epsilon_k) + weight_guard).powf(p - 1.0))
            .collect(),
        Algorithm::Irbp => x_k
            .iter()
            .map(|&xi| p * (xi + epsilon_k + weight_guard).powf(p - 1.0))
            .collect(),
    };
    let linear_term = kahan_sum(weights.iter().zip(x_k).map(|(&wi, &xi)| wi * xi));
    let budget = slack + linear_term;
    if !(budget > 0.0) {
        return Err(Error::InternalInvariant(format!(
            "subproblem budget must be positive, got {budget}"
        )));
    }
    Ok(Subproblem {
        weights,
        budget,
        anchor: prob.y.clone(),
    })
}

/// Termination state of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Both residuals dropped below the tolerance.
    Converged,
    /// The iteration cap was hit first.
    IterationCapReached,
    /// The input signal already lies in the ball; returned unchanged.
    AlreadyFeasible,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolveStatus::Converged => "Converged",
            SolveStatus::IterationCapReached => "IterationCapReached",
            SolveStatus::AlreadyFeasible => "AlreadyFeasible",
        };
        f.write_str(s)
    }
}

/// One row of the solve trajectory. `x` is the iterate of the reduced
/// (nonnegative, support-restricted) problem; `epsilon` is the perturbation
/// used by the subproblem that produced it, and `lambda` that subproblem's
/// dual.
#[derive(Debug, Clone)]
pub struct IterateRecord {
    pub k: usize,
    pub x: Vec<f64>,
    pub epsilon: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
    /// 0.5 ||x - y||^2 on the reduced problem (equals the full objective).
    pub objective: f64,
    /// Whether the eps-shrink trigger fired at this iteration.
    pub epsilon_reduced: bool,
}

/// Result of a solve. The config is echoed for reproducibility.
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Final iterate with zeros and signs restored to full length.
    pub x_star: Vec<f64>,
    /// Number of subproblems solved.
    pub iterations: usize,
    pub status: SolveStatus,
    /// Per-iteration records (empty when `record_iterates` is off).
    pub trajectory: Vec<IterateRecord>,
    /// Wall-clock seconds spent inside the solve.
    pub wall_time: f64,
    pub final_alpha: f64,
    pub final_beta: f64,
    /// 0.5 ||x_star - y||^2.
    pub objective: f64,
    /// Smallest subproblem dual observed at trigger iterations; diagnostic
    /// for the convergence theory's nondegeneracy assumption.
    pub min_trigger_lambda: Option<f64>,
    pub config: SolverConfig,
}

/// Runs the enhanced algorithm on a signed signal.
pub fn erbp_solve(y_raw: &[f64], cfg: &SolverConfig) -> Result<SolveReport> {
    let cfg = SolverConfig {
        algorithm: Algorithm::Erbp,
        ..cfg.clone()
    };
    solve(y_raw, &cfg)
}

/// Runs the baseline algorithm on a signed signal.
pub fn irbp_solve(y_raw: &[f64], cfg: &SolverConfig) -> Result<SolveReport> {
    let cfg = SolverConfig {
        algorithm: Algorithm::Irbp,
        ..cfg.clone()
    };
    solve(y_raw, &cfg)
}

/// Runs `cfg.algorithm` on a signed signal: support/sign reduction, the
/// reweighted projection loop, then sign restoration.
pub fn solve(y_raw: &[f64], cfg: &SolverConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let start = Instant::now();

    let pre = preprocess(y_raw)?;
    let base_norm = sum_pow(&pre.values, cfg.p);
    if base_norm <= cfg.gamma {
        return Ok(SolveReport {
            x_star: y_raw.to_vec(),
            iterations: 0,
            status: SolveStatus::AlreadyFeasible,
            trajectory: Vec::new(),
            wall_time: start.elapsed().as_secs_f64(),
            final_alpha: 0.0,
            final_beta: (base_norm - cfg.gamma).abs(),
            objective: 0.0,
            min_trigger_lambda: None,
            config: cfg.clone(),
        });
    }

    let prob = ProjectionProblem::new(pre.values.clone(), cfg.p, cfg.gamma)?;
    let ns = prob.dim();
    let eps0 = cfg
        .eps0_override
        .unwrap_or_else(|| cfg.eps0_factor * (cfg.gamma / ns as f64).powf(1.0 / cfg.p));
    let zero_level = match cfg.algorithm {
        Algorithm::Erbp => {
            let sp = SmoothingParams::new(eps0, cfg.p)?;
            phi_raw(0.0, sp)
        }
        Algorithm::Irbp => eps0.powf(cfg.p),
    };
    if ns as f64 * zero_level >= cfg.gamma {
        return Err(Error::InvalidInput(format!(
            "eps0 = {eps0} is too large: the zero iterate would violate the surrogate budget"
        )));
    }

    let mut x = vec![0.0; ns];
    let mut eps = eps0;
    // beta(x^0) = |0 - gamma| = gamma
    let mut prev_beta = cfg.gamma;
    let mut status = SolveStatus::IterationCapReached;
    let mut trajectory = Vec::new();
    let mut iterations = 0;
    let mut final_alpha = f64::NAN;
    let mut final_beta = f64::NAN;
    let mut objective = f64::NAN;
    let mut min_trigger_lambda: Option<f64> = None;

    for k in 0..cfg.max_iter {
        let sub = build_subproblem(&x, eps, &prob, cfg.algorithm, cfg.weight_guard)?;
        let sol = project_weighted_l1(&prob.y, &sub.weights, sub.budget)?;
        let res = residuals(&sol.x, sol.lambda, &prob)?;
        let obj = 0.5
            * sol
                .x
                .iter()
                .zip(&prob.y)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum::<f64>();
        let converged = res.alpha <= cfg.tol && res.beta <= cfg.tol;

        // Step 2 of the outer loop: the trigger is only consulted when the
        // stopping test fails.
        let mut fired = false;
        if !converged {
            let changed = x.iter().zip(&sol.x).filter(|(a, b)| a != b).count();
            let step: f64 = x
                .iter()
                .zip(&sol.x)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            // the safeguard applies to every (.)^(p-1) base, this one
            // included; without it the factor blows up as eps shrinks and
            // the trigger goes dead at floating-point step sizes
            let sign_norm =
                cfg.p * (eps + cfg.weight_guard).powf(cfg.p - 1.0) * (changed as f64).sqrt();
            fired = step * sign_norm.powf(cfg.tau) <= cfg.big_m;
            if fired {
                min_trigger_lambda = Some(match min_trigger_lambda {
                    Some(m) => m.min(sol.lambda),
                    None => sol.lambda,
                });
            }
        }

        iterations = k + 1;
        if cfg.record_iterates {
            trajectory.push(IterateRecord {
                k: iterations,
                x: sol.x.clone(),
                epsilon: eps,
                lambda: sol.lambda,
                alpha: res.alpha,
                beta: res.beta,
                objective: obj,
                epsilon_reduced: fired,
            });
        }
        final_alpha = res.alpha;
        final_beta = res.beta;
        objective = obj;

        if fired {
            let cap = if k == 0 { 1.0 } else { 1.0 / (k as f64).sqrt() };
            let delta = cfg
                .delta_floor
                .max(prev_beta.min(cap).powf(1.0 / cfg.p));
            // floor keeps eps^(p-1) finite if a run shrinks eps for very long
            eps = (eps * delta).max(1e-300);
        }
        prev_beta = res.beta;
        x = sol.x;
        if converged {
            status = SolveStatus::Converged;
            break;
        }
    }

    let x_star = postprocess(&pre, &x);
    Ok(SolveReport {
        x_star,
        iterations,
        status,
        trajectory,
        wall_time: start.elapsed().as_secs_f64(),
        final_alpha,
        final_beta,
        objective,
        min_trigger_lambda,
        config: cfg.clone(),
    })
}

/// Writes the trajectory as CSV: one row per iterate with columns
/// `k,epsilon,lambda,alpha,beta,objective,lp_norm_p,epsilon_reduced`.
pub fn write_trajectory_csv<W: Write>(report: &SolveReport, out: &mut W) -> std::io::Result<()> {
    writeln!(
        out,
        "k,epsilon,lambda,alpha,beta,objective,lp_norm_p,epsilon_reduced"
    )?;
    for rec in &report.trajectory {
        let norm = sum_pow(&rec.x, report.config.p);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            rec.k,
            rec.epsilon,
            rec.lambda,
            rec.alpha,
            rec.beta,
            rec.objective,
            norm,
            rec.epsilon_reduced
        )?;
    }
    Ok(())
}

/// Surrogate value of one entry, exposed for invariant checks in tests:
/// phi for ERBP, (t + eps)^p for IRBP.
pub fn surrogate_value(t: f64, epsilon: f64, p: f64, algorithm: Algorithm) -> Result<f64> {
    match algorithm {
        Algorithm::Erbp => {
            let sp = SmoothingParams::new(epsilon, p)?;
            crate::quasinorm::phi(t, sp)
        }
        Algorithm::Irbp => irbp_smooth(t, epsilon, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preprocess_keeps_support_and_signs() {
        let pre = preprocess(&[-3.0, 0.0, 1.0]).unwrap();
        assert_eq!(pre.values, vec![3.0, 1.0]);
        assert_eq!(pre.indices, vec![0, 2]);
        assert_eq!(pre.signs, vec![-1.0, 1.0]);
        assert_eq!(pre.input_len, 3);
    }

    #[test]
    fn preprocess_postprocess_roundtrip() {
        let y = vec![-3.0, 0.0, 1.0, -0.25, 0.0];
        let pre = preprocess(&y).unwrap();
        let restored = postprocess(&pre, &pre.values.clone());
        assert_eq!(restored, y);
    }

    #[test]
    fn preprocess_rejects_non_finite() {
        assert!(preprocess(&[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn zero_signal_is_already_feasible() {
        let cfg = SolverConfig::new(0.5, 1.0);
        let rep = erbp_solve(&[0.0, 0.0], &cfg).unwrap();
        assert_eq!(rep.status, SolveStatus::AlreadyFeasible);
        assert_eq!(rep.x_star, vec![0.0, 0.0]);
        assert_eq!(rep.iterations, 0);
    }

    #[test]
    fn interior_signal_is_already_feasible() {
        let cfg = SolverConfig::new(0.5, 1.0);
        let rep = erbp_solve(&[0.01, 0.01], &cfg).unwrap();
        assert_eq!(rep.status, SolveStatus::AlreadyFeasible);
        assert_eq!(rep.x_star, vec![0.01, 0.01]);
    }

    #[test]
    fn erbp_subproblem_at_zero_iterate() {
        let prob = ProjectionProblem::new(vec![1.0, 1.0], 0.5, 1.0).unwrap();
        // guard-free so the branch values are exact
        let sub = build_subproblem(&[0.0, 0.0], 0.04, &prob, Algorithm::Erbp, 0.0).unwrap();
        // w_i = p eps^(p-1) = 0.5 * 5
        assert!((sub.weights[0] - 2.5).abs() < 1e-12);
        assert!((sub.weights[1] - 2.5).abs() < 1e-12);
        // gamma^k = 1 - 2 * phi(0) = 1 - 2 * 0.1
        assert!((sub.budget - 0.8).abs() < 1e-12);

        // default guard only perturbs the weights at the 1e-11 level
        let guarded = build_subproblem(&[0.0, 0.0], 0.04, &prob, Algorithm::Erbp, 1e-12).unwrap();
        assert!((guarded.weights[0] - 2.5).abs() < 1e-9);
        assert!((guarded.budget - 0.8).abs() < 1e-12);
    }

    #[test]
    fn erbp_subproblem_above_threshold() {
        // with every x_i > eps the budget reduces to gamma + (p-1) sum x_i^p
        let prob = ProjectionProblem::new(vec![2.0, 3.0], 0.5, 4.0).unwrap();
        let x = [1.0, 2.25];
        let sub = build_subproblem(&x, 0.04, &prob, Algorithm::Erbp, 0.0).unwrap();
        let sum_p = 1.0 + 1.5;
        assert!((sub.budget - (4.0 + (0.5 - 1.0) * sum_p)).abs() < 1e-12);
        assert!((sub.weights[0] - 0.5).abs() < 1e-12);
        assert!((sub.weights[1] - 0.5 / 1.5).abs() < 1e-12);
    }

    #[test]
    fn irbp_subproblem_at_zero_iterate_and_containment() {
        let prob = ProjectionProblem::new(vec![1.0, 1.0], 0.5, 1.0).unwrap();
        let erbp = build_subproblem(&[0.0, 0.0], 0.04, &prob, Algorithm::Erbp, 0.0).unwrap();
        let irbp = build_subproblem(&[0.0, 0.0], 0.04, &prob, Algorithm::Irbp, 0.0).unwrap();
        assert!((irbp.weights[0] - 2.5).abs() < 1e-12);
        // gamma^k = 1 - 2 * eps^p = 1 - 0.4
        assert!((irbp.budget - 0.6).abs() < 1e-12);
        // equal weights, strictly larger budget: the enhanced ball contains
        // the baseline ball at the zero iterate
        assert_eq!(erbp.weights, irbp.weights);
        let n = 2.0;
        let gap = erbp.budget - irbp.budget;
        assert!((gap - n * 0.5 * 0.04_f64.powf(0.5)).abs() < 1e-12);
    }

    #[test]
    fn build_subproblem_rejects_infeasible_iterate() {
        let prob = ProjectionProblem::new(vec![1.0, 1.0], 0.5, 0.5).unwrap();
        // sum phi(x_i) is about 2 > gamma = 0.5
        let err = build_subproblem(&[1.0, 1.0], 0.01, &prob, Algorithm::Erbp, 0.0);
        assert!(matches!(err, Err(Error::InternalInvariant(_))));
    }

    #[test]
    fn converges_on_small_instance() {
        let y = [0.18, 1.88, 0.20, 0.64];
        let cfg = SolverConfig::new(0.5, 1.0);
        let rep = erbp_solve(&y, &cfg).unwrap();
        assert_eq!(rep.status, SolveStatus::Converged);
        assert!(rep.final_alpha <= cfg.tol);
        assert!(rep.final_beta <= cfg.tol);
        let norm = crate::quasinorm::lp_norm_p(
            &rep.x_star.iter().map(|v| v.abs()).collect::<Vec<_>>(),
            0.5,
        )
        .unwrap();
        assert!((norm - 1.0).abs() <= 1e-4);
        // the quasi-norm of the iterates climbs to the boundary from below
        let mut last = 0.0;
        for rec in &rep.trajectory {
            let n = sum_pow(&rec.x, 0.5);
            assert!(n <= 1.0 + 1e-12, "iterate left the ball: {n}");
            assert!(n >= last - 1e-10, "quasi-norm dipped: {n} < {last}");
            last = n;
        }
        // epsilon shrank at least once on the way
        assert!(rep.trajectory.last().unwrap().epsilon < rep.trajectory[0].epsilon);
    }

    #[test]
    fn irbp_converges_and_is_dominated() {
        let y = [0.18, 1.88, 0.20, 0.64];
        let cfg = SolverConfig::new(0.5, 1.0);
        let erbp = erbp_solve(&y, &cfg).unwrap();
        let irbp = irbp_solve(&y, &cfg).unwrap();
        assert_eq!(irbp.status, SolveStatus::Converged);
        let common = erbp.trajectory.len().min(irbp.trajectory.len());
        for i in 0..common {
            let ne = sum_pow(&erbp.trajectory[i].x, 0.5);
            let ni = sum_pow(&irbp.trajectory[i].x, 0.5);
            assert!(
                ne >= ni - 1e-12,
                "baseline overtook the enhanced path at iteration {i}: {ne} < {ni}"
            );
        }
    }

    #[test]
    fn signed_signal_roundtrip_through_solver() {
        let y = [-0.18, 1.88, 0.0, -0.64];
        let cfg = SolverConfig::new(0.5, 1.0);
        let rep = erbp_solve(&y, &cfg).unwrap();
        assert_eq!(rep.status, SolveStatus::Converged);
        assert_eq!(rep.x_star.len(), 4);
        assert_eq!(rep.x_star[2], 0.0);
        assert!(rep.x_star[0] <= 0.0);
        assert!(rep.x_star[1] >= 0.0);
        assert!(rep.x_star[3] <= 0.0);
        // magnitudes bounded by the signal
        for (xi, yi) in rep.x_star.iter().zip(&y) {
            assert!(xi.abs() <= yi.abs() + 1e-12);
        }
    }

    #[test]
    fn rejects_bad_config_and_input() {
        let mut cfg = SolverConfig::new(0.5, 1.0);
        cfg.tau = 1.0;
        assert!(erbp_solve(&[1.0, 2.0], &cfg).is_err());
        let cfg = SolverConfig::new(0.5, 1.0);
        assert!(erbp_solve(&[1.0, f64::INFINITY], &cfg).is_err());
        let mut cfg = SolverConfig::new(0.5, 1.0);
        cfg.eps0_override = Some(1e6);
        assert!(erbp_solve(&[1.0, 2.0], &cfg).is_err());
    }

    #[test]
    fn trajectory_csv_schema() {
        let cfg = SolverConfig::new(0.5, 1.0);
        let rep = erbp_solve(&[0.18, 1.88, 0.20, 0.64], &cfg).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&rep, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "k,epsilon,lambda,alpha,beta,objective,lp_norm_p,epsilon_reduced"
        );
        assert_eq!(text.lines().count(), rep.iterations + 1);
        let first = lines.next().unwrap();
        assert!(first.starts_with("1,"));
    }

    #[test]
    fn one_iteration_cap_yields_one_record() {
        let mut cfg = SolverConfig::new(0.5, 1.0);
        cfg.max_iter = 1;
        let rep = erbp_solve(&[0.18, 1.88, 0.20, 0.64], &cfg).unwrap();
        assert_eq!(rep.status, SolveStatus::IterationCapReached);
        assert_eq!(rep.trajectory.len(), 1);
    }
}

//! Runtime-checkable forms of the solver's convergence guarantees.
//!
//! Every solve with `record_iterates` on carries enough state to re-derive
//! each subproblem and verify, iterate by iterate:
//!
//! - surrogate feasibility of every iterate (hence ball feasibility),
//! - the quadratic descent of the distance objective,
//! - the box bound 0 <= x_i <= y_i,
//! - activity of the subproblem budget at the next iterate,
//! - a nonzero iterate, and
//! - monotonically non-increasing perturbations.
//!
//! Violations are reported as [`Error::InternalInvariant`]; they indicate a
//! solver bug, not bad user input.

use crate::error::{Error, Result};
use crate::quasinorm::{kahan_sum, sum_pow};
use crate::solver::{build_subproblem, preprocess, surrogate_value, SolveReport, SolveStatus};

/// Absolute slack on surrogate feasibility sums.
pub const FEASIBILITY_TOL: f64 = 1e-12;
/// Absolute slack on the quadratic descent inequality.
pub const DESCENT_SLACK: f64 = 1e-10;
/// Relative slack on budget activity.
pub const ACTIVITY_REL_TOL: f64 = 1e-9;

fn fail(msg: String) -> Result<()> {
    Err(Error::InternalInvariant(msg))
}

/// Verifies the recorded trajectory of `report` against the guarantees
/// above. `y_raw` must be the signal the report was produced from.
///
/// `AlreadyFeasible` reports are vacuously valid. Reports produced with
/// `record_iterates` off cannot be verified and are rejected.
pub fn verify_trajectory(y_raw: &[f64], report: &SolveReport) -> Result<()> {
    if report.status == SolveStatus::AlreadyFeasible {
        return Ok(());
    }
    if report.trajectory.is_empty() {
        return fail("no trajectory recorded; run with record_iterates".into());
    }
    let cfg = &report.config;
    let pre = preprocess(y_raw)?;
    let prob = crate::quasinorm::ProjectionProblem::new(pre.values.clone(), cfg.p, cfg.gamma)?;
    let y = &prob.y;
    let ns = prob.dim();

    let surrogate_sum = |x: &[f64], eps: f64| -> Result<f64> {
        let mut terms = Vec::with_capacity(x.len());
        for &xi in x {
            terms.push(surrogate_value(xi, eps, cfg.p, cfg.algorithm)?);
        }
        Ok(kahan_sum(terms.into_iter()))
    };
    let sq_dist = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).map(|(&u, &v)| (u - v) * (u - v)).sum()
    };
    // ||a - y||^2 - ||b - y||^2 in product form; the naive difference of two
    // large squared distances loses the 1e-10 slack to cancellation
    let obj_drop = |a: &[f64], b: &[f64]| -> f64 {
        kahan_sum(
            a.iter()
                .zip(b)
                .zip(y)
                .map(|((&ai, &bi), &yi)| (ai - bi) * (ai + bi - 2.0 * yi)),
        )
    };

    let mut prev_x = vec![0.0; ns];
    let mut prev_eps = report.trajectory[0].epsilon;
    for rec in &report.trajectory {
        let k = rec.k;
        if rec.x.len() != ns {
            return fail(format!("iterate {k} has wrong length"));
        }

        // box bound from the projection's closed form
        for (i, (&xi, &yi)) in rec.x.iter().zip(y).enumerate() {
            if !(0.0 <= xi && xi <= yi) {
                return fail(format!("iterate {k}: x[{i}] = {xi} outside [0, {yi}]"));
            }
        }
        if rec.x.iter().all(|&v| v == 0.0) {
            return fail(format!("iterate {k} is identically zero"));
        }

        // perturbations never increase
        if rec.epsilon > prev_eps {
            return fail(format!(
                "epsilon increased at iterate {k}: {} -> {}",
                prev_eps, rec.epsilon
            ));
        }

        // the iterate entering this subproblem is feasible for it, and so is
        // (by the sandwich inequality) the original constraint
        let entering = surrogate_sum(&prev_x, rec.epsilon)?;
        if entering > cfg.gamma + FEASIBILITY_TOL {
            return fail(format!(
                "iterate entering step {k} violates surrogate feasibility: {entering} > {}",
                cfg.gamma
            ));
        }
        let ball = sum_pow(&rec.x, cfg.p);
        if ball > cfg.gamma + FEASIBILITY_TOL {
            return fail(format!(
                "iterate {k} left the quasi-norm ball: {ball} > {}",
                cfg.gamma
            ));
        }

        // quadratic descent of the distance objective
        let drop = obj_drop(&prev_x, &rec.x);
        let step = sq_dist(&prev_x, &rec.x);
        if drop < step - DESCENT_SLACK {
            return fail(format!(
                "iterate {k}: objective drop {drop} below squared step {step}"
            ));
        }

        // budget activity: rebuild the subproblem that produced this iterate
        if entering < cfg.gamma {
            let sub = build_subproblem(&prev_x, rec.epsilon, &prob, cfg.algorithm, cfg.weight_guard)?;
            let mass = kahan_sum(sub.weights.iter().zip(&rec.x).map(|(&w, &x)| w * x));
            if (mass - sub.budget).abs() > ACTIVITY_REL_TOL * sub.budget.max(1.0) {
                return fail(format!(
                    "iterate {k}: budget inactive, |{mass} - {}| too large",
                    sub.budget
                ));
            }
        }

        prev_x = rec.x.clone();
        prev_eps = rec.epsilon;
    }

    if report.status == SolveStatus::Converged {
        let last = report.trajectory.last().unwrap();
        if !(last.alpha <= cfg.tol && last.beta <= cfg.tol) {
            return fail(format!(
                "converged with residuals above tolerance: alpha {} beta {}",
                last.alpha, last.beta
            ));
        }
        if !(last.epsilon < report.trajectory[0].epsilon) {
            return fail("converged without ever shrinking epsilon".into());
        }
    }
    Ok(())
}

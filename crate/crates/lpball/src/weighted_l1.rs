//! Exact Euclidean projection onto a weighted l1 ball intersected with the
//! nonnegative orthant:
//!
//! ```text
//! minimize 0.5 ||x - y||^2   s.t.  sum_i w_i x_i <= r,  x >= 0,
//! ```
//!
//! with y >= 0 and w > 0. The KKT conditions give x_i = max(y_i - lambda w_i, 0)
//! for a unique multiplier lambda >= 0, which is found by sorting the
//! breakpoints y_i / w_i in decreasing order and scanning prefix sums; no
//! bisection, so the kernel is exact up to floating point.

use crate::error::{Error, Result};
use crate::quasinorm::kahan_sum;

/// One convex subproblem: a weighted l1 ball with positive weights and
/// budget, anchored at the signal being projected.
#[derive(Debug, Clone)]
pub struct Subproblem {
    pub weights: Vec<f64>,
    pub budget: f64,
    /// Objective center (the original signal y).
    pub anchor: Vec<f64>,
}

/// Optimizer of a subproblem together with the dual multiplier of the
/// budget constraint.
#[derive(Debug, Clone)]
pub struct SubproblemSolution {
    pub x: Vec<f64>,
    pub lambda: f64,
    /// True when the budget constraint is binding (lambda > 0 path).
    pub active: bool,
}

/// Slack absorbed in the "anchor already feasible" test.
const FEASIBLE_SLACK: f64 = 1e-14;

/// Projects `y` onto { x >= 0 : sum_i w_i x_i <= r } and returns the
/// minimizer together with the exact dual multiplier.
///
/// If the anchor already satisfies the budget it is returned unchanged with
/// lambda = 0. Otherwise the unique lambda* with
/// sum_i w_i max(y_i - lambda* w_i, 0) = r is located by a descending sort
/// of the breakpoints y_i / w_i (stable tie order; ties are cosmetic since
/// lambda* is unique). Entries with y_i = 0 are excluded from the sort; they
/// are always zero in the solution.
pub fn project_weighted_l1(y: &[f64], w: &[f64], r: f64) -> Result<SubproblemSolution> {
    if y.len() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "signal has length {}, weights have length {}",
            y.len(),
            w.len()
        )));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidBudget(format!(
            "budget must be positive and finite, got {r}"
        )));
    }
    for (i, &wi) in w.iter().enumerate() {
        if !(wi > 0.0) || !wi.is_finite() {
            return Err(Error::InvalidWeight(format!(
                "weight {i} must be positive and finite, got {wi}"
            )));
        }
    }
    debug_assert!(y.iter().all(|&v| v >= 0.0 && v.is_finite()));

    let anchor_mass = kahan_sum(y.iter().zip(w).map(|(&yi, &wi)| wi * yi));
    if anchor_mass <= r * (1.0 + FEASIBLE_SLACK) {
        return Ok(SubproblemSolution {
            x: y.to_vec(),
            lambda: 0.0,
            active: false,
        });
    }

    // Breakpoints of the piecewise-linear budget map lambda -> sum w_i x_i(lambda).
    let mut order: Vec<usize> = (0..y.len()).filter(|&i| y[i] > 0.0).collect();
    order.sort_by(|&a, &b| {
        let ra = y[a] / w[a];
        let rb = y[b] / w[b];
        rb.partial_cmp(&ra).expect("breakpoints are finite")
    });

    // On the prefix {0..=k} the budget map is sum w_i y_i - lambda sum w_i^2;
    // lambda_k solves it against r and is valid once it reaches the next
    // breakpoint.
    let mut swy = 0.0;
    let mut sww = 0.0;
    let mut lambda = 0.0;
    for (pos, &i) in order.iter().enumerate() {
        swy += w[i] * y[i];
        sww += w[i] * w[i];
        let cand = (swy - r) / sww;
        let next_ratio = order.get(pos + 1).map(|&j| y[j] / w[j]);
        match next_ratio {
            Some(rho) if cand < rho => continue,
            _ => {
                lambda = cand;
                break;
            }
        }
    }
    // Infeasible anchor guarantees a strictly positive root; clamp rounding.
    let lambda = lambda.max(0.0);

    let x: Vec<f64> = y
        .iter()
        .zip(w)
        .map(|(&yi, &wi)| (yi - lambda * wi).max(0.0))
        .collect();
    Ok(SubproblemSolution {
        x,
        lambda,
        active: true,
    })
}

/// Independent verifier for a claimed projection: checks the closed-form
/// primal, dual feasibility, the budget, and complementary slackness, each
/// within `tol`.
pub fn kkt_check(y: &[f64], w: &[f64], r: f64, sol: &SubproblemSolution, tol: f64) -> bool {
    if y.len() != w.len() || sol.x.len() != y.len() {
        return false;
    }
    if sol.lambda < -tol {
        return false;
    }
    for ((&xi, &yi), &wi) in sol.x.iter().zip(y).zip(w) {
        let closed_form = (yi - sol.lambda * wi).max(0.0);
        if (xi - closed_form).abs() > tol {
            return false;
        }
    }
    let mass = kahan_sum(sol.x.iter().zip(w).map(|(&xi, &wi)| wi * xi));
    if mass > r + tol {
        return false;
    }
    sol.lambda * (r - mass) <= tol
}

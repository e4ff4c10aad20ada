//! Independent small-instance reference solvers used to validate the main
//! algorithms.
//!
//! The optimum of a nontrivial projection lies on the sphere
//! sum_i x_i^p = gamma with support contained in the support of y, so for
//! n = 2 a dense scan of the sphere parameterization (plus the two axis
//! support candidates) is exhaustive up to grid resolution. A golden-section
//! pass refines the scan minimum.

use crate::error::{Error, Result};
use crate::quasinorm::{pow_p, sum_pow, ProjectionProblem};

/// Best point found by a reference search.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub x_best: Vec<f64>,
    /// 0.5 ||x_best - y||^2.
    pub objective: f64,
    /// Grid spacing of the scan.
    pub grid_resolution: f64,
    /// Whether golden-section refinement ran.
    pub refined: bool,
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Dense search over the active sphere for two-dimensional problems.
///
/// Parameterizes x1 in [0, min(y1, gamma^(1/p))] with x2 = (gamma - x1^p)^(1/p),
/// scans `resolution` cells, adds the two axis candidates, then refines with
/// golden section in a window of two grid cells around the scan minimum.
pub fn sphere_search_2d(prob: &ProjectionProblem, resolution: usize) -> Result<OracleResult> {
    if prob.dim() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "sphere search supports n = 2, got n = {}",
            prob.dim()
        )));
    }
    if resolution == 0 {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let (y1, y2) = (prob.y[0], prob.y[1]);
    let p = prob.p;
    let gamma = prob.gamma;
    let radius = gamma.powf(1.0 / p);

    let point_at = |x1: f64| -> [f64; 2] {
        let rem = (gamma - pow_p(x1, p)).max(0.0);
        [x1, rem.powf(1.0 / p)]
    };
    let objective_of = |x: &[f64; 2]| 0.5 * ((x[0] - y1).powi(2) + (x[1] - y2).powi(2));

    let hi = y1.min(radius);
    let h = hi / resolution as f64;
    let mut best_x1 = 0.0;
    let mut best_obj = objective_of(&point_at(0.0));
    for i in 1..=resolution {
        let x1 = h * i as f64;
        let obj = objective_of(&point_at(x1));
        if obj < best_obj {
            best_obj = obj;
            best_x1 = x1;
        }
    }

    // golden-section refinement over +-2 cells around the scan minimum
    let mut refined = false;
    if hi > 0.0 {
        let mut a = (best_x1 - 2.0 * h).max(0.0);
        let mut b = (best_x1 + 2.0 * h).min(hi);
        let mut c = b - GOLDEN * (b - a);
        let mut d = a + GOLDEN * (b - a);
        let mut fc = objective_of(&point_at(c));
        let mut fd = objective_of(&point_at(d));
        for _ in 0..200 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - GOLDEN * (b - a);
                fc = objective_of(&point_at(c));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + GOLDEN * (b - a);
                fd = objective_of(&point_at(d));
            }
        }
        let x1_ref = 0.5 * (a + b);
        let obj_ref = objective_of(&point_at(x1_ref));
        if obj_ref < best_obj {
            best_obj = obj_ref;
            best_x1 = x1_ref;
            refined = true;
        }
    }

    // axis support candidates handle the support-drop branch the smooth
    // parameterization misses
    let mut best = point_at(best_x1);
    for cand in [[radius, 0.0], [0.0, radius]] {
        let obj = objective_of(&cand);
        if obj < best_obj {
            best_obj = obj;
            best = cand;
        }
    }

    Ok(OracleResult {
        x_best: best.to_vec(),
        objective: best_obj,
        grid_resolution: h,
        refined,
    })
}

/// Checks the first-order conditions (y_i - x_i) x_i = lambda p x_i^p,
/// sum x_i^p = gamma, x >= 0, lambda >= 0, each within `tol`.
pub fn stationarity_check(x: &[f64], lambda: f64, prob: &ProjectionProblem, tol: f64) -> bool {
    if x.len() != prob.dim() {
        return false;
    }
    if lambda < -tol {
        return false;
    }
    for (&xi, &yi) in x.iter().zip(&prob.y) {
        if xi < -tol {
            return false;
        }
        let xi = xi.max(0.0);
        if ((yi - xi) * xi - lambda * prob.p * pow_p(xi, prob.p)).abs() > tol {
            return false;
        }
    }
    (sum_pow(&x.iter().map(|v| v.max(0.0)).collect::<Vec<_>>(), prob.p) - prob.gamma).abs() <= tol
}

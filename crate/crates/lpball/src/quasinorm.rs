//! Scalar and vector primitives for the lp quasi-norm with 0 < p < 1.
//!
//! The constraint functional is sum_i |x_i|^p, which is non-convex and not
//! locally Lipschitz at 0. Around the origin we replace t^p by the concave
//! surrogate
//!
//! ```text
//! phi(t; u) = t^p                 if t > u^(q-1),
//!             p (t u - u^q / q)   if 0 <= t <= u^(q-1),
//! ```
//!
//! with q = p/(p-1) and u = eps^(p-1), so the threshold u^(q-1) is exactly
//! eps. The surrogate is linear below the threshold and exact above it, and
//! for every t >= 0 it is sandwiched between t^p and the global smoothing
//! (t + eps)^p used by the baseline algorithm.
//!
//! All kernels here are pure total functions on their stated domains and
//! return domain errors rather than propagating NaN.

use crate::error::{Error, Result};

/// An instance of the projection problem: minimize 0.5 ||x - y||^2 subject
/// to sum_i x_i^p <= gamma and x >= 0.
///
/// `y` is the preprocessed signal: nonnegative, finite, and restricted to
/// its support. Instances handed to the solver additionally satisfy
/// sum_i y_i^p > gamma.
#[derive(Debug, Clone)]
pub struct ProjectionProblem {
    pub y: Vec<f64>,
    pub p: f64,
    pub gamma: f64,
}

impl ProjectionProblem {
    pub fn new(y: Vec<f64>, p: f64, gamma: f64) -> Result<Self> {
        check_exponent(p)?;
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "radius gamma must be positive and finite, got {gamma}"
            )));
        }
        for (i, &v) in y.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "signal entry {i} is not finite: {v}"
                )));
            }
            if v < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "signal entry {i} is negative: {v} (preprocess first)"
                )));
            }
        }
        Ok(Self { y, p, gamma })
    }

    pub fn dim(&self) -> usize {
        self.y.len()
    }

    /// The conjugate exponent q = p/(p-1); negative for 0 < p < 1.
    pub fn q(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    /// True when the signal itself violates the ball constraint, i.e. the
    /// projection is nontrivial.
    pub fn is_infeasible_signal(&self) -> bool {
        sum_pow(&self.y, self.p) > self.gamma
    }
}

/// Smoothing state for one perturbation level eps > 0.
///
/// `u_eps = eps^(p-1)` is the slope parameter of the linear branch. Since
/// (q-1)(p-1) = 1, the branch threshold u_eps^(q-1) equals eps and u_eps^q
/// equals eps^p; both are evaluated analytically to avoid overflowing
/// intermediate powers for tiny eps.
#[derive(Debug, Clone, Copy)]
pub struct SmoothingParams {
    pub epsilon: f64,
    pub u_eps: f64,
    pub p: f64,
}

impl SmoothingParams {
    pub fn new(epsilon: f64, p: f64) -> Result<Self> {
        check_exponent(p)?;
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidInput(format!(
                "perturbation epsilon must be positive and finite, got {epsilon}"
            )));
        }
        Ok(Self {
            epsilon,
            u_eps: epsilon.powf(p - 1.0),
            p,
        })
    }

    /// u_eps^q, evaluated as eps^p.
    pub fn u_pow_q(&self) -> f64 {
        self.epsilon.powf(self.p)
    }
}

/// Stationarity and feasibility residuals for a primal-dual pair;
/// both are zero exactly at first-order stationary points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// alpha(x, lambda) = sum_i |(y_i - x_i) x_i - lambda p x_i^p|.
    pub alpha: f64,
    /// beta(x) = |sum_i x_i^p - gamma|.
    pub beta: f64,
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!(
            "exponent p must lie in (0, 1), got {p}"
        )));
    }
    Ok(())
}

/// Neumaier-compensated sum; keeps long accumulations accurate enough for
/// the 1e-12 feasibility tolerances used by the solver checks.
pub(crate) fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// sum_i x_i^p for known-nonnegative x; 0^p contributes exactly 0.
pub(crate) fn sum_pow(x: &[f64], p: f64) -> f64 {
    kahan_sum(x.iter().map(|&v| pow_p(v, p)))
}

/// t^p with the limit value 0 at t = 0 (no epsilon fudge).
#[inline]
pub(crate) fn pow_p(t: f64, p: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.powf(p)
    }
}

/// The lp quasi-norm constraint functional sum_i x_i^p.
///
/// Entries must be nonnegative and finite; zero entries contribute 0.
pub fn lp_norm_p(x: &[f64], p: f64) -> Result<f64> {
    check_exponent(p)?;
    for (i, &v) in x.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "entry {i} is not finite: {v}"
            )));
        }
        if v < 0.0 {
            return Err(Error::InvalidInput(format!(
                "entry {i} is negative: {v}; pass magnitudes"
            )));
        }
    }
    Ok(sum_pow(x, p))
}

#[inline]
pub(crate) fn phi_raw(t: f64, sp: SmoothingParams) -> f64 {
    if t > sp.epsilon {
        t.powf(sp.p)
    } else {
        let q = sp.p / (sp.p - 1.0);
        sp.p * (t * sp.u_eps - sp.u_pow_q() / q)
    }
}

#[inline]
pub(crate) fn phi_prime_raw(t: f64, sp: SmoothingParams) -> f64 {
    if t > sp.epsilon {
        sp.p * t.powf(sp.p - 1.0)
    } else {
        sp.p * sp.u_eps
    }
}

/// The concave surrogate phi(t; u_eps): t^p above the threshold eps, linear
/// below it. Continuous at t = eps with value eps^p.
pub fn phi(t: f64, sp: SmoothingParams) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "phi is defined on magnitudes t >= 0, got {t}"
        )));
    }
    Ok(phi_raw(t, sp))
}

/// First derivative of [`phi`]: p t^(p-1) above the threshold, the constant
/// p u_eps below it. Non-increasing in t and bounded above by p u_eps.
pub fn phi_prime(t: f64, sp: SmoothingParams) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "phi_prime is defined on magnitudes t >= 0, got {t}"
        )));
    }
    Ok(phi_prime_raw(t, sp))
}

/// The baseline global smoothing (t + eps)^p. Dominates [`phi`] at the same
/// eps for every t >= 0.
pub fn irbp_smooth(t: f64, epsilon: f64, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if !(epsilon > 0.0) {
        return Err(Error::InvalidInput(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "irbp_smooth is defined on magnitudes t >= 0, got {t}"
        )));
    }
    Ok((t + epsilon).powf(p))
}

/// Optimality residuals alpha(x, lambda) and beta(x) for the nonnegative
/// projection problem. (x, lambda) is first-order stationary iff both
/// residuals vanish.
pub fn residuals(x: &[f64], lambda: f64, prob: &ProjectionProblem) -> Result<ResidualReport> {
    if x.len() != prob.dim() {
        return Err(Error::DimensionMismatch(format!(
            "iterate has length {}, problem has length {}",
            x.len(),
            prob.dim()
        )));
    }
    let p = prob.p;
    let alpha = kahan_sum(
        x.iter()
            .zip(prob.y.iter())
            .map(|(&xi, &yi)| ((yi - xi) * xi - lambda * p * pow_p(xi, p)).abs()),
    );
    let beta = (sum_pow(x, p) - prob.gamma).abs();
    Ok(ResidualReport { alpha, beta })
}

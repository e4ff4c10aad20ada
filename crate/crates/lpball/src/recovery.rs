//! lp-constrained least squares via projected gradient descent, plus a small
//! orthonormal 2D Haar transform for image-like demos and a plain-text
//! matrix format for exchanging problems and results.
//!
//! The outer loop iterates x <- Proj(x + eta A^T (b - A x)) onto the lp
//! quasi-norm ball; the projection runs the full signed solve (support/sign
//! reduction included) since gradient steps carry arbitrary signs.

use std::io::{BufRead, Write};
use std::time::Instant;

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::solver::{solve, Algorithm, SolverConfig};

/// An lp-constrained least-squares instance: minimize ||A x - b||^2 subject
/// to sum |x_i|^p <= gamma.
#[derive(Debug, Clone)]
pub struct RecoveryProblem {
    pub a: Array2<f64>,
    pub b: Array1<f64>,
    pub p: f64,
    pub gamma: f64,
    /// Constant gradient step eta.
    pub step_size: f64,
    pub max_iter: usize,
    /// Relative tolerance on the iterate change.
    pub tol: f64,
}

impl RecoveryProblem {
    /// Builds a problem with the default step 1 / sigma_max(A)^2.
    pub fn new(a: Array2<f64>, b: Array1<f64>, p: f64, gamma: f64) -> Result<Self> {
        if a.nrows() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} rows, observations have length {}",
                a.nrows(),
                b.len()
            )));
        }
        crate::quasinorm::check_exponent(p)?;
        if !(gamma > 0.0) {
            return Err(Error::InvalidInput(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        let step_size = estimate_step_size(&a);
        Ok(Self {
            a,
            b,
            p,
            gamma,
            step_size,
            max_iter: 500,
            tol: 1e-8,
        })
    }
}

/// Iterations and wall time of one inner projection.
#[derive(Debug, Clone, Copy)]
pub struct ProjectionStats {
    pub iterations: usize,
    pub seconds: f64,
}

/// Outcome of a recovery run.
#[derive(Debug, Clone)]
pub struct RecoveryReport {
    pub x_hat: Vec<f64>,
    pub iterations: usize,
    /// ||A x_hat - b||_2.
    pub residual_norm: f64,
    /// ||x_hat - x_true||_2 / ||x_true||_2 when the truth is known.
    pub relative_error: Option<f64>,
    pub per_projection_stats: Vec<ProjectionStats>,
}

/// 1 / sigma_max(A)^2 via 100 power iterations on A^T A.
pub fn estimate_step_size(a: &Array2<f64>) -> f64 {
    let n = a.ncols();
    let mut v = Array1::from_elem(n, 1.0 / (n as f64).sqrt());
    let mut sigma_sq = 1.0;
    for _ in 0..100 {
        let w = a.t().dot(&a.dot(&v));
        let norm = w.dot(&w).sqrt();
        if norm == 0.0 {
            return 1.0;
        }
        sigma_sq = v.dot(&w);
        v = w / norm;
    }
    1.0 / sigma_sq
}

/// Projected gradient descent from x^0 = 0 until the iterate change drops
/// below tol * max(1, ||x||) or the cap is reached. Each projection uses the
/// configured inner solver with `projector` as the subproblem construction.
pub fn pgd_solve(
    rp: &RecoveryProblem,
    projector: Algorithm,
    inner_cfg: &SolverConfig,
) -> Result<RecoveryReport> {
    if rp.a.nrows() != rp.b.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, observations have length {}",
            rp.a.nrows(),
            rp.b.len()
        )));
    }
    if inner_cfg.p != rp.p {
        return Err(Error::InvalidInput(format!(
            "inner solver exponent {} does not match problem exponent {}",
            inner_cfg.p, rp.p
        )));
    }
    let cfg = SolverConfig {
        gamma: rp.gamma,
        algorithm: projector,
        record_iterates: false,
        ..inner_cfg.clone()
    };

    let n = rp.a.ncols();
    let mut x = Array1::<f64>::zeros(n);
    let mut stats = Vec::new();
    let mut iterations = 0;
    for _ in 0..rp.max_iter {
        let grad_step = &x + rp.step_size * &rp.a.t().dot(&(&rp.b - &rp.a.dot(&x)));
        let t0 = Instant::now();
        let proj = solve(grad_step.as_slice().expect("contiguous"), &cfg)?;
        stats.push(ProjectionStats {
            iterations: proj.iterations,
            seconds: t0.elapsed().as_secs_f64(),
        });
        let x_new = Array1::from_vec(proj.x_star);
        let diff = (&x_new - &x).mapv(|v| v * v).sum().sqrt();
        let scale = x.dot(&x).sqrt().max(1.0);
        x = x_new;
        iterations += 1;
        if diff <= rp.tol * scale {
            break;
        }
    }

    let residual = &rp.a.dot(&x) - &rp.b;
    Ok(RecoveryReport {
        x_hat: x.to_vec(),
        iterations,
        residual_norm: residual.dot(&residual).sqrt(),
        relative_error: None,
        per_projection_stats: stats,
    })
}

/// ||x_hat - x_true||_2 / ||x_true||_2.
pub fn compute_relative_error(x_hat: &[f64], x_true: &[f64]) -> f64 {
    let diff: f64 = x_hat
        .iter()
        .zip(x_true)
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum();
    let base: f64 = x_true.iter().map(|&v| v * v).sum();
    (diff / base).sqrt()
}

/// Peak signal-to-noise ratio 10 log10(peak^2 / MSE); use peak = 1.0 for
/// unit-scaled images.
pub fn psnr(reference: &Array2<f64>, reconstructed: &Array2<f64>, peak: f64) -> f64 {
    let mse = (reference - reconstructed).mapv(|v| v * v).mean().unwrap();
    10.0 * (peak * peak / mse).log10()
}

fn check_haar_dims(side_rows: usize, side_cols: usize, levels: usize) -> Result<()> {
    if levels == 0 {
        return Err(Error::InvalidInput("levels must be positive".into()));
    }
    if side_rows != side_cols {
        return Err(Error::InvalidInput(format!(
            "haar transform expects a square matrix, got {side_rows}x{side_cols}"
        )));
    }
    let block = 1usize << levels;
    if side_rows == 0 || side_rows % block != 0 {
        return Err(Error::InvalidInput(format!(
            "side length {side_rows} is not divisible by 2^{levels}"
        )));
    }
    Ok(())
}

const SQRT2_INV: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn haar_rows_forward(m: &mut Array2<f64>, size: usize) {
    let half = size / 2;
    let mut buf = vec![0.0; size];
    for r in 0..size {
        for j in 0..half {
            let a = m[[r, 2 * j]];
            let b = m[[r, 2 * j + 1]];
            buf[j] = (a + b) * SQRT2_INV;
            buf[half + j] = (a - b) * SQRT2_INV;
        }
        for (j, &v) in buf.iter().enumerate() {
            m[[r, j]] = v;
        }
    }
}

fn haar_rows_inverse(m: &mut Array2<f64>, size: usize) {
    let half = size / 2;
    let mut buf = vec![0.0; size];
    for r in 0..size {
        for j in 0..half {
            let lo = m[[r, j]];
            let hi = m[[r, half + j]];
            buf[2 * j] = (lo + hi) * SQRT2_INV;
            buf[2 * j + 1] = (lo - hi) * SQRT2_INV;
        }
        for (j, &v) in buf.iter().enumerate() {
            m[[r, j]] = v;
        }
    }
}

/// Orthonormal multilevel 2D Haar transform. Each level splits the current
/// approximation block into approximation and detail quadrants; the inverse
/// reverses the process exactly (Frobenius norm preserved).
pub fn haar2d_forward(img: &Array2<f64>, levels: usize) -> Result<Array2<f64>> {
    check_haar_dims(img.nrows(), img.ncols(), levels)?;
    let mut out = img.clone();
    let mut size = img.nrows();
    for _ in 0..levels {
        haar_rows_forward(&mut out, size);
        out.swap_axes(0, 1);
        haar_rows_forward(&mut out, size);
        out.swap_axes(0, 1);
        size /= 2;
    }
    Ok(out)
}

/// Inverse of [`haar2d_forward`] at the same number of levels.
pub fn haar2d_inverse(coeffs: &Array2<f64>, levels: usize) -> Result<Array2<f64>> {
    check_haar_dims(coeffs.nrows(), coeffs.ncols(), levels)?;
    let mut out = coeffs.clone();
    let mut size = coeffs.nrows() >> (levels - 1);
    for _ in 0..levels {
        out.swap_axes(0, 1);
        haar_rows_inverse(&mut out, size);
        out.swap_axes(0, 1);
        haar_rows_inverse(&mut out, size);
        size *= 2;
    }
    Ok(out)
}

/// Reads the plain-text matrix format: first line `rows cols`, then
/// row-major whitespace-separated values.
pub fn read_matrix_text<R: BufRead>(reader: R) -> Result<Array2<f64>> {
    let mut tokens = Vec::new();
    for line in reader.lines() {
        let line = line?;
        for tok in line.split_whitespace() {
            tokens.push(tok.to_string());
        }
    }
    if tokens.len() < 2 {
        return Err(Error::Parse("missing 'rows cols' header".into()));
    }
    let rows: usize = tokens[0]
        .parse()
        .map_err(|_| Error::Parse(format!("bad row count '{}'", tokens[0])))?;
    let cols: usize = tokens[1]
        .parse()
        .map_err(|_| Error::Parse(format!("bad column count '{}'", tokens[1])))?;
    if tokens.len() != 2 + rows * cols {
        return Err(Error::Parse(format!(
            "expected {} values for a {rows}x{cols} matrix, found {}",
            rows * cols,
            tokens.len() - 2
        )));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for tok in &tokens[2..] {
        let v: f64 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad value '{tok}'")))?;
        data.push(v);
    }
    Array2::from_shape_vec((rows, cols), data)
        .map_err(|e| Error::Parse(format!("shape error: {e}")))
}

/// Writes a matrix in the plain-text format accepted by [`read_matrix_text`].
pub fn write_matrix_text<W: Write>(writer: &mut W, m: &Array2<f64>) -> Result<()> {
    writeln!(writer, "{} {}", m.nrows(), m.ncols())?;
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        writeln!(writer, "{}", line.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasinorm::lp_norm_p;
    use ndarray::array;

    #[test]
    fn identity_matrix_reduces_to_plain_projection() {
        let y = [0.18, 1.88, 0.20, 0.64];
        let a = Array2::<f64>::eye(4);
        let b = Array1::from_vec(y.to_vec());
        let rp = RecoveryProblem::new(a, b, 0.5, 1.0).unwrap();
        assert!((rp.step_size - 1.0).abs() < 1e-9);
        let cfg = SolverConfig::new(0.5, 1.0);
        let report = pgd_solve(&rp, Algorithm::Erbp, &cfg).unwrap();
        let direct = crate::solver::erbp_solve(&y, &cfg).unwrap();
        for (a, b) in report.x_hat.iter().zip(&direct.x_star) {
            assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn zero_problem_is_a_fixed_point() {
        let a = Array2::<f64>::eye(3);
        let b = Array1::zeros(3);
        let rp = RecoveryProblem::new(a, b, 0.5, 1.0).unwrap();
        let cfg = SolverConfig::new(0.5, 1.0);
        let report = pgd_solve(&rp, Algorithm::Erbp, &cfg).unwrap();
        assert_eq!(report.iterations, 1);
        assert!(report.x_hat.iter().all(|&v| v == 0.0));
        assert_eq!(report.residual_norm, 0.0);
    }

    #[test]
    fn iterates_stay_in_the_ball() {
        let a = array![[1.0, 0.4, -0.2], [0.3, -1.0, 0.5]];
        let b = array![1.0, -0.5];
        let rp = RecoveryProblem::new(a, b, 0.5, 1.5).unwrap();
        let cfg = SolverConfig::new(0.5, 1.5);
        let report = pgd_solve(&rp, Algorithm::Erbp, &cfg).unwrap();
        let mags: Vec<f64> = report.x_hat.iter().map(|v| v.abs()).collect();
        assert!(lp_norm_p(&mags, 0.5).unwrap() <= 1.5 + 1e-8);
    }

    #[test]
    fn mismatched_exponent_is_rejected() {
        let a = Array2::<f64>::eye(2);
        let b = Array1::zeros(2);
        let rp = RecoveryProblem::new(a, b, 0.5, 1.0).unwrap();
        let cfg = SolverConfig::new(0.4, 1.0);
        assert!(pgd_solve(&rp, Algorithm::Erbp, &cfg).is_err());
    }

    #[test]
    fn haar_constant_image_has_no_detail() {
        let img = Array2::from_elem((4, 4), 3.0);
        let coeffs = haar2d_forward(&img, 1).unwrap();
        // approximation block holds everything, details vanish exactly
        for r in 0..4 {
            for c in 0..4 {
                if r < 2 && c < 2 {
                    assert!((coeffs[[r, c]] - 6.0).abs() < 1e-12);
                } else {
                    assert_eq!(coeffs[[r, c]], 0.0);
                }
            }
        }
    }

    #[test]
    fn haar_roundtrip_and_parseval() {
        let mut img = Array2::zeros((8, 8));
        // deterministic pseudo-random fill
        let mut s = 1u64;
        for v in img.iter_mut() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *v = (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
        }
        for levels in 1..=3 {
            let coeffs = haar2d_forward(&img, levels).unwrap();
            let back = haar2d_inverse(&coeffs, levels).unwrap();
            let err = (&back - &img).mapv(f64::abs).iter().fold(0.0f64, |a, &b| a.max(b));
            assert!(err < 1e-12, "roundtrip error {err} at {levels} levels");
            let f_img = img.mapv(|v| v * v).sum().sqrt();
            let f_coef = coeffs.mapv(|v| v * v).sum().sqrt();
            assert!((f_img - f_coef).abs() < 1e-12, "Parseval violated");
        }
    }

    #[test]
    fn haar_rejects_bad_dimensions() {
        let img = Array2::<f64>::zeros((6, 6));
        assert!(haar2d_forward(&img, 2).is_err());
        let img = Array2::<f64>::zeros((4, 8));
        assert!(haar2d_forward(&img, 1).is_err());
    }

    #[test]
    fn matrix_text_roundtrip() {
        let m = array![[1.5, -2.0, 0.25], [0.0, 3.0, -0.125]];
        let mut buf = Vec::new();
        write_matrix_text(&mut buf, &m).unwrap();
        let back = read_matrix_text(&buf[..]).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn matrix_text_rejects_malformed_input() {
        assert!(read_matrix_text("2 2\n1 2 3".as_bytes()).is_err());
        assert!(read_matrix_text("".as_bytes()).is_err());
        assert!(read_matrix_text("2 2\n1 2 3 x".as_bytes()).is_err());
    }
}

//! In-repo fitting: column standardization, ordinary least squares with a
//! rank-deficiency fallback, and L2-regularized logistic regression by
//! full-batch gradient descent. Everything here is deterministic.

use nalgebra::{DMatrix, DVector};

/// Per-column affine map fitted on training rows: subtract the mean,
/// divide by the standard deviation. Columns whose standard deviation is
/// below 1e-12 (the constant column, degenerate features) are passed
/// through unchanged.
#[derive(Clone, Debug)]
pub struct Standardizer {
    shift: DVector<f64>,
    scale: DVector<f64>,
}

impl Standardizer {
    pub fn fit(x: &DMatrix<f64>) -> Self {
        let n = x.nrows().max(1) as f64;
        let mut shift = DVector::zeros(x.ncols());
        let mut scale = DVector::from_element(x.ncols(), 1.0);
        for col in 0..x.ncols() {
            let column = x.column(col);
            let mean = column.sum() / n;
            let variance = column.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            let std = variance.sqrt();
            if std >= 1e-12 {
                shift[col] = mean;
                scale[col] = std;
            }
        }
        Standardizer { shift, scale }
    }

    pub fn transform(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = x.clone();
        for col in 0..out.ncols() {
            for row in 0..out.nrows() {
                out[(row, col)] = (out[(row, col)] - self.shift[col]) / self.scale[col];
            }
        }
        out
    }
}

/// Least squares via the normal equations with a Cholesky solve; when the
/// normal equations are singular or the solve is inaccurate (lead-lag
/// degree-1 feature columns are exact duplicates, so this is the common
/// case for signature features), falls back to the minimum-norm solution
/// through an SVD. Returns the coefficients and whether the fallback ran.
pub fn fit_least_squares(x: &DMatrix<f64>, y: &DVector<f64>) -> (DVector<f64>, bool) {
    let xtx = x.transpose() * x;
    let xty = x.transpose() * y;
    if let Some(chol) = xtx.clone().cholesky() {
        let beta = chol.solve(&xty);
        let residual = (&xtx * &beta - &xty).norm();
        if residual <= 1e-6 * (1.0 + xty.norm()) {
            return (beta, false);
        }
    }

    let svd = x.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    if sigma_max == 0.0 {
        return (DVector::zeros(x.ncols()), true);
    }
    let eps = sigma_max * x.nrows().max(x.ncols()) as f64 * f64::EPSILON;
    let beta = svd.solve(y, eps).expect("u and v were requested");
    (beta, true)
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + e^z) without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// A fitted logistic model plus how the optimization went.
#[derive(Clone, Debug)]
pub struct LogisticRegression {
    pub weights: DVector<f64>,
    pub iterations: usize,
    pub final_loss: f64,
}

impl LogisticRegression {
    /// Class-1 probability for each row of `x`.
    pub fn probabilities(&self, x: &DMatrix<f64>) -> DVector<f64> {
        (x * &self.weights).map(sigmoid)
    }
}

/// Mean log-loss plus (l2/2)·Σ penalized weights squared.
fn logistic_loss(
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    weights: &DVector<f64>,
    l2: f64,
    penalize: &[bool],
) -> f64 {
    let n = x.nrows() as f64;
    let z = x * weights;
    let data: f64 = z
        .iter()
        .zip(y.iter())
        .map(|(&z_i, &y_i)| softplus(z_i) - y_i * z_i)
        .sum();
    let penalty: f64 = weights
        .iter()
        .zip(penalize)
        .filter(|(_, &p)| p)
        .map(|(w, _)| w * w)
        .sum();
    data / n + 0.5 * l2 * penalty
}

/// Fits binary logistic regression (labels in {0, 1}) by damped Newton
/// iterations: full-batch, deterministic, and insensitive to feature
/// scaling, which matters because signature coordinates span several
/// orders of magnitude across levels. `penalize` marks which coefficients
/// the L2 term applies to (the constant column should be exempt). Starts
/// from zero weights; stops when the gradient's max entry falls below
/// 1e-10 or after `max_iterations`.
pub fn fit_logistic(
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    l2: f64,
    penalize: &[bool],
    max_iterations: usize,
) -> LogisticRegression {
    assert_eq!(x.nrows(), y.len());
    assert_eq!(x.ncols(), penalize.len());
    let n = x.nrows() as f64;
    let k = x.ncols();
    let mut weights = DVector::zeros(k);
    let mut loss = logistic_loss(x, y, &weights, l2, penalize);
    let mut iterations = 0;

    for _ in 0..max_iterations {
        let z = x * &weights;
        let probabilities = z.map(sigmoid);
        let residual = &probabilities - y;
        let mut gradient = x.transpose() * residual / n;
        for (g, (&w, &p)) in gradient.iter_mut().zip(weights.iter().zip(penalize)) {
            if p {
                *g += l2 * w;
            }
        }
        if gradient.amax() < 1e-10 {
            break;
        }

        // X^T diag(p(1-p)) X / n plus the penalty's diagonal
        let mut weighted = x.clone();
        for (mut row, p) in weighted.row_iter_mut().zip(probabilities.iter()) {
            row *= p * (1.0 - p);
        }
        let mut hessian = x.transpose() * weighted / n;
        for (j, &p) in penalize.iter().enumerate() {
            if p {
                hessian[(j, j)] += l2;
            }
        }

        // near separation the curvature can collapse; jitter until the
        // factorization goes through
        let scale = hessian.diagonal().amax().max(1e-300);
        let mut jitter = 0.0;
        let direction = loop {
            let mut damped = hessian.clone();
            if jitter > 0.0 {
                for j in 0..k {
                    damped[(j, j)] += jitter;
                }
            }
            if let Some(chol) = damped.cholesky() {
                break chol.solve(&gradient);
            }
            jitter = if jitter == 0.0 { scale * 1e-12 } else { jitter * 10.0 };
        };

        let slope = gradient.dot(&direction);
        let mut step = 1.0;
        let mut candidate_loss;
        loop {
            let candidate = &weights - step * &direction;
            candidate_loss = logistic_loss(x, y, &candidate, l2, penalize);
            if candidate_loss <= loss - 1e-4 * step * slope || step < 1e-30 {
                weights = candidate;
                break;
            }
            step *= 0.5;
        }
        loss = candidate_loss;
        iterations += 1;
    }

    LogisticRegression {
        weights,
        iterations,
        final_loss: loss,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardizer_centers_and_scales_varying_columns() {
        let x = DMatrix::from_row_slice(4, 2, &[1.0, 1.0, 2.0, 1.0, 3.0, 1.0, 4.0, 1.0]);
        let s = Standardizer::fit(&x);
        let z = s.transform(&x);
        let mean: f64 = z.column(0).sum() / 4.0;
        let var: f64 = z.column(0).iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 4.0;
        assert!(mean.abs() < 1e-12);
        assert!((var - 1.0).abs() < 1e-12);
        // the constant column passes through untouched
        assert!(z.column(1).iter().all(|&v| v == 1.0));
    }

    #[test]
    fn least_squares_recovers_exact_coefficients() {
        // y = 3*x1 - 2*x2 + 1 on a full-rank design
        let x = DMatrix::from_row_slice(
            4,
            3,
            &[
                1.0, 0.0, 1.0, //
                0.0, 1.0, 1.0, //
                1.0, 1.0, 1.0, //
                2.0, -1.0, 1.0,
            ],
        );
        let y = DVector::from_row_slice(&[4.0, -1.0, 2.0, 9.0]);
        let (beta, fallback) = fit_least_squares(&x, &y);
        assert!(!fallback);
        assert!((beta[0] - 3.0).abs() < 1e-9);
        assert!((beta[1] + 2.0).abs() < 1e-9);
        assert!((beta[2] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn duplicate_columns_trigger_the_minimum_norm_fallback() {
        // second column duplicates the first, so the normal equations are
        // singular; predictions must still be right
        let x = DMatrix::from_row_slice(3, 2, &[1.0, 1.0, 2.0, 2.0, 3.0, 3.0]);
        let y = DVector::from_row_slice(&[2.0, 4.0, 6.0]);
        let (beta, fallback) = fit_least_squares(&x, &y);
        assert!(fallback);
        let fitted = &x * &beta;
        for (f, t) in fitted.iter().zip(y.iter()) {
            assert!((f - t).abs() < 1e-9);
        }
        // minimum-norm splits the weight evenly across the duplicates
        assert!((beta[0] - beta[1]).abs() < 1e-9);
    }

    #[test]
    fn logistic_separates_separable_data() {
        let x = DMatrix::from_row_slice(
            6,
            2,
            &[
                -2.0, 1.0, //
                -1.5, 1.0, //
                -1.0, 1.0, //
                1.0, 1.0, //
                1.5, 1.0, //
                2.0, 1.0,
            ],
        );
        let y = DVector::from_row_slice(&[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let model = fit_logistic(&x, &y, 1e-3, &[true, false], 500);
        let probs = model.probabilities(&x);
        for (p, t) in probs.iter().zip(y.iter()) {
            assert_eq!((*p > 0.5) as i32 as f64, *t);
        }
        assert!(model.final_loss < 0.3);
        assert!(model.iterations > 0);
    }

    #[test]
    fn penalty_shrinks_only_marked_coefficients() {
        let x = DMatrix::from_row_slice(4, 2, &[-1.0, 1.0, -0.5, 1.0, 0.5, 1.0, 1.0, 1.0]);
        let y = DVector::from_row_slice(&[0.0, 0.0, 1.0, 1.0]);
        let light = fit_logistic(&x, &y, 1e-6, &[true, false], 500);
        let heavy = fit_logistic(&x, &y, 10.0, &[true, false], 500);
        assert!(heavy.weights[0].abs() < light.weights[0].abs());
    }

    #[test]
    fn logistic_is_deterministic() {
        let x = DMatrix::from_row_slice(4, 2, &[-1.0, 1.0, -0.5, 1.0, 0.5, 1.0, 1.0, 1.0]);
        let y = DVector::from_row_slice(&[0.0, 1.0, 0.0, 1.0]);
        let a = fit_logistic(&x, &y, 1e-3, &[true, false], 200);
        let b = fit_logistic(&x, &y, 1e-3, &[true, false], 200);
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.iterations, b.iterations);
    }
}

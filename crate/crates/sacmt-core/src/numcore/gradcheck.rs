//! Central-difference gradient checking for hand-derived backward passes.

use crate::error::{Error, Result};

/// Compare an analytic gradient against central finite differences.
///
/// `loss_fn` is evaluated with individual coordinates of `theta` nudged by
/// `±eps`; the result is the worst relative error
/// `|g_analytic − g_numeric| / max(1e-8, |g_analytic| + |g_numeric|)`
/// over all coordinates. `theta` is restored before returning.
pub fn finite_diff_check<F>(
    mut loss_fn: F,
    theta: &mut [f64],
    analytic: &[f64],
    eps: f64,
) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    if !(1e-7..=1e-3).contains(&eps) {
        return Err(Error::BadConfig(format!(
            "finite-difference eps {eps} outside [1e-7, 1e-3]"
        )));
    }
    if theta.len() != analytic.len() {
        return Err(Error::DimMismatch {
            expected: theta.len(),
            got: analytic.len(),
        });
    }
    let mut max_rel = 0.0f64;
    for k in 0..theta.len() {
        let saved = theta[k];
        theta[k] = saved + eps;
        let plus = loss_fn(theta)?;
        theta[k] = saved - eps;
        let minus = loss_fn(theta)?;
        theta[k] = saved;
        if !plus.is_finite() || !minus.is_finite() {
            return Err(Error::NonFinite(format!("loss at coordinate {k}")));
        }
        let numeric = (plus - minus) / (2.0 * eps);
        let rel = (analytic[k] - numeric).abs() / 1e-8f64.max(analytic[k].abs() + numeric.abs());
        max_rel = max_rel.max(rel);
    }
    Ok(max_rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_loss_checks_cleanly() {
        let mut theta = vec![1.0, 2.0];
        let analytic = vec![2.0, 4.0]; // d‖θ‖²/dθ = 2θ
        let err = finite_diff_check(
            |t| Ok(t.iter().map(|x| x * x).sum()),
            &mut theta,
            &analytic,
            1e-5,
        )
        .unwrap();
        assert!(err < 1e-8, "relative error {err}");
        assert_eq!(theta, vec![1.0, 2.0]); // restored
    }

    #[test]
    fn constant_loss_has_zero_gradient() {
        let mut theta = vec![0.3, -0.7, 2.0];
        let err = finite_diff_check(|_| Ok(5.0), &mut theta, &[0.0, 0.0, 0.0], 1e-4).unwrap();
        assert_eq!(err, 0.0);
    }

    #[test]
    fn wrong_gradient_is_caught() {
        let mut theta = vec![1.0];
        let err = finite_diff_check(
            |t| Ok(t[0] * t[0]),
            &mut theta,
            &[3.0], // truth is 2.0
            1e-5,
        )
        .unwrap();
        assert!(err > 0.1, "expected a large error, got {err}");
    }

    #[test]
    fn eps_and_shape_are_validated() {
        let mut theta = vec![1.0];
        assert!(finite_diff_check(|_| Ok(0.0), &mut theta, &[0.0], 1e-2).is_err());
        assert!(finite_diff_check(|_| Ok(0.0), &mut theta, &[0.0, 0.0], 1e-5).is_err());
    }

    #[test]
    fn non_finite_loss_is_an_error() {
        let mut theta = vec![1.0];
        assert!(matches!(
            finite_diff_check(|_| Ok(f64::NAN), &mut theta, &[0.0], 1e-5),
            Err(Error::NonFinite(_))
        ));
    }
}

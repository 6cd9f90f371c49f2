//! Panelled double-exponential quadrature.

use crate::error::AnalyticsError;

/// Integrates `f` over `[a, b]`, split at `breaks` and at a geometric ladder
/// `scale * 2^k` resolving features of width `scale` near `a`.
pub(crate) fn integrate<F: Fn(f64) -> f64>(
    what: &str,
    f: F,
    a: f64,
    b: f64,
    scale: f64,
    breaks: &[f64],
    rel_tol: f64,
) -> Result<f64, AnalyticsError> {
    if b <= a {
        return Ok(0.0);
    }
    let mut pts = vec![a, b];
    pts.extend(breaks.iter().copied().filter(|x| *x > a && *x < b));
    if scale > 0.0 && scale.is_finite() {
        let mut x = scale / 16.0;
        while a + x < b {
            pts.push(a + x);
            x *= 2.0;
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let (mut total, mut err) = (0.0, 0.0);
    for w in pts.windows(2) {
        let out = quadrature::integrate(&f, w[0], w[1], 1e-15);
        total += out.integral;
        err += out.error_estimate;
    }
    if !total.is_finite() || err > rel_tol * total.abs() + 1e-13 {
        return Err(AnalyticsError::Numeric { what: what.to_string(), value: total, error: err });
    }
    Ok(total)
}

/// Unchecked variant for inner integrals of nested quadratures.
pub(crate) fn inner<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64]) -> f64 {
    if b <= a {
        return 0.0;
    }
    let mut pts = vec![a, b];
    pts.extend(breaks.iter().copied().filter(|x| *x > a && *x < b));
    pts.sort_by(f64::total_cmp);
    pts.windows(2).map(|w| quadrature::integrate(&f, w[0], w[1], 1e-12).integral).sum()
}

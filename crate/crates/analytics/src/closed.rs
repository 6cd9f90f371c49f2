//! Closed-form targets.

use std::f64::consts::PI;

use crate::error::AnalyticsError;

/// Volume of the unit ball in dimension `d <= 3`.
pub fn kappa(d: usize) -> Result<f64, AnalyticsError> {
    match d {
        1 => Ok(2.0),
        2 => Ok(PI),
        3 => Ok(4.0 * PI / 3.0),
        _ => Err(AnalyticsError::Domain(format!("unit-ball volume only tabulated for d <= 3, got {d}"))),
    }
}

/// `E card(boundary eta)` for the two coordinate minima of a Poisson
/// process with intensity `t` on the unit square:
/// `2 (1 - e^{-t}) - (1 - e^{-t})^2 / t`.
pub fn coordmin_expected_card(t: f64) -> Result<f64, AnalyticsError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(AnalyticsError::Domain(format!("intensity {t} must be positive")));
    }
    let q = -(-t).exp_m1();
    Ok(2.0 * q - q * q / t)
}

/// Exact `E card(boundary eta)` for the two coordinate minima:
/// `2 (1 - e^{-t}) - sum_{n >= 1} P(N = n) / n`, since given `N = n` points
/// the minima coincide with probability `1 / n`.
///
/// The closed form in [`coordmin_expected_card`] treats the two minima as
/// independent and exceeds this value for every `t`.
pub fn coordmin_exact_card(t: f64) -> Result<f64, AnalyticsError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(AnalyticsError::Domain(format!("intensity {t} must be positive")));
    }
    let q = -(-t).exp_m1();
    let (lt, mut ln_fact, mut sum) = (t.ln(), 0.0, 0.0);
    for n in 1..100_000u32 {
        let nf = f64::from(n);
        ln_fact += nf.ln();
        let term = (nf * lt - ln_fact - t).exp() / nf;
        sum += term;
        if nf > t && term < 1e-18 * sum {
            break;
        }
    }
    Ok(2.0 * q - sum)
}

/// `int_{S^1} (h_L - h_K) d(theta) = 2 pi (r_L - r_K)` for centred disks.
pub fn meanwidth_target(k_radius: f64, l_radius: f64) -> Result<f64, AnalyticsError> {
    if !(k_radius > 0.0 && l_radius >= k_radius && l_radius.is_finite()) {
        return Err(AnalyticsError::Domain(format!("need 0 < K radius <= L radius, got {k_radius} and {l_radius}")));
    }
    Ok(2.0 * PI * (l_radius - k_radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordmin_values() {
        assert!((coordmin_expected_card(1.0).unwrap() - 0.864665).abs() < 1e-6);
        assert!(coordmin_expected_card(1e-9).unwrap() < 1e-8);
        assert!((coordmin_expected_card(1e3).unwrap() - 2.0).abs() < 2e-3);
        assert!(coordmin_expected_card(0.0).is_err());
        assert!(coordmin_expected_card(-1.0).is_err());
    }

    #[test]
    fn exact_card_against_direct_sum() {
        // direct Poisson sum with f64 factorials at small t
        for t in [0.5f64, 1.0, 2.0, 5.0] {
            let mut p = (-t).exp();
            let mut direct = 0.0;
            for n in 1..80 {
                p *= t / n as f64;
                direct += p * (2.0 - 1.0 / n as f64);
            }
            assert!((coordmin_exact_card(t).unwrap() - direct).abs() < 1e-13, "t = {t}");
            assert!(coordmin_exact_card(t).unwrap() < coordmin_expected_card(t).unwrap());
        }
        assert!((coordmin_exact_card(1.0).unwrap() - 0.779_35).abs() < 1e-4);
        assert!((coordmin_exact_card(500.0).unwrap() - 2.0).abs() < 1e-2);
        assert!(coordmin_exact_card(0.0).is_err());
    }

    #[test]
    fn meanwidth_values() {
        assert!((meanwidth_target(1.0, 2.0).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert_eq!(meanwidth_target(0.7, 0.7).unwrap(), 0.0);
        assert!((meanwidth_target(1.0, 3.0).unwrap() - 4.0 * PI).abs() < 1e-15);
        assert!(meanwidth_target(2.0, 1.0).is_err());
        assert!(meanwidth_target(0.0, 1.0).is_err());
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(kappa(1).unwrap(), 2.0);
        assert!(kappa(4).is_err());
    }
}

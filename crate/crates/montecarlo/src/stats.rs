//! Moments, confidence intervals, normality distances, two-sample tests and
//! log-log regressions.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::McError;

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.576;

/// Pairwise summation in index order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

pub fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

/// A closed interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// `centre -/+ 2.576 se`.
    pub fn ci99(centre: f64, se: f64) -> Self {
        Self { lo: centre - Z99 * se, hi: centre + Z99 * se }
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Sample moments with standard errors for the mean and the variance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// `sqrt(variance / n)`.
    pub se: f64,
    /// `sqrt((m4 - m2^2) / n)` with central sample moments `m2`, `m4`.
    pub variance_se: f64,
}

impl Moments {
    pub fn of(xs: &[f64]) -> Self {
        let n = xs.len();
        let m = mean(xs);
        let dev2: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
        let dev4: Vec<f64> = dev2.iter().map(|d| d * d).collect();
        let m2 = pairwise_sum(&dev2) / n as f64;
        let m4 = pairwise_sum(&dev4) / n as f64;
        let variance = if n > 1 { m2 * n as f64 / (n - 1) as f64 } else { 0.0 };
        Self {
            n,
            mean: m,
            variance,
            se: (variance / n as f64).sqrt(),
            variance_se: ((m4 - m2 * m2).max(0.0) / n as f64).sqrt(),
        }
    }

    pub fn mean_ci(&self) -> Interval {
        Interval::ci99(self.mean, self.se)
    }

    pub fn variance_ci(&self) -> Interval {
        Interval::ci99(self.variance, self.variance_se)
    }
}

/// Sample covariance with the standard error of the mean cross product.
pub fn covariance(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len();
    let (mx, my) = (mean(xs), mean(ys));
    let prods: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).collect();
    let pm = Moments::of(&prods);
    (pm.mean * n as f64 / (n - 1) as f64, pm.se)
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

/// `(W1, KS)` distances of the standardised sample from `N(0, 1)`: the mean
/// absolute gap between order statistics and normal quantiles at
/// `(i - 0.5) / n`, and the sup distance of the empirical CDF from `Phi`.
pub fn normality_diagnostics(samples: &[f64]) -> Result<(f64, f64), McError> {
    let n = samples.len();
    if n < 100 {
        return Err(McError::Domain(format!("normality diagnostics need at least 100 samples, got {n}")));
    }
    let m = Moments::of(samples);
    if m.variance.is_nan() || m.variance <= 0.0 {
        return Err(McError::Domain("sample has zero variance".into()));
    }
    let sd = m.variance.sqrt();
    let mut z: Vec<f64> = samples.iter().map(|x| (x - m.mean) / sd).collect();
    z.sort_by(f64::total_cmp);
    let normal = std_normal();
    let nf = n as f64;
    let gaps: Vec<f64> =
        z.iter().enumerate().map(|(i, zi)| (zi - normal.inverse_cdf((i as f64 + 0.5) / nf)).abs()).collect();
    let w1 = pairwise_sum(&gaps) / nf;
    let ks = z
        .iter()
        .enumerate()
        .map(|(i, zi)| {
            let p = normal.cdf(*zi);
            ((i + 1) as f64 / nf - p).max(p - i as f64 / nf)
        })
        .fold(0.0, f64::max);
    Ok((w1, ks))
}

/// Survival function `P(K > x)` of the Kolmogorov distribution.
pub fn kolmogorov_sf(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 1.18 {
        // theta-function form, accurate for small x
        let c = std::f64::consts::PI * std::f64::consts::PI / (8.0 * x * x);
        let cdf: f64 = (1..=20).map(|j| (-((2 * j - 1) as f64).powi(2) * c).exp()).sum::<f64>()
            * (2.0 * std::f64::consts::PI).sqrt()
            / x;
        return (1.0 - cdf).clamp(0.0, 1.0);
    }
    let s: f64 = (1..=100)
        .map(|j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            sign * (-2.0 * (j * j) as f64 * x * x).exp()
        })
        .sum();
    (2.0 * s).clamp(0.0, 1.0)
}

/// Result of a two-sample Kolmogorov-Smirnov test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsTest {
    pub statistic: f64,
    pub p_value: f64,
}

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value at
/// `(sqrt(n_e) + 0.12 + 0.11 / sqrt(n_e)) D`, `n_e = n m / (n + m)`. Ties are
/// handled by comparing the empirical CDFs after each distinct value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsTest, McError> {
    if a.is_empty() || b.is_empty() {
        return Err(McError::Domain("two-sample test needs non-empty samples".into()));
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n, m) = (x.len(), y.len());
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < n && j < m {
        let v = x[i].min(y[j]);
        while i < n && x[i] == v {
            i += 1;
        }
        while j < m && y[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    let lam = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    Ok(KsTest { statistic: d, p_value: kolmogorov_sf(lam) })
}

/// Fitted exponent of a power law.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub slope: f64,
    pub stderr: f64,
    pub intercept: f64,
}

/// Least-squares slope of `log metric` against `log t`, with standard error
/// `sqrt(SSR / (n - 2) / Sxx)`.
pub fn rate_fit(pairs: &[(f64, f64)]) -> Result<RateFit, McError> {
    if pairs.len() < 4 {
        return Err(McError::Domain(format!("rate fit needs at least 4 points, got {}", pairs.len())));
    }
    if let Some(&(t, v)) = pairs.iter().find(|(t, v)| !(*t > 0.0 && *v > 0.0 && v.is_finite())) {
        return Err(McError::Domain(format!("rate fit needs positive values, got ({t}, {v})")));
    }
    let lx: Vec<f64> = pairs.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = pairs.iter().map(|p| p.1.ln()).collect();
    let (mx, my) = (mean(&lx), mean(&ly));
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(McError::Domain("rate fit needs distinct abscissae".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (ssr / (lx.len() - 2) as f64 / sxx).sqrt();
    Ok(RateFit { slope, stderr, intercept })
}

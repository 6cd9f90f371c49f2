//! Conditional U-statistics `hat F^(k)` for product integrands.

use hullforge_core::{Integrand, PointPattern};
use hullforge_generators::{hull_integral, HullIntegral};
use hullforge_sampling::IntensityModel;

use crate::error::EstimatorError;

/// Elementary symmetric polynomials `e_0..=e_k` of the multiset of values.
fn elementary_symmetric(values: impl Iterator<Item = f64>, k: usize) -> Vec<f64> {
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for v in values {
        for j in (1..=k).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Estimator of `F^k` for the product integrand `f(x_1, ..., x_k) = prod g(x_i)`:
///
/// `sum_i C(k, i) A^i (k - i)! e_{k-i}`, where `A = int_[mu] g d(lambda)` and
/// `e_j` is the `j`-th elementary symmetric polynomial of `g` over the
/// boundary atoms counted with multiplicity, so that `j! e_j` integrates the
/// product against the factorial measure of the boundary. For constant `g`
/// this is `sum_i C(k, i) Lambda^i M! / (M - k + i)!` up to the factor `c^k`.
pub fn hull_estimate_k<G: HullIntegral + ?Sized>(
    gen: &G,
    model: &IntensityModel,
    g: &Integrand,
    k: usize,
    mu: &PointPattern,
) -> Result<f64, EstimatorError> {
    if k == 0 {
        return Err(EstimatorError::Unsupported("order k must be at least 1".into()));
    }
    let a = hull_integral(gen, mu, model, g)?;
    let boundary = gen.boundary(mu);
    let values = boundary.entries().iter().flat_map(|(x, m)| std::iter::repeat_n(g.eval(x), *m as usize));
    let e = elementary_symmetric(values, k);
    Ok((0..=k).map(|i| binomial(k, i) * a.powi(i as i32) * factorial(k - i) * e[k - i]).sum())
}

/// `sum_i C(k, i) lambda^i M! / (M - k + i)!` with vanishing terms when
/// `M < k - i`.
pub fn convex_moment_closed_form(lambda: f64, m: u64, k: usize) -> f64 {
    (0..=k)
        .filter(|&i| m as i64 >= (k - i) as i64)
        .map(|i| {
            let falling = (0..k - i).fold(1.0, |acc, j| acc * (m as f64 - j as f64));
            binomial(k, i) * lambda.powi(i as i32) * falling
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(convex_moment_closed_form(1.0, 4, 2), 21.0);
        assert_eq!(convex_moment_closed_form(1.0, 2, 3), 13.0);
        assert_eq!(convex_moment_closed_form(2.5, 3, 1), 5.5);
        assert_eq!(convex_moment_closed_form(0.0, 0, 3), 0.0);
    }

    #[test]
    fn symmetric_polynomials() {
        let e = elementary_symmetric([1.0, 2.0, 3.0].into_iter(), 3);
        assert_eq!(e, vec![1.0, 6.0, 11.0, 6.0]);
        let e = elementary_symmetric([1.0, 2.0].into_iter(), 3);
        assert_eq!(e[3], 0.0);
    }
}

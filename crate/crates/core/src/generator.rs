//! The generator contract and the difference calculus of `H`.
//!
//! `H_x(mu) = 1{boundary(mu + delta_x) != boundary(mu)}`, so `H_x(mu) = 0`
//! exactly when `x` lies in the hull `[mu]`.

use crate::error::CoreError;
use crate::pattern::PointPattern;
use crate::point::{SpacePoint, SpaceTag};

/// A map `mu -> boundary(mu)` on finite counting measures together with its
/// hull membership test.
///
/// Implementations must return sub-measures of their input that keep the
/// full multiplicity of every retained point, and `hull_contains(mu, x)`
/// must agree with `boundary(mu + delta_x) == boundary(mu)`.
pub trait HullGenerator: Send + Sync {
    /// Short identifier used in reports.
    fn name(&self) -> String;

    fn space(&self) -> SpaceTag;

    fn boundary(&self, mu: &PointPattern) -> PointPattern;

    /// Membership `x in [mu]`. The default evaluates the definition; concrete
    /// generators override it with a direct geometric test.
    fn hull_contains(&self, mu: &PointPattern, x: &SpacePoint) -> bool {
        hull_contains_by_definition(self, mu, x)
    }
}

/// `x in [mu]` evaluated literally from the boundary map.
pub fn hull_contains_by_definition<G: HullGenerator + ?Sized>(gen: &G, mu: &PointPattern, x: &SpacePoint) -> bool {
    gen.boundary(&mu.with(x)) == gen.boundary(mu)
}

fn check_space<G: HullGenerator + ?Sized>(gen: &G, mu: &PointPattern, xs: &[&SpacePoint]) -> Result<(), CoreError> {
    let expected = gen.space();
    if mu.space() != expected {
        return Err(CoreError::SpaceMismatch { expected, found: mu.space() });
    }
    for x in xs {
        if x.space() != expected {
            return Err(CoreError::SpaceMismatch { expected, found: x.space() });
        }
    }
    Ok(())
}

#[inline]
fn h_raw<G: HullGenerator + ?Sized>(gen: &G, mu: &PointPattern, x: &SpacePoint) -> i64 {
    i64::from(!gen.hull_contains(mu, x))
}

/// `H_x(mu)`: 1 when adding `x` changes the boundary, 0 when `x in [mu]`.
pub fn h_indicator<G: HullGenerator + ?Sized>(gen: &G, mu: &PointPattern, x: &SpacePoint) -> Result<u8, CoreError> {
    check_space(gen, mu, &[x])?;
    Ok(h_raw(gen, mu, x) as u8)
}

/// `1 - H_x(mu)`.
pub fn h_bar<G: HullGenerator + ?Sized>(gen: &G, mu: &PointPattern, x: &SpacePoint) -> Result<u8, CoreError> {
    h_indicator(gen, mu, x).map(|h| 1 - h)
}

/// `D_x H_z(mu) = H_z(mu + delta_x) - H_z(mu)`, always in `{-1, 0}`.
pub fn first_difference_h<G: HullGenerator + ?Sized>(
    gen: &G,
    mu: &PointPattern,
    x: &SpacePoint,
    z: &SpacePoint,
) -> Result<i32, CoreError> {
    check_space(gen, mu, &[x, z])?;
    Ok((h_raw(gen, &mu.with(x), z) - h_raw(gen, mu, z)) as i32)
}

/// The product form `-H_z(mu) * (1 - H_z(mu + delta_x))`.
pub fn first_difference_closed<G: HullGenerator + ?Sized>(
    gen: &G,
    mu: &PointPattern,
    x: &SpacePoint,
    z: &SpacePoint,
) -> Result<i32, CoreError> {
    check_space(gen, mu, &[x, z])?;
    let h = h_raw(gen, mu, z);
    Ok((-h * (1 - h_raw(gen, &mu.with(x), z))) as i32)
}

fn iterated(gen: &(impl HullGenerator + ?Sized), mu: &PointPattern, xs: &[SpacePoint], z: &SpacePoint) -> i64 {
    match xs.split_last() {
        None => h_raw(gen, mu, z),
        Some((last, rest)) => iterated(gen, &mu.with(last), rest, z) - iterated(gen, mu, rest, z),
    }
}

/// `D^m_{x_1..x_m} H_z(mu)` by the recursive definition
/// `D^{m+1} G(mu) = D^m G(mu + delta_{x_{m+1}}) - D^m G(mu)`.
pub fn higher_difference_h<G: HullGenerator + ?Sized>(
    gen: &G,
    mu: &PointPattern,
    xs: &[SpacePoint],
    z: &SpacePoint,
) -> Result<i64, CoreError> {
    if xs.is_empty() {
        return Err(CoreError::EmptyIncrements);
    }
    let mut refs: Vec<&SpacePoint> = xs.iter().collect();
    refs.push(z);
    check_space(gen, mu, &refs)?;
    Ok(iterated(gen, mu, xs, z))
}

/// Inclusion-exclusion closed form
/// `(-1)^m H_z(mu) sum_{k=1}^m (-1)^{k-1} sum_{|J|=k} (1 - H_z(mu + delta_J))`.
pub fn higher_difference_closed<G: HullGenerator + ?Sized>(
    gen: &G,
    mu: &PointPattern,
    xs: &[SpacePoint],
    z: &SpacePoint,
) -> Result<i64, CoreError> {
    if xs.is_empty() {
        return Err(CoreError::EmptyIncrements);
    }
    let mut refs: Vec<&SpacePoint> = xs.iter().collect();
    refs.push(z);
    check_space(gen, mu, &refs)?;
    let m = xs.len();
    assert!(m < 24, "subset enumeration limited to 23 increments");
    let hz = h_raw(gen, mu, z);
    if hz == 0 {
        return Ok(0);
    }
    let mut sum = 0i64;
    for mask in 1u32..(1 << m) {
        let k = mask.count_ones() as i64;
        let mut nu = mu.clone();
        for (j, x) in xs.iter().enumerate() {
            if mask & (1 << j) != 0 {
                nu = nu.with(x);
            }
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        sum += sign * (1 - h_raw(gen, &nu, z));
    }
    let outer = if m % 2 == 0 { 1 } else { -1 };
    Ok(outer * hz * sum)
}

/// `D_{z_1} H_{z_2}(mu) D_{z_2} H_{z_3}(mu) ... D_{z_m} H_{z_1}(mu)`.
pub fn cyclic_product<G: HullGenerator + ?Sized>(
    gen: &G,
    mu: &PointPattern,
    zs: &[SpacePoint],
) -> Result<i64, CoreError> {
    if zs.len() < 2 {
        return Err(CoreError::EmptyIncrements);
    }
    let refs: Vec<&SpacePoint> = zs.iter().collect();
    check_space(gen, mu, &refs)?;
    let m = zs.len();
    let mut prod = 1i64;
    for i in 0..m {
        let (x, z) = (&zs[i], &zs[(i + 1) % m]);
        prod *= h_raw(gen, &mu.with(x), z) - h_raw(gen, mu, z);
        if prod == 0 {
            break;
        }
    }
    Ok(prod)
}

/// Whether `H_z(mu) = prod_{x in mu} H_z(delta_x)` holds at `(mu, z)`.
pub fn prime_holds_at<G: HullGenerator + ?Sized>(
    gen: &G,
    mu: &PointPattern,
    z: &SpacePoint,
) -> Result<bool, CoreError> {
    check_space(gen, mu, &[z])?;
    let empty = PointPattern::empty(mu.space());
    let product = mu.support().all(|x| h_raw(gen, &empty.with(x), z) == 1);
    Ok((h_raw(gen, mu, z) == 1) == product)
}

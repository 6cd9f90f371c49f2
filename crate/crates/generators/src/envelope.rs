//! The Hoelder envelope generator on the functional space.
//!
//! A point `(s, u)` stands for the function `g(r) = u - R |s - r|^beta`; the
//! generator keeps the atoms that touch the pointwise supremum. For
//! `beta <= 1`, `g_{s,u} <= g_{s',u'}` iff `g_{s,u}(s) <= g_{s',u'}(s)`, so an
//! atom is a boundary atom iff no other atom dominates it at its own site.

use hullforge_core::{HullGenerator, Integrand, PointPattern, SpacePoint, SpaceTag};
use hullforge_sampling::IntensityModel;
use serde::{Deserialize, Serialize};

use crate::error::GeneratorError;
use crate::integral::{keep_indices, HullIntegral};

fn default_grid() -> usize {
    0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeGen {
    pub d: usize,
    pub r: f64,
    pub beta: f64,
    /// Midpoint cells per axis for hull integrals; 0 selects 2048 (d = 1),
    /// 256 (d = 2) or 32 (d = 3).
    #[serde(default = "default_grid")]
    pub grid: usize,
}

/// Window bounds, boundary function and rate of a functional band.
type Band<'a> = (&'a [f64], &'a [f64], &'a hullforge_sampling::BoundaryFn, f64);

fn param(x: &SpacePoint) -> (&[f64], f64) {
    match x {
        SpacePoint::Param { s, u } => (s.as_slice(), *u),
        _ => panic!("envelope generator needs functional points"),
    }
}

#[inline]
fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl EnvelopeGen {
    pub fn new(d: usize, r: f64, beta: f64) -> Result<Self, GeneratorError> {
        let g = Self { d, r, beta, grid: 0 };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        if !(1..=3).contains(&self.d) {
            return Err(GeneratorError::InvalidConfig(format!("base dimension {} outside 1..=3", self.d)));
        }
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(GeneratorError::InvalidConfig(format!("envelope constant {} must be positive", self.r)));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(GeneratorError::InvalidConfig(format!("exponent {} outside (0, 1]", self.beta)));
        }
        Ok(())
    }

    fn cells(&self) -> usize {
        match (self.grid, self.d) {
            (0, 1) => 2048,
            (0, 2) => 256,
            (0, _) => 32,
            (n, _) => n,
        }
    }

    /// `g_{s_i,u_i}(s)`.
    #[inline]
    fn g(&self, si: &[f64], ui: f64, s: &[f64]) -> f64 {
        ui - self.r * dist(si, s).powf(self.beta)
    }

    /// Support indices of the boundary atoms, in support order.
    ///
    /// Atoms are scanned by decreasing height; each is compared only with the
    /// boundary atoms found so far, since domination is transitive and every
    /// dominated atom is dominated by some boundary atom of at least its height.
    fn boundary_indices(&self, mu: &PointPattern) -> Vec<usize> {
        let atoms: Vec<(&[f64], f64)> = mu.support().map(param).collect();
        let mut order: Vec<usize> = (0..atoms.len()).collect();
        order.sort_by(|&i, &j| atoms[j].1.total_cmp(&atoms[i].1));
        let mut kept: Vec<usize> = Vec::new();
        for &j in &order {
            let (sj, uj) = atoms[j];
            let dominated = kept.iter().any(|&i| {
                let (si, ui) = atoms[i];
                self.g(si, ui, sj) >= uj
            });
            if !dominated {
                kept.push(j);
            }
        }
        kept.sort_unstable();
        kept
    }

    /// Pointwise supremum of the atoms' functions at `s`; `-inf` when empty.
    pub fn envelope_value(&self, mu: &PointPattern, s: &[f64]) -> f64 {
        mu.support()
            .map(|x| {
                let (si, ui) = param(x);
                self.g(si, ui, s)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The boundary atoms; identical to [`HullGenerator::boundary`].
    pub fn envelope_boundary(&self, mu: &PointPattern) -> PointPattern {
        keep_indices(mu, &self.boundary_indices(mu))
    }

    /// `(lo, hi, phi)` of a functional band matching this generator.
    fn band<'a>(&self, model: &'a IntensityModel) -> Result<Band<'a>, GeneratorError> {
        let unsupported = |why: String| GeneratorError::unsupported(self.name(), model.name(), why);
        let IntensityModel::HoelderBand { lo, hi, phi, r_prime, beta, rate } = model else {
            return Err(unsupported("envelopes integrate over a functional band".into()));
        };
        if lo.len() != self.d {
            return Err(unsupported(format!("band dimension {} differs from {}", lo.len(), self.d)));
        }
        if *r_prime > self.r || *beta != self.beta {
            return Err(unsupported(format!(
                "band constants (R' = {r_prime}, beta = {beta}) need R' <= {} and beta = {}",
                self.r, self.beta
            )));
        }
        Ok((lo, hi, phi, *rate))
    }
}

impl HullGenerator for EnvelopeGen {
    fn name(&self) -> String {
        format!("envelope(d={}, R={}, beta={})", self.d, self.r, self.beta)
    }

    fn space(&self) -> SpaceTag {
        SpaceTag::Param { dim: self.d as u8 }
    }

    fn boundary(&self, mu: &PointPattern) -> PointPattern {
        self.envelope_boundary(mu)
    }

    /// `x <= sup mu` and `x` is not a boundary atom.
    fn hull_contains(&self, mu: &PointPattern, x: &SpacePoint) -> bool {
        let (s, u) = param(x);
        if u > self.envelope_value(mu, s) {
            return false;
        }
        !mu.contains(x) || !self.boundary_indices(mu).iter().any(|&i| mu.entries()[i].0 == *x)
    }
}

impl HullIntegral for EnvelopeGen {
    /// `t int_window f~(s, min(sup mu, phi)_+) ds` by the midpoint rule, where
    /// `f~` is the height antiderivative of `f`.
    fn hull_integral(&self, mu: &PointPattern, model: &IntensityModel, f: &Integrand) -> Result<f64, GeneratorError> {
        let (lo, hi, phi, rate) = self.band(model)?;
        if mu.is_empty() {
            return Ok(0.0);
        }
        let bd: Vec<(Vec<f64>, f64)> = self
            .boundary_indices(mu)
            .into_iter()
            .map(|i| {
                let (s, u) = param(&mu.entries()[i].0);
                (s.to_vec(), u)
            })
            .collect();
        let n = self.cells();
        let h: Vec<f64> = (0..self.d).map(|k| (hi[k] - lo[k]) / n as f64).collect();
        let cell_volume: f64 = h.iter().product();
        let mut s = vec![0.0; self.d];
        let mut idx = vec![0usize; self.d];
        let mut acc = 0.0;
        loop {
            for k in 0..self.d {
                s[k] = lo[k] + (idx[k] as f64 + 0.5) * h[k];
            }
            let env = bd.iter().map(|(si, ui)| self.g(si, *ui, &s)).fold(f64::NEG_INFINITY, f64::max);
            let top = env.min(phi.eval(&s));
            if top > 0.0 {
                let p = SpacePoint::param(&s, top).expect("finite grid point");
                acc += f.height_integral(&p);
            }
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == self.d {
                    return Ok(rate * acc * cell_volume);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hullforge_sampling::BoundaryFn;

    fn pat(atoms: &[(f64, f64)]) -> PointPattern {
        PointPattern::from_points(
            SpaceTag::Param { dim: 1 },
            atoms.iter().map(|(s, u)| SpacePoint::param(&[*s], *u).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn envelope_examples() {
        let g = EnvelopeGen::new(1, 2.0, 1.0).unwrap();
        let mu = pat(&[(0.0, 1.0)]);
        assert!((g.envelope_value(&mu, &[0.1]) - 0.8).abs() < 1e-15);
        assert_eq!(g.envelope_value(&pat(&[]), &[0.1]), f64::NEG_INFINITY);
        let two = pat(&[(0.0, 1.0), (0.1, 0.5)]);
        assert!((g.envelope_value(&two, &[0.1]) - 0.8).abs() < 1e-15);
        assert_eq!(g.boundary(&two), mu);
        let far = pat(&[(0.0, 1.0), (10.0, 1.0)]);
        assert_eq!(g.boundary(&far), far);
    }

    #[test]
    fn hull_integral_of_single_tent() {
        // tent u = 0.5 - |s - 0.5| under the constant boundary 1: area 0.25
        let g = EnvelopeGen::new(1, 1.0, 1.0).unwrap();
        let m = IntensityModel::HoelderBand {
            lo: vec![0.0],
            hi: vec![1.0],
            phi: BoundaryFn::Constant { value: 1.0 },
            r_prime: 0.0,
            beta: 1.0,
            rate: 3.0,
        };
        let v = crate::hull_mass(&g, &pat(&[(0.5, 0.5)]), &m).unwrap();
        assert!((v - 0.75).abs() < 1e-6, "{v}");
        // clipped by phi: tent of height 2 clipped at 1
        let v = crate::hull_mass(&g, &pat(&[(0.5, 2.0)]), &m).unwrap();
        assert!((v - 3.0).abs() < 1e-6, "{v}");
    }
}

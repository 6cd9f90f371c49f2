//! Finite counting measures with multiplicities.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::point::{SpacePoint, SpaceTag};

/// A finite integer-valued measure on one ground space.
///
/// Entries are kept sorted by the exact point order with distinct points,
/// so structural equality coincides with multiset equality. Patterns are
/// values: every operation returns a new pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointPattern {
    space: SpaceTag,
    entries: Vec<(SpacePoint, u32)>,
}

impl PointPattern {
    /// The zero measure on `space`.
    pub fn empty(space: SpaceTag) -> Self {
        Self { space, entries: Vec::new() }
    }

    /// Collects points (repetitions become multiplicities).
    pub fn from_points<I>(space: SpaceTag, points: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = SpacePoint>,
    {
        Self::from_entries(space, points.into_iter().map(|p| (p, 1)))
    }

    /// Collects `(point, multiplicity)` pairs, merging repeated points.
    pub fn from_entries<I>(space: SpaceTag, entries: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (SpacePoint, u32)>,
    {
        let mut v: Vec<(SpacePoint, u32)> = Vec::new();
        for (p, m) in entries {
            if p.space() != space {
                return Err(CoreError::SpaceMismatch { expected: space, found: p.space() });
            }
            if m == 0 {
                return Err(CoreError::ZeroMultiplicity);
            }
            v.push((p, m));
        }
        v.sort_by_key(|a| a.0);
        let mut merged: Vec<(SpacePoint, u32)> = Vec::with_capacity(v.len());
        for (p, m) in v {
            match merged.last_mut() {
                Some((q, k)) if *q == p => *k += m,
                _ => merged.push((p, m)),
            }
        }
        Ok(Self { space, entries: merged })
    }

    /// Builds directly from already canonical entries (sorted, distinct, positive).
    fn from_sorted(space: SpaceTag, entries: Vec<(SpacePoint, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, m)| *m > 0));
        Self { space, entries }
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    /// Distinct support points with their multiplicities, in canonical order.
    pub fn entries(&self) -> &[(SpacePoint, u32)] {
        &self.entries
    }

    /// Number of distinct support points.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Total mass, i.e. the number of points counted with multiplicity.
    pub fn mass(&self) -> u64 {
        self.entries.iter().map(|(_, m)| *m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &SpacePoint> + '_ {
        self.entries.iter().map(|(p, _)| p)
    }

    /// Iterates over atoms, repeating each point according to its multiplicity.
    pub fn atoms(&self) -> impl Iterator<Item = &SpacePoint> + '_ {
        self.entries.iter().flat_map(|(p, m)| std::iter::repeat_n(p, *m as usize))
    }

    fn position(&self, x: &SpacePoint) -> Result<usize, usize> {
        self.entries.binary_search_by(|(p, _)| p.cmp(x))
    }

    pub fn multiplicity(&self, x: &SpacePoint) -> u32 {
        self.position(x).map(|i| self.entries[i].1).unwrap_or(0)
    }

    pub fn contains(&self, x: &SpacePoint) -> bool {
        self.position(x).is_ok()
    }

    /// Verifies that `x` lives in this pattern's ground space.
    pub fn check_point(&self, x: &SpacePoint) -> Result<(), CoreError> {
        if x.space() == self.space {
            Ok(())
        } else {
            Err(CoreError::SpaceMismatch { expected: self.space, found: x.space() })
        }
    }

    /// `self + n * delta_x`.
    pub fn with_n(&self, x: &SpacePoint, n: u32) -> Self {
        debug_assert_eq!(x.space(), self.space);
        let mut entries = self.entries.clone();
        if n == 0 {
            return Self::from_sorted(self.space, entries);
        }
        match self.position(x) {
            Ok(i) => entries[i].1 += n,
            Err(i) => entries.insert(i, (*x, n)),
        }
        Self::from_sorted(self.space, entries)
    }

    /// `self + delta_x`.
    pub fn with(&self, x: &SpacePoint) -> Self {
        self.with_n(x, 1)
    }

    /// `self - delta_x`, or `None` when `x` is not an atom.
    pub fn without_one(&self, x: &SpacePoint) -> Option<Self> {
        let i = self.position(x).ok()?;
        let mut entries = self.entries.clone();
        if entries[i].1 == 1 {
            entries.remove(i);
        } else {
            entries[i].1 -= 1;
        }
        Some(Self::from_sorted(self.space, entries))
    }

    /// Removes every copy of `x`.
    pub fn without_all(&self, x: &SpacePoint) -> Self {
        self.restrict(|p| p != x)
    }

    /// Measure sum.
    pub fn plus(&self, other: &PointPattern) -> Self {
        debug_assert_eq!(self.space, other.space);
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self::from_sorted(self.space, out)
    }

    /// Measure difference `self - other`; requires `other <= self`.
    pub fn minus(&self, other: &PointPattern) -> Result<Self, CoreError> {
        if !other.le(self) {
            return Err(CoreError::NotSubMeasure);
        }
        let mut out = Vec::with_capacity(self.entries.len());
        for (p, m) in &self.entries {
            let k = m - other.multiplicity(p);
            if k > 0 {
                out.push((*p, k));
            }
        }
        Ok(Self::from_sorted(self.space, out))
    }

    /// Sub-measure order `self <= other`.
    pub fn le(&self, other: &PointPattern) -> bool {
        self.space == other.space && self.entries.iter().all(|(p, m)| other.multiplicity(p) >= *m)
    }

    /// Restriction to the points satisfying `keep`, multiplicities retained.
    pub fn restrict<F: FnMut(&SpacePoint) -> bool>(&self, mut keep: F) -> Self {
        let entries = self.entries.iter().filter(|(p, _)| keep(p)).copied().collect();
        Self::from_sorted(self.space, entries)
    }

    /// Number of sub-measures (product of `multiplicity + 1`), saturating.
    pub fn sub_pattern_count(&self) -> u64 {
        self.entries.iter().fold(1u64, |acc, (_, m)| acc.saturating_mul(*m as u64 + 1))
    }

    /// All sub-measures `nu <= self`, in a fixed mixed-radix order.
    pub fn sub_patterns(&self) -> Vec<PointPattern> {
        let total = self.sub_pattern_count();
        assert!(total <= 1 << 20, "too many sub-patterns to enumerate");
        let mut out = Vec::with_capacity(total as usize);
        let mut counts = vec![0u32; self.entries.len()];
        loop {
            let entries =
                self.entries.iter().zip(&counts).filter(|(_, &c)| c > 0).map(|((p, _), &c)| (*p, c)).collect();
            out.push(Self::from_sorted(self.space, entries));
            let mut k = 0;
            loop {
                if k == counts.len() {
                    return out;
                }
                if counts[k] < self.entries[k].1 {
                    counts[k] += 1;
                    break;
                }
                counts[k] = 0;
                k += 1;
            }
        }
    }

    /// A random sub-measure: each entry keeps a uniform number of its copies.
    pub fn random_sub_pattern<R: Rng + ?Sized>(&self, rng: &mut R) -> PointPattern {
        let entries = self
            .entries
            .iter()
            .filter_map(|(p, m)| {
                let c = rng.random_range(0..=*m);
                (c > 0).then_some((*p, c))
            })
            .collect();
        Self::from_sorted(self.space, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> SpaceTag {
        SpaceTag::Euclid { dim: 2 }
    }

    #[test]
    fn merging_and_equality_are_order_free() {
        let a = SpacePoint::xy(0.0, 0.0);
        let b = SpacePoint::xy(1.0, 0.0);
        let p = PointPattern::from_points(sp(), [a, b, a]).unwrap();
        let q = PointPattern::from_entries(sp(), [(b, 1), (a, 2)]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.mass(), 3);
        assert_eq!(p.multiplicity(&a), 2);
    }

    #[test]
    fn arithmetic() {
        let a = SpacePoint::xy(0.0, 0.0);
        let b = SpacePoint::xy(1.0, 0.0);
        let p = PointPattern::from_points(sp(), [a, b]).unwrap();
        let q = p.with(&a);
        assert!(p.le(&q));
        assert!(!q.le(&p));
        assert_eq!(q.minus(&p).unwrap(), PointPattern::from_points(sp(), [a]).unwrap());
        assert_eq!(p.minus(&q), Err(CoreError::NotSubMeasure));
        assert_eq!(q.without_one(&a).unwrap(), p);
        assert_eq!(q.without_all(&a).mass(), 1);
        assert_eq!(p.plus(&p), q.with(&b));
    }

    #[test]
    fn sub_pattern_enumeration() {
        let a = SpacePoint::xy(0.0, 0.0);
        let b = SpacePoint::xy(1.0, 0.0);
        let p = PointPattern::from_entries(sp(), [(a, 2), (b, 1)]).unwrap();
        let subs = p.sub_patterns();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|s| s.le(&p)));
        assert!(subs.contains(&p));
        assert!(subs.contains(&PointPattern::empty(sp())));
    }

    #[test]
    fn rejects_foreign_points() {
        let l = SpacePoint::line(0.0, 1.0).unwrap();
        assert!(PointPattern::from_points(sp(), [l]).is_err());
    }
}

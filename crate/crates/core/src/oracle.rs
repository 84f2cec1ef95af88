//! Brute-force convex hulls: all classes `[π^{a_1}Λ_1 ∩ ... ∩ π^{a_s}Λ_s]`.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::{class_equal_with_inverse, lattice_basis, MatrixK};
use crate::scalar::ValuedScalar;

/// A set of lattice classes with exact membership.
#[derive(Clone, Debug, Default)]
pub struct ClassSet {
    buckets: HashMap<Vec<i64>, Vec<(MatrixK, MatrixK)>>,
    len: usize,
}

impl ClassSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Insert the class of `lattice`; returns whether it was new.
    pub fn insert(&mut self, lattice: MatrixK) -> Result<bool> {
        let inv = lattice.inverse()?;
        let key = class_fingerprint(&inv);
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|(_, other_inv)| class_equal_with_inverse(other_inv, &lattice)) {
            return Ok(false);
        }
        bucket.push((lattice, inv));
        self.len += 1;
        Ok(true)
    }

    pub fn contains(&self, lattice: &MatrixK) -> Result<bool> {
        let inv = lattice.inverse()?;
        Ok(self
            .buckets
            .get(&class_fingerprint(&inv))
            .is_some_and(|b| b.iter().any(|(_, other_inv)| class_equal_with_inverse(other_inv, lattice))))
    }

    /// One representative basis per class.
    pub fn representatives(&self) -> Vec<MatrixK> {
        let mut keys: Vec<_> = self.buckets.keys().collect();
        keys.sort();
        keys.into_iter().flat_map(|k| self.buckets[k].iter().map(|(m, _)| m.clone())).collect()
    }
}

/// Values `N_Λ(w)` on the vectors `e_i` and `e_i + e_j`, shifted to minimum
/// zero; equal for lattices in the same class.
fn class_fingerprint(inv: &MatrixK) -> Vec<i64> {
    let d = inv.rows();
    let ctx = inv.context();
    let mut out = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        for j in i..d {
            let mut w = vec![ValuedScalar::zero(ctx); d];
            w[i] = ValuedScalar::one(ctx);
            if j != i {
                w[j] = ValuedScalar::one(ctx);
            }
            let v = inv.apply(&w).iter().map(ValuedScalar::val).min().and_then(|v| v.finite()).unwrap_or(i64::MAX);
            out.push(v);
        }
    }
    let lo = out.iter().copied().min().unwrap_or(0);
    out.iter().map(|v| v - lo).collect()
}

/// Shift `c` centering `π^c Λ_i` on `Λ_1`: `π^a Λ_i ⊆ Λ_1` exactly when
/// `a ≥ -val(M_1^{-1} M_i)` and `Λ_1 ⊆ π^a Λ_i` exactly when
/// `a ≤ val(M_i^{-1} M_1)`; `c` is the midpoint of the two thresholds.
fn center(m1_inv: &MatrixK, m1: &MatrixK, mi: &MatrixK) -> Result<i64> {
    let finite = |v: crate::scalar::ExtInt| v.finite().ok_or(Error::Singular);
    let hi = -finite(m1_inv.mul(mi)?.min_valuation())?;
    let lo = finite(mi.inverse()?.mul(m1)?.min_valuation())?;
    Ok((lo + hi).div_euclid(2))
}

/// Enumerates `∩ π^{a_i} Λ_i` over growing cubes of shifts.
struct Shells {
    duals: Vec<MatrixK>,
    centers: Vec<i64>,
    set: ClassSet,
}

impl Shells {
    fn new(ms: &[MatrixK]) -> Result<Self> {
        let first = ms.first().ok_or_else(|| Error::Invalid("no matrices".into()))?;
        let first_inv = first.inverse()?;
        let centers = ms.iter().map(|m| center(&first_inv, first, m)).collect::<Result<Vec<_>>>()?;
        // duals M_i^{-T}; the intersection is the dual of the sum of scaled duals
        let duals = ms.iter().map(|m| Ok(m.inverse()?.transpose())).collect::<Result<Vec<_>>>()?;
        let mut set = ClassSet::new();
        if ms.len() == 1 {
            set.insert(first.clone())?;
        }
        Ok(Shells { duals, centers, set })
    }

    /// Add the shifts with `max |a_i| = r`; returns whether a new class appeared.
    fn shell(&mut self, r: i64) -> Result<bool> {
        let mut grew = false;
        for shifts in (1..self.duals.len()).map(|_| -r..=r).multi_cartesian_product() {
            if shifts.iter().all(|a| a.abs() < r) {
                continue;
            }
            let mut gens = self.duals[0].clone();
            for ((dual, a), c) in self.duals[1..].iter().zip(&shifts).zip(&self.centers[1..]) {
                gens = gens.hconcat(&dual.scale_uniformizer(-(a + c)))?;
            }
            let lattice = lattice_basis(&gens)?.inverse()?.transpose();
            grew |= self.set.insert(lattice)?;
        }
        Ok(grew)
    }

    fn up_to(mut self, radius: i64) -> Result<Self> {
        for r in 0..=radius {
            self.shell(r)?;
        }
        Ok(self)
    }
}

/// Classes of `∩ π^{a_i} Λ_i` with `a_1 = 0` and `a_i` within `radius` of
/// the shift at which `π^{a_i} Λ_i` is centered on `Λ_1`.
pub fn intersection_classes(ms: &[MatrixK], radius: i64) -> Result<ClassSet> {
    Ok(Shells::new(ms)?.up_to(radius)?.set)
}

/// The convex hull of the given lattice classes by exhaustive intersection,
/// checked to be complete by comparing radii `radius` and `radius + 1`.
pub fn oracle_hull(ms: &[MatrixK], radius: i64) -> Result<ClassSet> {
    let mut shells = Shells::new(ms)?.up_to(radius)?;
    if shells.shell(radius + 1)? {
        return Err(Error::NotStabilized(radius));
    }
    Ok(shells.set)
}

/// [`oracle_hull`] at the smallest radius in `1..=max_radius` that stabilizes.
pub fn oracle_hull_auto(ms: &[MatrixK], max_radius: i64) -> Result<ClassSet> {
    let mut shells = Shells::new(ms)?.up_to(1)?;
    for r in 1..=max_radius {
        if !shells.shell(r + 1)? {
            return Ok(shells.set);
        }
    }
    Err(Error::NotStabilized(max_radius))
}

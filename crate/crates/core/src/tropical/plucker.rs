//! Tropical Plücker vectors and the tropicalized linear spaces they define.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::normalize;
use crate::error::{Error, Result};
use crate::matrix::MatrixK;
use crate::scalar::ExtInt;

/// Valuations of the maximal minors of a `d × n` matrix, keyed by sorted
/// 0-based column subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector {
    pub d: usize,
    pub n: usize,
    pub values: BTreeMap<Vec<usize>, ExtInt>,
}

pub fn plucker(m: &MatrixK) -> Result<PluckerVector> {
    let (d, n) = (m.rows(), m.cols());
    if m.rank() != d {
        return Err(Error::Invalid(format!("Plücker vector of a rank-deficient {d}x{n} matrix")));
    }
    let mut values = BTreeMap::new();
    for omega in (0..n).combinations(d) {
        let v = m.val_det(&omega)?;
        values.insert(omega, v);
    }
    Ok(PluckerVector { d, n, values })
}

impl PluckerVector {
    /// `p(ω)` for any column set; `∞` unless `ω` has `d` distinct elements.
    pub fn get(&self, omega: &[usize]) -> ExtInt {
        if omega.len() != self.d {
            return ExtInt::Inf;
        }
        let mut key = omega.to_vec();
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return ExtInt::Inf;
        }
        self.values.get(&key).copied().unwrap_or(ExtInt::Inf)
    }

    /// `p(σ ∪ {i})`.
    fn get_with(&self, sigma: &[usize], i: usize) -> ExtInt {
        if sigma.contains(&i) {
            return ExtInt::Inf;
        }
        let mut s = sigma.to_vec();
        s.push(i);
        self.get(&s)
    }

    /// Whether for every `(d-1)`-set `σ` and `(d+1)`-set `τ` the minimum of
    /// `p(σ ∪ τ_i) + p(τ − τ_i)` is attained at least twice.
    pub fn exchange_holds(&self) -> bool {
        let d = self.d;
        if d == 0 || d >= self.n {
            return true;
        }
        for sigma in (0..self.n).combinations(d - 1) {
            for tau in (0..self.n).combinations(d + 1) {
                let terms: Vec<ExtInt> = tau
                    .iter()
                    .map(|&ti| {
                        let rest: Vec<usize> = tau.iter().copied().filter(|&x| x != ti).collect();
                        self.get_with(&sigma, ti) + self.get(&rest)
                    })
                    .collect();
                let min = *terms.iter().min().expect("d + 1 terms");
                if !min.is_inf() && terms.iter().filter(|&&t| t == min).count() < 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Bases `τ` (subsets with finite `p`).
    pub fn bases(&self) -> impl Iterator<Item = (&Vec<usize>, i64)> {
        self.values.iter().filter_map(|(k, v)| v.finite().map(|v| (k, v)))
    }
}

/// Nearest point of the tropical linear space `L_p` to `x` (blue rule):
/// `pr(x)_i = min_σ max_{j ∉ σ} (p(σ ∪ i) − p(σ ∪ j) + x_j)`.
pub fn blue_project(p: &PluckerVector, x: &[ExtInt]) -> Vec<ExtInt> {
    assert_eq!(x.len(), p.n, "point has {} coordinates, expected {}", x.len(), p.n);
    let sigmas: Vec<Vec<usize>> = (0..p.n).combinations(p.d.saturating_sub(1)).collect();
    let out: Vec<ExtInt> = (0..p.n)
        .map(|i| {
            let mut best = ExtInt::Inf;
            for sigma in &sigmas {
                let Some(pi) = p.get_with(sigma, i).finite() else { continue };
                let mut worst: Option<ExtInt> = None;
                for j in (0..p.n).filter(|j| !sigma.contains(j)) {
                    let Some(pj) = p.get_with(sigma, j).finite() else { continue };
                    let term = ExtInt::Fin(pi - pj) + x[j];
                    worst = Some(worst.map_or(term, |w| w.max(term)));
                }
                if let Some(w) = worst {
                    best = best.min(w);
                }
            }
            best
        })
        .collect();
    normalize(&out)
}

/// Membership in the local tropical linear space
/// `L_σ = {u ∈ L : p(σ) − Σ_σ u ≤ p(τ) − Σ_τ u for all bases τ}`.
pub fn local_tls_contains(p: &PluckerVector, sigma: &[usize], u: &[i64]) -> Result<bool> {
    let Some(p_sigma) = p.get(sigma).finite() else {
        return Err(Error::Invalid(format!("{sigma:?} is not a basis")));
    };
    let x: Vec<ExtInt> = u.iter().map(|&v| ExtInt::Fin(v)).collect();
    if blue_project(p, &x) != normalize(&x) {
        return Ok(false);
    }
    let sum = |s: &[usize]| s.iter().map(|&i| u[i]).sum::<i64>();
    let lhs = p_sigma - sum(sigma);
    Ok(p.bases().all(|(tau, p_tau)| lhs <= p_tau - sum(tau)))
}

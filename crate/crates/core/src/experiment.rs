//! Random convex triangles: membrane sizes from the triangle sweep.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apartment::{assemble_membrane, triangle_cover};
use crate::error::{Error, Result};
use crate::matrix::MatrixK;
use crate::scalar::{FieldContext, ValuedScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub d: usize,
    pub p: u64,
    pub count: usize,
    pub seed: u64,
    pub exp_min: i64,
    pub exp_max: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentSummary {
    pub d: usize,
    pub p: u64,
    pub seed: u64,
    /// Distinct membrane columns per trial, in trial order.
    pub counts: Vec<usize>,
    /// Column count to number of trials.
    pub histogram: BTreeMap<usize, usize>,
    pub min: Option<usize>,
    pub max: Option<usize>,
    /// `d · 2^d`.
    pub bound: usize,
}

/// A `d × d` matrix with entries `p^e`, `e` uniform in `[exp_min, exp_max]`;
/// singular draws are discarded.
pub fn random_power_matrix(ctx: FieldContext, d: usize, exp_min: i64, exp_max: i64, rng: &mut impl Rng) -> Result<MatrixK> {
    loop {
        let rows = (0..d)
            .map(|_| (0..d).map(|_| ValuedScalar::uniformizer_pow(ctx, rng.gen_range(exp_min..=exp_max))).collect())
            .collect();
        let m = MatrixK::from_rows(ctx, rows)?;
        if !m.det()?.is_zero() {
            return Ok(m);
        }
    }
}

/// Triangles `(I, M_2, M_3)` with random power matrices, one membrane each.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    if cfg.d == 0 {
        return Err(Error::Invalid("dimension must be positive".into()));
    }
    if cfg.exp_min > cfg.exp_max {
        return Err(Error::Invalid(format!("empty exponent range [{}, {}]", cfg.exp_min, cfg.exp_max)));
    }
    let ctx = FieldContext::p_adic(cfg.p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let m1 = MatrixK::identity(ctx, cfg.d);
    let mut counts = Vec::with_capacity(cfg.count);
    for _ in 0..cfg.count {
        let m2 = random_power_matrix(ctx, cfg.d, cfg.exp_min, cfg.exp_max, &mut rng)?;
        let m3 = random_power_matrix(ctx, cfg.d, cfg.exp_min, cfg.exp_max, &mut rng)?;
        let list = triangle_cover(&m1, &m2, &m3)?;
        counts.push(assemble_membrane(&list.apartments)?.n());
    }
    let mut histogram = BTreeMap::new();
    for &c in &counts {
        *histogram.entry(c).or_insert(0) += 1;
    }
    Ok(ExperimentSummary {
        d: cfg.d,
        p: cfg.p,
        seed: cfg.seed,
        min: counts.iter().copied().min(),
        max: counts.iter().copied().max(),
        counts,
        histogram,
        bound: cfg.d << cfg.d,
    })
}

//! End-to-end convex hull pipeline.

use crate::apartment::{apartment_list_with, assemble_membrane, CoverStrategy, Membrane};
use crate::error::{Error, Result};
use crate::matrix::MatrixK;
use crate::scalar::FieldContext;
use crate::tropical::{dual_point, enumerate_hull, lattice_from_point, lattice_image, transpose, TropicalComplex};

/// Which span of the image matrix is enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Side {
    /// Columns when there are at least as many columns as rows, else rows.
    #[default]
    Auto,
    /// Columns of the `s × n` image as points of `TP^{s-1}`.
    Columns,
    /// Rows of the image as points of `TP^{n-1}`.
    Rows,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HullOptions {
    /// Stop after building the membrane and image matrix.
    pub membrane_only: bool,
    /// Reconstruct a lattice basis for every hull point.
    pub emit_lattices: bool,
    pub side: Side,
    pub strategy: CoverStrategy,
}

#[derive(Clone, Debug)]
pub struct HullJob {
    pub ctx: FieldContext,
    pub matrices: Vec<MatrixK>,
    pub options: HullOptions,
}

impl HullJob {
    pub fn new(ctx: FieldContext, matrices: Vec<MatrixK>) -> Self {
        HullJob { ctx, matrices, options: HullOptions::default() }
    }

    fn validate(&self) -> Result<usize> {
        if self.matrices.len() < 2 {
            return Err(Error::Invalid(format!("need at least two matrices, got {}", self.matrices.len())));
        }
        let d = self.matrices[0].rows();
        for m in &self.matrices {
            if m.context() != self.ctx {
                return Err(Error::ContextMismatch(self.ctx, m.context()));
            }
            if !m.is_square() || m.rows() != d {
                return Err(Error::Dimension(format!("expected {d}x{d} matrices, got {}x{}", m.rows(), m.cols())));
            }
        }
        Ok(d)
    }
}

#[derive(Clone, Debug)]
pub struct HullResult {
    pub membrane: Membrane,
    /// `s × n`; row `i` is the image of the `i`-th input lattice.
    pub image: Vec<Vec<i64>>,
    /// The side that was enumerated.
    pub side: Side,
    pub complex: Option<TropicalComplex>,
    /// One lattice basis per complex point, in point order.
    pub representatives: Option<Vec<MatrixK>>,
}

/// Membrane, image matrix, and triangulated tropical polytope for the hull
/// of the input lattices.
pub fn compute_hull(job: &HullJob) -> Result<HullResult> {
    job.validate()?;
    for m in &job.matrices {
        if m.det()?.is_zero() {
            return Err(Error::Singular);
        }
    }
    let list = apartment_list_with(&job.matrices, job.options.strategy)?;
    let membrane = assemble_membrane(&list.apartments)?;
    let result = hull_in_membrane(&job.matrices, membrane, &job.options)?;
    if result.image[0].iter().any(|&v| v != 0) {
        return Err(Error::Invariant("first lattice does not map to the origin".into()));
    }
    Ok(result)
}

/// Run the tropical part of the pipeline against a given membrane.
///
/// The result is the hull of the input lattices only if the membrane
/// contains it.
pub fn hull_in_membrane(matrices: &[MatrixK], membrane: Membrane, options: &HullOptions) -> Result<HullResult> {
    let image = matrices.iter().map(|m| lattice_image(m, &membrane)).collect::<Result<Vec<_>>>()?;
    let (s, n) = (image.len(), membrane.n());
    let side = match options.side {
        Side::Auto if s <= n => Side::Columns,
        Side::Auto => Side::Rows,
        other => other,
    };
    if options.membrane_only {
        return Ok(HullResult { membrane, image, side, complex: None, representatives: None });
    }
    let complex = match side {
        Side::Columns => enumerate_hull(&transpose(&image)),
        _ => enumerate_hull(&image),
    };
    let representatives = if options.emit_lattices {
        let reps = complex
            .points
            .iter()
            .map(|x| {
                let u = match side {
                    Side::Columns => dual_point(&image, x)?,
                    _ => x.clone(),
                };
                lattice_from_point(&membrane, &u)
            })
            .collect::<Result<Vec<_>>>()?;
        Some(reps)
    } else {
        None
    };
    Ok(HullResult { membrane, image, side, complex: Some(complex), representatives })
}

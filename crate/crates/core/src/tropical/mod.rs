//! Min-plus geometry: Plücker vectors, tropical polytopes, and the
//! identification of a membrane with a tropical linear space.

mod plucker;
mod polytope;

pub use self::plucker::{blue_project, local_tls_contains, plucker, PluckerVector};
pub use self::polytope::{
    canonical_columns, chart, dual_point, dual_point_inverse, enumerate_hull, tconv_contains, transpose,
    tropical_distance, TropicalComplex,
};
use crate::apartment::{additive_norms, Membrane};
use crate::error::Result;
use crate::matrix::{lattice_basis, MatrixK};
use crate::scalar::ExtInt;

/// Translate so the first finite coordinate is zero.
pub fn normalize(x: &[ExtInt]) -> Vec<ExtInt> {
    match x.iter().find_map(|v| v.finite()) {
        None => x.to_vec(),
        Some(x0) => x.iter().map(|v| *v + ExtInt::Fin(-x0)).collect(),
    }
}

/// Point of `Λ_i = [M_i]` in membrane coordinates: entry `j` is the least
/// valuation in column `j` of `M_i^{-1} M`.
pub fn lattice_image(mi: &MatrixK, mem: &Membrane) -> Result<Vec<i64>> {
    additive_norms(mi, mem)
}

/// Basis of the lattice `R{π^{-u_j} v_j}` spanned by scaled membrane columns.
pub fn lattice_from_point(mem: &Membrane, u: &[i64]) -> Result<MatrixK> {
    let exps: Vec<i64> = u.iter().map(|x| -x).collect();
    lattice_basis(&mem.matrix.scale_columns(&exps))
}

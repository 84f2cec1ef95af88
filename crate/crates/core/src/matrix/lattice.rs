//! Lattices as `R`-spans of columns.

use super::MatrixK;
use crate::error::{Error, Result};

/// A `d × d` basis of the `R`-module spanned by the columns of `gens`.
///
/// Fails with [`Error::Singular`] when the columns do not span `K^d`.
pub fn lattice_basis(gens: &MatrixK) -> Result<MatrixK> {
    let d = gens.rows();
    let mut m = gens.clone();
    let mut row_free = vec![true; d];
    let mut col_free = vec![true; m.cols()];
    let mut basis_cols = Vec::with_capacity(d);
    for _ in 0..d {
        let mut best: Option<(usize, usize)> = None;
        for c in (0..m.cols()).filter(|&c| col_free[c]) {
            for r in (0..d).filter(|&r| row_free[r]) {
                let x = m.get(r, c);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| x.val() < m.get(br, bc).val()) {
                    best = Some((r, c));
                }
            }
        }
        let (pr, pc) = best.ok_or(Error::Singular)?;
        let pinv = m.get(pr, pc).inv()?;
        for c in 0..m.cols() {
            if c == pc || !col_free[c] || m.get(pr, c).is_zero() {
                continue;
            }
            let f = m.get(pr, c) * &pinv;
            for r in 0..d {
                let s = m.get(r, pc);
                if s.is_zero() {
                    continue;
                }
                let v = m.get(r, c) - &(&f * s);
                m.set(r, c, v);
            }
        }
        row_free[pr] = false;
        col_free[pc] = false;
        basis_cols.push(pc);
    }
    basis_cols.sort_unstable();
    Ok(m.select_columns(&basis_cols))
}

/// Basis of `L_1 ∩ ... ∩ L_k` for full-rank lattices given by square bases.
///
/// Computed through duality: the intersection is the dual of the sum of the
/// dual lattices `M_i^{-T} R^d`.
pub fn lattice_intersection(lattices: &[MatrixK]) -> Result<MatrixK> {
    let first = lattices.first().ok_or_else(|| Error::Invalid("empty lattice list".into()))?;
    let mut duals = first.inverse()?.transpose();
    for l in &lattices[1..] {
        duals = duals.hconcat(&l.inverse()?.transpose())?;
    }
    Ok(lattice_basis(&duals)?.inverse()?.transpose())
}

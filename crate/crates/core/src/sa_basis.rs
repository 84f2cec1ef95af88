//! Simultaneously adaptable bases for pairs of lattices.
//!
//! Given bases `M1`, `M2` of two lattices, elimination on `N = M1^{-1} M2`
//! produces a basis `A` of the first lattice and a monomial `Δ` with `AΔ` a
//! basis of the second, so both lie in the apartment `[A]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::MatrixK;
use crate::scalar::{ExtInt, ValuedScalar};

/// Output of [`sa_basis`] with its execution trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaBasis {
    /// Basis of the first lattice.
    pub a: MatrixK,
    /// Monomial matrix with `A·Δ` a basis of the second lattice.
    pub delta: MatrixK,
    /// Base-change matrices `N_1, ..., N_{d-1}` as seen when each pivot was chosen.
    pub base_changes: Vec<MatrixK>,
    /// Pivot positions `(row, col)` of the `d - 1` elimination steps.
    pub pivots: Vec<(usize, usize)>,
    /// The single remaining nonzero position of `Δ` outside the pivot rows and columns.
    pub final_pivot: (usize, usize),
}

impl SaBasis {
    /// Pivot positions including the implicit last one.
    pub fn full_pivots(&self) -> Vec<(usize, usize)> {
        let mut p = self.pivots.clone();
        p.push(self.final_pivot);
        p
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.full_pivots().into_iter().map(|(_, c)| c).collect()
    }

    /// Base-change matrix `N_j` (1-based), with `N_d = Δ`.
    pub fn base_change(&self, j: usize) -> &MatrixK {
        if j <= self.base_changes.len() {
            &self.base_changes[j - 1]
        } else {
            &self.delta
        }
    }

    /// Valuations of the diagonal of `Δ`, when `Δ` is diagonal.
    pub fn diagonal_exponents(&self) -> Option<Vec<i64>> {
        let d = self.delta.rows();
        (0..d).map(|i| self.delta.get(i, i).val().finite()).collect()
    }
}

/// Run the SA-basis elimination on `(M1, M2)`.
pub fn sa_basis(m1: &MatrixK, m2: &MatrixK) -> Result<SaBasis> {
    check_pair(m1, m2)?;
    let m1_inv = m1.inverse()?;
    sa_basis_with_inverse(m1, &m1_inv, m2)
}

/// As [`sa_basis`], reusing a precomputed `M1^{-1}`.
pub fn sa_basis_with_inverse(m1: &MatrixK, m1_inv: &MatrixK, m2: &MatrixK) -> Result<SaBasis> {
    let n = m1_inv.mul(m2)?;
    run(m1.clone(), n)
}

/// The pivot trace of [`sa_basis`], including the implicit last pivot.
pub fn replay_pivots(m1: &MatrixK, m2: &MatrixK) -> Result<Vec<(usize, usize)>> {
    Ok(sa_basis(m1, m2)?.full_pivots())
}

/// SA-basis with `Δ = diag(π^{c_1}, ..., π^{c_d})` and `c` ascending.
pub fn sorted_sa_basis(m1: &MatrixK, m2: &MatrixK) -> Result<SaBasis> {
    let sa = sa_basis(m1, m2)?;
    Ok(sort_diagonal(sa))
}

fn check_pair(m1: &MatrixK, m2: &MatrixK) -> Result<()> {
    if m1.context() != m2.context() {
        return Err(Error::ContextMismatch(m1.context(), m2.context()));
    }
    if !m1.is_square() || m1.rows() != m2.rows() || m1.cols() != m2.cols() {
        return Err(Error::Dimension(format!(
            "SA-basis needs two square matrices of equal size, got {}x{} and {}x{}",
            m1.rows(),
            m1.cols(),
            m2.rows(),
            m2.cols()
        )));
    }
    Ok(())
}

/// Run the elimination from `B_1 = M1` and a precomputed `N_1 = M1^{-1} M2`.
pub(crate) fn sa_basis_from_base_change(m1: &MatrixK, n: MatrixK) -> Result<SaBasis> {
    run(m1.clone(), n)
}

fn run(b: MatrixK, n: MatrixK) -> Result<SaBasis> {
    let d = n.rows();
    let mut state = Elimination::new(b, n);
    let mut base_changes = Vec::with_capacity(d.saturating_sub(1));
    for _ in 1..d {
        let (pr, pc) = choose_pivot(&state.n, &state.row_used, &state.col_used).ok_or(Error::Singular)?;
        base_changes.push(state.n.clone());
        state.step(pr, pc)?;
    }
    state.finish(base_changes)
}

/// Elimination state after some pivots: `B_k` and `N_k`.
#[derive(Clone)]
struct Elimination {
    b: MatrixK,
    n: MatrixK,
    row_used: Vec<bool>,
    col_used: Vec<bool>,
    pivots: Vec<(usize, usize)>,
}

impl Elimination {
    fn new(b: MatrixK, n: MatrixK) -> Self {
        let d = n.rows();
        Elimination { b, n, row_used: vec![false; d], col_used: vec![false; d], pivots: Vec::new() }
    }

    /// Eliminate around the pivot `(pr, pc)`: `N ← L N R`, `B ← B L^{-1}`.
    fn step(&mut self, pr: usize, pc: usize) -> Result<()> {
        let d = self.n.rows();
        let ctx = self.n.context();
        let n = &mut self.n;
        let b = &mut self.b;
        let pivot_inv = n.get(pr, pc).inv()?;

        // L: clear the rest of column pc.
        let pivot_row: Vec<ValuedScalar> = n.row(pr).to_vec();
        let mut new_b_col = b.column(pr);
        for r in 0..d {
            if r == pr || n.get(r, pc).is_zero() {
                continue;
            }
            let m = n.get(r, pc) * &pivot_inv;
            for c in 0..d {
                if pivot_row[c].is_zero() {
                    continue;
                }
                let v = if c == pc { ValuedScalar::zero(ctx) } else { n.get(r, c) - &(&m * &pivot_row[c]) };
                n.set(r, c, v);
            }
            for (k, entry) in new_b_col.iter_mut().enumerate() {
                let bk = b.get(k, r);
                if !bk.is_zero() {
                    *entry = &*entry + &(&m * bk);
                }
            }
        }
        for (k, entry) in new_b_col.into_iter().enumerate() {
            b.set(k, pr, entry);
        }

        // R: clear the pivot row; the pivot column is already clear.
        for c in 0..d {
            if c != pc {
                n.set(pr, c, ValuedScalar::zero(ctx));
            }
        }
        self.row_used[pr] = true;
        self.col_used[pc] = true;
        self.pivots.push((pr, pc));
        Ok(())
    }

    fn finish(self, base_changes: Vec<MatrixK>) -> Result<SaBasis> {
        let final_pivot = choose_pivot(&self.n, &self.row_used, &self.col_used).ok_or(Error::Singular)?;
        let sa = SaBasis { a: self.b, delta: self.n, base_changes, pivots: self.pivots, final_pivot };
        check_monomial(&sa.delta)?;
        Ok(sa)
    }
}

/// SA-basis apartments for every pivot-column order at once.
///
/// For each permutation `σ` this returns the basis `A` that the elimination
/// on `(M1, M2·Γ)` produces for any diagonal `Γ` whose run puts the `k`-th
/// pivot in column `σ(k)`. Scaling columns leaves the multipliers of each
/// step unchanged, so the run is simulated on `N_1 = M1^{-1} M2` directly
/// with the pivot column forced and the row chosen as the topmost entry of
/// least valuation in that column. Permutations are visited in
/// lexicographic order.
pub(crate) fn forced_column_bases(m1: &MatrixK, n: MatrixK) -> Result<Vec<(Vec<usize>, MatrixK)>> {
    let mut out = Vec::new();
    forced_dfs(Elimination::new(m1.clone(), n), &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn forced_dfs(state: Elimination, sigma: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, MatrixK)>) -> Result<()> {
    let d = state.n.rows();
    if sigma.len() == d {
        let final_pivot = *state.pivots.last().expect("at least one pivot");
        let mut state = state;
        state.pivots.pop();
        let sa = SaBasis { a: state.b, delta: state.n, base_changes: Vec::new(), pivots: state.pivots, final_pivot };
        check_monomial(&sa.delta)?;
        out.push((sigma.clone(), sa.a));
        return Ok(());
    }
    for c in (0..d).filter(|&c| !state.col_used[c]) {
        let row = (0..d)
            .filter(|&r| !state.row_used[r] && !state.n.get(r, c).is_zero())
            .min_by_key(|&r| state.n.get(r, c).val())
            .ok_or(Error::Singular)?;
        let mut child = state.clone();
        if sigma.len() + 1 < d {
            child.step(row, c)?;
        } else {
            child.row_used[row] = true;
            child.col_used[c] = true;
            child.pivots.push((row, c));
        }
        sigma.push(c);
        forced_dfs(child, sigma, out)?;
        sigma.pop();
    }
    Ok(())
}

/// Minimal valuation entry outside used rows/columns; leftmost column, then topmost row.
fn choose_pivot(n: &MatrixK, row_used: &[bool], col_used: &[bool]) -> Option<(usize, usize)> {
    let mut best: Option<(ExtInt, usize, usize)> = None;
    for c in (0..n.cols()).filter(|&c| !col_used[c]) {
        for r in (0..n.rows()).filter(|&r| !row_used[r]) {
            let v = n.get(r, c).val();
            if v.is_inf() {
                continue;
            }
            if best.is_none_or(|(bv, _, _)| v < bv) {
                best = Some((v, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

fn check_monomial(delta: &MatrixK) -> Result<()> {
    let d = delta.rows();
    for r in 0..d {
        let nz = (0..d).filter(|&c| !delta.get(r, c).is_zero()).count();
        if nz != 1 {
            return Err(Error::Invariant(format!("SA-basis Δ row {r} has {nz} nonzero entries")));
        }
    }
    for c in 0..d {
        let nz = (0..d).filter(|&r| !delta.get(r, c).is_zero()).count();
        if nz != 1 {
            return Err(Error::Invariant(format!("SA-basis Δ column {c} has {nz} nonzero entries")));
        }
    }
    Ok(())
}

/// Turn the monomial `Δ` into `diag(π^c)` with `c` ascending by permuting and
/// unit-scaling the columns of `A`.
fn sort_diagonal(sa: SaBasis) -> SaBasis {
    let d = sa.a.rows();
    let ctx = sa.a.context();
    let mut entries: Vec<(i64, Vec<ValuedScalar>)> = (0..d)
        .map(|r| {
            let c = (0..d).find(|&c| !sa.delta.get(r, c).is_zero()).expect("monomial row");
            let x = sa.delta.get(r, c);
            let unit = x.unit_part().expect("nonzero entry");
            let col = sa.a.column(r).into_iter().map(|y| &y * &unit).collect();
            (x.val().finite().expect("nonzero entry"), col)
        })
        .collect();
    entries.sort_by_key(|(v, _)| *v);
    let exps: Vec<i64> = entries.iter().map(|(v, _)| *v).collect();
    let cols: Vec<Vec<ValuedScalar>> = entries.into_iter().map(|(_, c)| c).collect();
    SaBasis {
        a: MatrixK::from_columns(ctx, d, &cols).expect("square"),
        delta: MatrixK::uniformizer_diagonal(ctx, &exps),
        ..sa
    }
}

/// Serializable summary of an SA-basis run.
#[derive(Clone, Debug, Serialize)]
pub struct SaBasisReport {
    pub a: Vec<Vec<String>>,
    pub delta: Vec<Vec<String>>,
    pub pivots: Vec<(usize, usize)>,
}

impl From<&SaBasis> for SaBasisReport {
    fn from(sa: &SaBasis) -> Self {
        let rows = |m: &MatrixK| (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect();
        SaBasisReport { a: rows(&sa.a), delta: rows(&sa.delta), pivots: sa.full_pivots() }
    }
}

//! Apartment coverings of convex hulls and enveloping membranes.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::{lattice_basis, MatrixK};
use crate::sa_basis::{forced_column_bases, sa_basis, sa_basis_from_base_change, sorted_sa_basis, SaBasis};
use crate::scalar::{ExtInt, ValuedScalar};

/// Apartments (square bases) whose union contains a convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApartmentList {
    pub d: usize,
    pub s: usize,
    pub apartments: Vec<MatrixK>,
}

impl ApartmentList {
    pub fn len(&self) -> usize {
        self.apartments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.apartments.is_empty()
    }
}

/// A wide full-rank matrix whose columns are pairwise non-proportional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membrane {
    pub matrix: MatrixK,
    /// Index of the apartment each column was first taken from.
    pub provenance: Vec<usize>,
}

impl Membrane {
    /// Wrap an arbitrary matrix, dropping proportional duplicate columns.
    pub fn from_matrix(m: &MatrixK) -> Result<Membrane> {
        let mem = assemble_membrane(std::slice::from_ref(m))?;
        if mem.matrix.rank() != m.rows() {
            return Err(Error::Invalid("membrane matrix is not of full rank".into()));
        }
        Ok(mem)
    }

    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// Restrict to the given columns.
    pub fn select(&self, idx: &[usize]) -> Membrane {
        Membrane { matrix: self.matrix.select_columns(idx), provenance: idx.iter().map(|&i| self.provenance[i]).collect() }
    }
}

/// How [`apartment_list_with`] covers hulls of three or more lattices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoverStrategy {
    /// [`triangle_cover`] for exactly three lattices; otherwise the plain
    /// recursion of [`CoverStrategy::Pairwise`].
    #[default]
    Auto,
    /// Recurse down to a single SA-basis and extend with [`cover_two`] at every level.
    Pairwise,
    /// As `Pairwise`, but hand the innermost three lattices to [`triangle_cover`].
    Triangle,
}

impl CoverStrategy {
    /// Upper bound on the number of apartments for `s` lattices in dimension `d`.
    pub fn apartment_bound(self, d: usize, s: usize) -> u128 {
        let fact: u128 = (1..=d as u128).product();
        let pow = |b: u128, e: usize| (0..e).fold(1u128, |acc, _| acc.saturating_mul(b));
        match (self, s) {
            (_, 0..=2) => 1,
            (CoverStrategy::Auto, 3) => 1 << d,
            (CoverStrategy::Auto | CoverStrategy::Pairwise, _) => pow(fact, s - 2),
            (CoverStrategy::Triangle, _) => (1u128 << d).saturating_mul(pow(fact, s - 3)),
        }
    }
}

/// Column scaled so that its first nonzero entry is one.
pub(crate) fn normalize_column(col: &[ValuedScalar]) -> Vec<ValuedScalar> {
    match col.iter().find(|x| !x.is_zero()) {
        None => col.to_vec(),
        Some(lead) => {
            let inv = lead.inv().expect("nonzero lead");
            col.iter().map(|x| x * &inv).collect()
        }
    }
}

fn apartment_key(m: &MatrixK) -> Vec<Vec<ValuedScalar>> {
    let mut cols: Vec<_> = m.columns().iter().map(|c| normalize_column(c)).collect();
    cols.sort();
    cols
}

fn push_unique(list: &mut Vec<MatrixK>, seen: &mut HashSet<Vec<Vec<ValuedScalar>>>, m: MatrixK) {
    if seen.insert(apartment_key(&m)) {
        list.push(m);
    }
}

fn check_square_family(ms: &[MatrixK]) -> Result<()> {
    let first = ms.first().ok_or_else(|| Error::Invalid("no matrices".into()))?;
    for m in ms {
        if m.context() != first.context() {
            return Err(Error::ContextMismatch(first.context(), m.context()));
        }
        if !m.is_square() || m.rows() != first.rows() {
            return Err(Error::Dimension(format!(
                "expected {0}x{0} matrices, got {1}x{2}",
                first.rows(),
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

/// SA-basis apartment for `(M1, A·Γ)` with `Γ` chosen so that the pivot
/// columns of the run follow `sigma`.
pub fn apartment_for_permutation(m1: &MatrixK, a: &MatrixK, sigma: &[usize]) -> Result<MatrixK> {
    check_square_family(&[m1.clone(), a.clone()])?;
    let base = m1.inverse()?.mul(a)?;
    permutation_run(m1, &base, sigma).map(|sa| sa.a)
}

/// The run realizing `sigma`, given `base = M1^{-1} A`.
fn permutation_run(m1: &MatrixK, base: &MatrixK, sigma: &[usize]) -> Result<SaBasis> {
    let d = base.rows();
    if sigma.len() != d || !sigma.iter().copied().sorted().eq(0..d) {
        return Err(Error::Invalid(format!("{sigma:?} is not a permutation of 0..{d}")));
    }
    let mut exps = vec![0i64; d];
    let mut sa = scaled_run(m1, base, &exps)?;
    for k in 0..d.saturating_sub(1) {
        let mut step: Option<i64> = None;
        let mut attempts = 0;
        while sa.pivots[..=k].iter().map(|p| p.1).ne(sigma[..=k].iter().copied()) {
            attempts += 1;
            if attempts > 64 {
                return Err(Error::Invariant(format!("could not realize pivot column order {sigma:?}")));
            }
            let delta = match step {
                None => 1 + valuation_spread(&sa.base_changes[k]),
                Some(prev) => 2 * prev,
            };
            step = Some(delta);
            for &c in &sigma[..=k] {
                exps[c] -= delta;
            }
            sa = scaled_run(m1, base, &exps)?;
        }
    }
    if sa.pivot_columns() != sigma {
        return Err(Error::Invariant(format!("pivot columns {:?} differ from {sigma:?}", sa.pivot_columns())));
    }
    Ok(sa)
}

fn scaled_run(m1: &MatrixK, base: &MatrixK, exps: &[i64]) -> Result<SaBasis> {
    sa_basis_from_base_change(m1, base.scale_columns(exps))
}

fn valuation_spread(m: &MatrixK) -> i64 {
    let vals: Vec<i64> = m.val_matrix().data.iter().filter_map(|v| v.finite()).collect();
    match (vals.iter().min(), vals.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    }
}

/// At most `d!` apartments covering every `conv(Λ1, A·Γ)` over diagonal `Γ`.
pub fn cover_two(m1: &MatrixK, a: &MatrixK) -> Result<ApartmentList> {
    check_square_family(&[m1.clone(), a.clone()])?;
    let d = m1.rows();
    let base = m1.inverse()?.mul(a)?;
    let mut apartments = Vec::new();
    let mut seen = HashSet::new();
    for (_, b) in forced_column_bases(m1, base)? {
        push_unique(&mut apartments, &mut seen, b);
    }
    Ok(ApartmentList { d, s: 2, apartments })
}

/// Apartments covering `conv(Λ_1, ..., Λ_s)`.
pub fn apartment_list(ms: &[MatrixK]) -> Result<ApartmentList> {
    apartment_list_with(ms, CoverStrategy::default())
}

pub fn apartment_list_with(ms: &[MatrixK], strategy: CoverStrategy) -> Result<ApartmentList> {
    check_square_family(ms)?;
    let s = ms.len();
    let d = ms[0].rows();
    if s < 2 {
        return Err(Error::Invalid("need at least two lattices".into()));
    }
    if s == 2 {
        return Ok(ApartmentList { d, s, apartments: vec![sa_basis(&ms[0], &ms[1])?.a] });
    }
    if s == 3 && strategy != CoverStrategy::Pairwise {
        return triangle_cover(&ms[0], &ms[1], &ms[2]);
    }
    let inner = if strategy == CoverStrategy::Auto { CoverStrategy::Pairwise } else { strategy };
    let rest = apartment_list_with(&ms[1..], inner)?;
    let mut apartments = Vec::new();
    let mut seen = HashSet::new();
    for a in &rest.apartments {
        for b in cover_two(&ms[0], a)?.apartments {
            push_unique(&mut apartments, &mut seen, b);
        }
    }
    Ok(ApartmentList { d, s, apartments })
}

/// One SA-basis computation of the triangle sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEvent {
    /// Range index `i` (1-based) with `c_i ≤ λ ≤ c_{i+1}`.
    pub range: usize,
    pub lambda: i64,
    /// 1-based `j` whose `j`-th pivot lies in the first `i` columns.
    pub signature: Vec<usize>,
}

/// Result of [`triangle_trace`].
#[derive(Clone, Debug)]
pub struct TriangleTrace {
    /// Exponents `c_1 ≤ ... ≤ c_d` of the sorted SA-basis of `(M2, M3)`.
    pub c: Vec<i64>,
    pub events: Vec<SweepEvent>,
    pub list: ApartmentList,
}

/// At most `2^d` apartments covering `conv(Λ1, Λ2, Λ3)`.
pub fn triangle_cover(m1: &MatrixK, m2: &MatrixK, m3: &MatrixK) -> Result<ApartmentList> {
    Ok(triangle_trace(m1, m2, m3)?.list)
}

/// [`triangle_cover`] together with the λ values at which bases were computed.
pub fn triangle_trace(m1: &MatrixK, m2: &MatrixK, m3: &MatrixK) -> Result<TriangleTrace> {
    check_square_family(&[m1.clone(), m2.clone(), m3.clone()])?;
    let d = m1.rows();
    let sorted = sorted_sa_basis(m2, m3)?;
    let c = sorted.diagonal_exponents().expect("sorted SA-basis is diagonal");
    let base = m1.inverse()?.mul(&sorted.a)?;

    let mut apartments = Vec::new();
    let mut seen = HashSet::new();
    let mut events = Vec::new();
    let mut run_at = |range: usize, lambda: i64, apartments: &mut Vec<MatrixK>| -> Result<SaBasis> {
        let exps: Vec<i64> = c.iter().map(|&cj| cj.max(lambda)).collect();
        let sa = scaled_run(m1, &base, &exps)?;
        let signature = sa
            .full_pivots()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.1 < range)
            .map(|(j, _)| j + 1)
            .collect();
        events.push(SweepEvent { range, lambda, signature });
        push_unique(apartments, &mut seen, sa.a.clone());
        Ok(sa)
    };

    for i in 1..d {
        let mut lambda = c[i - 1];
        let mut t = 0;
        while lambda < c[i] {
            lambda += t;
            let sa = run_at(i, lambda, &mut apartments)?;
            t = c[i] - lambda;
            let pivots = sa.full_pivots();
            for (j, &(pr, pc)) in pivots.iter().enumerate() {
                if pc >= i {
                    continue;
                }
                let n = sa.base_change(j + 1);
                let v1 = n.get(pr, pc).val();
                let earlier = &pivots[..=j];
                let v2 = (0..d)
                    .flat_map(|r| (i..d).map(move |col| (r, col)))
                    .filter(|pos| !earlier.contains(pos))
                    .map(|(r, col)| n.get(r, col).val())
                    .min()
                    .unwrap_or(ExtInt::Inf);
                if let (ExtInt::Fin(v1), ExtInt::Fin(v2)) = (v1, v2) {
                    t = t.min(v2 - v1 + 1);
                }
            }
            if lambda < c[i] && t < 1 {
                return Err(Error::Invariant(format!("non-positive sweep increment {t} at λ = {lambda}")));
            }
        }
    }
    if apartments.is_empty() {
        run_at(1, c[0], &mut apartments)?;
    }
    Ok(TriangleTrace { c, events, list: ApartmentList { d, s: 3, apartments } })
}

/// Concatenate apartments, keeping one column per `K*`-proportionality class.
pub fn assemble_membrane(apartments: &[MatrixK]) -> Result<Membrane> {
    let first = apartments.first().ok_or_else(|| Error::Invalid("empty apartment list".into()))?;
    let d = first.rows();
    let mut seen = HashSet::new();
    let mut cols = Vec::new();
    let mut provenance = Vec::new();
    for (k, m) in apartments.iter().enumerate() {
        if m.rows() != d {
            return Err(Error::Dimension("apartments of different sizes".into()));
        }
        for col in m.columns() {
            if col.iter().all(ValuedScalar::is_zero) {
                continue;
            }
            if seen.insert(normalize_column(&col)) {
                cols.push(col);
                provenance.push(k);
            }
        }
    }
    Ok(Membrane { matrix: MatrixK::from_columns(first.context(), d, &cols)?, provenance })
}

/// `N_Λ(v_j)` for every membrane column.
pub(crate) fn additive_norms(lattice: &MatrixK, mem: &Membrane) -> Result<Vec<i64>> {
    let inv = lattice.inverse()?;
    let prod = inv.mul(&mem.matrix)?;
    prod.val_matrix()
        .column_minima()
        .into_iter()
        .map(|v| v.finite().ok_or_else(|| Error::Invalid("zero membrane column".into())))
        .collect()
}

/// `r_M(Λ)`: the lattice spanned by `π^{-N_Λ(v_j)} v_j` over membrane columns.
pub fn retraction(mem: &Membrane, lattice: &MatrixK) -> Result<MatrixK> {
    let norms = additive_norms(lattice, mem)?;
    let exps: Vec<i64> = norms.iter().map(|n| -n).collect();
    lattice_basis(&mem.matrix.scale_columns(&exps))
}

/// Whether the class of `lattice` lies in the membrane.
pub fn membrane_contains(mem: &Membrane, lattice: &MatrixK) -> Result<bool> {
    retraction(mem, lattice)?.lattice_class_equal(lattice)
}

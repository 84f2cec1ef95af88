//! Lattice points of min-plus polytopes and their standard triangulation.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Box volume above which enumeration switches to a neighbor search.
const BOX_LIMIT: u128 = 2_000_000;

/// `max_i(v_i − w_i) − min_i(v_i − w_i)`.
pub fn tropical_distance(v: &[i64], w: &[i64]) -> i64 {
    assert_eq!(v.len(), w.len());
    let diffs = v.iter().zip(w).map(|(a, b)| a - b);
    let (lo, hi) = diffs.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
    if v.is_empty() {
        0
    } else {
        hi - lo
    }
}

/// Whether `x` lies in the min-plus span of the generator points.
pub fn tconv_contains(gens: &[Vec<i64>], x: &[i64]) -> bool {
    if gens.is_empty() {
        return false;
    }
    let lambdas: Vec<i64> =
        gens.iter().map(|g| x.iter().zip(g).map(|(xi, gi)| xi - gi).max().expect("nonempty point")).collect();
    (0..x.len()).all(|i| gens.iter().zip(&lambdas).map(|(g, l)| l + g[i]).min() == Some(x[i]))
}

/// Translate so the first coordinate is zero.
pub fn chart(x: &[i64]) -> Vec<i64> {
    match x.first() {
        Some(&x0) => x.iter().map(|v| v - x0).collect(),
        None => Vec::new(),
    }
}

/// Integer points of a tropical polytope with the flag complex of the
/// distance-one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalComplex {
    /// Points in the chart `x_1 = 0`, sorted.
    pub points: Vec<Vec<i64>>,
    /// `simplices[k]` lists the `k`-dimensional faces as sorted point indices.
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl TropicalComplex {
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.simplices.get(1).map_or(&[], Vec::as_slice)
    }

    pub fn dimension(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }
}

/// Enumerate the integer points of `tconv(gens)` and triangulate them.
///
/// # Panics
///
/// If both the ambient dimension and the number of generators exceed 64
/// and the bounding box is too large to scan.
pub fn enumerate_hull(gens: &[Vec<i64>]) -> TropicalComplex {
    let gens: Vec<Vec<i64>> = gens.iter().map(|g| chart(g)).collect();
    let points = hull_points(&gens);
    let simplices = flag_complex(&points);
    TropicalComplex { points, simplices }
}

fn hull_points(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if gens.is_empty() {
        return Vec::new();
    }
    if box_volume(gens) <= BOX_LIMIT {
        return box_points(gens);
    }
    let (k, m) = (gens.len(), gens[0].len());
    if m <= k {
        return search_points(gens);
    }
    points_via_dual(gens)
}

/// Points of `tconv(gens)` from the polytope spanned by the columns of the
/// generator matrix, carried across by [`dual_point`].
fn points_via_dual(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols: Vec<Vec<i64>> = transpose(gens).iter().map(|c| chart(c)).collect();
    let dual = if box_volume(&cols) <= BOX_LIMIT { box_points(&cols) } else { search_points(&cols) };
    let mut out: Vec<Vec<i64>> =
        dual.iter().map(|x| chart(&dual_point(gens, x).expect("dual points lie in the hull"))).collect();
    out.sort();
    out.dedup();
    out
}

fn bounds(gens: &[Vec<i64>]) -> Vec<(i64, i64)> {
    let m = gens[0].len();
    (0..m)
        .map(|j| {
            let lo = gens.iter().map(|g| g[j]).min().expect("generators");
            let hi = gens.iter().map(|g| g[j]).max().expect("generators");
            (lo, hi)
        })
        .collect()
}

fn box_volume(gens: &[Vec<i64>]) -> u128 {
    bounds(gens).iter().skip(1).fold(1u128, |acc, (lo, hi)| acc.saturating_mul((hi - lo + 1) as u128))
}

fn box_points(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let b = bounds(gens);
    let m = b.len();
    let mut out = Vec::new();
    let mut x: Vec<i64> = b.iter().map(|(lo, _)| *lo).collect();
    x[0] = 0;
    loop {
        if tconv_contains(gens, &x) {
            out.push(x.clone());
        }
        // odometer over coordinates 1..m
        let mut k = m;
        loop {
            if k <= 1 {
                return out;
            }
            k -= 1;
            if x[k] < b[k].1 {
                x[k] += 1;
                for (j, xj) in x.iter_mut().enumerate().skip(k + 1) {
                    *xj = b[j].0;
                }
                break;
            }
        }
    }
}

/// Breadth-first search from the generators over distance-one neighbors.
fn search_points(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = gens[0].len();
    assert!(m < 64, "neighbor search in {m} coordinates");
    let mut seen: HashSet<Vec<i64>> = gens.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = gens.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        // adding 1 on a nonempty proper subset S; subsets containing 0 are
        // rewritten as subtracting 1 on the complement to stay in the chart
        for mask in 1u64..(1u64 << m) - 1 {
            let mut y = x.clone();
            for (j, yj) in y.iter_mut().enumerate() {
                if mask >> j & 1 == 1 {
                    *yj += 1;
                }
            }
            let y = chart(&y);
            if !seen.contains(&y) && tconv_contains(gens, &y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

fn flag_complex(points: &[Vec<i64>]) -> Vec<Vec<Vec<usize>>> {
    let n = points.len();
    if n == 0 {
        return Vec::new();
    }
    let adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && tropical_distance(&points[i], &points[j]) == 1).collect())
        .collect();
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|i| vec![i]).collect()];
    loop {
        let last = levels.last().expect("vertex level");
        let mut next = Vec::new();
        for face in last {
            let top = *face.last().expect("nonempty face");
            for &v in adj[top].range(top + 1..) {
                if face.iter().all(|u| adj[*u].contains(&v)) {
                    let mut f = face.clone();
                    f.push(v);
                    next.push(f);
                }
            }
        }
        if next.is_empty() {
            return levels;
        }
        levels.push(next);
    }
}

/// Row-span coordinates `u_j = min_i(C_ij − x_i)` of a column-span point `x`.
///
/// `c` is given by rows. Fails when `x` is not in the column span, i.e. when
/// `x_i ≠ min_j(C_ij − u_j)` for some `i`.
pub fn dual_point(c: &[Vec<i64>], x: &[i64]) -> Result<Vec<i64>> {
    if c.len() != x.len() || c.is_empty() {
        return Err(Error::Dimension(format!("{} coordinates for a matrix with {} rows", x.len(), c.len())));
    }
    let n = c[0].len();
    let u: Vec<i64> = (0..n).map(|j| (0..x.len()).map(|i| c[i][j] - x[i]).min().expect("rows")).collect();
    let back: Vec<i64> = (0..x.len()).map(|i| (0..n).map(|j| c[i][j] - u[j]).min().expect("columns")).collect();
    if back != x {
        return Err(Error::Invalid(format!("{x:?} is not in the column span")));
    }
    Ok(u)
}

/// Inverse of [`dual_point`]: `x_i = min_j(C_ij − u_j)`.
pub fn dual_point_inverse(c: &[Vec<i64>], u: &[i64]) -> Vec<i64> {
    c.iter().map(|row| row.iter().zip(u).map(|(cij, uj)| cij - uj).min().expect("columns")).collect()
}

/// Columns of a tropical matrix, canonical up to row and column shifts:
/// each column translated so its first entry is zero, each row then shifted
/// so its minimum is zero, duplicates removed, sorted.
pub fn canonical_columns(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut cols: Vec<Vec<i64>> = (0..n).map(|j| rows.iter().map(|r| r[j] - rows[0][j]).collect()).collect();
    for i in 1..rows.len() {
        let lo = cols.iter().map(|c| c[i]).min().expect("columns");
        for c in &mut cols {
            c[i] -= lo;
        }
    }
    cols.sort();
    cols.dedup();
    cols
}

/// Rows of a matrix given by rows, as columns (transpose).
pub fn transpose(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.first().map_or(0, Vec::len);
    (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

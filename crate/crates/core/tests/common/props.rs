//! Property bodies and their input strategies, shared by the proptest suite
//! and the acceptance run.

use std::collections::BTreeSet;

use itertools::Itertools;
use lattice_hull::apartment::{
    apartment_for_permutation, assemble_membrane, cover_two, membrane_contains, retraction, triangle_cover,
    triangle_trace,
};
use lattice_hull::hull::{compute_hull, HullJob, HullOptions};
use lattice_hull::oracle::{oracle_hull_auto, ClassSet};
use lattice_hull::sa_basis::{sa_basis, sorted_sa_basis};
use lattice_hull::tropical::{enumerate_hull, plucker, tconv_contains, tropical_distance};
use lattice_hull::{parse_scalar, ExtInt, FieldContext, MatrixK, ValuedScalar};
use proptest::prelude::*;
use proptest::test_runner::TestCaseResult;

use super::*;

pub fn scalar_pairs() -> impl Strategy<Value = (ValuedScalar, ValuedScalar)> {
    contexts().prop_flat_map(|ctx| (scalars(ctx, 8), scalars(ctx, 8)))
}

pub fn ultrametric((x, y): (ValuedScalar, ValuedScalar)) -> TestCaseResult {
    prop_assert_eq!((&x * &y).val(), x.val() + y.val());
    let sum = (&x + &y).val();
    prop_assert!(sum >= x.val().min(y.val()));
    if x.val() != y.val() {
        prop_assert_eq!(sum, x.val().min(y.val()));
    }
    prop_assert_eq!((-&x).val(), x.val());
    if x.is_zero() {
        prop_assert_eq!(x.val(), ExtInt::Inf);
    } else {
        let v = x.val().finite().unwrap();
        prop_assert_eq!(x.inv().unwrap().val(), ExtInt::Fin(-v));
        prop_assert!(x.unit_part().unwrap().is_unit());
    }
    Ok(())
}

pub fn display_round_trip((x, _): (ValuedScalar, ValuedScalar)) -> TestCaseResult {
    prop_assert_eq!(parse_scalar(&x.to_string(), x.context()).unwrap(), x);
    Ok(())
}

fn pair(d: usize) -> impl Strategy<Value = (MatrixK, MatrixK)> {
    contexts().prop_flat_map(move |ctx| (invertible(ctx, d, 4), invertible(ctx, d, 4)))
}

pub fn matrix_pairs() -> impl Strategy<Value = (MatrixK, MatrixK)> {
    (2usize..=4).prop_flat_map(pair)
}

pub fn sa_contracts((m1, m2): (MatrixK, MatrixK)) -> TestCaseResult {
    let sa = sa_basis(&m1, &m2).unwrap();
    prop_assert!(sa.a.inverse().unwrap().mul(&m1).unwrap().is_unimodular());
    prop_assert!(is_monomial(&sa.delta));
    let second = sa.a.mul(&sa.delta).unwrap();
    prop_assert!(second.inverse().unwrap().mul(&m2).unwrap().is_unimodular());
    let cols: BTreeSet<usize> = sa.pivot_columns().into_iter().collect();
    prop_assert_eq!(cols.len(), m1.rows());
    Ok(())
}

pub fn sorted_diagonal((m1, m2): (MatrixK, MatrixK)) -> TestCaseResult {
    let sorted = sorted_sa_basis(&m1, &m2).unwrap();
    let c = sorted.diagonal_exponents().unwrap();
    prop_assert!(c.windows(2).all(|w| w[0] <= w[1]));
    prop_assert!(sorted.a.lattice_equal(&m1).unwrap());
    prop_assert!(sorted.a.mul(&sorted.delta).unwrap().lattice_equal(&m2).unwrap());
    Ok(())
}

pub fn scaled_pairs() -> impl Strategy<Value = (MatrixK, MatrixK, Vec<i64>)> {
    (2usize..=4).prop_flat_map(|d| (pair(d), prop::collection::vec(-5i64..=5, d))).prop_map(|((a, b), e)| (a, b, e))
}

/// Scaling the columns of `M2` scales every base-change matrix the same way
/// for as long as the pivot positions agree.
pub fn persistent_scaling((m1, m2, exps): (MatrixK, MatrixK, Vec<i64>)) -> TestCaseResult {
    let d = m1.rows();
    let plain = sa_basis(&m1, &m2).unwrap();
    let scaled = sa_basis(&m1, &m2.scale_columns(&exps)).unwrap();
    let (p, q) = (plain.full_pivots(), scaled.full_pivots());
    let agree = p.iter().zip(&q).take_while(|(a, b)| a == b).count();
    for j in 1..=(agree + 1).min(d) {
        prop_assert_eq!(scaled.base_change(j), &plain.base_change(j).scale_columns(&exps));
    }
    if agree >= d - 1 {
        prop_assert_eq!(&scaled.a, &plain.a);
    }
    Ok(())
}

pub fn plucker_inputs() -> impl Strategy<Value = MatrixK> {
    (contexts(), prop_oneof![Just((3usize, 5usize)), Just((4, 6))])
        .prop_flat_map(|(ctx, (r, c))| full_rank(ctx, r, c, 4))
}

pub fn exchange(m: MatrixK) -> TestCaseResult {
    let p = plucker(&m).unwrap();
    prop_assert!(p.exchange_holds());
    prop_assert!(p.bases().count() >= 1);
    Ok(())
}

pub fn class_inputs() -> impl Strategy<Value = (MatrixK, MatrixK, i64, usize)> {
    (contexts(), 2usize..=3).prop_flat_map(|(ctx, d)| (invertible(ctx, d, 3), unimodular(ctx, d), -4i64..=4, 0..d))
}

pub fn class_equivalence((m, u, k, i): (MatrixK, MatrixK, i64, usize)) -> TestCaseResult {
    let d = m.rows();
    let same = m.mul(&u).unwrap();
    let scaled = same.scale_uniformizer(k);
    prop_assert!(m.lattice_class_equal(&m).unwrap());
    prop_assert!(m.lattice_class_equal(&same).unwrap());
    prop_assert!(same.lattice_class_equal(&m).unwrap());
    prop_assert!(same.lattice_class_equal(&scaled).unwrap());
    prop_assert!(m.lattice_class_equal(&scaled).unwrap());
    let mut e = vec![0; d];
    e[i] = 1;
    let other = m.scale_columns(&e);
    prop_assert!(!m.lattice_class_equal(&other).unwrap());
    prop_assert!(!other.lattice_class_equal(&scaled).unwrap());
    Ok(())
}

/// Every `min_k(λ_k + g_k)` for `λ` in a box wide enough to reach all points.
fn grid_hull(gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let reach = gens.iter().flatten().map(|v| v.abs()).max().unwrap_or(0) * 2 + 1;
    let m = gens[0].len();
    let mut out = BTreeSet::new();
    for lam in (1..gens.len()).map(|_| -reach..=reach).multi_cartesian_product() {
        let lam: Vec<i64> = std::iter::once(0).chain(lam).collect();
        let x: Vec<i64> = (0..m).map(|i| gens.iter().zip(&lam).map(|(g, l)| l + g[i]).min().unwrap()).collect();
        out.insert(x.iter().map(|v| v - x[0]).collect());
    }
    out
}

pub fn tropical_generators() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4, 2usize..=3).prop_flat_map(|(m, k)| prop::collection::vec(prop::collection::vec(-4i64..=4, m), k))
}

pub fn tconv_grid(gens: Vec<Vec<i64>>) -> TestCaseResult {
    let complex = enumerate_hull(&gens);
    let found: BTreeSet<Vec<i64>> = complex.points.iter().cloned().collect();
    prop_assert_eq!(found, grid_hull(&gens));
    for x in &complex.points {
        prop_assert!(tconv_contains(&gens, x));
    }
    for e in complex.edges() {
        prop_assert_eq!(tropical_distance(&complex.points[e[0]], &complex.points[e[1]]), 1);
    }
    prop_assert_eq!(complex.euler_characteristic(), 1);
    Ok(())
}

fn factorial(d: usize) -> usize {
    (1..=d).product()
}

pub fn cover_inputs() -> impl Strategy<Value = (MatrixK, MatrixK)> {
    (contexts(), 2usize..=3).prop_flat_map(|(ctx, d)| (invertible(ctx, d, 3), invertible(ctx, d, 3)))
}

/// `cover_two` has at most `d!` apartments, among them the apartment built
/// separately for every pivot-column order, and covers both lattices.
pub fn cover_two_sound((m1, a): (MatrixK, MatrixK)) -> TestCaseResult {
    let d = m1.rows();
    let list = cover_two(&m1, &a).unwrap();
    prop_assert!(list.len() <= factorial(d));
    for sigma in (0..d).permutations(d) {
        let apartment = apartment_for_permutation(&m1, &a, &sigma).unwrap();
        prop_assert!(list.apartments.contains(&apartment));
    }
    let mem = assemble_membrane(&list.apartments).unwrap();
    prop_assert!(membrane_contains(&mem, &m1).unwrap());
    prop_assert!(membrane_contains(&mem, &a).unwrap());
    Ok(())
}

/// Triangles up to `d = 4` over `Q_p`, `d = 3` over `Q(t)`.
pub fn triangles() -> impl Strategy<Value = (MatrixK, MatrixK, MatrixK)> {
    contexts()
        .prop_flat_map(|ctx| {
            let top = if matches!(ctx, FieldContext::FunctionField { .. }) { 3 } else { 4 };
            (Just(ctx), 2usize..=top)
        })
        .prop_flat_map(|(ctx, d)| (invertible(ctx, d, 3), invertible(ctx, d, 3), invertible(ctx, d, 3)))
}

/// At most `2^d` apartments, at most `d·2^d` membrane columns, signatures
/// increasing within each range of the sweep.
pub fn triangle_sweep((m1, m2, m3): (MatrixK, MatrixK, MatrixK)) -> TestCaseResult {
    let d = m1.rows();
    let trace = triangle_trace(&m1, &m2, &m3).unwrap();
    prop_assert!(trace.list.len() <= 1 << d);
    prop_assert!(trace.c.windows(2).all(|w| w[0] <= w[1]));
    for (a, b) in trace.events.iter().tuple_windows() {
        if a.range == b.range {
            prop_assert!(a.lambda < b.lambda);
            prop_assert!(a.signature <= b.signature);
        }
    }
    for e in &trace.events {
        prop_assert_eq!(e.signature.len(), e.range);
    }
    let mem = assemble_membrane(&trace.list.apartments).unwrap();
    prop_assert!(mem.n() <= d << d);
    for m in [&m1, &m2, &m3] {
        prop_assert!(membrane_contains(&mem, m).unwrap());
    }
    Ok(())
}

pub fn retraction_inputs() -> impl Strategy<Value = (MatrixK, MatrixK, MatrixK, MatrixK)> {
    (contexts(), 2usize..=3).prop_flat_map(|(ctx, d)| {
        (invertible(ctx, d, 3), invertible(ctx, d, 3), invertible(ctx, d, 3), invertible(ctx, d, 4))
    })
}

pub fn retraction_idempotent((m1, m2, m3, other): (MatrixK, MatrixK, MatrixK, MatrixK)) -> TestCaseResult {
    let list = triangle_cover(&m1, &m2, &m3).unwrap();
    let mem = assemble_membrane(&list.apartments).unwrap();
    for m in [&m1, &m2, &m3] {
        prop_assert!(retraction(&mem, m).unwrap().lattice_class_equal(m).unwrap());
    }
    let r = retraction(&mem, &other).unwrap();
    prop_assert!(membrane_contains(&mem, &r).unwrap());
    prop_assert!(retraction(&mem, &r).unwrap().lattice_class_equal(&r).unwrap());
    Ok(())
}

pub fn small_instances() -> impl Strategy<Value = (FieldContext, Vec<MatrixK>)> {
    (prop_oneof![Just(q(2)), Just(q(3)), Just(qt())], 2usize..=3, 2usize..=3).prop_flat_map(|(ctx, d, s)| {
        prop::collection::vec(sparse_invertible(ctx, d, 3), s).prop_map(move |ms| (ctx, ms))
    })
}

/// The lattices reconstructed from the hull points are exactly the classes
/// found by brute-force intersection, and all of them lie in the membrane.
pub fn oracle_agreement((ctx, ms): (FieldContext, Vec<MatrixK>)) -> TestCaseResult {
    let mut job = HullJob::new(ctx, ms.clone());
    job.options = HullOptions { emit_lattices: true, ..HullOptions::default() };
    let result = compute_hull(&job).unwrap();
    prop_assert!(result.image[0].iter().all(|&v| v == 0));
    let oracle = oracle_hull_auto(&ms, 16).unwrap();
    let mut found = ClassSet::new();
    for rep in result.representatives.as_ref().unwrap() {
        prop_assert!(found.insert(rep.clone()).unwrap());
        prop_assert!(oracle.contains(rep).unwrap());
    }
    prop_assert_eq!(found.len(), oracle.len());
    for class in oracle.representatives() {
        prop_assert!(membrane_contains(&result.membrane, &class).unwrap());
    }
    Ok(())
}

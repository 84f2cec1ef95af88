#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;

use lattice_hull::io::parse_input;
use lattice_hull::{FieldContext, MatrixK, ValuedScalar};
use proptest::prelude::*;

pub fn load(name: &str) -> (FieldContext, Vec<MatrixK>) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    parse_input(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn q(p: u64) -> FieldContext {
    FieldContext::p_adic(p).unwrap()
}

pub fn qt() -> FieldContext {
    FieldContext::function_field('t').unwrap()
}

pub fn contexts() -> impl Strategy<Value = FieldContext> {
    prop_oneof![Just(q(2)), Just(q(3)), Just(q(5)), Just(qt())]
}

/// `Σ c_k π^{e_k}`.
pub fn power_sum(ctx: FieldContext, terms: &[(i64, i64)]) -> ValuedScalar {
    terms.iter().fold(ValuedScalar::zero(ctx), |acc, &(c, e)| {
        let term = &ValuedScalar::from_int(ctx, c) * &ValuedScalar::uniformizer_pow(ctx, e);
        &acc + &term
    })
}

fn terms(max_terms: usize, coeff: i64, exp: i64) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-coeff..=coeff, -exp..=exp), 1..=max_terms)
}

/// Sums of a few scaled powers of the uniformizer; quotients of two such
/// sums over function fields. May be zero.
pub fn scalars(ctx: FieldContext, exp: i64) -> BoxedStrategy<ValuedScalar> {
    scalars_with(ctx, exp, true)
}

fn scalars_with(ctx: FieldContext, exp: i64, quotients: bool) -> BoxedStrategy<ValuedScalar> {
    let num = terms(3, 9, exp);
    match ctx {
        FieldContext::FunctionField { .. } if quotients => (num, prop::option::of(terms(2, 3, exp)))
            .prop_map(move |(n, d)| {
                let n = power_sum(ctx, &n);
                match d.map(|d| power_sum(ctx, &d)) {
                    Some(d) if !d.is_zero() => n.try_div(&d).unwrap(),
                    _ => n,
                }
            })
            .boxed(),
        _ => num.prop_map(move |n| power_sum(ctx, &n)).boxed(),
    }
}

pub fn nonzero_scalars(ctx: FieldContext, exp: i64) -> BoxedStrategy<ValuedScalar> {
    scalars(ctx, exp).prop_filter("nonzero", |x| !x.is_zero()).boxed()
}

/// Matrices with entries from [`scalars`]; a quarter of them zero. Beyond
/// three rows or columns function-field entries are Laurent polynomials, as
/// elimination on rational functions grows too fast there.
pub fn matrices(ctx: FieldContext, rows: usize, cols: usize, exp: i64) -> BoxedStrategy<MatrixK> {
    let quotients = rows.max(cols) <= 3;
    let entry = prop_oneof![1 => Just(ValuedScalar::zero(ctx)), 3 => scalars_with(ctx, exp, quotients)];
    prop::collection::vec(prop::collection::vec(entry, cols), rows)
        .prop_map(move |rows| MatrixK::from_rows(ctx, rows).unwrap())
        .boxed()
}

/// Invertible matrices whose entries are sums of at most two terms
/// `c π^e`, `|c| ≤ 3`, `|e| ≤ exp`.
pub fn sparse_invertible(ctx: FieldContext, d: usize, exp: i64) -> BoxedStrategy<MatrixK> {
    let entry = prop_oneof![
        1 => Just(ValuedScalar::zero(ctx)),
        3 => terms(2, 3, exp).prop_map(move |t| power_sum(ctx, &t)),
    ];
    prop::collection::vec(prop::collection::vec(entry, d), d)
        .prop_map(move |rows| MatrixK::from_rows(ctx, rows).unwrap())
        .prop_filter("invertible", |m| !m.det().unwrap().is_zero())
        .boxed()
}

pub fn invertible(ctx: FieldContext, d: usize, exp: i64) -> BoxedStrategy<MatrixK> {
    matrices(ctx, d, d, exp).prop_filter("invertible", |m| !m.det().unwrap().is_zero()).boxed()
}

pub fn full_rank(ctx: FieldContext, rows: usize, cols: usize, exp: i64) -> BoxedStrategy<MatrixK> {
    matrices(ctx, rows, cols, exp).prop_filter("full rank", move |m| m.rank() == rows).boxed()
}

/// Unimodular matrices: products of unit-diagonal triangular factors with
/// integral entries.
pub fn unimodular(ctx: FieldContext, d: usize) -> BoxedStrategy<MatrixK> {
    let integral = prop::collection::vec((-4i64..=4, 0i64..=3), d * d * 2);
    integral
        .prop_map(move |v| {
            let mut lower = MatrixK::identity(ctx, d);
            let mut upper = MatrixK::identity(ctx, d);
            for i in 0..d {
                for j in 0..d {
                    let (c1, e1) = v[i * d + j];
                    let (c2, e2) = v[d * d + i * d + j];
                    if j < i {
                        lower.set(i, j, power_sum(ctx, &[(c1, e1)]));
                    } else if j > i {
                        upper.set(i, j, power_sum(ctx, &[(c2, e2)]));
                    }
                }
            }
            lower.mul(&upper).unwrap()
        })
        .boxed()
}

pub fn is_monomial(m: &MatrixK) -> bool {
    let d = m.rows();
    (0..d).all(|r| (0..d).filter(|&c| !m.get(r, c).is_zero()).count() == 1)
        && (0..d).all(|c| (0..d).filter(|&r| !m.get(r, c).is_zero()).count() == 1)
}

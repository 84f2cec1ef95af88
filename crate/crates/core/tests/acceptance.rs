//! One PASS/FAIL line per acceptance criterion, with pinned limits.

mod common;

use std::collections::BTreeSet;
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lattice_hull::apartment::{apartment_list, assemble_membrane, Membrane};
use lattice_hull::experiment::{run_experiment, ExperimentConfig};
use lattice_hull::hull::{compute_hull, hull_in_membrane, HullJob, HullOptions};
use lattice_hull::tropical::{blue_project, canonical_columns, plucker, transpose};
use lattice_hull::{ExtInt, MatrixK};
use proptest::prelude::*;
use proptest::test_runner::{RngSeed, TestCaseResult, TestRunner};

use common::props;
use common::*;

#[derive(Default)]
struct Checks {
    ok: bool,
    notes: Vec<String>,
    /// Time of the measured section when it excludes setup.
    timed: Option<Duration>,
}

impl Checks {
    fn new() -> Self {
        Checks { ok: true, ..Checks::default() }
    }

    fn check(&mut self, label: &str, ok: bool, detail: impl Display) {
        self.ok &= ok;
        let mark = if ok { "ok" } else { "MISMATCH" };
        self.notes.push(format!("{label} {detail} {mark}"));
    }

    fn note(&mut self, text: impl Display) {
        self.notes.push(text.to_string());
    }
}

fn criterion(n: u32, title: &str, limit: Duration, body: impl FnOnce() -> Checks) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let wall = start.elapsed();
    let (ok, detail, elapsed) = match outcome {
        Ok(c) => (c.ok, c.notes.join("; "), c.timed.unwrap_or(wall)),
        Err(e) => {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, format!("panicked: {}", msg.unwrap_or_default()), wall)
        }
    };
    let pass = ok && elapsed <= limit;
    println!(
        "criterion {n} {}: {title}; {detail}; {elapsed:.3?} (limit {limit:?})",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn rows(m: &[&[i64]]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// Columns as a sorted multiset.
fn column_multiset(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut cols = transpose(m);
    cols.sort();
    cols
}

fn distinct_columns(m: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    transpose(m).into_iter().collect()
}

fn hull(name: &str) -> lattice_hull::hull::HullResult {
    let (ctx, ms) = load(name);
    compute_hull(&HullJob::new(ctx, ms)).unwrap()
}

fn plucker_regression() -> Checks {
    let mut c = Checks::new();
    let ctx = q(2);
    let m = MatrixK::from_rows(
        ctx,
        vec![
            vec![power_sum(ctx, &[(1, 0)]), power_sum(ctx, &[]), power_sum(ctx, &[(1, 0)])],
            vec![power_sum(ctx, &[]), power_sum(ctx, &[(1, 0)]), power_sum(ctx, &[(1, 1)])],
        ],
    )
    .unwrap();
    let start = Instant::now();
    let p = plucker(&m).unwrap();
    c.timed = Some(start.elapsed());
    let got = [p.get(&[0, 1]), p.get(&[0, 2]), p.get(&[1, 2])];
    c.check("p(12), p(13), p(23) =", got == [ExtInt::Fin(0), ExtInt::Fin(1), ExtInt::Fin(0)], format!("{got:?}"));
    c
}

fn blue_rule_regression() -> Checks {
    let mut c = Checks::new();
    let ctx = q(2);
    let m = MatrixK::from_rows(
        ctx,
        vec![
            vec![power_sum(ctx, &[(1, 0)]), power_sum(ctx, &[]), power_sum(ctx, &[(1, 0)])],
            vec![power_sum(ctx, &[]), power_sum(ctx, &[(1, 0)]), power_sum(ctx, &[(1, 1)])],
        ],
    )
    .unwrap();
    let p = plucker(&m).unwrap();
    let fin = |v: [i64; 3]| v.map(ExtInt::Fin).to_vec();
    let cases = [([0, 1, 1], [0, 0, 0]), ([0, -1, -2], [0, -1, 0]), ([0, -2, 2], [0, -1, 2])];
    let start = Instant::now();
    let got: Vec<Vec<ExtInt>> = cases.iter().map(|(x, _)| blue_project(&p, &fin(*x))).collect();
    c.timed = Some(start.elapsed());
    for ((x, want), g) in cases.iter().zip(&got) {
        c.check(&format!("{x:?} ->"), *g == fin(*want), format!("{g:?}"));
    }
    c
}

fn q5_triangle() -> Checks {
    let mut c = Checks::new();
    let result = hull("q5_triangle.json");
    let f = result.complex.as_ref().unwrap().f_vector();
    c.check("f-vector", f == [9, 15, 7], format!("{f:?}"));
    let printed = rows(&[&[0, 0, 0, 0], &[0, 1, 2, 3], &[-1, -2, 1, -1]]);
    c.check(
        "image vs printed 3x4",
        canonical_columns(&result.image) == canonical_columns(&printed),
        format!("{:?}", result.image),
    );
    c.check("first row zero", result.image[0].iter().all(|&v| v == 0), "");
    c
}

fn quadrilateral_naive() -> Checks {
    let mut c = Checks::new();
    let (_, ms) = load("quadrilateral.json");
    let (_, mem) = load("quadrilateral_naive_membrane.json");
    let membrane = Membrane::from_matrix(&mem[0]).unwrap();
    let result = hull_in_membrane(&ms, membrane, &HullOptions::default()).unwrap();
    let printed = rows(&[&[0, 0, 0, 0, 0, 0], &[-2, 0, 0, 0, 0, 0], &[-3, -4, 0, 0, 0, 0], &[-6, -8, -5, 0, 0, 0]]);
    c.check(
        "image vs printed 4x6",
        column_multiset(&result.image) == column_multiset(&printed),
        format!("{:?}", result.image),
    );
    let f = result.complex.as_ref().unwrap().f_vector();
    c.check("f-vector", f == [18, 32, 15], format!("{f:?}"));
    c
}

fn quadrilateral() -> Checks {
    let mut c = Checks::new();
    let (ctx, ms) = load("quadrilateral.json");
    let list = apartment_list(&ms).unwrap();
    let membrane = assemble_membrane(&list.apartments).unwrap();
    c.check("distinct membrane columns", membrane.n() == 12, membrane.n());
    let result = compute_hull(&HullJob::new(ctx, ms)).unwrap();
    let f = result.complex.as_ref().unwrap().f_vector();
    let at = |k: usize| f.get(k).copied().unwrap_or(0);
    c.check("vertices", at(0) == 29, at(0));
    c.check("edges", at(1) == 67, at(1));
    c.check("triangles", at(2) == 41, at(2));
    c.note(format!("3-cells found: {}", at(3)));
    c.note(format!("Euler characteristic {}", result.complex.as_ref().unwrap().euler_characteristic()));
    let printed = rows(&[
        &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[-2, 0, 0, 0, -2, 0, -2, 0, 0, -2, 0, 0],
        &[-3, -4, 0, -1, -2, 0, -2, 0, -1, -3, -1, 0],
        &[-6, -8, -5, -5, -7, 0, -7, -4, -1, -3, -5, 0],
    ]);
    let same = canonical_columns(&result.image) == canonical_columns(&printed);
    c.note(format!("image {} the printed 4x12 up to normalization", if same { "equals" } else { "differs from" }));
    c
}

fn laurent() -> Checks {
    let mut c = Checks::new();
    let result = hull("laurent4.json");
    c.check("distinct membrane columns", result.membrane.n() == 84, result.membrane.n());
    let printed = rows(&[
        &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[-3, -2, -1, -3, -3, 0, 2, 2, 0, -1, -1, -3],
        &[1, 2, 3, 1, 1, 3, 3, 1, 1, 1, 3, 3],
        &[3, 3, 3, 2, 1, 1, 3, 1, 1, 1, 1, 1],
    ]);
    let ours = distinct_columns(&result.image);
    let theirs = distinct_columns(&printed);
    c.check(
        "pruned image vs printed 4x12",
        ours == theirs,
        format!("{} distinct columns, {} of them printed", ours.len(), ours.intersection(&theirs).count()),
    );
    let f = result.complex.as_ref().unwrap().f_vector();
    c.check("f-vector", f == [30, 95, 102, 36], format!("{f:?}"));
    let printed_hull = lattice_hull::tropical::enumerate_hull(&transpose(&printed));
    let same_points = printed_hull.points == result.complex.as_ref().unwrap().points;
    c.note(format!("printed matrix spans {} the same point set", if same_points { "exactly" } else { "NOT" }));
    c
}

fn random_triangles() -> Checks {
    let mut c = Checks::new();
    let cfg = ExperimentConfig { d: 5, p: 3, count: 100, seed: 2024, exp_min: -20, exp_max: 20 };
    let summary = run_experiment(&cfg).unwrap();
    let (lo, hi) = (summary.min.unwrap(), summary.max.unwrap());
    c.check("max columns <= 160:", hi <= 160, hi);
    c.check("min columns >= 5:", lo >= 5, lo);
    c.note(format!("histogram {:?}", summary.histogram));

    let (ctx, ms) = load("q3_triangle.json");
    let result = compute_hull(&HullJob::new(ctx, ms.clone())).unwrap();
    let points: BTreeSet<Vec<i64>> = result.complex.as_ref().unwrap().points.iter().cloned().collect();
    let printed = [[0, 19, -8], [0, 18, 15], [0, 13, 16], [0, 12, 20], [0, 7, 20]];
    let found = printed.iter().filter(|p| points.contains(p.as_slice())).count();
    c.check("printed points in hull:", found == 5, format!("{found}/5"));
    let cols = transpose(&result.image);
    let idx: Vec<usize> = printed.iter().filter_map(|p| cols.iter().position(|col| col == p)).collect();
    c.check("printed points among image columns:", idx.len() == 5, format!("{}/5", idx.len()));
    if idx.len() == 5 {
        let sub = result.membrane.select(&idx);
        let coarse = hull_in_membrane(&ms, sub, &HullOptions::default()).unwrap();
        let coarse_points: BTreeSet<Vec<i64>> = coarse.complex.as_ref().unwrap().points.iter().cloned().collect();
        c.check("5-column submembrane hull has the same points:", coarse_points == points, coarse_points.len());
    }
    c
}

fn run_property<S: Strategy>(
    c: &mut Checks,
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> TestCaseResult,
) {
    let config = ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0xacce_97ed),
        failure_persistence: None,
        ..ProptestConfig::default()
    };
    let result = TestRunner::new(config).run(&strategy, test);
    c.check(&format!("{name} x{cases}"), result.is_ok(), result.err().map(|e| e.to_string()).unwrap_or_default());
}

fn property_suite() -> Checks {
    let mut c = Checks::new();
    run_property(&mut c, "ultrametric laws", 1000, props::scalar_pairs(), props::ultrametric);
    run_property(&mut c, "SA-basis contracts d=2..4", 100, props::matrix_pairs(), props::sa_contracts);
    run_property(&mut c, "persistent scaling", 100, props::scaled_pairs(), props::persistent_scaling);
    run_property(&mut c, "exchange on 3x5 and 4x6", 40, props::plucker_inputs(), props::exchange);
    run_property(&mut c, "oracle/pipeline agreement", 50, props::small_instances(), props::oracle_agreement);
    run_property(&mut c, "retraction", 30, props::retraction_inputs(), props::retraction_idempotent);
    run_property(&mut c, "cover_two <= d!", 30, props::cover_inputs(), props::cover_two_sound);
    run_property(&mut c, "triangle_cover <= 2^d", 30, props::triangles(), props::triangle_sweep);
    c
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let s = Duration::from_secs;
    let results = [
        criterion(1, "Plucker vector over Q_2", ms(1), plucker_regression),
        criterion(2, "blue-rule projections", ms(1), blue_rule_regression),
        criterion(3, "Q_5 triangle hull", s(1), q5_triangle),
        criterion(4, "quadrilateral, naive membrane", s(1), quadrilateral_naive),
        criterion(5, "quadrilateral, enveloping membrane", s(10), quadrilateral),
        criterion(6, "4x4 Laurent example", s(60), laurent),
        criterion(7, "random 5x5 triangles over Q_3", s(180), random_triangles),
        criterion(8, "property suite", s(60), property_suite),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance suite. Runs every exit criterion, prints one PASS/FAIL line
//! for each, and exits nonzero if any fails.
//!
//!     cargo test -p parteq --test acceptance

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use parteq::bijection::{
    finite_glaisher_forward, finite_glaisher_inverse, glaisher_forward, glaisher_inverse,
};
use parteq::qseries::{compare_bounded, lhs_series, rhs_series, solution_i_check};
use parteq::{
    count_a, count_b, enumerate_a, enumerate_b, phi, phi_inverse, Budget, ClassParams, Partition,
};
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rayon::prelude::*;

mod common;

type Outcome = Result<String, String>;

const GRID_N: u64 = 28;
const GRID_K: u64 = 6;
const GRID_D: u64 = 4;
const GRID_M: u64 = 8;
const SERIES_DEGREE: usize = 60;
const SOLUTION_I_DEGREE: usize = 100;
const PROPERTY_CASES: u32 = 10_000;
const GRID_TIME_LIMIT: Duration = Duration::from_secs(600);
const SMALL_TIME_LIMIT: Duration = Duration::from_secs(1);

fn p(s: &str) -> Partition {
    Partition::parse(s).expect("fixture parses")
}

fn params(n: u64, k: u64, d: u64, m: u64) -> ClassParams {
    ClassParams::new(n, k, d, m).expect("valid params")
}

fn check(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn rendered(items: impl IntoIterator<Item = Partition>) -> Vec<String> {
    items.into_iter().map(|q| q.render()).collect()
}

fn weight_seven() -> Outcome {
    let start = Instant::now();
    let listed_a = ["4 2 1", "3 2^2", "2^2 1^3"];
    let listed_b = ["3 2^2", "2^3 1", "2^2 1^3"];
    for m in 4..=20 {
        let ps = params(7, 2, 2, m);
        let a = rendered(enumerate_a(&ps, Budget::DEFAULT).map_err(err)?);
        let b = rendered(enumerate_b(&ps, Budget::DEFAULT).map_err(err)?);
        check(a == listed_a, || format!("m={m}: A = {a:?}"))?;
        check(b == listed_b, || format!("m={m}: B = {b:?}"))?;
        let (ca, cb) = (
            count_a(&ps, Budget::DEFAULT).map_err(err)?,
            count_b(&ps, Budget::DEFAULT).map_err(err)?,
        );
        check(ca == 3 && cb == 3, || format!("m={m}: counts {ca}, {cb}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < SMALL_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("m = 4..=20, {elapsed:.2?}"))
}

fn golden_example_one() -> Outcome {
    let ps = params(123, 7, 3, 4);
    let (kappa, trace) =
        phi(&p("15^2 12 11 9 8 7^4 6^2 5 3 2^2 1"), &ps).map_err(err)?;
    let expected = [
        ("kappa", &kappa, "21 18 11 8 7^4 5 4^3 3^3 2^5 1"),
        ("mu", &trace.mu, "15^2 12 9 6^2 3"),
        ("o", &trace.o, "11 8 7^4 5 2^2 1"),
        ("mu_star", &trace.mu_star, "7^3 6^3 4^3 3^3 2^3"),
        ("mu_star_0", &trace.mu_star_0, "4^3 3^3 2^3"),
        ("epsilon", &trace.epsilon, "21 18"),
        ("delta", &trace.delta, "11 8 7^4 5 2^2 1"),
    ];
    for (name, got, want) in expected {
        check(got.render() == want, || format!("{name} = {got}, expected {want}"))?;
    }
    trace.validate().map_err(err)?;
    Ok(format!("kappa = {kappa}"))
}

fn golden_example_two() -> Outcome {
    let ps = params(189, 4, 3, 7);
    let lambda = p("24 21 20 17 15 14^4 9 7^2 2^5 1^3");
    let (kappa, trace) = phi(&lambda, &ps).map_err(err)?;
    let expected = [
        ("kappa", &kappa, "20 17 14^4 7^2 6 4^9 3^7 2^8 1^3"),
        ("mu", &trace.mu, "24 21 15 9"),
        ("o", &trace.o, "20 17 14^4 7^2 2^5 1^3"),
        ("mu_star", &trace.mu_star, "4^9 3^6 2^6 1^3"),
        ("mu_star_0", &trace.mu_star_0, "4^9 3^6 2^6 1^3"),
        ("epsilon", &trace.epsilon, ""),
        ("delta", &trace.delta, "20 17 14^4 7^2 6 3 2^2"),
    ];
    for (name, got, want) in expected {
        check(got.render() == want, || format!("{name} = {got}, expected {want}"))?;
    }
    trace.validate().map_err(err)?;
    let (back, inverse_trace) = phi_inverse(&kappa, &ps).map_err(err)?;
    check(back == lambda, || format!("phi_inverse gave {back}"))?;
    inverse_trace.validate().map_err(err)?;
    Ok(format!("kappa = {kappa}, inverse recovers lambda"))
}

fn grid_points() -> Vec<ClassParams> {
    let mut points = Vec::new();
    for n in 0..=GRID_N {
        for k in 1..=GRID_K {
            for d in 1..=GRID_D {
                for m in 1..=GRID_M {
                    points.push(params(n, k, d, m));
                }
            }
        }
    }
    points
}

/// |A| and |B| by enumeration for every grid point, computed once.
fn grid_counts() -> &'static BTreeMap<ClassParams, (u64, u64)> {
    static COUNTS: OnceLock<BTreeMap<ClassParams, (u64, u64)>> = OnceLock::new();
    COUNTS.get_or_init(|| {
        grid_points()
            .into_par_iter()
            .map(|ps| {
                let a = count_a(&ps, Budget::DEFAULT).expect("within budget");
                let b = count_b(&ps, Budget::DEFAULT).expect("within budget");
                (ps, (a, b))
            })
            .collect()
    })
}

fn check_bijection(ps: &ClassParams) -> Result<(), String> {
    let members_a: Vec<Partition> = enumerate_a(ps, Budget::DEFAULT).map_err(err)?.collect();
    let members_b: BTreeSet<String> =
        rendered(enumerate_b(ps, Budget::DEFAULT).map_err(err)?).into_iter().collect();
    let mut images = BTreeSet::new();
    for lambda in &members_a {
        let (kappa, _) = phi(lambda, ps).map_err(|e| format!("{ps}: phi({lambda}): {e}"))?;
        let (back, _) = phi_inverse(&kappa, ps).map_err(|e| format!("{ps}: {e}"))?;
        check(&back == lambda, || format!("{ps}: {lambda} -> {kappa} -> {back}"))?;
        check(images.insert(kappa.render()), || format!("{ps}: {kappa} hit twice"))?;
    }
    check(images == members_b, || format!("{ps}: image of A differs from B"))?;
    for text in &members_b {
        let kappa = p(text);
        let (lambda, _) = phi_inverse(&kappa, ps).map_err(|e| format!("{ps}: {e}"))?;
        let (again, _) = phi(&lambda, ps).map_err(|e| format!("{ps}: {e}"))?;
        check(again == kappa, || format!("{ps}: {kappa} -> {lambda} -> {again}"))?;
    }
    Ok(())
}

fn equinumerosity_grid() -> Outcome {
    let start = Instant::now();
    let counts = grid_counts();
    for (ps, &(a, b)) in counts {
        check(a == b, || format!("{ps}: |A| = {a}, |B| = {b}"))?;
    }
    let with_bijection: Vec<ClassParams> =
        counts.keys().copied().filter(|ps| ps.d >= 2).collect();
    with_bijection
        .par_iter()
        .map(check_bijection)
        .collect::<Result<Vec<()>, String>>()?;
    let members: u64 = counts.values().map(|&(a, _)| a).sum();
    let elapsed = start.elapsed();
    check(elapsed < GRID_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} points, {members} members of A, {} bijection checks, {elapsed:.2?}",
        counts.len(),
        with_bijection.len()
    ))
}

fn series_identity_bounded() -> Outcome {
    let mut below = 0;
    let mut above = 0;
    for k in 1..=GRID_K {
        for d in 1..=GRID_D {
            for m in 1..=GRID_M {
                let cmp = compare_bounded(k, d, m, SERIES_DEGREE);
                if let Some((e, l, r)) = cmp.mismatch {
                    return Err(format!("k={k} d={d} m={m}: q^{e}: {l} vs {r}"));
                }
                if m < k {
                    below += 1
                } else {
                    above += 1
                }
            }
        }
    }
    check(below > 0 && above > 0, || "a branch was not exercised".into())?;
    Ok(format!("N = {SERIES_DEGREE}, {below} points with m < k, {above} with m >= k"))
}

fn triple_oracle() -> Outcome {
    let counts = grid_counts();
    let degree = GRID_N as usize;
    for k in 1..=GRID_K {
        for d in 1..=GRID_D {
            for m in 1..=GRID_M {
                let lhs = lhs_series(k, d, m, degree);
                let rhs = rhs_series(k, d, m, degree);
                for n in 0..=GRID_N {
                    let (a, b) = counts[&params(n, k, d, m)];
                    let (l, r) = (
                        lhs.coefficient(n as usize).map_err(err)?,
                        rhs.coefficient(n as usize).map_err(err)?,
                    );
                    check(*l == BigInt::from(a) && *r == BigInt::from(b), || {
                        format!("n={n} k={k} d={d} m={m}: |A|={a} lhs={l} |B|={b} rhs={r}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{} (n,k,d,m) points", counts.len()))
}

fn series_identity_unbounded() -> Outcome {
    for k in 0..=8 {
        check(solution_i_check(k, SOLUTION_I_DEGREE), || format!("k = {k} disagrees"))?;
    }
    Ok(format!("k = 0..=8, N = {SOLUTION_I_DEGREE}"))
}

/// Every partition of `n` into parts at most `max`, as descending part lists.
fn oracle_partitions(n: u64, max: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in oracle_partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn oracle_k_divisible(parts: &[u64], k: u64, d: u64) -> bool {
    parts.iter().filter(|&&x| x % d == 0).count() as u64 == k
}

fn oracle_largest_repeated(parts: &[u64], k: u64, d: u64) -> bool {
    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    for &x in parts {
        *tally.entry(x).or_default() += 1;
    }
    tally.iter().rev().find(|(_, &c)| c >= d).map(|(&x, _)| x) == Some(k)
}

fn unbounded_reduction() -> Outcome {
    let mut points = 0;
    for n in 1..=22 {
        let all = oracle_partitions(n, n);
        for d in 2..=3 {
            for k in 1..=5 {
                let ps = params(n, k, d, n + 1);
                let want_a = all.iter().filter(|q| oracle_k_divisible(q, k, d)).count() as u64;
                let want_b = all.iter().filter(|q| oracle_largest_repeated(q, k, d)).count() as u64;
                let a = count_a(&ps, Budget::DEFAULT).map_err(err)?;
                let b = count_b(&ps, Budget::DEFAULT).map_err(err)?;
                check(a == want_a && b == want_b, || {
                    format!("{ps}: A {a} vs oracle {want_a}, B {b} vs oracle {want_b}")
                })?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} points with m = n + 1"))
}

fn run_property<S, F>(name: &str, strategy: S, test: F) -> Result<(), String>
where
    S: proptest::strategy::Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Outcome {
    use proptest::prop_assert_eq;

    run_property("conjugate involution", common::partition(), |q| {
        prop_assert_eq!(q.conjugate().conjugate(), q);
        Ok(())
    })?;
    run_property(
        "weight additivity",
        (common::partition(), common::partition()),
        |(q, r)| {
            prop_assert_eq!(q.add(&r).unwrap().weight(), q.weight() + r.weight());
            Ok(())
        },
    )?;
    run_property("Glaisher round trip", common::glaisher_input(), |(d, o)| {
        let delta = glaisher_forward(&o, d).unwrap();
        prop_assert_eq!(glaisher_inverse(&delta, d).unwrap(), o);
        Ok(())
    })?;
    run_property("Glaisher inverse round trip", common::glaisher_image(), |(d, delta)| {
        let o = glaisher_inverse(&delta, d).unwrap();
        prop_assert_eq!(glaisher_forward(&o, d).unwrap(), delta);
        Ok(())
    })?;
    run_property("finite Glaisher round trip", common::finite_input(), |(d, m, o)| {
        let delta = finite_glaisher_forward(&o, d, m).unwrap();
        prop_assert_eq!(finite_glaisher_inverse(&delta, d, m).unwrap(), o);
        Ok(())
    })?;
    run_property("finite Glaisher inverse round trip", common::finite_image(), |(d, m, delta)| {
        let o = finite_glaisher_inverse(&delta, d, m).unwrap();
        prop_assert_eq!(finite_glaisher_forward(&o, d, m).unwrap(), delta);
        Ok(())
    })?;
    run_property("finite Glaisher multiplicity bound", common::finite_input(), |(d, m, o)| {
        let delta = finite_glaisher_forward(&o, d, m).unwrap();
        for (&i, &c) in delta.iter() {
            proptest::prop_assert!(i <= m * d && (i > m || c < d), "part {} x{}", i, c);
        }
        Ok(())
    })?;
    run_property("parse/render round trip", common::partition(), |q| {
        prop_assert_eq!(Partition::parse(&q.render()).unwrap(), q);
        Ok(())
    })?;
    Ok(format!("8 properties x {PROPERTY_CASES} cases"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 weight-seven counts and lists", weight_seven),
        ("AC2 golden bijection, example 1", golden_example_one),
        ("AC3 golden bijection, example 2", golden_example_two),
        ("AC4 equinumerosity grid and bijection", equinumerosity_grid),
        ("AC5 bounded series identity", series_identity_bounded),
        ("AC6 triple-oracle agreement", triple_oracle),
        ("AC7 unbounded series identity", series_identity_unbounded),
        ("AC8 reduction to the unbounded theorem", unbounded_reduction),
        ("AC9 property suites", property_suites),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

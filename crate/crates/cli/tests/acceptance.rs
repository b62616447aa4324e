//! Exit criteria, one line each. Runs without the libtest harness so every
//! line prints; the process fails if any criterion fails.

mod common;

use std::process::ExitCode;

use common::*;
use noon_cli::validate::{empirical_cases, DEFAULT_SEED, EMPIRICAL_SHOTS, EMPIRICAL_TRIALS};
use noon_core::analytic::{self, ChannelPair, Method};
use noon_core::{breakeven, fock, montecarlo};

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn heisenberg_recovery() -> Outcome {
    let ch = ChannelPair::lossless();
    let worst = (1..=20)
        .map(|n| (analytic::noon_min_phase_error(n, &ch).value - 1.0 / n as f64).abs())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-14, format!("max |min delta_phi - 1/N| = {worst:.2e} (tol 1e-14), N = 1..20"))
}

fn sql_recovery() -> Outcome {
    let ch = ChannelPair::lossless();
    let worst = (1..=20)
        .map(|n| (analytic::separable_min_phase_error(n, &ch).value - 1.0 / (n as f64).sqrt()).abs())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-14, format!("max |min delta_phi - 1/sqrt(N)| = {worst:.2e} (tol 1e-14), N = 1..20"))
}

fn breakeven_thresholds() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, stated) in [(2, 0.41), (4, 0.56), (10, 0.73)] {
        let star = breakeven::breakeven_alpha2(n, 1.0).unwrap().alpha2_star;
        let root = breakeven::breakeven_polynomial_root(n).unwrap();
        let Some(star) = star else {
            ok = false;
            parts.push(format!("N={n}: none"));
            continue;
        };
        ok &= (star - stated).abs() <= 0.005 && (star - root).abs() <= 1e-9;
        parts.push(format!("N={n}: {star:.6} (poly {:.1e})", (star - root).abs()));
    }
    outcome(ok, parts.join(", "))
}

fn oracle_equivalence() -> Outcome {
    const ALPHAS: [f64; 5] = [0.1, 0.3, 0.6, 0.999999, 1.0];
    let mut worst = 0.0f64;
    let mut cases = 0;
    for a1 in ALPHAS {
        for a2 in ALPHAS {
            let ch = ChannelPair::new(a1, a2, 0.0).unwrap();
            for n in 1..=6 {
                for k in 0..32 {
                    let phi = 2.0 * std::f64::consts::PI * k as f64 / 32.0;
                    for method in [Method::Noon, Method::Separable] {
                        let m = match method {
                            Method::Noon => fock::oracle_noon_stats(n, &ch, phi).unwrap(),
                            Method::Separable => fock::oracle_separable_stats(n, &ch, phi).unwrap(),
                        };
                        let mean = analytic::mean(method, n, &ch, phi);
                        let var = analytic::noise(method, n, &ch, phi).powi(2);
                        let r = (m.mean - mean).abs().max((m.variance - var).abs());
                        worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
                        cases += 1;
                    }
                }
            }
        }
    }
    outcome(worst <= 1e-10, format!("max residual {worst:.2e} (tol 1e-10) over {cases} cases"))
}

fn heisenberg_unreachable() -> Outcome {
    let grid: Vec<f64> = (1..=20).map(|k| 0.05 * k as f64).collect();
    let mut margin = f64::INFINITY;
    for n in [2, 4, 10] {
        for &a1 in &grid {
            for &a2 in &grid {
                if a1 < 1.0 || a2 < 1.0 {
                    let ch = ChannelPair::new(a1, a2, 0.0).unwrap();
                    margin = margin.min(analytic::noon_min_phase_error(n, &ch).value - 1.0 / n as f64);
                }
            }
        }
    }
    outcome(margin > 0.0, format!("min (min delta_phi - 1/N) = {margin:.3e} over 20x20 grid, N in {{2, 4, 10}}"))
}

fn always_worse() -> Outcome {
    let mut margin = f64::INFINITY;
    for a1 in [0.3, 0.409] {
        for k in 1..=500 {
            let ch = ChannelPair::new(a1, k as f64 / 500.0, 0.0).unwrap();
            margin = margin.min(
                analytic::noon_min_phase_error(2, &ch).value - analytic::separable_min_phase_error(2, &ch).value,
            );
        }
    }
    outcome(margin > 0.0, format!("min (noon - separable) = {margin:.3e}, alpha1 in {{0.3, 0.409}}, 500 alpha2"))
}

fn deficit_grows_with_n() -> Outcome {
    let stars: Vec<Option<f64>> = [2, 3, 4, 6, 10]
        .iter()
        .map(|&n| breakeven::breakeven_alpha2(n, 1.0).unwrap().alpha2_star)
        .collect();
    let ok = stars.iter().all(Option::is_some)
        && stars.windows(2).all(|w| w[1].unwrap() > w[0].unwrap());
    let shown: Vec<String> = stars.iter().map(|s| format!("{:.4}", s.unwrap_or(f64::NAN))).collect();
    outcome(ok, format!("alpha2* for N = 2, 3, 4, 6, 10: {}", shown.join(" < ")))
}

fn empirical_propagation() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (method, n, ch, seed) in empirical_cases(DEFAULT_SEED) {
        let phi = montecarlo::operating_point(method, n, &ch);
        let r = montecarlo::empirical_phase_error(method, n, &ch, phi, EMPIRICAL_SHOTS, EMPIRICAL_TRIALS, seed)
            .unwrap();
        let pass = (0.9..=1.1).contains(&r.ratio());
        ok &= pass;
        parts.push(format!(
            "{method} N={n} ({}, {}): {:.3}{}",
            ch.alpha1(),
            ch.alpha2(),
            r.ratio(),
            if pass { "" } else { " OUT" }
        ));
    }
    outcome(ok, format!("ratio in [0.9, 1.1]: {}", parts.join("; ")))
}

fn figure_regeneration() -> Outcome {
    let mut problems = Vec::new();
    for (args, file) in GOLDEN_RUNS {
        if stdout_of(args) != golden(file) {
            problems.push(format!("{file} differs"));
        }
    }
    for (file, n) in [("limit_sweep_N2.csv", 2.0), ("limit_sweep_N4.csv", 4.0)] {
        let csv = Csv::parse(&golden(file));
        for name in &csv.header[1..csv.header.len() - 1] {
            if csv.numbers(name).iter().any(|&v| v <= 1.0 / n) {
                problems.push(format!("{file} {name} reaches 1/N"));
            }
        }
    }
    for (file, stated) in [("compare_min_N2.csv", 0.414), ("compare_min_N4.csv", 0.56), ("compare_min_N10.csv", 0.73)] {
        let csv = Csv::parse(&golden(file));
        let c = first_crossing(&csv.numbers("alpha2"), &csv.numbers("noon_a1_1.0"), &csv.numbers("sep_a1_1.0"));
        if !c.is_some_and(|c| (c - stated).abs() <= 0.005) {
            problems.push(format!("{file} crossing {c:?}"));
        }
    }
    let csv = Csv::parse(&golden("breakeven.csv"));
    for row in &csv.rows {
        if let [_, Some(n2), Some(n4), Some(n10)] = row[..] {
            if !(n10 >= n4 && n4 >= n2) {
                problems.push(format!("breakeven order at alpha1 = {:?}", row[0]));
            }
        }
    }
    let detail = if problems.is_empty() {
        format!("{} golden files identical; 1/N never reached; crossings and region order hold", GOLDEN_RUNS.len())
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Heisenberg-limit recovery", heisenberg_recovery),
        ("SQL recovery", sql_recovery),
        ("break-even thresholds", breakeven_thresholds),
        ("oracle equivalence", oracle_equivalence),
        ("Heisenberg unreachability", heisenberg_unreachable),
        ("always-worse region", always_worse),
        ("N-scaling of the deficit", deficit_grows_with_n),
        ("empirical error propagation", empirical_propagation),
        ("figure regeneration", figure_regeneration),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.passed);
        println!("{} {}. {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

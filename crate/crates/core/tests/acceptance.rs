//! Acceptance suite: one PASS/FAIL line per criterion, then the check that
//! pins down the one criterion known to fail. Runs without the libtest
//! harness so the lines show up in plain `cargo test` output.

use std::process::ExitCode;

use opsf_core::acceptance::{run_all, DEFAULT_SEED};
use opsf_core::mzv::{partial_sum_float, product_truncation};

/// Criteria whose check cannot hold as stated; they are still run and
/// printed as FAIL, and their failure is pinned down below instead.
const KNOWN_UNATTAINABLE: &[u8] = &[11];

fn acceptance_criteria() -> Result<(), String> {
    let results = run_all(DEFAULT_SEED);
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", results.len());

    if results.len() != 14 {
        return Err(format!("expected 14 criteria, ran {}", results.len()));
    }
    for r in &results {
        if KNOWN_UNATTAINABLE.contains(&r.id) {
            if !r.within_budget {
                return Err(format!("criterion {} over budget", r.id));
            }
        } else if !r.passed {
            return Err(format!("criterion {} failed: {}", r.id, r.detail));
        }
    }
    Ok(())
}

/// The partial sums do converge to the product, but only like (ln n)/n²,
/// so n = 40 sits about 1.4e−3 away; 1e−6 needs n in the thousands.
fn partial_sum_gap_is_slow_convergence() -> Result<(), String> {
    let (p, _) = product_truncation(1.0, 1_000_000);
    let gap = |n: usize| (partial_sum_float(1.0, n) - p).abs();
    if gap(40) <= 1e-3 {
        return Err(format!("gap at n=40 is only {:e}", gap(40)));
    }
    let scaled: Vec<f64> = [100, 400, 1600]
        .iter()
        .map(|&n| gap(n) * (n * n) as f64 / (n as f64).ln())
        .collect();
    if scaled.windows(2).any(|w| (w[1] / w[0] - 1.0).abs() >= 0.2) {
        return Err(format!("gap·n²/ln n not stable: {scaled:?}"));
    }
    if gap(4000) >= 1e-6 {
        return Err(format!("gap at n=4000 is {:e}", gap(4000)));
    }
    println!("criterion 11 gap: {:.3e} at n=40, {:.3e} at n=4000", gap(40), gap(4000));
    Ok(())
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Result<(), String>); 2] = [
        ("acceptance_criteria", acceptance_criteria),
        ("partial_sum_gap_is_slow_convergence", partial_sum_gap_is_slow_convergence),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        match check() {
            Ok(()) => println!("test {name} ... ok"),
            Err(e) => {
                println!("test {name} ... FAILED: {e}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

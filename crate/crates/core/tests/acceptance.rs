//! Acceptance criteria. Each criterion prints one PASS/FAIL line. All
//! comparisons are exact: the tolerance for every criterion is zero.

use gamma_cycles::verify::{run_suite, SUITES};

const SEED: u64 = 20240611;
const TOLERANCE: &str = "exact";

fn main() {
    let mut failed = Vec::new();
    for (id, name) in SUITES {
        let r = run_suite(id, SEED);
        println!(
            "{} criterion {id}: {name} ({} checks, tolerance: {TOLERANCE}){}",
            if r.passed { "PASS" } else { "FAIL" },
            r.checks,
            if r.detail.is_empty() { String::new() } else { format!(" - {}", r.detail) }
        );
        if !r.passed {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

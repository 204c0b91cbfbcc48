//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use kg_uniform::checks::{acceptance_suite, Tolerances};

fn main() -> ExitCode {
    let clock = Instant::now();
    let outcomes = acceptance_suite(&Tolerances::default());
    for (i, o) in outcomes.iter().enumerate() {
        println!("[{}] {o}", i + 1);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        outcomes.len() - failed,
        clock.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

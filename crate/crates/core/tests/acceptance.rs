//! Acceptance suite: every criterion at full sample size, one line each.

use std::process::ExitCode;

use helix_steiner::verify;

fn main() -> ExitCode {
    let results = verify::run_all(false);
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

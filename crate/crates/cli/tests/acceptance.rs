//! Runs every acceptance criterion at full size and prints one line each.
//!
//! `cargo test -p quatnil-cli --test acceptance`

use std::process::ExitCode;

use quatnil_cli::selftest::{run_all, SelftestOptions};

fn main() -> ExitCode {
    let reports = run_all(&SelftestOptions::default());
    for r in &reports {
        println!("{}", r.line());
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    println!("{passed} of {} criteria passed", reports.len());
    if passed == reports.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

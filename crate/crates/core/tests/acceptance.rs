//! Runs all eleven acceptance criteria and prints one line per criterion.
//! Built without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use monocat::selftest;

fn main() -> ExitCode {
    let reports = selftest::run_all(0);
    for r in &reports {
        println!("{}", r.line());
    }
    let failed: Vec<usize> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("{} of {} criteria pass", reports.len() - failed.len(), reports.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

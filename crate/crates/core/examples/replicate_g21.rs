//! Re-derives the properties of the 21-vertex graph and prints the JSON report.
//!
//! cargo run --release --example replicate_g21

use std::process::ExitCode;

use hstab::g21::replicate_example;

fn main() -> ExitCode {
    let report = replicate_example();
    println!("{}", report.to_json());
    for c in &report.checks {
        eprintln!("{:<28} {}", c.check, if c.passed { "pass" } else { "FAIL" });
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

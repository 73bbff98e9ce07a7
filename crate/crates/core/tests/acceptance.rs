//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use cbgraph::acceptance::run_all;

fn main() -> ExitCode {
    let t0 = Instant::now();
    let results = run_all(|o| {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2} {}: {} ({:.2}s)", o.index, o.name, o.detail, o.seconds);
    });
    let passed = results.iter().filter(|o| o.passed).count();
    println!("acceptance: {passed}/{} passed in {:.2}s", results.len(), t0.elapsed().as_secs_f64());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! All acceptance criteria at full size, one line per criterion.

use std::process::ExitCode;

use qburge_core::verify::run_criterion;

fn main() -> ExitCode {
    // `cargo test -- <filter>` style arguments are accepted and ignored.
    let mut all = true;
    let mut total_ms = 0;
    for id in 1..=14 {
        let r = run_criterion(id, usize::MAX, 0);
        total_ms += r.millis;
        let mark = if r.passed { "PASS" } else { "FAIL" };
        println!("[{mark}] criterion {id:>2}: {} ({} checks, {} ms)", r.title, r.checked, r.millis);
        for f in &r.failures {
            println!("         {f}");
        }
        all &= r.passed;
    }
    println!("acceptance: {} in {total_ms} ms", if all { "all criteria pass" } else { "FAILURES" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

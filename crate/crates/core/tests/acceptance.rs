//! Runs every reference computation and prints one line per item. Plain
//! `main` so the lines are never captured; exits 1 if any item fails.

use std::process::ExitCode;

use rootpoly::verify::{catalog, run_item, Options};

fn main() -> ExitCode {
    let opts = Options::default();
    let mut failed = 0;
    for item in catalog() {
        let r = run_item(&item, &opts);
        println!(
            "[{}] {:>2} {:<24} {:>8.2?}  {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.elapsed,
            r.computed
        );
        if !r.pass {
            println!("        expected: {}", r.expected);
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", catalog().len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

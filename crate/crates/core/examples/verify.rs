//! Runs the built-in verification suites, as `snorm verify` does.

use snorm::app::{verify_all, VerifyOptions};

fn main() -> snorm::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let report = verify_all(seed, &VerifyOptions::default())?;
    for suite in &report.suites {
        println!("{:<16} {}/{} checks", format!("{:?}", suite.suite), suite.passed, suite.checks);
        for f in &suite.failures {
            println!("  {}: {}", f.check, f.witness);
        }
    }
    println!("all passed: {}", report.passed());
    Ok(())
}

//! A norm on the trace class that no nonzero operator attains: each
//! improvement step raises the trace while keeping the norm at one.

use snorm::rational::{ratio, to_f64, to_string};
use snorm::sn_ideal::{non_attainment_demo, PiWeight};

fn main() -> snorm::Result<()> {
    let pi = PiWeight::harmonic(ratio(1, 2), ratio(1, 1))?;
    let report = non_attainment_demo(&pi, 30)?;
    for (n, tr) in report.traces.iter().enumerate().step_by(5) {
        println!("step {n:>2}: trace = {:.6} ({})", to_f64(tr), to_string(tr));
    }
    println!("bound: {}", to_string(&report.bound));
    println!("holds: {}", report.holds());
    Ok(())
}

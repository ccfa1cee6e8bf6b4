//! Quantum value of the chained inequality for several dimensions and
//! chain lengths, next to the closed form.

use chainbell::chain::{evaluate_chain, minimal_violating_n, ChainScenario};
use chainbell::quantum::Variant;

fn main() -> chainbell::Result<()> {
    println!("{:>3} {:>4} {:>12} {:>12} {:>12} {:>9}", "d", "N", "lhs", "closed", "margin", "violated");
    for d in [2, 3, 4, 5, 7] {
        for big_n in [2, 4, 8, 16, 32] {
            let r = evaluate_chain(&ChainScenario::from_settings(d, big_n, Variant::Standard)?)?;
            println!(
                "{d:>3} {big_n:>4} {:>12.9} {:>12.9} {:>12.9} {:>9}",
                r.lhs,
                r.closed_form.unwrap_or(f64::NAN),
                r.margin,
                r.violated
            );
        }
    }
    for d in 2..=8 {
        println!("d = {d}: smallest violating N = {}", minimal_violating_n(d)?);
    }
    Ok(())
}

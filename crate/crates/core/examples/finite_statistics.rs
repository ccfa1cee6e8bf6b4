//! Seeded sampling of the d = 3, N = 4 chain and comparison with the exact margin.

use chainbell::chain::{evaluate_chain, ChainScenario};
use chainbell::quantum::Variant;
use chainbell::sampler::{estimate_chain, SampleConfig};

fn main() -> chainbell::Result<()> {
    let scenario = ChainScenario::from_settings(3, 4, Variant::Standard)?;
    let exact = evaluate_chain(&scenario)?.margin;
    for shots in [1_000, 10_000, 100_000, 1_000_000] {
        let r = estimate_chain(&SampleConfig::new(7, shots, scenario)?)?;
        println!(
            "{shots:>8} shots/link: margin {:.6} ± {:.6} (exact {exact:.6}, {:.2}σ)",
            r.margin_estimate,
            r.margin_stderr,
            (r.margin_estimate - exact) / r.margin_stderr
        );
    }
    let r = estimate_chain(&SampleConfig::new(7, 100_000, scenario)?)?;
    for e in &r.per_link {
        println!("  link ({}, {}): {:.6} ± {:.6}", e.first, e.second, e.estimate, e.stderr);
    }
    println!("  closing ({}, {}): {:.6}", r.closing.first, r.closing.second, r.closing.estimate);
    Ok(())
}

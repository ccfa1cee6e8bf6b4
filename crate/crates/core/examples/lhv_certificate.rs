//! Exhaustive local-hidden-variable check: no deterministic assignment beats
//! the chained bound, while the quantum chain does.

use chainbell::chain::ChainScenario;
use chainbell::lhv::{certify_classical_bound, classical_vs_quantum_gap, strategy_chain_value, DeterministicStrategy};

fn main() -> chainbell::Result<()> {
    for (d, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let s = ChainScenario::standard(d, n)?;
        let cert = certify_classical_bound(&s)?;
        println!(
            "d = {d}, n = {n}: {} strategies, max margin {}, witness alice {:?} bob {:?}, quantum gap {:.6}",
            cert.strategies_checked,
            cert.max_margin,
            cert.witness.alice,
            cert.witness.bob,
            classical_vs_quantum_gap(&s)?
        );
    }

    let s = ChainScenario::standard(3, 2)?;
    let flip = DeterministicStrategy::new(vec![0, 1], vec![0, 1]);
    let (lhs, rhs) = strategy_chain_value(&flip, &s)?;
    println!("alice (0,1), bob (0,1): {lhs} differing links, closing differs: {}", rhs == 1);

    match certify_classical_bound(&ChainScenario::standard(3, 20)?) {
        Err(e) => println!("d = 3, n = 20: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

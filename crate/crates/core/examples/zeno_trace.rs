//! Extended chain ending on two Alice settings related by a permutation.
//! Classically the endpoints always differ; the chain sum goes to zero.

use chainbell::chain::zeno_limit_trace;

fn main() -> chainbell::Result<()> {
    let ns = [2, 4, 8, 16, 32, 64, 128];
    for r in zeno_limit_trace(3, &ns)? {
        println!(
            "n = {:>4}: {} links, lhs = {:.9}, P(A₀ ≠ A_2n) = {:.1}",
            r.scenario.n(),
            r.link_values.len(),
            r.lhs,
            r.rhs
        );
    }
    Ok(())
}

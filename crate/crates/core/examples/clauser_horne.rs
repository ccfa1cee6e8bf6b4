//! The Clauser–Horne expression on the d = 2, N = 4 ladder, using the
//! events "outcome 0" for each setting. Local models keep it ≤ 0.

use chainbell::quantum::{SettingLadder, Variant};
use chainbell::separation::ch_evaluate;

fn main() -> chainbell::Result<()> {
    let ladder = SettingLadder::new(2, 2, Variant::Standard)?;
    // settings 0, 2 are Alice's; 1, 3 are Bob's
    let p = |a: usize, b: usize| ladder.pair_table(a, b).map(|t| t.get(0, 0));
    let (a0b0, a1b0, a1b1, a0b1) = (p(0, 1)?, p(2, 1)?, p(2, 3)?, p(0, 3)?);
    let a1 = ladder.pair_table(2, 1)?.row_marginal(0);
    let b0 = ladder.pair_table(0, 1)?.col_marginal(0);
    let ch = ch_evaluate(a0b0, a1b0, a1b1, a1, b0, a0b1);
    println!("P(A0,B0) = {a0b0:.6}, P(A1,B0) = {a1b0:.6}, P(A1,B1) = {a1b1:.6}, P(A0,B1) = {a0b1:.6}");
    println!("P(A1) = {a1:.3}, P(B0) = {b0:.3}");
    println!("CH = {ch:.6} (local bound 0)");
    Ok(())
}

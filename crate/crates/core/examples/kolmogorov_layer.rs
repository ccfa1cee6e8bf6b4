//! Separation of events on random finite probability spaces, and the
//! mismatch identity on a quantum joint table.

use chainbell::quantum::{SettingLadder, Variant};
use chainbell::separation::{
    mismatch_from_separations, mismatch_probability, polygon_holds, triangle_holds, ProbabilitySpace,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> chainbell::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    let mut worst_slack = f64::INFINITY;
    for _ in 0..1_000 {
        let space = ProbabilitySpace::random(6, &mut rng)?;
        let events: Vec<_> = (0..6).map(|i| space.event(i)).collect();
        assert!(triangle_holds(&space, &events[0], &events[1], &events[2]));
        assert!(polygon_holds(&space, &events));
        let path: f64 = events.windows(2).map(|w| space.separation(&w[0], &w[1])).sum();
        worst_slack = worst_slack.min(path - space.separation(&events[0], &events[5]));
        checked += 1;
    }
    println!("{checked} random 6-event spaces: polygon holds, smallest slack {worst_slack:.3e}");

    let ladder = SettingLadder::new(3, 2, Variant::Standard)?;
    let t = ladder.pair_table(0, 1)?;
    println!(
        "d = 3 link: P(A ≠ B) = {:.12}, half summed separations = {:.12}",
        mismatch_probability(&t),
        mismatch_from_separations(&t)
    );
    for (x, s) in t.per_outcome_stats().iter().enumerate() {
        println!("  outcome {x}: P(A) = {:.4}, P(B) = {:.4}, P(A,B) = {:.6}", s.p_a(), s.p_b(), s.p_ab());
    }
    Ok(())
}

//! The chain inside one qubit sector, with all settings in a window of
//! width π/γ.

use chainbell::qubit_sector::{
    asymptotic_margin, limit_margin, minimal_violating_half_chain, sector_chain_margin,
    sector_chain_margin_by_links, sector_embed_scale, SectorScenario,
};

fn main() -> chainbell::Result<()> {
    let s = SectorScenario::qubit(2, 1.0)?;
    println!(
        "n = 2, γ = 1: margin {:.9} (links {:.9}), at d = 3: {:.9}",
        sector_chain_margin(&s),
        sector_chain_margin_by_links(&s),
        sector_embed_scale(sector_chain_margin(&s), 3)?
    );
    for gamma in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
        let far = sector_chain_margin(&SectorScenario::qubit(10_000, gamma)?);
        println!(
            "γ = {gamma:>4}: onset n = {}, margin(n = 10⁴) = {far:.6}, 1 − cos(π/γ) = {:.6}, π²/(2γ²) = {:.6}",
            minimal_violating_half_chain(gamma)?,
            limit_margin(gamma),
            asymptotic_margin(gamma)
        );
    }
    Ok(())
}

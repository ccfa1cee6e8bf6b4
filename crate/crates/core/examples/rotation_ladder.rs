//! Builds the step rotation for a few dimensions and shows that its
//! (2n−1)-th power is a permutation with an empty diagonal.

use chainbell::quantum::{SettingLadder, Variant};
use chainbell::rotations::{is_zero_diagonal_permutation, rotation_power, RotationSpec};

fn main() -> chainbell::Result<()> {
    let n = 2;
    let steps = 2 * n - 1;
    for d in [3, 4, 5] {
        let step = RotationSpec::ladder_step(d, steps)?;
        println!(
            "d = {d}: m = {}, s = {}, θ₁ = {:.6}, θ₂ = {:.6}",
            step.blocks.m(),
            step.blocks.s(),
            step.theta1,
            step.theta2
        );
        let terminal = rotation_power(&step, steps);
        println!("U^{steps} =\n{terminal}");
        println!("zero-diagonal permutation: {}\n", is_zero_diagonal_permutation(terminal.as_matrix()));
    }

    let ladder = SettingLadder::new(3, n, Variant::Standard)?;
    println!("d = 3 ladder links (Alice, Bob): {:?}, closing {:?}", ladder.links(), ladder.closing());
    let table = ladder.pair_table(0, 1)?;
    for x in 0..3 {
        let row: Vec<String> = (0..3).map(|y| format!("{:.6}", table.get(x, y))).collect();
        println!("  P({x}, ·) = [{}]", row.join(", "));
    }
    Ok(())
}

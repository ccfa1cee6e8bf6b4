//! Block-orthogonal setting rotations.
//!
//! A d-dimensional step rotation is block diagonal: `m` qubit-like 2×2
//! rotations by `θ₁` followed by `s` qutrit-like circulant 3×3 rotations by
//! `θ₂` about the (1,1,1) axis, with `2m + 3s = d`. Both block families are
//! one-parameter groups, so `U(θ)ᵏ = U(kθ)`. At `θ₁ = π/2`, `θ₂ = 2π/3` every
//! block is a fixed-point-free signed permutation of the basis.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, OrthogonalMatrix};

/// Entry tolerance for recognizing a signed permutation.
pub const PERMUTATION_TOL: f64 = 1e-10;

/// How a dimension is tiled into 2×2 and 3×3 blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BlockDecomposition {
    d: usize,
    m: usize,
    s: usize,
}

impl BlockDecomposition {
    pub fn new(d: usize, m: usize, s: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        if 2 * m + 3 * s != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: 2 * m + 3 * s,
            });
        }
        Ok(Self { d, m, s })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of 2×2 blocks.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of 3×3 blocks.
    pub fn s(&self) -> usize {
        self.s
    }
}

/// Even `d` uses only 2×2 blocks; odd `d` uses exactly one 3×3 block.
pub fn canonical_decomposition(d: usize) -> Result<BlockDecomposition> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if d.is_multiple_of(2) {
        BlockDecomposition::new(d, d / 2, 0)
    } else {
        BlockDecomposition::new(d, (d - 3) / 2, 1)
    }
}

/// Block layout plus the two block angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationSpec {
    pub blocks: BlockDecomposition,
    /// Angle of the 2×2 blocks.
    pub theta1: f64,
    /// Angle of the 3×3 blocks.
    pub theta2: f64,
}

impl RotationSpec {
    pub fn new(blocks: BlockDecomposition, theta1: f64, theta2: f64) -> Self {
        Self {
            blocks,
            theta1,
            theta2,
        }
    }

    /// Canonical step rotation that reaches the terminal permutation after
    /// `steps` applications: `θ₁ = π/(2·steps)`, `θ₂ = 2π/(3·steps)`.
    pub fn ladder_step(d: usize, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidParameter("ladder needs at least one step".into()));
        }
        let k = steps as f64;
        Ok(Self::new(
            canonical_decomposition(d)?,
            PI / (2.0 * k),
            2.0 * PI / (3.0 * k),
        ))
    }

    /// The terminal permutation `U(π/2, 2π/3)` for this layout.
    pub fn terminal(blocks: BlockDecomposition) -> Self {
        Self::new(blocks, PI / 2.0, 2.0 * PI / 3.0)
    }

    /// Same layout with both angles multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.blocks, k * self.theta1, k * self.theta2)
    }

    pub fn d(&self) -> usize {
        self.blocks.d
    }
}

/// The circulant qutrit rotation `[[x,y,z],[z,x,y],[y,z,x]]` by `θ` about (1,1,1).
pub fn qutrit_block(theta: f64) -> [[f64; 3]; 3] {
    let (s, c) = theta.sin_cos();
    let r3 = 3f64.sqrt();
    let x = (1.0 + 2.0 * c) / 3.0;
    let y = (1.0 - c - r3 * s) / 3.0;
    let z = (1.0 - c + r3 * s) / 3.0;
    [[x, y, z], [z, x, y], [y, z, x]]
}

/// The qubit-like block `[[cos θ, sin θ], [−sin θ, cos θ]]`.
pub fn qubit_block(theta: f64) -> [[f64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    [[c, s], [-s, c]]
}

/// Assembles the block-diagonal rotation: all 2×2 blocks first, then the 3×3 blocks.
pub fn build_rotation(spec: &RotationSpec) -> OrthogonalMatrix {
    let d = spec.d();
    let mut u = Matrix::zeros(d);
    let q = qubit_block(spec.theta1);
    let t = qutrit_block(spec.theta2);
    let mut at = 0;
    for _ in 0..spec.blocks.m {
        for (i, row) in q.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                u[(at + i, at + j)] = *v;
            }
        }
        at += 2;
    }
    for _ in 0..spec.blocks.s {
        for (i, row) in t.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                u[(at + i, at + j)] = *v;
            }
        }
        at += 3;
    }
    debug_assert_eq!(at, d);
    OrthogonalMatrix::new_unchecked(u)
}

/// `U(θ)ᵏ` by repeated multiplication.
pub fn rotation_power(spec: &RotationSpec, k: usize) -> OrthogonalMatrix {
    matrix_power(&build_rotation(spec), k)
}

/// `Uᵏ` of an arbitrary rotation by repeated multiplication.
pub fn matrix_power(step: &OrthogonalMatrix, k: usize) -> OrthogonalMatrix {
    let mut acc = OrthogonalMatrix::identity(step.dim());
    for _ in 0..k {
        acc = &acc * step;
    }
    acc
}

/// True iff every entry is 0 or ±1 (within [`PERMUTATION_TOL`]), every row and
/// column holds exactly one nonzero, and the diagonal is zero.
pub fn is_zero_diagonal_permutation(m: &Matrix) -> bool {
    let n = m.dim();
    let mut col_hits = vec![0usize; n];
    for i in 0..n {
        let mut row_hits = 0;
        for j in 0..n {
            let v = m[(i, j)];
            if v.abs() <= PERMUTATION_TOL {
                continue;
            }
            if (v.abs() - 1.0).abs() > PERMUTATION_TOL || i == j {
                return false;
            }
            row_hits += 1;
            col_hits[j] += 1;
        }
        if row_hits != 1 {
            return false;
        }
    }
    col_hits.iter().all(|&c| c == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn spec(d: usize, t1: f64, t2: f64) -> RotationSpec {
        RotationSpec::new(canonical_decomposition(d).unwrap(), t1, t2)
    }

    #[test]
    fn qutrit_identity_and_cycle() {
        let id = build_rotation(&spec(3, 0.0, 0.0));
        assert!(id.as_matrix().max_abs_diff(&Matrix::identity(3)) < 1e-12);

        let cyc = build_rotation(&spec(3, 0.0, 2.0 * PI / 3.0));
        let expected = mat(&[&[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert!(cyc.as_matrix().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn four_dim_quarter_turn() {
        let u = build_rotation(&spec(4, PI / 2.0, 0.0));
        let expected = mat(&[
            &[0.0, 1.0, 0.0, 0.0],
            &[-1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, -1.0, 0.0],
        ]);
        assert!(u.as_matrix().max_abs_diff(&expected) < 1e-12);
        assert!(is_zero_diagonal_permutation(u.as_matrix()));
    }

    #[test]
    fn power_examples() {
        let s = spec(5, 0.3, 0.7);
        assert!(rotation_power(&s, 0).as_matrix().max_abs_diff(&Matrix::identity(5)) < 1e-15);

        let p = rotation_power(&spec(3, 0.0, 2.0 * PI / 9.0), 3);
        let q = build_rotation(&spec(3, 0.0, 2.0 * PI / 3.0));
        assert!(p.as_matrix().max_abs_diff(q.as_matrix()) < 1e-10);

        // the 3×3 block at 2π/3 is the same cycle as the d = 3 case
        let p5 = rotation_power(&spec(5, PI / 6.0, 2.0 * PI / 9.0), 3);
        let expected = mat(&[
            &[0.0, 1.0, 0.0, 0.0, 0.0],
            &[-1.0, 0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0, 0.0],
        ]);
        assert!(p5.as_matrix().max_abs_diff(&expected) < 1e-10);
        assert!(is_zero_diagonal_permutation(p5.as_matrix()));
    }

    #[test]
    fn permutation_recognition() {
        assert!(!is_zero_diagonal_permutation(&Matrix::identity(3)));
        let cyc = mat(&[&[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert!(is_zero_diagonal_permutation(&cyc));
        // two nonzeros in one row
        let bad = mat(&[&[0.0, 1.0, 1.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert!(!is_zero_diagonal_permutation(&bad));
        // non-unit entry
        let half = mat(&[&[0.0, 0.5], &[1.0, 0.0]]);
        assert!(!is_zero_diagonal_permutation(&half));
    }

    #[test]
    fn decompositions() {
        let c = |d| {
            let b = canonical_decomposition(d).unwrap();
            (b.m(), b.s())
        };
        assert_eq!(c(2), (1, 0));
        assert_eq!(c(3), (0, 1));
        assert_eq!(c(4), (2, 0));
        assert_eq!(c(5), (1, 1));
        assert_eq!(c(9), (3, 1));
        assert_eq!(canonical_decomposition(1), Err(Error::InvalidDimension(1)));
        assert!(matches!(
            BlockDecomposition::new(7, 1, 1),
            Err(Error::DimensionMismatch { expected: 7, found: 5 })
        ));
        // non-canonical tilings are allowed
        assert!(BlockDecomposition::new(6, 0, 2).is_ok());
    }

    #[test]
    fn terminal_permutation_all_small_ladders() {
        for d in 2..=12 {
            for n in 1..=6 {
                let s = RotationSpec::ladder_step(d, 2 * n - 1).unwrap();
                let p = rotation_power(&s, 2 * n - 1);
                assert!(is_zero_diagonal_permutation(p.as_matrix()), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn non_canonical_tiling_is_orthogonal() {
        let b = BlockDecomposition::new(6, 0, 2).unwrap();
        let u = build_rotation(&RotationSpec::new(b, 0.4, 1.1));
        assert!(OrthogonalMatrix::new(u.into_matrix()).is_ok());
    }

    proptest! {
        #[test]
        fn orthogonal_with_unit_determinant(d in 2usize..=12, t1 in -7.0f64..7.0, t2 in -7.0f64..7.0) {
            let u = build_rotation(&spec(d, t1, t2));
            prop_assert!(u.as_matrix().orthogonality_defect() < 1e-12);
            prop_assert!((u.as_matrix().determinant() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn angle_additivity(d in 2usize..=12, a1 in -4.0f64..4.0, a2 in -4.0f64..4.0,
                            b1 in -4.0f64..4.0, b2 in -4.0f64..4.0) {
            let ua = build_rotation(&spec(d, a1, a2));
            let ub = build_rotation(&spec(d, b1, b2));
            let sum = build_rotation(&spec(d, a1 + b1, a2 + b2));
            prop_assert!((&ua * &ub).as_matrix().max_abs_diff(sum.as_matrix()) < 1e-12);
        }

        #[test]
        fn power_matches_scaled_angles(d in 2usize..=9, t1 in -1.0f64..1.0, t2 in -1.0f64..1.0, k in 0usize..40) {
            let s = spec(d, t1, t2);
            let p = rotation_power(&s, k);
            let direct = build_rotation(&s.scaled(k as f64));
            prop_assert!(p.as_matrix().max_abs_diff(direct.as_matrix()) < 1e-10);
        }

        #[test]
        fn qutrit_rows_sum_to_one(t in -10.0f64..10.0) {
            for row in qutrit_block(t) {
                prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }
}

//! Geometric chained Bell inequalities for maximally entangled qudits.
//!
//! The crate builds block-orthogonal setting ladders for any dimension
//! `d ≥ 2`, computes exact quantum joint outcome tables on
//! `(1/√d) Σₖ |kk⟩`, and evaluates the chained inequality
//!
//! ```text
//! Σ_{|i−j|=1} P(Aᵢ ≠ Bⱼ)  ≥  P(A₀ ≠ B_{2n−1})
//! ```
//!
//! against both quantum predictions and an exhaustive local-hidden-variable
//! oracle. Modules, bottom up:
//!
//! - [`separation`]: probabilistic separation, triangle/polygon/CH inequalities,
//!   mismatch probabilities.
//! - [`rotations`]: the 2×2 / 3×3 block rotations, their powers and the
//!   terminal permutation.
//! - [`quantum`]: joint tables, the transfer identity, setting ladders.
//! - [`chain`]: standard and extended chains, closed forms, scans.
//! - [`lhv`]: deterministic-strategy enumeration.
//! - [`qubit_sector`]: the chain confined to a small window of one qubit sector.
//! - [`sampler`]: seeded finite-statistics estimates.
//! - [`cli`]: the `chainbell` command line.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example` lists them.

pub mod chain;
pub mod cli;
pub mod error;
pub mod lhv;
pub mod matrix;
pub mod quantum;
pub mod qubit_sector;
pub mod rotations;
pub mod sampler;
pub mod separation;

pub use chain::{evaluate_chain, ChainReport, ChainScenario};
pub use error::{Error, Result};
pub use matrix::{Matrix, OrthogonalMatrix};
pub use quantum::{SettingLadder, Variant};

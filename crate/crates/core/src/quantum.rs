//! Exact quantum predictions on the maximally entangled state
//! `|ψ⟩ = (1/√d) Σₖ |kk⟩`.
//!
//! Setting `k` of either party measures in the basis `Uᵏ|x⟩`, i.e. its
//! observable is `Uᵏ O₀ U⁻ᵏ`. Because `(M ⊗ I)|ψ⟩ = (I ⊗ Mᵀ)|ψ⟩`, the joint
//! outcome law of settings `i` and `j` depends only on the net rotation
//! `R = U^{j−i}` (negative powers are transposes):
//!
//! ```text
//! P(a, b) = R[a][b]² / d
//! ```
//!
//! Even setting indices belong to Alice, odd ones to Bob. The standard chain
//! closes on `(A₀, B_{2n−1})`; the extended chain adds `A_{2n}` and closes on
//! the compatible pair `(A₀, A_{2n})`, whose joint law follows the same rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, OrthogonalMatrix};
use crate::rotations::{build_rotation, RotationSpec};
use crate::separation::{mismatch_probability, JointTable, TOL};

/// Which chained inequality a ladder feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `2n` settings, closing pair `(A₀, B_{2n−1})`.
    Standard,
    /// `2n + 1` settings, closing pair `(A₀, A_{2n})`.
    Extended,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::Extended => "extended",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "standard" => Ok(Variant::Standard),
            "extended" => Ok(Variant::Extended),
            other => Err(Error::InvalidParameter(format!("unknown variant `{other}`"))),
        }
    }
}

/// `(1/√d) Σₖ |kk⟩`, kept implicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaxEntangledState {
    d: usize,
}

impl MaxEntangledState {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Explicit amplitudes in the product basis, index `a·d + b` for `|a⟩|b⟩`.
    pub fn amplitudes(&self) -> Vec<f64> {
        let amp = 1.0 / (self.d as f64).sqrt();
        let mut v = vec![0.0; self.d * self.d];
        for k in 0..self.d {
            v[k * self.d + k] = amp;
        }
        v
    }
}

/// Joint outcome table for two measurements whose bases differ by `effective_rotation`.
pub fn joint_table(state: &MaxEntangledState, effective_rotation: &OrthogonalMatrix) -> Result<JointTable> {
    let d = state.d;
    if effective_rotation.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: effective_rotation.dim(),
        });
    }
    let inv_d = 1.0 / d as f64;
    let cells = (0..d * d)
        .map(|idx| {
            let r = effective_rotation[(idx / d, idx % d)];
            r * r * inv_d
        })
        .collect();
    JointTable::new(d, cells)
}

/// Applies `A ⊗ B` to a two-party amplitude vector.
fn apply_local(state: &[f64], d: usize, alice: &Matrix, bob: &Matrix) -> Vec<f64> {
    let mut out = vec![0.0; d * d];
    for a in 0..d {
        for b in 0..d {
            let mut acc = 0.0;
            for a2 in 0..d {
                let ua = alice[(a, a2)];
                if ua == 0.0 {
                    continue;
                }
                for b2 in 0..d {
                    acc += ua * bob[(b, b2)] * state[a2 * d + b2];
                }
            }
            out[a * d + b] = acc;
        }
    }
    out
}

/// Checks `(I ⊗ Uᵀ)|ψ⟩` and `(U ⊗ I)|ψ⟩` give the same outcome table,
/// working with explicit `d²`-dimensional state vectors.
pub fn transfer_identity_check(state: &MaxEntangledState, u: &OrthogonalMatrix) -> bool {
    let d = state.d;
    if u.dim() != d {
        return false;
    }
    let psi = state.amplitudes();
    let id = Matrix::identity(d);
    let bob_side = apply_local(&psi, d, &id, &u.as_matrix().transpose());
    let alice_side = apply_local(&psi, d, u.as_matrix(), &id);
    bob_side
        .iter()
        .zip(&alice_side)
        .all(|(x, y)| (x * x - y * y).abs() <= TOL)
}

/// Settings generated by powers of one step rotation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SettingLadder {
    n: usize,
    variant: Variant,
    step_spec: RotationSpec,
    #[serde(skip)]
    powers: Vec<OrthogonalMatrix>,
}

impl SettingLadder {
    /// Canonical ladder for `2n` settings (plus `A_{2n}` for the extended
    /// variant). Step angles use denominator `2n − 1` (standard) or `2n`
    /// (extended) so the last setting sits at the terminal permutation.
    pub fn new(d: usize, n: usize, variant: Variant) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidScenario("half-chain count n must be >= 1".into()));
        }
        let steps = match variant {
            Variant::Standard => 2 * n - 1,
            Variant::Extended => 2 * n,
        };
        Self::with_spec(RotationSpec::ladder_step(d, steps)?, n, variant)
    }

    /// Ladder with an arbitrary step rotation.
    pub fn with_spec(step_spec: RotationSpec, n: usize, variant: Variant) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidScenario("half-chain count n must be >= 1".into()));
        }
        let step = build_rotation(&step_spec);
        let count = match variant {
            Variant::Standard => 2 * n,
            Variant::Extended => 2 * n + 1,
        };
        let mut powers = Vec::with_capacity(count);
        powers.push(OrthogonalMatrix::identity(step.dim()));
        for k in 1..count {
            let next = &powers[k - 1] * &step;
            powers.push(next);
        }
        Ok(Self {
            n,
            variant,
            step_spec,
            powers,
        })
    }

    pub fn d(&self) -> usize {
        self.step_spec.d()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn step_spec(&self) -> &RotationSpec {
        &self.step_spec
    }

    pub fn state(&self) -> MaxEntangledState {
        MaxEntangledState { d: self.d() }
    }

    /// Total number of settings across both parties.
    pub fn setting_count(&self) -> usize {
        self.powers.len()
    }

    pub fn alice_settings(&self) -> impl Iterator<Item = usize> {
        (0..self.setting_count()).step_by(2)
    }

    pub fn bob_settings(&self) -> impl Iterator<Item = usize> {
        (1..self.setting_count()).step_by(2)
    }

    /// Cumulative rotation `Uᵏ` of setting `k`.
    pub fn setting_rotation(&self, k: usize) -> Option<&OrthogonalMatrix> {
        self.powers.get(k)
    }

    /// Adjacent links in chain order: `(0,1), (2,1), (2,3), …`, always written
    /// as (Alice setting, Bob setting).
    pub fn links(&self) -> Vec<(usize, usize)> {
        (1..self.setting_count())
            .map(|k| if k % 2 == 1 { (k - 1, k) } else { (k, k - 1) })
            .collect()
    }

    /// The pair compared against the chain.
    pub fn closing(&self) -> (usize, usize) {
        match self.variant {
            Variant::Standard => (0, 2 * self.n - 1),
            Variant::Extended => (0, 2 * self.n),
        }
    }

    fn is_link(&self, first: usize, second: usize) -> bool {
        let count = self.setting_count();
        let adjacent = first.abs_diff(second) == 1 && first < count && second < count;
        adjacent || (first, second) == self.closing()
    }

    /// Net rotation `R = U^{second − first}` relating the two measured bases,
    /// so that `P(a, b) = R[a][b]² / d`. A forward link `(2k, 2k+1)` gives
    /// `U`; a backward one `(2k+2, 2k+1)` gives `Uᵀ`, whose table is the
    /// transpose and whose mismatch is the same.
    pub fn pair_effective_rotation(&self, first: usize, second: usize) -> Result<OrthogonalMatrix> {
        if !self.is_link(first, second) {
            return Err(Error::NotALink { first, second });
        }
        Ok(if second >= first {
            self.powers[second - first].clone()
        } else {
            self.powers[first - second].transpose()
        })
    }

    pub fn pair_table(&self, first: usize, second: usize) -> Result<JointTable> {
        joint_table(&self.state(), &self.pair_effective_rotation(first, second)?)
    }

    /// Quantum `P(outcome of first ≠ outcome of second)`.
    pub fn link_mismatch(&self, first: usize, second: usize) -> Result<f64> {
        Ok(mismatch_probability(&self.pair_table(first, second)?))
    }
}

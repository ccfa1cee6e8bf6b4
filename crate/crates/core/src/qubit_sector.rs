//! Chained inequality inside a two-dimensional sector of the qudit.
//!
//! Settings are Bloch vectors in the z–x plane at angles `πk/(γ·2n)`,
//! `k = 0..2n−1`, so the whole chain lives within an angular window `π/γ`
//! of one perfectly correlated pair. For `|φ⁺⟩` the correlation tensor
//! restricted to that plane is the identity, giving
//! `P(λ_A ≠ λ_B) = (1 − a·T b)/2 = (1 − cos Δ)/2`.
//!
//! Multiplying the chained inequality by two and collecting terms, the
//! quantum violation margin is
//!
//! ```text
//! 2(n−1)(cos δ − 1) + cos δ − cos((2n−1)δ),   δ = π/(2nγ)
//! ```
//!
//! which is positive for every `n ≥ 2`. As `n → ∞` it tends to
//! `1 − cos(π/γ) ≈ π²/(2γ²)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::separation::TOL;

/// Largest half-chain count tried by [`minimal_violating_half_chain`].
pub const MAX_HALF_CHAIN: usize = 1_000_000;

/// A measurement direction in the z–x plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochSetting {
    angle: f64,
}

impl BlochSetting {
    pub fn new(angle: f64) -> Self {
        Self { angle }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// `(x, y, z)` components; `y` is always zero.
    pub fn vector(&self) -> [f64; 3] {
        let (s, c) = self.angle.sin_cos();
        [s, 0.0, c]
    }

    pub fn z(&self) -> f64 {
        self.angle.cos()
    }

    pub fn x(&self) -> f64 {
        self.angle.sin()
    }
}

/// Correlation tensor of `|φ⁺⟩`: `ẑ⊗ẑ + x̂⊗x̂ − ŷ⊗ŷ`, indexed `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationTensor([[f64; 3]; 3]);

impl CorrelationTensor {
    pub fn phi_plus() -> Self {
        Self([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    /// `a · T b`.
    pub fn contract(&self, a: &[f64; 3], b: &[f64; 3]) -> f64 {
        (0..3)
            .map(|i| a[i] * (0..3).map(|j| self.0[i][j] * b[j]).sum::<f64>())
            .sum()
    }
}

impl Default for CorrelationTensor {
    fn default() -> Self {
        Self::phi_plus()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorScenario {
    n: usize,
    gamma: f64,
    d: usize,
}

impl SectorScenario {
    pub fn new(n: usize, gamma: f64, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidScenario(format!(
                "half-chain count n = {n} must be >= 2"
            )));
        }
        check_gamma(gamma)?;
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self { n, gamma, d })
    }

    /// Two-qubit scenario (`d = 2`, scale factor 1).
    pub fn qubit(n: usize, gamma: f64) -> Result<Self> {
        Self::new(n, gamma, 2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Angle between consecutive settings, `π/(2nγ)`.
    pub fn step_angle(&self) -> f64 {
        PI / (2.0 * self.n as f64 * self.gamma)
    }

    /// All `2n` settings; even indices are Alice's, odd ones Bob's.
    pub fn settings(&self) -> Vec<BlochSetting> {
        let step = self.step_angle();
        (0..2 * self.n).map(|k| BlochSetting::new(k as f64 * step)).collect()
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_nan() || gamma < 1.0 || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("window parameter γ = {gamma} must be >= 1")));
    }
    Ok(())
}

/// `P(λ_A ≠ λ_B) = (1 − a·T b)/2` on `|φ⁺⟩`.
pub fn qubit_mismatch(a: &BlochSetting, b: &BlochSetting) -> f64 {
    0.5 * (1.0 - CorrelationTensor::phi_plus().contract(&a.vector(), &b.vector()))
}

/// Closed-form qubit-level violation margin (positive means violated).
///
/// Evaluated as `−4(n−1) sin²(δ/2) + 2 sin(nδ) sin((n−1)δ)`, the same
/// expression rewritten without the `cos δ − 1` cancellation.
pub fn sector_chain_margin(scenario: &SectorScenario) -> f64 {
    let n = scenario.n as f64;
    let delta = scenario.step_angle();
    -4.0 * (n - 1.0) * (delta / 2.0).sin().powi(2) + 2.0 * (n * delta).sin() * ((n - 1.0) * delta).sin()
}

/// The same margin from explicit settings: twice the closing-link mismatch
/// minus twice the sum of adjacent-link mismatches.
pub fn sector_chain_margin_by_links(scenario: &SectorScenario) -> f64 {
    let settings = scenario.settings();
    let chain: f64 = settings.windows(2).map(|w| qubit_mismatch(&w[0], &w[1])).sum();
    let closing = qubit_mismatch(&settings[0], &settings[settings.len() - 1]);
    2.0 * (closing - chain)
}

/// Smallest `n ≥ 2` with a positive margin at window `γ`.
pub fn minimal_violating_half_chain(gamma: f64) -> Result<usize> {
    check_gamma(gamma)?;
    (2..=MAX_HALF_CHAIN)
        .find(|&n| sector_chain_margin(&SectorScenario { n, gamma, d: 2 }) > TOL)
        .ok_or(Error::NoneFound { cap: MAX_HALF_CHAIN })
}

/// Rescales a qubit-sector probability or margin to the qudit level (`× 2/d`).
pub fn sector_embed_scale(value: f64, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(value * 2.0 / d as f64)
}

/// Small-window asymptote `π²/(2γ²)` of the margin.
pub fn asymptotic_margin(gamma: f64) -> f64 {
    PI * PI / (2.0 * gamma * gamma)
}

/// Exact `n → ∞` limit of the margin, `1 − cos(π/γ)`.
pub fn limit_margin(gamma: f64) -> f64 {
    2.0 * (PI / (2.0 * gamma)).sin().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The margin exactly as written: 2(n−1)(cos δ − 1) + cos δ − cos((2n−1)δ).
    fn literal_margin(n: usize, gamma: f64) -> f64 {
        let d = PI / (2.0 * n as f64 * gamma);
        2.0 * (n as f64 - 1.0) * (d.cos() - 1.0) + d.cos() - ((2 * n - 1) as f64 * d).cos()
    }

    #[test]
    fn mismatch_examples() {
        let a = BlochSetting::new(0.3);
        assert!(qubit_mismatch(&a, &a).abs() < 1e-15);
        assert!((qubit_mismatch(&BlochSetting::new(0.0), &BlochSetting::new(PI)) - 1.0).abs() < 1e-15);
        let q = qubit_mismatch(&BlochSetting::new(0.1), &BlochSetting::new(0.1 + PI / 4.0));
        assert!((q - (1.0 - 2f64.sqrt() / 2.0) / 2.0).abs() < 1e-12);
        assert!((q - 0.146447).abs() < 1e-6);
    }

    #[test]
    fn tensor_on_plane_is_cosine() {
        let t = CorrelationTensor::phi_plus();
        for i in 0..50 {
            let a = BlochSetting::new(0.13 * i as f64);
            let b = BlochSetting::new(-0.07 * i as f64 + 0.4);
            let v = a.vector();
            assert!((v[0].hypot(v[2]) - 1.0).abs() < 1e-12 && v[1] == 0.0);
            assert!((t.contract(&a.vector(), &b.vector()) - (a.angle() - b.angle()).cos()).abs() < 1e-12);
        }
        // the ŷ⊗ŷ term only shows up off the plane
        assert_eq!(t.contract(&[0.0, 1.0, 0.0], &[0.0, 1.0, 0.0]), -1.0);
    }

    #[test]
    fn margin_examples() {
        let m = sector_chain_margin(&SectorScenario::qubit(2, 1.0).unwrap());
        let hand = 2.0 * ((PI / 4.0).cos() - 1.0) + (PI / 4.0).cos() - (3.0 * PI / 4.0).cos();
        assert!((m - hand).abs() < 1e-12);
        assert!((m - 0.828427).abs() < 1e-6);

        let m44 = sector_chain_margin(&SectorScenario::qubit(4, 4.0).unwrap());
        assert!((m44 - literal_margin(4, 4.0)).abs() < 1e-12);
        assert!((m44 - 0.193283).abs() < 1e-6);

        // n = 2 is already violated even for narrow windows: margin ≈ 3δ²
        let m216 = sector_chain_margin(&SectorScenario::qubit(2, 16.0).unwrap());
        assert!((m216 - literal_margin(2, 16.0)).abs() < 1e-12);
        assert!((m216 - 0.0072099).abs() < 1e-7);
    }

    #[test]
    fn two_paths_agree() {
        for gamma in [1.0, 2.0, 4.0, 8.0] {
            for n in 2..=64 {
                let s = SectorScenario::qubit(n, gamma).unwrap();
                let a = sector_chain_margin(&s);
                assert!((a - sector_chain_margin_by_links(&s)).abs() < 1e-12, "n={n} γ={gamma}");
                assert!((a - literal_margin(n, gamma)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn midpoint_identity() {
        for gamma in [1.0, 3.0, 16.0] {
            for n in 2..=12 {
                let s = SectorScenario::qubit(n, gamma).unwrap();
                let v: Vec<[f64; 3]> = s.settings().iter().map(|b| b.vector()).collect();
                let c = s.step_angle().cos();
                for k in 0..n - 1 {
                    for comp in 0..3 {
                        let lhs = v[2 * k][comp] + v[2 * k + 2][comp];
                        assert!((lhs - 2.0 * c * v[2 * k + 1][comp]).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn links_stay_near_perfect_correlation() {
        for gamma in [1.0, 4.0, 32.0] {
            for n in [2usize, 10, 100] {
                let s = SectorScenario::qubit(n, gamma).unwrap();
                let bound = (PI / (4.0 * n as f64 * gamma)).sin().powi(2);
                let settings = s.settings();
                for w in settings.windows(2) {
                    assert!(qubit_mismatch(&w[0], &w[1]) <= bound + 1e-15);
                }
            }
        }
    }

    #[test]
    fn onset_and_limits() {
        for gamma in [1.0, 4.0, 8.0, 16.0, 32.0] {
            assert_eq!(minimal_violating_half_chain(gamma).unwrap(), 2);
        }
        assert!(minimal_violating_half_chain(0.5).is_err());
        assert_eq!(
            minimal_violating_half_chain(1e9),
            Err(Error::NoneFound { cap: MAX_HALF_CHAIN })
        );

        for gamma in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
            let m = sector_chain_margin(&SectorScenario::qubit(10_000, gamma).unwrap());
            assert!((m - limit_margin(gamma)).abs() / limit_margin(gamma) < 1e-3);
        }
        for gamma in [8.0, 16.0, 32.0] {
            let m = sector_chain_margin(&SectorScenario::qubit(10_000, gamma).unwrap());
            assert!((m - asymptotic_margin(gamma)).abs() / asymptotic_margin(gamma) < 0.05);
        }
    }

    #[test]
    fn embedding_scale() {
        assert_eq!(sector_embed_scale(0.5, 2).unwrap(), 0.5);
        assert_eq!(sector_embed_scale(0.5, 4).unwrap(), 0.25);
        assert!((sector_embed_scale(0.828427, 6).unwrap() - 0.276142).abs() < 1e-6);
        assert!(sector_embed_scale(0.5, 1).is_err());
    }

    #[test]
    fn scenario_validation() {
        assert!(SectorScenario::qubit(1, 2.0).is_err());
        assert!(SectorScenario::qubit(2, 0.9).is_err());
        assert!(SectorScenario::qubit(2, f64::NAN).is_err());
        assert!(SectorScenario::new(2, 2.0, 1).is_err());
    }
}

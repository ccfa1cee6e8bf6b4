//! Chained inequality evaluation.
//!
//! Local realism requires
//!
//! ```text
//! Σ_{|i−j|=1} P(Aᵢ ≠ Bⱼ)  ≥  P(closing pair differs)
//! ```
//!
//! The quantum left-hand side comes from the setting ladder; on the canonical
//! ladders the closing rotation is a zero-diagonal permutation, so the right
//! side is 1 while the left side shrinks like `1/N`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::{SettingLadder, Variant};
use crate::rotations::canonical_decomposition;
use crate::separation::TOL;

/// Margins above this count as a violation.
pub const VIOLATION_TOL: f64 = TOL;
/// Agreement required between the matrix path and the closed form.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
/// Largest `N` tried by [`minimal_violating_n`].
pub const MAX_SCAN_N: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChainScenario {
    d: usize,
    n: usize,
    variant: Variant,
}

impl ChainScenario {
    pub fn new(d: usize, n: usize, variant: Variant) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        if n == 0 {
            return Err(Error::InvalidScenario("half-chain count n must be >= 1".into()));
        }
        Ok(Self { d, n, variant })
    }

    pub fn standard(d: usize, n: usize) -> Result<Self> {
        Self::new(d, n, Variant::Standard)
    }

    pub fn extended(d: usize, n: usize) -> Result<Self> {
        Self::new(d, n, Variant::Extended)
    }

    /// Standard scenario from the setting count `N` (must be even and ≥ 2).
    pub fn from_settings(d: usize, big_n: usize, variant: Variant) -> Result<Self> {
        if big_n < 2 || !big_n.is_multiple_of(2) {
            return Err(Error::InvalidScenario(format!(
                "setting count N = {big_n} must be even and >= 2"
            )));
        }
        Self::new(d, big_n / 2, variant)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = 2n`; the extended variant adds `A_{2n}` on top of these.
    pub fn big_n(&self) -> usize {
        2 * self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Number of local settings across both parties.
    pub fn setting_count(&self) -> usize {
        match self.variant {
            Variant::Standard => 2 * self.n,
            Variant::Extended => 2 * self.n + 1,
        }
    }

    /// Setting indices of the pair compared against the chain.
    pub fn closing(&self) -> (usize, usize) {
        match self.variant {
            Variant::Standard => (0, 2 * self.n - 1),
            Variant::Extended => (0, 2 * self.n),
        }
    }

    /// Number of adjacent links summed on the left-hand side.
    pub fn link_count(&self) -> usize {
        self.setting_count() - 1
    }

    pub fn ladder(&self) -> Result<SettingLadder> {
        SettingLadder::new(self.d, self.n, self.variant)
    }
}

/// Quantum evaluation of one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub scenario: ChainScenario,
    pub link_values: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`; positive means local realism is violated.
    pub margin: f64,
    pub violated: bool,
    /// Closed-form left-hand side, when one exists for the variant.
    pub closed_form: Option<f64>,
}

pub fn evaluate_chain(scenario: &ChainScenario) -> Result<ChainReport> {
    let ladder = scenario.ladder()?;
    let link_values = ladder
        .links()
        .into_iter()
        .map(|(i, j)| ladder.link_mismatch(i, j))
        .collect::<Result<Vec<_>>>()?;
    let lhs: f64 = link_values.iter().sum();
    let (c0, c1) = ladder.closing();
    let rhs = ladder.link_mismatch(c0, c1)?;
    let margin = rhs - lhs;
    let closed_form = match scenario.variant {
        Variant::Standard => Some(closed_form_lhs(scenario.d, scenario.big_n(), Variant::Standard)?),
        Variant::Extended => None,
    };
    Ok(ChainReport {
        scenario: *scenario,
        link_values,
        lhs,
        rhs,
        margin,
        violated: margin > VIOLATION_TOL,
        closed_form,
    })
}

/// Closed-form quantum left-hand side of the standard chain with `N` settings:
///
/// ```text
/// (N−1)·[1 − (1/d)(2m cos²(π/(2(N−1))) + (3s/9)(1 + 2cos(2π/(3(N−1))))²)]
/// ```
///
/// with `(m, s)` the canonical block decomposition of `d`.
pub fn closed_form_lhs(d: usize, big_n: usize, variant: Variant) -> Result<f64> {
    if variant == Variant::Extended {
        return Err(Error::UnsupportedVariant);
    }
    if big_n < 2 || !big_n.is_multiple_of(2) {
        return Err(Error::InvalidScenario(format!(
            "setting count N = {big_n} must be even and >= 2"
        )));
    }
    let blocks = canonical_decomposition(d)?;
    let steps = (big_n - 1) as f64;
    let qubit = 2.0 * blocks.m() as f64 * (PI / (2.0 * steps)).cos().powi(2);
    let qutrit = 3.0 * blocks.s() as f64 / 9.0 * (1.0 + 2.0 * (2.0 * PI / (3.0 * steps)).cos()).powi(2);
    Ok(steps * (1.0 - (qubit + qutrit) / d as f64))
}

/// Smallest even `N` whose standard chain is violated.
pub fn minimal_violating_n(d: usize) -> Result<usize> {
    for big_n in (2..=MAX_SCAN_N).step_by(2) {
        let report = evaluate_chain(&ChainScenario::from_settings(d, big_n, Variant::Standard)?)?;
        if report.violated {
            return Ok(big_n);
        }
    }
    Err(Error::NoneFound { cap: MAX_SCAN_N })
}

/// Extended-chain reports for each half-chain count in `n_list`.
pub fn zeno_limit_trace(d: usize, n_list: &[usize]) -> Result<Vec<ChainReport>> {
    n_list
        .iter()
        .map(|&n| evaluate_chain(&ChainScenario::extended(d, n)?))
        .collect()
}

/// Evaluates every scenario in parallel; output order matches input order.
pub fn evaluate_many(scenarios: &[ChainScenario]) -> Result<Vec<ChainReport>> {
    scenarios.par_iter().map(evaluate_chain).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent scalar oracle for the d = 3 chain.
    fn qutrit_oracle(big_n: usize) -> f64 {
        let theta = 2.0 * PI / (3.0 * (big_n - 1) as f64);
        (big_n - 1) as f64 / 9.0 * (8.0 * (theta / 2.0).sin().powi(2) + 4.0 * theta.sin().powi(2))
    }

    #[test]
    fn qutrit_examples() {
        let r = evaluate_chain(&ChainScenario::standard(3, 2).unwrap()).unwrap();
        assert!((r.lhs - qutrit_oracle(4)).abs() < 1e-12);
        assert!((r.lhs - 0.862841).abs() < 1e-6);
        assert!((r.rhs - 1.0).abs() < 1e-12);
        assert!(r.violated);
        assert_eq!(r.link_values.len(), 3);

        let eq = evaluate_chain(&ChainScenario::standard(3, 1).unwrap()).unwrap();
        assert!((eq.lhs - 1.0).abs() < 1e-12);
        assert!((eq.rhs - 1.0).abs() < 1e-12);
        assert!(!eq.violated);
    }

    #[test]
    fn ququart_and_d5_examples() {
        let r4 = evaluate_chain(&ChainScenario::standard(4, 2).unwrap()).unwrap();
        assert!((r4.lhs - 3.0 * (PI / 6.0).sin().powi(2)).abs() < 1e-12);
        assert!((r4.lhs - 0.75).abs() < 1e-12);
        assert!(r4.violated);

        let r5 = evaluate_chain(&ChainScenario::standard(5, 2).unwrap()).unwrap();
        let t1 = PI / 6.0;
        let t2 = 2.0 * PI / 9.0;
        let oracle = 3.0 * (1.0 - (2.0 * t1.cos().powi(2) + (1.0 + 2.0 * t2.cos()).powi(2) / 3.0) / 5.0);
        assert!((r5.lhs - oracle).abs() < 1e-12);
        assert!((r5.lhs - 0.817705).abs() < 1e-6);
        assert!(r5.violated);
    }

    #[test]
    fn closed_form_examples() {
        assert!((closed_form_lhs(4, 4, Variant::Standard).unwrap() - 0.75).abs() < 1e-12);
        assert_eq!(closed_form_lhs(3, 4, Variant::Extended), Err(Error::UnsupportedVariant));
        assert!(closed_form_lhs(3, 3, Variant::Standard).is_err());

        let d7 = evaluate_chain(&ChainScenario::from_settings(7, 6, Variant::Standard).unwrap()).unwrap();
        assert!((d7.lhs - closed_form_lhs(7, 6, Variant::Standard).unwrap()).abs() < 1e-10);

        // (N−1)(1 − x²) ≤ 8π²/(27(N−1)) bounds the qutrit value
        for big_n in (4..=400).step_by(4) {
            let v = closed_form_lhs(3, big_n, Variant::Standard).unwrap();
            assert!(v <= 8.0 * PI * PI / (27.0 * (big_n - 1) as f64) + 1e-12);
        }
    }

    #[test]
    fn onset_is_four() {
        for d in 2..=5 {
            assert_eq!(minimal_violating_n(d).unwrap(), 4, "d={d}");
        }
        assert!(minimal_violating_n(1).is_err());
    }

    #[test]
    fn standard_rhs_is_one_and_lhs_decreases() {
        for d in 2..=8 {
            let mut prev = f64::INFINITY;
            for big_n in (2..=40).step_by(2) {
                let r = evaluate_chain(&ChainScenario::from_settings(d, big_n, Variant::Standard).unwrap()).unwrap();
                assert!((r.rhs - 1.0).abs() < 1e-12, "d={d} N={big_n}");
                assert!((r.lhs - r.link_values.iter().sum::<f64>()).abs() < 1e-12);
                assert!((r.lhs - r.closed_form.unwrap()).abs() < CLOSED_FORM_TOL);
                assert!(r.lhs < prev, "d={d} N={big_n}");
                assert_eq!(r.violated, r.margin > VIOLATION_TOL);
                if big_n >= 4 {
                    assert!(r.violated);
                }
                prev = r.lhs;
            }
        }
    }

    #[test]
    fn zeno_trace() {
        let reports = zeno_limit_trace(3, &[2, 4, 8, 16]).unwrap();
        for w in reports.windows(2) {
            assert!(w[1].lhs < w[0].lhs);
        }
        for r in &reports {
            assert!((r.rhs - 1.0).abs() < 1e-12);
            assert_eq!(r.closed_form, None);
            assert_eq!(r.link_values.len(), 2 * r.scenario.n());
        }
        for d in 2..=6 {
            let one = &zeno_limit_trace(d, &[1]).unwrap()[0];
            assert_eq!(one.link_values.len(), 2);
            assert!((one.lhs - one.link_values[0] - one.link_values[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn extended_qutrit_scales_like_one_over_n() {
        // each link is (1/9)(8 sin²(θ/2) + 4 sin²θ) with θ = 2π/(3·2n)
        for n in [2usize, 5, 40] {
            let theta = 2.0 * PI / (3.0 * (2 * n) as f64);
            let link = (8.0 * (theta / 2.0).sin().powi(2) + 4.0 * theta.sin().powi(2)) / 9.0;
            let r = evaluate_chain(&ChainScenario::extended(3, n).unwrap()).unwrap();
            assert!((r.lhs - 2.0 * n as f64 * link).abs() < 1e-12);
        }
    }

    #[test]
    fn scenario_validation() {
        assert!(ChainScenario::new(1, 2, Variant::Standard).is_err());
        assert!(ChainScenario::new(3, 0, Variant::Standard).is_err());
        assert!(ChainScenario::from_settings(3, 5, Variant::Standard).is_err());
        let s = ChainScenario::from_settings(3, 6, Variant::Extended).unwrap();
        assert_eq!((s.n(), s.setting_count(), s.link_count()), (3, 7, 6));
    }

    #[test]
    fn parallel_order_is_stable() {
        let scenarios: Vec<_> = (2..=9)
            .flat_map(|d| (1..=6).map(move |n| ChainScenario::standard(d, n).unwrap()))
            .collect();
        let par = evaluate_many(&scenarios).unwrap();
        let seq: Vec<_> = scenarios.iter().map(|s| evaluate_chain(s).unwrap()).collect();
        assert_eq!(par, seq);
    }
}

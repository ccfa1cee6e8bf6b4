//! Brute-force local-hidden-variable bound.
//!
//! Every stochastic local model is a mixture of deterministic strategies,
//! one fixed outcome per local setting, and both sides of the chained
//! inequality are linear in the mixture weights. Certifying the inequality
//! on all `d^(#settings)` deterministic strategies therefore certifies it for
//! the whole local polytope. Per strategy both sides are link counts, so the
//! check is done in exact integer arithmetic.

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{evaluate_chain, ChainScenario};
use crate::error::{Error, Result};

/// Maximum number of strategies [`certify_classical_bound`] will enumerate.
pub const STRATEGY_BUDGET: u64 = 10_000_000;

const CHUNK: u64 = 1 << 14;

/// One outcome per local setting; Alice's entries are settings `0, 2, 4, …`,
/// Bob's are `1, 3, 5, …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DeterministicStrategy {
    pub alice: Vec<usize>,
    pub bob: Vec<usize>,
}

impl DeterministicStrategy {
    pub fn new(alice: Vec<usize>, bob: Vec<usize>) -> Self {
        Self { alice, bob }
    }

    /// Outcome assigned to setting `k`.
    pub fn outcome(&self, k: usize) -> usize {
        if k.is_multiple_of(2) {
            self.alice[k / 2]
        } else {
            self.bob[k / 2]
        }
    }

    /// Decodes a mixed-radix index: digit `k` (least significant first) is
    /// the outcome of setting `k`.
    fn from_index(mut index: u64, d: usize, settings: usize) -> Self {
        let mut alice = Vec::with_capacity(settings.div_ceil(2));
        let mut bob = Vec::with_capacity(settings / 2);
        for k in 0..settings {
            let digit = (index % d as u64) as usize;
            index /= d as u64;
            if k % 2 == 0 {
                alice.push(digit);
            } else {
                bob.push(digit);
            }
        }
        Self { alice, bob }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LhvCertificate {
    pub scenario: ChainScenario,
    pub strategies_checked: u64,
    /// Largest `rhs − lhs` over all strategies.
    pub max_margin: i64,
    /// Lowest-index strategy achieving `max_margin`.
    pub witness: DeterministicStrategy,
}

impl LhvCertificate {
    pub fn holds(&self) -> bool {
        self.max_margin <= 0
    }
}

fn expected_shape(scenario: &ChainScenario) -> (usize, usize) {
    let settings = scenario.setting_count();
    (settings.div_ceil(2), settings / 2)
}

/// Link counts `(lhs, rhs)` of one deterministic strategy: each adjacent
/// link contributes 1 when its two outcomes differ; `rhs` is 1 when the
/// closing pair differs.
pub fn strategy_chain_value(strategy: &DeterministicStrategy, scenario: &ChainScenario) -> Result<(u32, u32)> {
    let (na, nb) = expected_shape(scenario);
    if strategy.alice.len() != na || strategy.bob.len() != nb {
        return Err(Error::ShapeMismatch {
            expected_alice: na,
            expected_bob: nb,
            found_alice: strategy.alice.len(),
            found_bob: strategy.bob.len(),
        });
    }
    if let Some(&outcome) = strategy
        .alice
        .iter()
        .chain(&strategy.bob)
        .find(|&&o| o >= scenario.d())
    {
        return Err(Error::OutcomeOutOfRange {
            outcome,
            d: scenario.d(),
        });
    }
    let settings = scenario.setting_count();
    let lhs = (1..settings)
        .filter(|&k| strategy.outcome(k) != strategy.outcome(k - 1))
        .count() as u32;
    let (c0, c1) = scenario.closing();
    let rhs = u32::from(strategy.outcome(c0) != strategy.outcome(c1));
    Ok((lhs, rhs))
}

/// `d^(#settings)`, or `None` if it does not fit in a `u128`.
pub fn strategy_count(scenario: &ChainScenario) -> Option<u128> {
    (scenario.d() as u128).checked_pow(scenario.setting_count() as u32)
}

/// Margin of the strategy encoded by `index`, without allocating.
fn margin_at(mut index: u64, d: u64, settings: usize, closing: (usize, usize)) -> i64 {
    let mut lhs = 0i64;
    let mut prev = u64::MAX;
    let (mut first, mut last) = (0, 0);
    for k in 0..settings {
        let digit = index % d;
        index /= d;
        if k > 0 && digit != prev {
            lhs += 1;
        }
        if k == closing.0 {
            first = digit;
        }
        if k == closing.1 {
            last = digit;
        }
        prev = digit;
    }
    i64::from(first != last) - lhs
}

/// Exhaustively checks every deterministic strategy. The reduction keeps the
/// lowest index on ties, so the result does not depend on chunking.
pub fn certify_classical_bound(scenario: &ChainScenario) -> Result<LhvCertificate> {
    let needed = strategy_count(scenario).unwrap_or(u128::MAX);
    if needed > STRATEGY_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: STRATEGY_BUDGET,
        });
    }
    let total = needed as u64;
    let d = scenario.d() as u64;
    let settings = scenario.setting_count();
    let closing = scenario.closing();

    let chunks = total.div_ceil(CHUNK);
    let (max_margin, index) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut best = (i64::MIN, u64::MAX);
            for idx in start..end {
                let m = margin_at(idx, d, settings, closing);
                if m > best.0 {
                    best = (m, idx);
                }
            }
            best
        })
        .reduce(
            || (i64::MIN, u64::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );

    Ok(LhvCertificate {
        scenario: *scenario,
        strategies_checked: total,
        max_margin,
        witness: DeterministicStrategy::from_index(index, scenario.d(), settings),
    })
}

/// Quantum margin minus the classical maximum margin. Positive values are
/// the size of the Bell violation.
pub fn classical_vs_quantum_gap(scenario: &ChainScenario) -> Result<f64> {
    let certificate = certify_classical_bound(scenario)?;
    let quantum = evaluate_chain(scenario)?;
    Ok(quantum.margin - certificate.max_margin as f64)
}

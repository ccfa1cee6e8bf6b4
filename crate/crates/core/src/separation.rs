//! Probabilistic separation of events and the inequalities built from it.
//!
//! For two events `S(A, B) = P(A) + P(B) − 2P(A, B)`. Within a single
//! Kolmogorov probability space `S` is a pseudo-metric, so chaining triangle
//! inequalities along a polygon of events bounds the separation of the
//! endpoints by the sum of the edges. Summing the per-outcome separations of
//! two d-valued observables gives twice their mismatch probability.
//!
//! [`ProbabilitySpace`] makes this executable: events are sets of atoms
//! (truth assignments of `k` tracked events), so every probability is a sum
//! of atom weights.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance used for all closed-form comparisons.
pub const TOL: f64 = 1e-12;

/// `P(A)`, `P(B)` and `P(A, B)` for a pair of events.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventStats {
    p_a: f64,
    p_b: f64,
    p_ab: f64,
}

impl EventStats {
    pub fn new(p_a: f64, p_b: f64, p_ab: f64) -> Result<Self> {
        for (name, p) in [("P(A)", p_a), ("P(B)", p_b), ("P(A,B)", p_ab)] {
            if !(-TOL..=1.0 + TOL).contains(&p) || p.is_nan() {
                return Err(Error::InvalidProbability(format!("{name} = {p} is outside [0, 1]")));
            }
        }
        if p_ab > p_a.min(p_b) + TOL {
            return Err(Error::InvalidProbability(format!(
                "P(A,B) = {p_ab} exceeds min(P(A), P(B)) = {}",
                p_a.min(p_b)
            )));
        }
        if p_a + p_b - p_ab > 1.0 + TOL {
            return Err(Error::InvalidProbability(format!(
                "P(A ∪ B) = {} exceeds 1",
                p_a + p_b - p_ab
            )));
        }
        Ok(Self { p_a, p_b, p_ab })
    }

    pub fn p_a(&self) -> f64 {
        self.p_a
    }

    pub fn p_b(&self) -> f64 {
        self.p_b
    }

    pub fn p_ab(&self) -> f64 {
        self.p_ab
    }
}

/// `S(A, B) = P(A) + P(B) − 2P(A, B)`.
pub fn separation(stats: &EventStats) -> f64 {
    stats.p_a + stats.p_b - 2.0 * stats.p_ab
}

/// An event of a [`ProbabilitySpace`]: a bitmask over its atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event {
    words: Vec<u64>,
    atoms: usize,
}

impl Event {
    pub fn empty(atoms: usize) -> Self {
        Self {
            words: vec![0; atoms.div_ceil(64)],
            atoms,
        }
    }

    pub fn from_atoms(atoms: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut e = Self::empty(atoms);
        for a in members {
            e.insert(a);
        }
        e
    }

    pub fn insert(&mut self, atom: usize) {
        assert!(atom < self.atoms, "atom {atom} out of range");
        self.words[atom / 64] |= 1 << (atom % 64);
    }

    pub fn contains(&self, atom: usize) -> bool {
        atom < self.atoms && self.words[atom / 64] & (1 << (atom % 64)) != 0
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.atoms, other.atoms, "events from different spaces");
        Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            atoms: self.atoms,
        }
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = self.atoms % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Self {
            words,
            atoms: self.atoms,
        }
    }

    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.atoms).filter(|&a| self.contains(a))
    }
}

/// A finite probability space over the `2^k` truth assignments of `k` events.
///
/// Atom `a` is the assignment in which tracked event `i` occurs iff bit `i`
/// of `a` is set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilitySpace {
    events: usize,
    weights: Vec<f64>,
}

impl ProbabilitySpace {
    pub const MAX_EVENTS: usize = 20;

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let n = weights.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidProbability(format!(
                "atom count {n} is not 2^k for k >= 1"
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_nan() || **w < 0.0) {
            return Err(Error::InvalidProbability(format!("negative atom weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > TOL {
            return Err(Error::InvalidProbability(format!("atom weights sum to {total}")));
        }
        Ok(Self {
            events: n.trailing_zeros() as usize,
            weights,
        })
    }

    /// Every atom equally likely.
    pub fn uniform(events: usize) -> Result<Self> {
        Self::check_events(events)?;
        let n = 1usize << events;
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Atom weights from normalized exponential draws (a flat Dirichlet).
    pub fn random<R: Rng + ?Sized>(events: usize, rng: &mut R) -> Result<Self> {
        Self::check_events(events)?;
        let n = 1usize << events;
        let draws: Vec<f64> = (0..n)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let total: f64 = draws.iter().sum();
        let mut weights: Vec<f64> = draws.iter().map(|w| w / total).collect();
        // push the rounding residue into the largest atom
        let residue = 1.0 - weights.iter().sum::<f64>();
        if let Some(big) = weights.iter_mut().max_by(|a, b| a.total_cmp(b)) {
            *big += residue;
        }
        Self::new(weights)
    }

    fn check_events(events: usize) -> Result<()> {
        if events == 0 || events > Self::MAX_EVENTS {
            return Err(Error::InvalidParameter(format!(
                "event count {events} must be in 1..={}",
                Self::MAX_EVENTS
            )));
        }
        Ok(())
    }

    pub fn event_count(&self) -> usize {
        self.events
    }

    pub fn atom_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The `i`-th tracked event.
    pub fn event(&self, i: usize) -> Event {
        assert!(i < self.events, "event {i} out of range");
        Event::from_atoms(self.atom_count(), (0..self.atom_count()).filter(|a| a >> i & 1 == 1))
    }

    pub fn probability(&self, e: &Event) -> f64 {
        e.members().map(|a| self.weights[a]).sum()
    }

    pub fn joint(&self, a: &Event, b: &Event) -> f64 {
        self.probability(&a.intersection(b))
    }

    pub fn stats(&self, a: &Event, b: &Event) -> EventStats {
        EventStats {
            p_a: self.probability(a),
            p_b: self.probability(b),
            p_ab: self.joint(a, b),
        }
    }

    pub fn separation(&self, a: &Event, b: &Event) -> f64 {
        separation(&self.stats(a, b))
    }
}

/// `P(A,B) + P(B,C) ≤ P(B) + P(A,C)` (up to [`TOL`]). Holds in every
/// Kolmogorov space; equivalent to `S(A,C) ≤ S(A,B) + S(B,C)`.
pub fn triangle_holds(space: &ProbabilitySpace, a: &Event, b: &Event, c: &Event) -> bool {
    space.joint(a, b) + space.joint(b, c) <= space.probability(b) + space.joint(a, c) + TOL
}

/// Polygon form: the separation of the first and last event is at most the
/// sum of separations along the path.
pub fn polygon_holds(space: &ProbabilitySpace, path: &[Event]) -> bool {
    let (Some(first), Some(last)) = (path.first(), path.last()) else {
        return true;
    };
    let edges: f64 = path.windows(2).map(|w| space.separation(&w[0], &w[1])).sum();
    space.separation(first, last) <= edges + TOL
}

/// Clauser–Horne expression
/// `P(A₀,B₀) + P(A₁,B₀) + P(A₁,B₁) − P(A₁) − P(B₀) − P(A₀,B₁)`,
/// non-positive for every local hidden-variable model.
pub fn ch_evaluate(p00: f64, p10: f64, p11: f64, p_a1: f64, p_b0: f64, p01: f64) -> f64 {
    p00 + p10 + p11 - p_a1 - p_b0 - p01
}

/// Joint distribution of two d-valued outcomes; `table[(x, y)]` is the
/// probability that Alice gets `x` and Bob gets `y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeJointDistribution {
    d: usize,
    table: Vec<f64>,
}

/// Exact joint outcome table for one setting pair.
pub type JointTable = OutcomeJointDistribution;

impl OutcomeJointDistribution {
    /// Row-major `d × d` entries.
    pub fn new(d: usize, table: Vec<f64>) -> Result<Self> {
        if d == 0 || table.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: table.len(),
            });
        }
        if let Some(p) = table.iter().find(|p| p.is_nan() || **p < 0.0) {
            return Err(Error::InvalidProbability(format!("negative table entry {p}")));
        }
        let total: f64 = table.iter().sum();
        if (total - 1.0).abs() > TOL {
            return Err(Error::InvalidProbability(format!("table sums to {total}")));
        }
        Ok(Self { d, table })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.table[x * self.d + y]
    }

    /// Row-major entries.
    pub fn cells(&self) -> &[f64] {
        &self.table
    }

    pub fn row_marginal(&self, x: usize) -> f64 {
        (0..self.d).map(|y| self.get(x, y)).sum()
    }

    pub fn col_marginal(&self, y: usize) -> f64 {
        (0..self.d).map(|x| self.get(x, y)).sum()
    }

    pub fn total(&self) -> f64 {
        self.table.iter().sum()
    }

    /// Event statistics of `Aˣ = {Alice gets x}` and `Bˣ = {Bob gets x}`
    /// for every outcome `x`.
    pub fn per_outcome_stats(&self) -> Vec<EventStats> {
        (0..self.d)
            .map(|x| EventStats {
                p_a: self.row_marginal(x),
                p_b: self.col_marginal(x),
                p_ab: self.get(x, x),
            })
            .collect()
    }
}

/// `P(A ≠ B) = 1 − Σₓ P(x, x)`.
pub fn mismatch_probability(dist: &OutcomeJointDistribution) -> f64 {
    1.0 - (0..dist.d).map(|x| dist.get(x, x)).sum::<f64>()
}

/// `½ Σₓ S(Aˣ, Bˣ)`, the separation route to the mismatch probability.
pub fn mismatch_from_separations(dist: &OutcomeJointDistribution) -> f64 {
    0.5 * dist.per_outcome_stats().iter().map(separation).sum::<f64>()
}

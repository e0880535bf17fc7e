//! Arm-selection rules that act on the logged sufficient statistic.
//!
//! The central family is the confidence-adjusted index rule: pick
//! `argmax_i μ̂_i + b_i` for a fixed bias vector `b`. Greedy uses
//! `b = 0`, the pessimistic rule subtracts `β_δ / sqrt(n_i)`, the
//! optimistic rule adds it. Two specialised rules for `k = 2` are also
//! provided: a threshold rule on the mean difference and the Bayes rule
//! for a symmetric two-point prior.

use serde::Deserialize;

use crate::instances::{beta_delta, ArmIndex, LoggedStats};
use crate::{Error, Result};

/// A rule mapping logged statistics to a chosen arm.
pub trait ArmSelector: Sync {
    /// The number of arms the rule accepts, or `None` for any `k`.
    fn arity(&self) -> Option<usize>;

    fn select(&self, stats: &LoggedStats) -> Result<ArmIndex>;
}

fn check_arity(selector: &dyn ArmSelector, k: usize) -> Result<()> {
    if let Some(expected) = selector.arity() {
        if expected != k {
            return Err(Error::WrongArity { expected, got: k });
        }
    }
    Ok(())
}

/// Index of the maximum entry, ties resolved to the lowest index.
fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for (i, v) in values.enumerate() {
        if v > best_value {
            best = i;
            best_value = v;
        }
    }
    best
}

/// Confidence-adjusted index rule: pick `argmax_i μ̂_i + bias_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexPolicy {
    bias: Vec<f64>,
}

impl IndexPolicy {
    /// Zero bias: pick the empirically best arm.
    pub fn greedy(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::TooFewArms { k });
        }
        Ok(Self { bias: vec![0.0; k] })
    }

    /// Pessimistic rule: `bias_i = -β_δ / sqrt(n_i)`.
    pub fn lcb(delta: f64, counts: &[f64]) -> Result<Self> {
        let beta = beta_delta(counts.len(), delta)?;
        Self::scaled(-beta, counts)
    }

    /// Optimistic rule: `bias_i = +β_δ / sqrt(n_i)`.
    pub fn ucb(delta: f64, counts: &[f64]) -> Result<Self> {
        let beta = beta_delta(counts.len(), delta)?;
        Self::scaled(beta, counts)
    }

    /// `bias_i = α / sqrt(n_i)` for an arbitrary (signed) `α`.
    pub fn constant_alpha(alpha: f64, counts: &[f64]) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
        }
        Self::scaled(alpha, counts)
    }

    fn scaled(alpha: f64, counts: &[f64]) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::TooFewArms { k: counts.len() });
        }
        for (i, &n) in counts.iter().enumerate() {
            if !n.is_finite() {
                return Err(Error::NonFiniteEntry { what: "count", arm: i + 1 });
            }
            if n <= 0.0 {
                return Err(Error::NonPositiveCount { arm: i + 1, value: n });
            }
        }
        Ok(Self {
            bias: counts.iter().map(|&n| alpha / n.sqrt()).collect(),
        })
    }

    /// Arbitrary finite bias vector.
    pub fn custom(bias: Vec<f64>) -> Result<Self> {
        if bias.len() < 2 {
            return Err(Error::TooFewArms { k: bias.len() });
        }
        for (i, &b) in bias.iter().enumerate() {
            if !b.is_finite() {
                return Err(Error::NonFiniteEntry { what: "bias", arm: i + 1 });
            }
        }
        Ok(Self { bias })
    }

    pub fn k(&self) -> usize {
        self.bias.len()
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    /// For `k = 2`, the rule is equivalent to: pick arm 1 iff
    /// `μ̂_1 - μ̂_2 >= t`. Returns that threshold `t = bias_2 - bias_1`.
    pub fn two_arm_threshold(&self) -> Result<f64> {
        if self.bias.len() != 2 {
            return Err(Error::WrongArity { expected: 2, got: self.bias.len() });
        }
        Ok(self.bias[1] - self.bias[0])
    }
}

impl ArmSelector for IndexPolicy {
    fn arity(&self) -> Option<usize> {
        Some(self.bias.len())
    }

    fn select(&self, stats: &LoggedStats) -> Result<ArmIndex> {
        check_arity(self, stats.k())?;
        let i = argmax(
            stats
                .emp_means()
                .iter()
                .zip(&self.bias)
                .map(|(m, b)| m + b),
        );
        Ok(ArmIndex::from_zero_based(i))
    }
}

/// Two-arm threshold rule: pick arm 1 iff
/// `μ̂_1 - μ̂_2 >= β / sqrt(min(n_1, n_2))` (boundary inclusive).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPolicy {
    pub beta: f64,
}

impl ThresholdPolicy {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::Domain(format!("beta must be finite, got {beta}")));
        }
        Ok(Self { beta })
    }

    /// The threshold `β / sqrt(min(n_1, n_2))` for the given counts.
    pub fn threshold(&self, counts: &[f64]) -> Result<f64> {
        if counts.len() != 2 {
            return Err(Error::WrongArity { expected: 2, got: counts.len() });
        }
        Ok(self.beta / counts[0].min(counts[1]).sqrt())
    }
}

impl ArmSelector for ThresholdPolicy {
    fn arity(&self) -> Option<usize> {
        Some(2)
    }

    fn select(&self, stats: &LoggedStats) -> Result<ArmIndex> {
        check_arity(self, stats.k())?;
        let t = self.threshold(stats.counts())?;
        let diff = stats.emp_means()[0] - stats.emp_means()[1];
        Ok(ArmIndex::from_zero_based(if diff >= t { 0 } else { 1 }))
    }
}

/// Bayes rule for the symmetric two-point prior over two-arm instances
/// whose mean vectors differ by `delta_gap` in opposite directions:
/// pick `argmin_b n_b (Δ/2 - μ̂_b)`, ties to the lowest index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikeBayesPolicy {
    pub delta_gap: f64,
}

impl SpikeBayesPolicy {
    pub fn new(delta_gap: f64) -> Result<Self> {
        if !(delta_gap.is_finite() && delta_gap > 0.0) {
            return Err(Error::Domain(format!(
                "delta_gap must be finite and positive, got {delta_gap}"
            )));
        }
        Ok(Self { delta_gap })
    }
}

impl ArmSelector for SpikeBayesPolicy {
    fn arity(&self) -> Option<usize> {
        Some(2)
    }

    fn select(&self, stats: &LoggedStats) -> Result<ArmIndex> {
        check_arity(self, stats.k())?;
        // argmin of n_b (Δ/2 - μ̂_b) == argmax of the negation.
        let i = argmax(
            stats
                .counts()
                .iter()
                .zip(stats.emp_means())
                .map(|(&n, &m)| -(n * (self.delta_gap / 2.0 - m))),
        );
        Ok(ArmIndex::from_zero_based(i))
    }
}

/// Serialisable description of an index rule, resolved against a count
/// vector at build time.
///
/// JSON shape: `{"kind": "greedy" | "lcb" | "ucb" | "alpha" | "custom",
/// "delta"?: f64, "alpha"?: f64, "bias"?: [f64]}`.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PolicyDescriptor {
    Greedy,
    Lcb { delta: f64 },
    Ucb { delta: f64 },
    Alpha { alpha: f64 },
    Custom { bias: Vec<f64> },
}

impl PolicyDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Domain(format!("invalid policy JSON: {e}")))
    }

    pub fn build(&self, counts: &[f64]) -> Result<IndexPolicy> {
        match self {
            Self::Greedy => IndexPolicy::greedy(counts.len()),
            Self::Lcb { delta } => IndexPolicy::lcb(*delta, counts),
            Self::Ucb { delta } => IndexPolicy::ucb(*delta, counts),
            Self::Alpha { alpha } => IndexPolicy::constant_alpha(*alpha, counts),
            Self::Custom { bias } => {
                if bias.len() != counts.len() {
                    return Err(Error::LengthMismatch {
                        expected: counts.len(),
                        got: bias.len(),
                    });
                }
                IndexPolicy::custom(bias.clone())
            }
        }
    }

    /// Short human-readable label, used in CSV output.
    pub fn label(&self) -> String {
        match self {
            Self::Greedy => "greedy".into(),
            Self::Lcb { delta } => format!("lcb({delta})"),
            Self::Ucb { delta } => format!("ucb({delta})"),
            Self::Alpha { alpha } => format!("alpha({alpha})"),
            Self::Custom { .. } => "custom".into(),
        }
    }
}

//! Policy selection for batch (offline) multi-armed bandits.
//!
//! Given a logged dataset summarized by per-arm empirical means and
//! observation counts, a *confidence-adjusted index* rule selects
//! `argmax_i μ̂_i + b_i` with a per-arm bias `b_i`. The bias `α/√n_i`
//! with `α = -β_δ`, `0`, `+β_δ` recovers the pessimistic (LCB), greedy
//! and optimistic (UCB) rules.
//!
//! The crate provides:
//!
//! * the data model for problem instances and logged statistics
//!   ([`instances`]),
//! * the index family plus the two-arm threshold and spike-prior Bayes
//!   rules ([`policies`]),
//! * exact (quadrature / closed-form) expected simple regret for the
//!   Gaussian model ([`exact`]),
//! * analytical regret bounds: the rank-exceedance bound, its corollary
//!   forms, minimax values and the hard-pair construction ([`bounds`]),
//! * seeded, partition-independent Monte Carlo simulation ([`sim`]),
//! * experiment generators and CSV emitters behind the `batch-bandits`
//!   CLI ([`harness`]).
//!
//! ```
//! use batch_bandits::instances::BanditInstance;
//! use batch_bandits::policies::IndexPolicy;
//! use batch_bandits::exact::exact_pick_probabilities;
//! use batch_bandits::numerics::QuadratureSpec;
//!
//! let inst = BanditInstance::new(vec![0.6, 0.4], vec![10.0, 10.0], true)?;
//! let greedy = IndexPolicy::greedy(inst.k())?;
//! let dist = exact_pick_probabilities(&inst, &greedy, &QuadratureSpec::default())?;
//! assert!((dist.regret - 0.065472).abs() < 1e-5);
//! # Ok::<(), batch_bandits::Error>(())
//! ```

pub mod bounds;
pub mod exact;
pub mod harness;
pub mod instances;
pub mod numerics;
pub mod policies;
pub mod sim;

/// Error type shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("count for arm {arm} must be positive (got {value})")]
    NonPositiveCount { arm: usize, value: f64 },
    #[error("non-finite {what} for arm {arm}")]
    NonFiniteEntry { what: &'static str, arm: usize },
    #[error("mean {value} for arm {arm} outside [0, 1] (strict mode)")]
    MeanOutOfRange { arm: usize, value: f64 },
    #[error("need at least 2 arms, got {k}")]
    TooFewArms { k: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("operation requires {expected} arms, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("rank {rank} out of range for k = {k}")]
    RankOutOfRange { rank: usize, k: usize },
    #[error("no sign change over the bracketing interval")]
    NoSignChange,
    #[error("non-finite function evaluation at {at}")]
    NonFiniteEvaluation { at: f64 },
    #[error("quadrature tolerance not met within the subdivision budget")]
    ToleranceNotMet,
    #[error("the fixed point delta = sqrt(32 log(k/delta)/n_min) has no solution in (0, 1)")]
    NoValidDelta,
    #[error("arm subset must be nonempty")]
    EmptySubset,
    #[error("exact subset enumeration limited to k <= 20, got {k}")]
    EnumerationTooLarge { k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

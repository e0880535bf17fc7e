//! Analytical regret bounds and constructions for confidence-adjusted
//! index rules: the rank-exceedance function `g_i` and its minimum, the
//! general and simplified instance bounds, per-policy closed-form
//! bounds, minimax upper/lower values, large-confidence limit bounds
//! and the pessimism-dominance enumeration, mirrored hard-instance
//! pairs with their regret-ratio bound, and weighted-regret
//! diagnostics.

use serde::Serialize;

use crate::instances::{beta_delta, BanditInstance};
use crate::numerics::{find_root, log_norm_cdf, minimize_1d, norm_cdf};
use crate::{Error, Result};

/// Minimizer of `g_i(η)` for one sorted rank.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GStar {
    /// Sorted rank `i`, in `2..=k`.
    pub rank: usize,
    pub eta: f64,
    pub value: f64,
}

/// A regret bound together with the per-rank selection-probability
/// bounds it is built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub method: String,
    pub regret_bound: f64,
    /// `min(1, g_i*)` for sorted ranks `i = 2..=k`.
    pub rank_cdf_bound: Vec<f64>,
    pub g_star: Vec<GStar>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("bound report serializes")
    }
}

/// Instance data rearranged to sorted-rank order for the `g` formulas.
struct SortedArms {
    /// `μ_j + b_j` at sorted rank `j+1`.
    centers: Vec<f64>,
    /// `n_j` at sorted rank `j+1`.
    counts: Vec<f64>,
    /// Gap `Δ_j` at sorted rank `j+1` (`gaps[0] == 0`).
    gaps: Vec<f64>,
}

fn sorted_arms(instance: &BanditInstance, bias: &[f64]) -> Result<SortedArms> {
    if bias.len() != instance.k() {
        return Err(Error::LengthMismatch { expected: instance.k(), got: bias.len() });
    }
    for (i, &b) in bias.iter().enumerate() {
        if !b.is_finite() {
            return Err(Error::NonFiniteEntry { what: "bias", arm: i + 1 });
        }
    }
    let view = instance.sorted_view();
    Ok(SortedArms {
        centers: view
            .perm
            .iter()
            .map(|&j| instance.means()[j] + bias[j])
            .collect(),
        counts: view.perm.iter().map(|&j| instance.counts()[j]).collect(),
        gaps: view.gaps,
    })
}

fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
}

fn g_value_sorted(arms: &SortedArms, i: usize, eta: f64) -> f64 {
    let k = arms.centers.len();
    // Σ_{j≥i} exp(-(n_j/2)((η - c_j)₊)²), log-sum-exp'd for safety, plus
    // min_{j<i} exp(-(n_j/2)((c_j - η)₊)²); ranks here are 1-based.
    let tail_logs: Vec<f64> = (i - 1..k)
        .map(|j| {
            let x = (eta - arms.centers[j]).max(0.0);
            -0.5 * arms.counts[j] * x * x
        })
        .collect();
    let head_log = (0..i - 1)
        .map(|j| {
            let x = (arms.centers[j] - eta).max(0.0);
            -0.5 * arms.counts[j] * x * x
        })
        .fold(f64::INFINITY, f64::min);
    log_sum_exp(&tail_logs).exp() + head_log.exp()
}

/// The rank-`i` exceedance function
/// `g_i(η) = Σ_{j≥i} e^{-(n_j/2)((η-μ_j-b_j)₊)²} + min_{j<i} e^{-(n_j/2)((μ_j+b_j-η)₊)²}`
/// with arms in sorted-rank order and `(x)₊ = max(x, 0)`.
pub fn g_value(instance: &BanditInstance, bias: &[f64], i: usize, eta: f64) -> Result<f64> {
    let k = instance.k();
    if i < 2 || i > k {
        return Err(Error::RankOutOfRange { rank: i, k });
    }
    Ok(g_value_sorted(&sorted_arms(instance, bias)?, i, eta))
}

fn g_star_sorted(arms: &SortedArms, i: usize) -> Result<GStar> {
    let pad = 3.0 * arms
        .counts
        .iter()
        .map(|n| 1.0 / n.sqrt())
        .fold(0.0f64, f64::max)
        + 1.0;
    let (eta, value) =
        minimize_1d(|eta| g_value_sorted(arms, i, eta), &arms.centers, pad, 1e-10)?;
    Ok(GStar { rank: i, eta, value })
}

/// Minimize `g_i` over the split level `η`.
///
/// Any `η` yields a valid bound, so approximate minimization only
/// loosens the result; candidates are the kink locations `μ_j + b_j`.
pub fn g_star(instance: &BanditInstance, bias: &[f64], i: usize) -> Result<GStar> {
    let k = instance.k();
    if i < 2 || i > k {
        return Err(Error::RankOutOfRange { rank: i, k });
    }
    g_star_sorted(&sorted_arms(instance, bias)?, i)
}

/// Instance regret bound for an arbitrary bias vector:
/// `Σ_{i=2..k} (Δ_i - Δ_{i-1}) · min(1, g_i*)`.
///
/// This is the pre-telescoped form; it equals the telescoped display
/// when `g_i*` is monotone in `i` and stays valid when it is not.
pub fn regret_bound_general(instance: &BanditInstance, bias: &[f64]) -> Result<BoundReport> {
    let arms = sorted_arms(instance, bias)?;
    let k = arms.centers.len();
    let mut g_stars = Vec::with_capacity(k - 1);
    let mut rank_cdf_bound = Vec::with_capacity(k - 1);
    let mut bound = 0.0;
    for i in 2..=k {
        let gs = g_star_sorted(&arms, i)?;
        let capped = gs.value.min(1.0);
        bound += (arms.gaps[i - 1] - arms.gaps[i - 2]) * capped;
        rank_cdf_bound.push(capped);
        g_stars.push(gs);
    }
    Ok(BoundReport {
        method: "general".into(),
        regret_bound: bound,
        rank_cdf_bound,
        g_star: g_stars,
    })
}

/// Simplified instance bound built from per-arm confidence intervals
/// `U_i, L_i = μ_i + b_i ± β_δ/√n_i`:
/// `Δ_h + (δ/k)Δ_max + (δ/k) Σ_{i>h} (Δ_i - Δ_{i-1}) Σ_{j≥i} e^{-(n_j/2)(max_{j'<i} L_{j'} - U_j)²}`
/// where `h` is the largest rank whose interval still overlaps the best
/// interval above it (rank 1 qualifies vacuously, so `h ≥ 1`).
pub fn regret_bound_simplified(
    instance: &BanditInstance,
    bias: &[f64],
    delta: f64,
) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "simplified bound requires 0 < delta < 1, got {delta}"
        )));
    }
    let arms = sorted_arms(instance, bias)?;
    let k = arms.centers.len();
    let beta = beta_delta(k, delta)?;
    let radius: Vec<f64> = arms.counts.iter().map(|n| beta / n.sqrt()).collect();
    let upper: Vec<f64> = (0..k).map(|j| arms.centers[j] + radius[j]).collect();
    let lower: Vec<f64> = (0..k).map(|j| arms.centers[j] - radius[j]).collect();

    // prefix_l[i-1] = max_{j<i} L_j (1-based i); suffix max of U.
    let mut suffix_u = vec![f64::NEG_INFINITY; k + 1];
    for j in (0..k).rev() {
        suffix_u[j] = suffix_u[j + 1].max(upper[j]);
    }
    let mut h = 1;
    let mut prefix_l = f64::NEG_INFINITY;
    for i in 2..=k {
        prefix_l = prefix_l.max(lower[i - 2]);
        if prefix_l < suffix_u[i - 1] {
            h = i;
        }
    }

    let delta_max = arms.gaps[k - 1];
    let mut tail = 0.0;
    let mut prefix_l = lower[..h.max(1)]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    for i in h + 1..=k {
        prefix_l = prefix_l.max(lower[i - 2]);
        let inner: f64 = (i - 1..k)
            .map(|j| {
                let x = prefix_l - upper[j];
                (-0.5 * arms.counts[j] * x * x).exp()
            })
            .sum();
        tail += (arms.gaps[i - 1] - arms.gaps[i - 2]) * inner;
    }
    Ok(arms.gaps[h - 1] + (delta / k as f64) * delta_max + (delta / k as f64) * tail)
}

/// Which closed-form per-policy bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Greedy,
    Lcb,
    Ucb,
}

impl PolicyKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::Greedy => "greedy",
            Self::Lcb => "lcb",
            Self::Ucb => "ucb",
        }
    }
}

/// Closed-form instance bounds for the three named policies:
/// greedy → `min_i (Δ_i + √((2/n_i)ln(k/δ)) + max_{j>i} √((2/n_j)ln(k/δ))) + δ`,
/// pessimism → `min_i (Δ_i + √((8/n_i)ln(k/δ))) + δ`,
/// optimism → `min_i (Δ_i + max_{j>i} √((8/n_j)ln(k/δ))) + δ`,
/// with sorted ranks and empty maxima equal to 0.
pub fn regret_bound_corollary(
    kind: PolicyKind,
    instance: &BanditInstance,
    delta: f64,
) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "corollary bound requires 0 < delta < 1, got {delta}"
        )));
    }
    let arms = sorted_arms(instance, &vec![0.0; instance.k()])?;
    let k = arms.counts.len();
    let log_term = (k as f64 / delta).ln();
    let radical = |scale: f64, n: f64| (scale * log_term / n).sqrt();

    // suffix_max[i] = max_{j>i} radical over sorted ranks (1-based i).
    let suffix_max = |scale: f64| -> Vec<f64> {
        let mut out = vec![0.0f64; k + 1];
        for j in (1..k).rev() {
            out[j] = out[j + 1].max(radical(scale, arms.counts[j]));
        }
        out
    };

    let bound = match kind {
        PolicyKind::Greedy => {
            let suffix = suffix_max(2.0);
            (1..=k)
                .map(|i| arms.gaps[i - 1] + radical(2.0, arms.counts[i - 1]) + suffix[i])
                .fold(f64::INFINITY, f64::min)
        }
        PolicyKind::Lcb => (1..=k)
            .map(|i| arms.gaps[i - 1] + radical(8.0, arms.counts[i - 1]))
            .fold(f64::INFINITY, f64::min),
        PolicyKind::Ucb => {
            let suffix = suffix_max(8.0);
            (1..=k)
                .map(|i| arms.gaps[i - 1] + suffix[i])
                .fold(f64::INFINITY, f64::min)
        }
    };
    Ok(bound + delta)
}

/// Worst-case regret guarantee: the fixed point `δ*` of
/// `δ = √(32 ln(k/δ) / n_min)` and the bound `12 √(ln(k/δ*) / n_min)`.
pub fn minimax_upper(counts: &[f64], tol: f64) -> Result<(f64, f64)> {
    if counts.len() < 2 {
        return Err(Error::TooFewArms { k: counts.len() });
    }
    for (i, &n) in counts.iter().enumerate() {
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NonPositiveCount { arm: i + 1, value: n });
        }
    }
    let k = counts.len() as f64;
    let n_min = counts.iter().cloned().fold(f64::INFINITY, f64::min);
    let f = |d: f64| d - (32.0 * (k / d).ln() / n_min).sqrt();
    let (lo, hi) = (1e-12, 1.0 - 1e-12);
    if f(lo) * f(hi) > 0.0 {
        return Err(Error::NoValidDelta);
    }
    let delta_star = find_root(f, lo, hi, tol)?;
    Ok((delta_star, 12.0 * ((k / delta_star).ln() / n_min).sqrt()))
}

/// Shape of the worst-case lower bound with unit constant:
/// counts sorted ascending, `max_m √(max(1, ln m) / n_(m))`.
pub fn minimax_lower_shape(counts: &[f64]) -> f64 {
    let mut sorted = counts.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .iter()
        .enumerate()
        .map(|(idx, &n)| ((((idx + 1) as f64).ln()).max(1.0) / n).sqrt())
        .fold(0.0f64, f64::max)
}

/// A limit bound value plus whether it is only a lower bound on the
/// corresponding closed-form bound (true for the greedy case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitBound {
    pub value: f64,
    pub is_lower_bound: bool,
}

/// Large-count limits of the per-policy bounds when only the arms in
/// `well_sampled` (1-based sorted ranks) have diverging counts.
///
/// Pessimism pays the gap of its best well-sampled arm; optimism pays a
/// `√(8 ln(k/δ))` penalty whenever a scarcer arm ranks below `i`; the
/// greedy form uses `√(2 ln(k/δ))` and is a lower bound on its limit.
pub fn limit_bound(
    kind: PolicyKind,
    well_sampled: &[usize],
    sorted_means: &[f64],
    delta: f64,
) -> Result<LimitBound> {
    let k = sorted_means.len();
    if k < 2 {
        return Err(Error::TooFewArms { k });
    }
    if well_sampled.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "limit bound requires 0 < delta < 1, got {delta}"
        )));
    }
    let mut in_set = vec![false; k + 1];
    for &r in well_sampled {
        if r == 0 || r > k {
            return Err(Error::RankOutOfRange { rank: r, k });
        }
        in_set[r] = true;
    }
    let gaps: Vec<f64> = sorted_means.iter().map(|m| sorted_means[0] - m).collect();
    let log_term = (k as f64 / delta).ln();

    let with_penalty = |scale: f64| -> f64 {
        let penalty = (scale * log_term).sqrt();
        // any_scarce_below[i] = ∃ j > i with j ∉ S (1-based ranks).
        let mut best = f64::INFINITY;
        let mut scarce_below = false;
        for i in (1..=k).rev() {
            let v = gaps[i - 1] + if scarce_below { penalty } else { 0.0 };
            best = best.min(v);
            if !in_set[i] {
                scarce_below = true;
            }
        }
        best
    };

    Ok(match kind {
        PolicyKind::Lcb => {
            let best_rank = *well_sampled.iter().min().unwrap();
            LimitBound { value: gaps[best_rank - 1] + delta, is_lower_bound: false }
        }
        PolicyKind::Ucb => LimitBound { value: with_penalty(8.0) + delta, is_lower_bound: false },
        PolicyKind::Greedy => {
            LimitBound { value: with_penalty(2.0) + delta, is_lower_bound: true }
        }
    })
}

/// Result of the exhaustive pessimism-vs-optimism subset enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceResult {
    /// Fraction of size-`m` subsets where the pessimistic limit bound is
    /// strictly smaller than the optimistic one.
    pub fraction_exact: f64,
    /// The closed-form guarantee `1 - (k-m)! m! / k!`.
    pub bound: f64,
    pub subsets_total: u64,
    pub lcb_favorable: u64,
}

/// Enumerate every size-`m` subset of well-sampled ranks and compare the
/// pessimistic and optimistic limit bounds on each.
pub fn lcb_dominance(
    k: usize,
    m: usize,
    delta: f64,
    sorted_means: &[f64],
) -> Result<DominanceResult> {
    if k > 20 {
        return Err(Error::EnumerationTooLarge { k });
    }
    if k < 2 || m == 0 || m >= k {
        return Err(Error::Domain(format!(
            "enumeration requires 2 <= k and 1 <= m < k, got k = {k}, m = {m}"
        )));
    }
    if sorted_means.len() != k {
        return Err(Error::LengthMismatch { expected: k, got: sorted_means.len() });
    }
    for w in sorted_means.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::Domain(
                "enumeration requires strictly decreasing means".into(),
            ));
        }
    }

    // 1 - (k-m)! m! / k!, with the factorial ratio in log-space.
    let lg = |x: usize| libm::lgamma(x as f64 + 1.0);
    let bound = 1.0 - (lg(k - m) + lg(m) - lg(k)).exp();

    let mut subsets_total = 0u64;
    let mut lcb_favorable = 0u64;
    let mut subset = Vec::with_capacity(m);
    enumerate_subsets(k, m, 1, &mut subset, &mut |s: &[usize]| -> Result<()> {
        subsets_total += 1;
        let l = limit_bound(PolicyKind::Lcb, s, sorted_means, delta)?.value;
        let u = limit_bound(PolicyKind::Ucb, s, sorted_means, delta)?.value;
        if l < u {
            lcb_favorable += 1;
        }
        Ok(())
    })?;

    Ok(DominanceResult {
        fraction_exact: lcb_favorable as f64 / subsets_total as f64,
        bound,
        subsets_total,
        lcb_favorable,
    })
}

fn enumerate_subsets(
    k: usize,
    m: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if current.len() == m {
        return visit(current);
    }
    let remaining = m - current.len();
    for r in start..=k + 1 - remaining {
        current.push(r);
        enumerate_subsets(k, m, r + 1, current, visit)?;
        current.pop();
    }
    Ok(())
}

/// Two mirrored two-arm instances that no single threshold rule can
/// handle well simultaneously.
#[derive(Debug, Clone, PartialEq)]
pub struct HardPair {
    pub theta1: BanditInstance,
    pub theta2: BanditInstance,
    /// Gap `Δ = (1/n_1 + 1/n_2) η` of both instances.
    pub gap: f64,
    /// `σ = √(1/n_1 + 1/n_2)`.
    pub sigma: f64,
    pub lambda: f64,
    pub eta: f64,
}

/// Build the mirrored pair with `λ = 1/2` and `η = min(n_1, n_2)/2`:
/// `θ_1 = (λ + η/n_1, λ - η/n_2)` and `θ_2` with the signs flipped.
pub fn make_hard_pair(n1: f64, n2: f64) -> Result<HardPair> {
    if !(n1.is_finite() && n1 > 0.0) {
        return Err(Error::NonPositiveCount { arm: 1, value: n1 });
    }
    if !(n2.is_finite() && n2 > 0.0) {
        return Err(Error::NonPositiveCount { arm: 2, value: n2 });
    }
    let lambda = 0.5;
    let eta = n1.min(n2) / 2.0;
    let counts = vec![n1, n2];
    let theta1 = BanditInstance::new(
        vec![lambda + eta / n1, lambda - eta / n2],
        counts.clone(),
        true,
    )?;
    let theta2 =
        BanditInstance::new(vec![lambda - eta / n1, lambda + eta / n2], counts, true)?;
    Ok(HardPair {
        theta1,
        theta2,
        gap: (1.0 / n1 + 1.0 / n2) * eta,
        sigma: (1.0 / n1 + 1.0 / n2).sqrt(),
        lambda,
        eta,
    })
}

/// A possibly astronomically large positive quantity, carried in
/// log-space with the plain value alongside when it is representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    pub log_value: f64,
    /// `exp(log_value)` when finite in f64, `None` on overflow.
    pub value: Option<f64>,
}

impl LogScaled {
    fn from_log(log_value: f64) -> Self {
        let v = log_value.exp();
        Self { log_value, value: v.is_finite().then_some(v) }
    }
}

/// Guaranteed regret-ratio blow-up on a hard pair for a rule whose bias
/// magnitude is `β = c·c_0 - 2 > 0`:
/// `(n_min/(n_min+4)) · e^{β²/4 + (β/4)√n_min}`, evaluated in log-space.
pub fn ratio_lower_bound(n_min: f64, c: f64, c0: f64) -> Result<LogScaled> {
    ratio_lower_bound_from_beta(n_min, c * c0 - 2.0)
}

/// Same bound parameterized directly by `β`.
// Negated comparisons are deliberate: they reject NaN inputs too.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn ratio_lower_bound_from_beta(n_min: f64, beta: f64) -> Result<LogScaled> {
    if !(n_min > 0.0) {
        return Err(Error::Domain(format!("n_min must be positive, got {n_min}")));
    }
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("ratio bound requires beta > 0, got {beta}")));
    }
    let log_value = (n_min / (n_min + 4.0)).ln()
        + beta * beta / 4.0
        + (beta / 4.0) * n_min.sqrt();
    Ok(LogScaled::from_log(log_value))
}

/// Regret ratio of the zero-threshold rule to the `β`-biased threshold
/// rule on the favorable instance of a hard pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardPairRatio {
    /// `Φ(-Δ/σ) / Φ(-β/(σ√n_min) - Δ/σ)`.
    pub ratio: f64,
    pub log_ratio: f64,
    /// Regret of the zero-threshold rule on `θ_1`: `Δ·Φ(-Δ/σ)`.
    pub regret_unbiased: f64,
    /// Regret of the `-β` threshold rule on `θ_1`.
    pub regret_biased: f64,
}

/// Compute the hard-pair regret ratio in log-space so it survives far
/// into the regime where both CDF values underflow.
pub fn hard_pair_ratio(pair: &HardPair, beta: f64) -> Result<HardPairRatio> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta must be >= 0, got {beta}")));
    }
    let n_min = pair.theta1.counts()[0].min(pair.theta1.counts()[1]);
    let x0 = -pair.gap / pair.sigma;
    let xb = -beta / (pair.sigma * n_min.sqrt()) - pair.gap / pair.sigma;
    let log_ratio = log_norm_cdf(x0) - log_norm_cdf(xb);
    Ok(HardPairRatio {
        ratio: log_ratio.exp(),
        log_ratio,
        regret_unbiased: pair.gap * norm_cdf(x0),
        regret_biased: pair.gap * norm_cdf(xb),
    })
}

/// Regret scaled by the square root of the optimal arm's count — the
/// weighted-regret diagnostic (ties for the optimal arm go to the
/// lowest index).
// Negated comparisons are deliberate: they reject NaN inputs too.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn weighted_ratio(regret: f64, instance: &BanditInstance) -> Result<f64> {
    if !(regret >= 0.0) {
        return Err(Error::Domain(format!("regret must be >= 0, got {regret}")));
    }
    let opt = instance.sorted_view().optimal_arm.zero_based();
    Ok(regret * instance.counts()[opt].sqrt())
}

/// The two-arm sequence on which optimism and greedy have unbounded
/// weighted regret: gap 0.1 centered in `[0,1]`, a single sample on the
/// inferior arm, and `δ = 1/√(n_1 + 1)`.
pub fn divergence_construction(n1: f64) -> Result<(BanditInstance, f64)> {
    if !(n1 >= 2.0 && n1.is_finite()) {
        return Err(Error::Domain(format!("divergence construction requires n1 >= 2, got {n1}")));
    }
    let instance = BanditInstance::new(vec![0.55, 0.45], vec![n1, 1.0], true)?;
    Ok((instance, 1.0 / (n1 + 1.0).sqrt()))
}

/// Per-arm misidentification chance of the symmetric-prior posterior:
/// `δ_a(Δ) = √(2/π) · e^{-nΔ²/2} / (Δ√n + √(4 + nΔ²))`.
pub fn prior_mistake_probability(n: f64, gap: f64) -> f64 {
    (2.0 / std::f64::consts::PI).sqrt() * (-0.5 * n * gap * gap).exp()
        / (gap * n.sqrt() + (4.0 + n * gap * gap).sqrt())
}

/// Solve for the gap `Δ` at which the prior mistake probability equals
/// `1/(2m)`, by bisection on `(1e-9, 10³/√n]`.
pub fn prior_delta(n: f64, m: usize) -> Result<f64> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Domain(format!("prior_delta requires n > 0, got {n}")));
    }
    if m < 2 {
        return Err(Error::Domain(format!("prior_delta requires m >= 2, got {m}")));
    }
    let target = 1.0 / (2.0 * m as f64);
    find_root(
        |gap| prior_mistake_probability(n, gap) - target,
        1e-9,
        1e3 / n.sqrt(),
        1e-13,
    )
}

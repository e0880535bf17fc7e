//! Exact (non-Monte-Carlo) expected simple regret and pick probabilities
//! for Gaussian instances: a closed form for two arms, adaptive
//! quadrature for general `k`.

use crate::instances::BanditInstance;
use crate::numerics::{integrate, norm_cdf, norm_pdf, QuadratureSpec};
use crate::policies::IndexPolicy;
use crate::{Error, Result};

/// Exact distribution of the selected arm and the implied simple regret.
#[derive(Debug, Clone, PartialEq)]
pub struct PickDistribution {
    /// Probability each arm (original indexing) is selected.
    pub probs: Vec<f64>,
    /// Expected simple regret `Σ_i Δ_i · probs_i`.
    pub regret: f64,
}

impl PickDistribution {
    pub fn to_json(&self) -> String {
        let probs: Vec<String> = self.probs.iter().map(|p| format!("{p}")).collect();
        format!(
            "{{\"probs\":[{}],\"regret\":{}}}",
            probs.join(","),
            self.regret
        )
    }
}

/// Exact regret of the two-arm threshold rule that picks arm 1 iff
/// `μ̂_1 - μ̂_2 >= t`.
///
/// With `d = μ_1 - μ_2` and `σ = sqrt(1/n_1 + 1/n_2)`: when `d >= 0`
/// the regret is `d · Φ((t - d)/σ)` (probability the inferior arm 2 is
/// picked), otherwise `(-d) · Φ((d - t)/σ)`.
pub fn exact_regret_two_arm(instance: &BanditInstance, threshold: f64) -> Result<f64> {
    if instance.k() != 2 {
        return Err(Error::WrongArity { expected: 2, got: instance.k() });
    }
    let d = instance.means()[0] - instance.means()[1];
    let sigma = (1.0 / instance.counts()[0] + 1.0 / instance.counts()[1]).sqrt();
    Ok(if d >= 0.0 {
        d * norm_cdf((threshold - d) / sigma)
    } else {
        (-d) * norm_cdf((d - threshold) / sigma)
    })
}

/// Exact selection probabilities of an index rule under the Gaussian
/// sufficient-statistic model.
///
/// Each probability is the integral over the winning index value `x` of
/// `sqrt(n_i) φ(sqrt(n_i)(x - c_i)) Π_{j≠i} Φ(sqrt(n_j)(x - c_j))`
/// where `c_j = μ_j + bias_j`, truncated at `c_i ± 12/sqrt(n_i)`.
pub fn exact_pick_probabilities(
    instance: &BanditInstance,
    policy: &IndexPolicy,
    spec: &QuadratureSpec,
) -> Result<PickDistribution> {
    let k = instance.k();
    if policy.k() != k {
        return Err(Error::WrongArity { expected: k, got: policy.k() });
    }
    let centers: Vec<f64> = instance
        .means()
        .iter()
        .zip(policy.bias())
        .map(|(m, b)| m + b)
        .collect();
    let counts = instance.counts();

    let mut probs = Vec::with_capacity(k);
    for i in 0..k {
        let ni_sqrt = counts[i].sqrt();
        let ci = centers[i];
        let integrand = |x: f64| {
            let mut v = ni_sqrt * norm_pdf(ni_sqrt * (x - ci));
            for j in 0..k {
                if j != i {
                    v *= norm_cdf(counts[j].sqrt() * (x - centers[j]));
                }
            }
            v
        };
        let half_width = 12.0 / ni_sqrt;
        probs.push(integrate(integrand, ci - half_width, ci + half_width, spec)?);
    }

    let view = instance.sorted_view();
    // gaps are in sorted order; map back to original arm indices.
    let mut gaps_original = vec![0.0; k];
    for (rank, &arm) in view.perm.iter().enumerate() {
        gaps_original[arm] = view.gaps[rank];
    }
    let regret = probs
        .iter()
        .zip(&gaps_original)
        .map(|(p, g)| p * g)
        .sum::<f64>()
        .max(0.0);
    Ok(PickDistribution { probs, regret })
}

/// Exact rank CDF: entry `i - 1` is the probability the selected arm
/// has sorted rank `>= i`, for `i = 1..=k`. Entry 0 is always 1.
pub fn exact_rank_cdf(
    instance: &BanditInstance,
    policy: &IndexPolicy,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let dist = exact_pick_probabilities(instance, policy, spec)?;
    let view = instance.sorted_view();
    let k = instance.k();
    // Suffix sums over sorted ranks, then clamp to [0, 1] against
    // quadrature round-off; entry 1 is total probability.
    let mut cdf = vec![0.0; k];
    let mut acc = 0.0;
    for rank in (0..k).rev() {
        acc += dist.probs[view.perm[rank]];
        cdf[rank] = acc.clamp(0.0, 1.0);
    }
    cdf[0] = 1.0;
    Ok(cdf)
}

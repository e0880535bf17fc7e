//! Experiment generators and batch runners: the 100-arm logged-data
//! configurations, two-arm gap sweeps, the randomized best-fraction
//! comparison, and the weighted-regret divergence table.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bounds::{divergence_construction, weighted_ratio};
use crate::exact::exact_regret_two_arm;
use crate::instances::BanditInstance;
use crate::policies::{ArmSelector, IndexPolicy};
use crate::sim::{mc_compare, SimConfig};
use crate::{Error, Result};

/// Named 100-arm logged-data configurations. Each splits the budget
/// between a small favored set `S_1` (receiving fraction `π` of the
/// budget per arm) and the remaining arms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HundredArmConfig {
    /// `S_1 = {1}` (the best arm), `π = 0.3`.
    Lcb1,
    /// `S_1 = {10}`, `π = 0.3`.
    Lcb2,
    /// `S_1 = {1}`, `π = 1e-4` (the best arm is almost unobserved).
    Ucb1,
    /// `S_1 = {1..10}`, `π = 1e-4`.
    Ucb2,
}

impl HundredArmConfig {
    pub fn name(self) -> &'static str {
        match self {
            Self::Lcb1 => "lcb1",
            Self::Lcb2 => "lcb2",
            Self::Ucb1 => "ucb1",
            Self::Ucb2 => "ucb2",
        }
    }

    /// 1-based members of the favored set and its per-arm budget share.
    fn favored(self) -> (Vec<usize>, f64) {
        match self {
            Self::Lcb1 => (vec![1], 0.3),
            Self::Lcb2 => (vec![10], 0.3),
            Self::Ucb1 => (vec![1], 1e-4),
            Self::Ucb2 => ((1..=10).collect(), 1e-4),
        }
    }
}

/// Build the 100-arm instance: means `μ_i = 1 - 0.01(i-1)`, counts
/// `π·total_n` per favored arm and the remaining budget split evenly
/// over the rest. Counts stay fractional and are floored at `1e-3`.
pub fn gen_hundred_arm(config: HundredArmConfig, total_n: f64) -> Result<BanditInstance> {
    if !(total_n > 0.0 && total_n.is_finite()) {
        return Err(Error::Domain(format!("total_n must be positive, got {total_n}")));
    }
    const K: usize = 100;
    let means: Vec<f64> = (0..K).map(|i| 1.0 - 0.01 * i as f64).collect();
    let (favored, pi) = config.favored();
    let s1 = favored.len() as f64;
    let rest = total_n * (1.0 - pi * s1) / (K as f64 - s1);
    let mut counts = vec![rest.max(1e-3); K];
    for &arm in &favored {
        counts[arm - 1] = (pi * total_n).max(1e-3);
    }
    BanditInstance::new(means, counts, true)
}

/// Two-arm instances with means `(0, g)` for `g` on a uniform grid.
pub fn gen_two_arm_sweep(
    n1: f64,
    n2: f64,
    grid_lo: f64,
    grid_hi: f64,
    grid_points: usize,
) -> Result<Vec<BanditInstance>> {
    if grid_points < 2 {
        return Err(Error::Domain(format!(
            "grid needs at least 2 points, got {grid_points}"
        )));
    }
    (0..grid_points)
        .map(|i| {
            let g = grid_lo
                + (grid_hi - grid_lo) * i as f64 / (grid_points - 1) as f64;
            BanditInstance::new(vec![0.0, g], vec![n1, n2], false)
        })
        .collect()
}

/// Randomized mean vectors with well/poorly sampled subsets for the
/// best-fraction comparison.
///
/// Base means are evenly spaced over `[1/4, 3/4]` and perturbed by
/// Gaussian noise (unclamped, so instances run in lax mode); each of
/// the `n_mu` mean vectors is paired with every generated size-`m`
/// subset `S` of well-sampled arms (counts 100 inside `S`, 1 outside).
/// All `C(k, m)` subsets are used when there are at most `n_subsets`
/// of them; otherwise `n_subsets` distinct subsets are sampled.
pub fn gen_fraction_batch(
    k: usize,
    m: usize,
    noise_std: f64,
    n_mu: usize,
    n_subsets: usize,
    seed: u64,
) -> Result<Vec<(Vec<f64>, Vec<usize>)>> {
    if k < 2 || m == 0 || m >= k {
        return Err(Error::Domain(format!(
            "fraction batch requires 2 <= k and 1 <= m < k, got k = {k}, m = {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let base: Vec<f64> = (1..=k)
        .map(|i| (i - 1) as f64 / (2.0 * (k - 1) as f64) + 0.25)
        .collect();
    let mean_vectors: Vec<Vec<f64>> = (0..n_mu)
        .map(|_| {
            base.iter()
                .map(|&mu| {
                    let z: f64 = rng.sample(StandardNormal);
                    mu + noise_std * z
                })
                .collect()
        })
        .collect();

    let total = binomial(k, m);
    let subsets: Vec<Vec<usize>> = if total <= n_subsets as u128 {
        let mut all = Vec::new();
        let mut current = Vec::with_capacity(m);
        enumerate_subsets(k, m, 0, &mut current, &mut all);
        all
    } else {
        // Rejection-sample distinct subsets; each draw is a partial
        // Fisher-Yates over arm indices.
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(n_subsets);
        while out.len() < n_subsets {
            let mut pool: Vec<usize> = (0..k).collect();
            for i in 0..m {
                let j = i + rng.random_range(0..pool.len() - i);
                pool.swap(i, j);
            }
            let mut s: Vec<usize> = pool[..m].to_vec();
            s.sort_unstable();
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
        out
    };

    let mut batch = Vec::with_capacity(mean_vectors.len() * subsets.len());
    for means in &mean_vectors {
        for s in &subsets {
            batch.push((means.clone(), s.clone()));
        }
    }
    Ok(batch)
}

fn binomial(k: usize, m: usize) -> u128 {
    let mut v: u128 = 1;
    for i in 0..m.min(k - m) {
        v = v * (k - i) as u128 / (i as u128 + 1);
    }
    v
}

fn enumerate_subsets(
    k: usize,
    m: usize,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == m {
        out.push(current.clone());
        return;
    }
    let remaining = m - current.len();
    for i in start..=k - remaining {
        current.push(i);
        enumerate_subsets(k, m, i + 1, current, out);
        current.pop();
    }
}

/// One best-fraction measurement: how often each rule had the strictly
/// smallest estimated regret within one outer run.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionRow {
    pub k: usize,
    pub m: usize,
    pub run: usize,
    pub alg: &'static str,
    pub best_fraction: f64,
}

impl FractionRow {
    pub const CSV_HEADER: &'static str = "k,m,run,alg,best_fraction";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{}", self.k, self.m, self.run, self.alg, self.best_fraction)
    }
}

/// Run the best-fraction comparison: over randomized instances, award
/// "best" to whichever of greedy / pessimism / optimism has the
/// strictly smallest Monte Carlo regret (ties award nobody), and
/// report per-rule fractions for each outer run.
#[allow(clippy::too_many_arguments)]
pub fn run_fraction(
    k: usize,
    m: usize,
    delta: f64,
    reps: u64,
    outer_runs: usize,
    n_mu: usize,
    n_subsets: usize,
    seed: u64,
) -> Result<Vec<FractionRow>> {
    if outer_runs == 0 {
        return Err(Error::Domain("outer_runs must be >= 1".into()));
    }
    const ALGS: [&str; 3] = ["greedy", "lcb", "ucb"];
    let mut rows = Vec::with_capacity(outer_runs * 3);
    for run in 1..=outer_runs {
        let run_seed = seed.wrapping_add(run as u64);
        let batch = gen_fraction_batch(k, m, 0.05, n_mu, n_subsets, run_seed)?;
        let mut best_counts = [0usize; 3];
        for (idx, (means, subset)) in batch.iter().enumerate() {
            let counts: Vec<f64> = (0..k)
                .map(|i| if subset.contains(&i) { 100.0 } else { 1.0 })
                .collect();
            let instance = BanditInstance::new(means.clone(), counts.clone(), false)?;
            let greedy = IndexPolicy::greedy(k)?;
            let lcb = IndexPolicy::lcb(delta, &counts)?;
            let ucb = IndexPolicy::ucb(delta, &counts)?;
            let policies: [&dyn ArmSelector; 3] = [&greedy, &lcb, &ucb];
            let cfg = SimConfig::new(reps, run_seed.wrapping_add(1 + idx as u64))?;
            let results = mc_compare(&instance, &policies, &cfg)?;
            let regrets: Vec<f64> = results.iter().map(|r| r.mean_regret).collect();
            let min = regrets.iter().cloned().fold(f64::INFINITY, f64::min);
            let winners: Vec<usize> =
                (0..3).filter(|&a| regrets[a] == min).collect();
            if winners.len() == 1 {
                best_counts[winners[0]] += 1;
            }
        }
        for (a, alg) in ALGS.iter().enumerate() {
            rows.push(FractionRow {
                k,
                m,
                run,
                alg,
                best_fraction: best_counts[a] as f64 / batch.len() as f64,
            });
        }
    }
    Ok(rows)
}

/// One row of the weighted-regret divergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceRow {
    pub n1: f64,
    pub delta: f64,
    pub ucb_regret: f64,
    pub greedy_regret: f64,
    pub lcb_regret: f64,
    pub ucb_weighted: f64,
    pub greedy_weighted: f64,
    pub lcb_weighted: f64,
}

impl DivergenceRow {
    pub const CSV_HEADER: &'static str =
        "n1,delta,ucb_regret,greedy_regret,lcb_regret,ucb_weighted,greedy_weighted,lcb_weighted";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n1,
            self.delta,
            self.ucb_regret,
            self.greedy_regret,
            self.lcb_regret,
            self.ucb_weighted,
            self.greedy_weighted,
            self.lcb_weighted
        )
    }
}

/// Exact regrets and weighted-regret diagnostics on the divergence
/// sequence: optimism and greedy keep constant regret while the
/// optimal arm's count grows, so their weighted regret diverges.
pub fn run_divergence(n1_list: &[f64]) -> Result<Vec<DivergenceRow>> {
    n1_list
        .iter()
        .map(|&n1| {
            let (instance, delta) = divergence_construction(n1)?;
            let counts = instance.counts();
            let regret_of = |policy: &IndexPolicy| -> Result<f64> {
                exact_regret_two_arm(&instance, policy.two_arm_threshold()?)
            };
            let ucb = regret_of(&IndexPolicy::ucb(delta, counts)?)?;
            let greedy = regret_of(&IndexPolicy::greedy(2)?)?;
            let lcb = regret_of(&IndexPolicy::lcb(delta, counts)?)?;
            Ok(DivergenceRow {
                n1,
                delta,
                ucb_regret: ucb,
                greedy_regret: greedy,
                lcb_regret: lcb,
                ucb_weighted: weighted_ratio(ucb, &instance)?,
                greedy_weighted: weighted_ratio(greedy, &instance)?,
                lcb_weighted: weighted_ratio(lcb, &instance)?,
            })
        })
        .collect()
}

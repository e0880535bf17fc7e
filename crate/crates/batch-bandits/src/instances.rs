//! Problem instances, gap/ordering views and sufficient-statistic sampling.
//!
//! A problem instance is a vector of true arm means together with the
//! per-arm observation counts of the logged dataset. Counts are positive
//! reals rather than integers: every rule in this crate is a function of
//! the sufficient statistic `(μ̂, n)`, which is well defined for
//! fractional counts, and the experiment generators produce them.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Deserialize;

use crate::{Error, Result};

/// A 1-based arm index in `[1, k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArmIndex(usize);

impl ArmIndex {
    pub fn new(value: usize, k: usize) -> Result<Self> {
        if value == 0 || value > k {
            return Err(Error::Domain(format!("arm index {value} outside [1, {k}]")));
        }
        Ok(Self(value))
    }

    pub(crate) fn from_zero_based(i: usize) -> Self {
        Self(i + 1)
    }

    /// 1-based value.
    pub fn get(self) -> usize {
        self.0
    }

    /// 0-based position, for slice indexing.
    pub fn zero_based(self) -> usize {
        self.0 - 1
    }
}

/// A bandit problem instance: true means and logging counts.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    means: Vec<f64>,
    counts: Vec<f64>,
}

/// On-disk instance format. Unknown fields are rejected.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    means: Vec<f64>,
    counts: Vec<f64>,
    #[serde(default = "default_strict")]
    strict: bool,
}

fn default_strict() -> bool {
    true
}

impl BanditInstance {
    /// Validate and build an instance.
    ///
    /// Strict mode additionally requires all means to lie in `[0, 1]`;
    /// experiment generators that sweep or perturb means use lax mode.
    pub fn new(means: Vec<f64>, counts: Vec<f64>, strict: bool) -> Result<Self> {
        if means.len() != counts.len() {
            return Err(Error::LengthMismatch {
                expected: means.len(),
                got: counts.len(),
            });
        }
        if means.len() < 2 {
            return Err(Error::TooFewArms { k: means.len() });
        }
        for (i, &m) in means.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::NonFiniteEntry { what: "mean", arm: i + 1 });
            }
            if strict && !(0.0..=1.0).contains(&m) {
                return Err(Error::MeanOutOfRange { arm: i + 1, value: m });
            }
        }
        for (i, &n) in counts.iter().enumerate() {
            if !n.is_finite() {
                return Err(Error::NonFiniteEntry { what: "count", arm: i + 1 });
            }
            if n <= 0.0 {
                return Err(Error::NonPositiveCount { arm: i + 1, value: n });
            }
        }
        Ok(Self { means, counts })
    }

    /// Parse the JSON instance format
    /// `{"means": [...], "counts": [...], "strict": bool?}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)
            .map_err(|e| Error::Domain(format!("invalid instance JSON: {e}")))?;
        Self::new(file.means, file.counts, file.strict)
    }

    pub fn k(&self) -> usize {
        self.means.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn min_count(&self) -> f64 {
        self.counts.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn total_count(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// Draw the sufficient statistic: `μ̂_i ~ N(μ_i, 1/n_i)` independently.
    pub fn sample_stats<R: Rng + ?Sized>(&self, rng: &mut R) -> LoggedStats {
        let emp_means = self
            .means
            .iter()
            .zip(&self.counts)
            .map(|(&mu, &n)| {
                let z: f64 = rng.sample(StandardNormal);
                mu + z / n.sqrt()
            })
            .collect();
        LoggedStats {
            emp_means,
            counts: self.counts.clone(),
        }
    }

    /// Nonincreasing-mean ordering with gaps; ties keep the original
    /// arm order (stable sort).
    pub fn sorted_view(&self) -> SortedView {
        let k = self.k();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.sort_by(|&a, &b| self.means[b].total_cmp(&self.means[a]).then(a.cmp(&b)));
        let best = self.means[perm[0]];
        let gaps: Vec<f64> = perm.iter().map(|&i| best - self.means[i]).collect();
        let delta_min = gaps
            .iter()
            .cloned()
            .filter(|&g| g > 0.0)
            .fold(f64::INFINITY, f64::min);
        SortedView {
            optimal_arm: ArmIndex::from_zero_based(perm[0]),
            delta_max: gaps[k - 1],
            delta_min: if delta_min.is_finite() { delta_min } else { 0.0 },
            perm,
            gaps,
        }
    }
}

/// Arms ordered by nonincreasing true mean.
///
/// `perm[r]` is the 0-based original arm at sorted rank `r + 1`;
/// `gaps[r]` is the suboptimality gap of that arm, so `gaps[0] == 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedView {
    pub perm: Vec<usize>,
    pub gaps: Vec<f64>,
    pub delta_max: f64,
    /// Smallest strictly positive gap, 0 when all means are equal.
    pub delta_min: f64,
    pub optimal_arm: ArmIndex,
}

/// Logged sufficient statistic: per-arm empirical means with counts.
#[derive(Debug, Clone, PartialEq)]
pub struct LoggedStats {
    emp_means: Vec<f64>,
    counts: Vec<f64>,
}

impl LoggedStats {
    pub fn new(emp_means: Vec<f64>, counts: Vec<f64>) -> Result<Self> {
        if emp_means.len() != counts.len() {
            return Err(Error::LengthMismatch {
                expected: emp_means.len(),
                got: counts.len(),
            });
        }
        for (i, &m) in emp_means.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::NonFiniteEntry { what: "empirical mean", arm: i + 1 });
            }
        }
        for (i, &n) in counts.iter().enumerate() {
            if !n.is_finite() {
                return Err(Error::NonFiniteEntry { what: "count", arm: i + 1 });
            }
            if n <= 0.0 {
                return Err(Error::NonPositiveCount { arm: i + 1, value: n });
            }
        }
        Ok(Self { emp_means, counts })
    }

    pub fn k(&self) -> usize {
        self.emp_means.len()
    }

    pub fn emp_means(&self) -> &[f64] {
        &self.emp_means
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }
}

/// The simultaneous-confidence radius multiplier `β_δ = sqrt(2 ln(k/δ))`.
///
/// Natural logarithm; `δ = k` gives exactly 0.
pub fn beta_delta(k: usize, delta: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("beta_delta requires k >= 1".into()));
    }
    let kf = k as f64;
    if !(delta > 0.0 && delta <= kf) {
        return Err(Error::Domain(format!(
            "beta_delta requires 0 < delta <= k, got delta = {delta}, k = {k}"
        )));
    }
    Ok((2.0 * (kf / delta).ln()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validation_modes() {
        assert!(BanditInstance::new(vec![0.6, 0.4], vec![10.0, 10.0], true).is_ok());
        assert_eq!(
            BanditInstance::new(vec![0.6], vec![10.0, 10.0], true),
            Err(Error::LengthMismatch { expected: 1, got: 2 })
        );
        assert_eq!(
            BanditInstance::new(vec![1.2, 0.4], vec![1.0, 1.0], true),
            Err(Error::MeanOutOfRange { arm: 1, value: 1.2 })
        );
        assert!(BanditInstance::new(vec![1.2, 0.4], vec![1.0, 1.0], false).is_ok());
        assert_eq!(
            BanditInstance::new(vec![0.5], vec![1.0], true),
            Err(Error::TooFewArms { k: 1 })
        );
        assert_eq!(
            BanditInstance::new(vec![0.5, 0.5], vec![1.0, 0.0], true),
            Err(Error::NonPositiveCount { arm: 2, value: 0.0 })
        );
        assert_eq!(
            BanditInstance::new(vec![0.5, f64::NAN], vec![1.0, 1.0], false),
            Err(Error::NonFiniteEntry { what: "mean", arm: 2 })
        );
    }

    #[test]
    fn json_rejects_unknown_fields() {
        assert!(BanditInstance::from_json(r#"{"means":[0.6,0.4],"counts":[10,10]}"#).is_ok());
        assert!(BanditInstance::from_json(
            r#"{"means":[0.6,0.4],"counts":[10,10],"extra":1}"#
        )
        .is_err());
        let lax =
            BanditInstance::from_json(r#"{"means":[1.2,0.4],"counts":[1,1],"strict":false}"#);
        assert!(lax.is_ok());
    }

    #[test]
    fn sorted_view_basics() {
        let inst = BanditInstance::new(vec![0.4, 0.6], vec![1.0, 1.0], true).unwrap();
        let view = inst.sorted_view();
        assert_eq!(view.perm, vec![1, 0]);
        assert!((view.gaps[1] - 0.2).abs() < 1e-15);
        assert_eq!(view.optimal_arm.get(), 2);

        let tie = BanditInstance::new(vec![0.5, 0.5], vec![1.0, 1.0], true).unwrap();
        let view = tie.sorted_view();
        assert_eq!(view.perm, vec![0, 1]);
        assert_eq!(view.delta_min, 0.0);
    }

    #[test]
    fn sorted_view_hundred_arm_grid() {
        let means: Vec<f64> = (0..100).map(|i| 1.0 - 0.01 * i as f64).collect();
        let inst = BanditInstance::new(means, vec![1.0; 100], true).unwrap();
        let view = inst.sorted_view();
        assert_eq!(view.perm, (0..100).collect::<Vec<_>>());
        for (i, &g) in view.gaps.iter().enumerate() {
            assert!((g - 0.01 * i as f64).abs() < 1e-12);
        }
        assert!((view.delta_max - 0.99).abs() < 1e-12);
    }

    #[test]
    fn beta_delta_values() {
        assert_eq!(beta_delta(2, 2.0).unwrap(), 0.0);
        assert!((beta_delta(100, 0.01).unwrap() - 4.291_932_052_578_694).abs() < 1e-12);
        assert!((beta_delta(2, 0.5).unwrap() - 1.665_109_222_315_395_5).abs() < 1e-12);
        assert!(beta_delta(2, 0.0).is_err());
        assert!(beta_delta(2, 2.5).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_tight() {
        let inst =
            BanditInstance::new(vec![0.6, 0.4], vec![1e12, 1e12], true).unwrap();
        let a = inst.sample_stats(&mut ChaCha8Rng::seed_from_u64(7));
        let b = inst.sample_stats(&mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
        for (e, m) in a.emp_means().iter().zip(inst.means()) {
            assert!((e - m).abs() < 1e-5);
        }
    }

    #[test]
    fn sampling_variance_matches_model() {
        // 1e5 standard normals: sample variance within the 99.9% band.
        let inst = BanditInstance::new(vec![0.0, 0.0], vec![1.0, 1.0], true).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let draws: Vec<f64> = (0..100_000)
            .map(|_| inst.sample_stats(&mut rng).emp_means()[0])
            .collect();
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        let var = draws.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
            / (draws.len() - 1) as f64;
        assert!((0.985..=1.015).contains(&var), "sample variance {var}");
    }

    proptest! {
        #[test]
        fn gaps_are_shift_invariant(
            means in proptest::collection::vec(-1.0f64..1.0, 2..8),
            shift in -5.0f64..5.0,
        ) {
            let counts = vec![1.0; means.len()];
            let a = BanditInstance::new(means.clone(), counts.clone(), false).unwrap();
            let shifted: Vec<f64> = means.iter().map(|m| m + shift).collect();
            let b = BanditInstance::new(shifted, counts, false).unwrap();
            let (va, vb) = (a.sorted_view(), b.sorted_view());
            prop_assert_eq!(va.perm, vb.perm);
            for (ga, gb) in va.gaps.iter().zip(&vb.gaps) {
                prop_assert!((ga - gb).abs() < 1e-12);
            }
        }

        #[test]
        fn sorted_view_is_idempotent(
            means in proptest::collection::vec(0.0f64..1.0, 2..8),
        ) {
            let counts = vec![1.0; means.len()];
            let inst = BanditInstance::new(means.clone(), counts.clone(), true).unwrap();
            let view = inst.sorted_view();
            let sorted_means: Vec<f64> = view.perm.iter().map(|&i| means[i]).collect();
            let resorted = BanditInstance::new(sorted_means, counts, true).unwrap();
            prop_assert_eq!(
                resorted.sorted_view().perm,
                (0..means.len()).collect::<Vec<_>>()
            );
        }
    }
}

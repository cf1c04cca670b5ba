//! Seeded generation of random claims problems and axiom instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::problem::ClaimsProblem;
use crate::ratio::Ratio;

/// Restriction on which generated problems are kept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemFilter {
    #[default]
    Any,
    /// `c_1 < e / n`.
    SmallestBelowEqualShare,
    /// `c_1 >= e / n`.
    SmallestAtLeastEqualShare,
}

impl ProblemFilter {
    pub fn accepts(self, p: &ClaimsProblem) -> bool {
        let share = p.estate() / Ratio::from(p.agents());
        match self {
            ProblemFilter::Any => true,
            ProblemFilter::SmallestBelowEqualShare => p.smallest_claim() < &share,
            ProblemFilter::SmallestAtLeastEqualShare => p.smallest_claim() >= &share,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    /// Number of random problems.
    pub trials: usize,
    /// Instances (subsets, reallocations, second estates, ...) drawn per problem.
    pub samples_per_problem: usize,
    pub min_agents: usize,
    pub max_agents: usize,
    /// Claims are drawn as `k / d` with `d` from a small set and `k / d <= max_claim`.
    pub max_claim: u32,
    /// Probability that a claim copies an earlier one (plants equal claims).
    pub duplicate_rate: f64,
    /// Probability of a zero claim, for rules that accept them.
    pub zero_claim_rate: f64,
    pub filter: ProblemFilter,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            trials: 200,
            samples_per_problem: 20,
            min_agents: 2,
            max_agents: 8,
            max_claim: 100,
            duplicate_rate: 0.25,
            zero_claim_rate: 0.05,
            filter: ProblemFilter::Any,
        }
    }
}

const DENOMINATORS: [u32; 6] = [1, 1, 2, 4, 5, 10];

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig { seed, ..Default::default() }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn samples(mut self, samples: usize) -> Self {
        self.samples_per_problem = samples;
        self
    }

    pub fn agents(mut self, min: usize, max: usize) -> Self {
        self.min_agents = min;
        self.max_agents = max;
        self
    }

    pub fn filter(mut self, filter: ProblemFilter) -> Self {
        self.filter = filter;
        self
    }

    /// Independent stream for trial `index`; identical for every schedule.
    pub fn trial_rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    /// A random claims problem with `0 < e < c_N`. Gives up after a bounded
    /// number of attempts if the filter keeps rejecting.
    pub fn random_problem<R: Rng>(&self, rng: &mut R, positive_claims: bool) -> Option<ClaimsProblem> {
        for _ in 0..256 {
            let n = rng.random_range(self.min_agents.max(1)..=self.max_agents.max(self.min_agents).max(1));
            let mut claims: Vec<Ratio> = Vec::with_capacity(n);
            for _ in 0..n {
                if !claims.is_empty() && rng.random_bool(self.duplicate_rate) {
                    let copy = claims[rng.random_range(0..claims.len())].clone();
                    claims.push(copy);
                } else if !positive_claims && rng.random_bool(self.zero_claim_rate) {
                    claims.push(Ratio::zero());
                } else {
                    claims.push(random_claim(rng, self.max_claim));
                }
            }
            let total: Ratio = claims.iter().sum();
            if total.is_zero() {
                continue;
            }
            let estate = total * random_unit_fraction(rng);
            let Ok(p) = ClaimsProblem::new(claims, estate) else { continue };
            if self.filter.accepts(&p) {
                return Some(p);
            }
        }
        None
    }
}

pub(crate) fn random_claim<R: Rng>(rng: &mut R, max_claim: u32) -> Ratio {
    let d = DENOMINATORS[rng.random_range(0..DENOMINATORS.len())];
    let k = rng.random_range(1..=max_claim.max(1) * d);
    Ratio::frac(k as i64, d as i64)
}

/// Uniform rational in the open interval (0, 1).
pub(crate) fn random_unit_fraction<R: Rng>(rng: &mut R) -> Ratio {
    let d: i64 = rng.random_range(2..=64);
    let j: i64 = rng.random_range(1..d);
    Ratio::frac(j, d)
}

/// Uniform rational strictly between `lo` and `hi`.
pub(crate) fn random_between<R: Rng>(rng: &mut R, lo: &Ratio, hi: &Ratio) -> Ratio {
    lo + (hi - lo) * random_unit_fraction(rng)
}

/// Random subset of `pool` with size in `min_size..=max_size`, returned sorted.
pub(crate) fn random_subset<R: Rng>(rng: &mut R, pool: &[usize], min_size: usize, max_size: usize) -> Option<Vec<usize>> {
    let max_size = max_size.min(pool.len());
    if min_size > max_size {
        return None;
    }
    let size = rng.random_range(min_size..=max_size);
    let mut items = pool.to_vec();
    items.shuffle(rng);
    items.truncate(size);
    items.sort_unstable();
    Some(items)
}

pub(crate) fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Splits `slack >= 0` over `k` slots with random exchangeable weights. Zero
/// weights are allowed so boundary reallocations (a slot left at zero) occur.
pub(crate) fn random_split<R: Rng>(rng: &mut R, slack: &Ratio, k: usize) -> Vec<Ratio> {
    loop {
        let weights: Vec<i64> = (0..k).map(|_| rng.random_range(0..=12)).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            continue;
        }
        let total = Ratio::from(total);
        return weights.into_iter().map(|w| slack * Ratio::from(w) / &total).collect();
    }
}

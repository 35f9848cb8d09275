//! Exact oracles and approximate counters for the number of bases.

mod anneal;
mod exact;
mod telescope;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::stats::Summary;
use crate::table::derive_seed;

pub use anneal::{anneal_run, count_fpras_anneal, AnnealRun, AnnealSchedule, LevelRatio, Stage};
pub use exact::{
    configuration_at, configuration_weights, cycle_census, enumerate_bases,
    exact_expected_resamples, exact_partition_function, ENUMERATION_LIMIT,
};
pub use telescope::{
    build_deletion_sequence, count_fpras_telescope, telescope_run, telescope_samples_per_ratio,
    DeletionSequence, TelescopeRun,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Exact,
    Telescope,
    Anneal,
}

impl std::str::FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(CountMethod::Exact),
            "telescope" => Ok(CountMethod::Telescope),
            "anneal" => Ok(CountMethod::Anneal),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountEstimate {
    pub estimate: f64,
    pub epsilon: f64,
    /// Guaranteed probability that the estimate is within a factor
    /// `1 +- epsilon` of the truth.
    #[serde(skip)]
    pub success_prob: f64,
    pub method: CountMethod,
    /// Number of sampler invocations.
    #[serde(rename = "samples")]
    pub samples_used: u64,
    pub seed: u64,
}

/// A ratio estimated as a sample mean.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub samples: u64,
}

impl RatioEstimate {
    pub(crate) fn from_summary(s: &Summary) -> Self {
        RatioEstimate { mean: s.mean, std_err: s.std_err(), samples: s.count }
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon = {epsilon} not in (0, 1)")))
    }
}

/// Exact number of bases by enumeration.
pub fn count_exact(g: &Graph) -> Result<CountEstimate> {
    let count = enumerate_bases(g)?.len();
    Ok(CountEstimate {
        estimate: count as f64,
        epsilon: 0.0,
        success_prob: 1.0,
        method: CountMethod::Exact,
        samples_used: 0,
        seed: 0,
    })
}

/// Median of `repeats` independent runs of `count`, run `r` using master
/// seed `derive_seed(seed, [r])`. One repeat is the plain estimator.
pub fn median_of<F>(repeats: usize, seed: u64, count: F) -> Result<CountEstimate>
where
    F: Fn(u64) -> Result<CountEstimate>,
{
    if repeats <= 1 {
        return count(seed);
    }
    let mut runs = (0..repeats)
        .map(|r| count(derive_seed(seed, &[r as u64])))
        .collect::<Result<Vec<_>>>()?;
    let samples = runs.iter().map(|r| r.samples_used).sum();
    runs.sort_by(|a, b| a.estimate.total_cmp(&b.estimate));
    let mut median = runs.swap_remove(repeats / 2);
    median.samples_used = samples;
    median.seed = seed;
    Ok(median)
}

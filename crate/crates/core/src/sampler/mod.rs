//! Bicycle-popping samplers.
//!
//! Both engines draw every arrow from a [`ResamplingTable`], so a run is a
//! deterministic function of `(graph, seed, variant)`. For the orientation
//! variant the parallel engine and the loop-erasing walk consume exactly
//! the same table entries and stop in the same state.

pub(crate) mod lerw;
mod parallel;

use serde::Serialize;

use crate::arrows::{ArrowConfig, GibbsParams, Variant};
use crate::error::Result;
use crate::graph::{validate_bicircular_instance, Basis, Graph};
use crate::table::ResamplingTable;

pub use lerw::{sample_lerw, sample_sign_blind};
pub use parallel::sample_parallel;

/// What a sampler run returns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleOutcome {
    Basis(Basis),
    Arrows(ArrowConfig),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    #[serde(flatten)]
    pub outcome: SampleOutcome,
    /// Redraws, not counting each arrow's first draw.
    pub resampled: u64,
    /// All arrow draws; always `n + resampled`.
    pub steps: u64,
    pub seed: u64,
    /// Terminal arrow configuration.
    #[serde(skip)]
    pub arrows: ArrowConfig,
}

impl SampleReport {
    pub fn basis(&self) -> Option<&Basis> {
        match &self.outcome {
            SampleOutcome::Basis(b) => Some(b),
            SampleOutcome::Arrows(_) => None,
        }
    }
}

/// Internal cycle-judging rule; `SignBlind` exists only as a biased
/// negative control.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Rule {
    Orientation,
    SignBlind,
    Gibbs(GibbsParams),
}

impl From<Variant> for Rule {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Orientation => Rule::Orientation,
            Variant::Gibbs(p) => Rule::Gibbs(p),
        }
    }
}

fn outcome(g: &Graph, rule: Rule, heads: Vec<usize>) -> (SampleOutcome, ArrowConfig) {
    let arrows = ArrowConfig::from_heads_unchecked(heads);
    let out = match rule {
        Rule::Gibbs(_) => SampleOutcome::Arrows(arrows.clone()),
        Rule::Orientation | Rule::SignBlind => {
            let support = crate::graph::arrow_support(g, &arrows);
            debug_assert!(rule == Rule::SignBlind || crate::graph::is_basis(g, &support));
            SampleOutcome::Basis(Basis::from_sorted_unchecked(support))
        }
    };
    (out, arrows)
}

/// A uniform basis via the loop-erasing walk with the orientation rule.
pub fn sample_basis(g: &Graph, seed: u64) -> Result<SampleReport> {
    validate_bicircular_instance(g)?;
    let mut table = ResamplingTable::new(seed, g.n());
    Ok(lerw::run(g, &mut table, Rule::Orientation))
}

/// A configuration from the Gibbs distribution via the loop-erasing walk.
pub fn sample_gibbs(g: &Graph, params: GibbsParams, seed: u64) -> Result<SampleReport> {
    validate_bicircular_instance(g)?;
    let mut table = ResamplingTable::new(seed, g.n());
    Ok(lerw::run(g, &mut table, Rule::Gibbs(params)))
}

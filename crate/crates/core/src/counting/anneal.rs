//! Counting by two-stage annealing over the Gibbs family.
//!
//! Starting from `Z(1, 1) = prod deg(v)`:
//!
//! * stage one lowers the 2-cycle weight `gamma2 = exp(-beta)` with
//!   `gamma = 1` from `beta = 0` to `ln(2 n^2)`, then jumps to
//!   `gamma2 = 0` using `Pr[no 2-cycle]`, which is at least 1/2 there;
//! * stage two keeps `gamma2 = 0` and lowers `gamma = exp(-beta)` from 1
//!   to 1/2, where `Z(0, 1/2)` is the number of bases.
//!
//! Each level ratio `Z(beta') / Z(beta) = E_beta[exp(-(beta' - beta) H)]`
//! is a sample mean over Gibbs samples at `beta`. Grid spacing keeps
//! `(beta' - beta) H <= 1`, so every ratio is at least `1/e`.

use serde::Serialize;

use super::{check_epsilon, CountEstimate, CountMethod, RatioEstimate};
use crate::arrows::GibbsParams;
use crate::error::Result;
use crate::exec::Execution;
use crate::graph::{validate_bicircular_instance, Graph};
use crate::sampler::{lerw, Rule};
use crate::stats::Summary;
use crate::table::{derive_seed, ResamplingTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    /// Hamiltonian = number of 2-cycles, `gamma = 1`.
    One,
    /// Hamiltonian = number of longer cycles, `gamma2 = 0`.
    Two,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnealSchedule {
    pub stage: Stage,
    /// Increasing inverse temperatures, starting at 0.
    pub betas: Vec<f64>,
    pub samples_per_level: u64,
}

impl AnnealSchedule {
    /// Stage one: `beta` in `[0, ln(2 n^2)]` with spacing at most `2/n`,
    /// followed by the jump to `gamma2 = 0`.
    pub fn stage_one(n: usize, epsilon: f64) -> AnnealSchedule {
        let top = (2.0 * (n * n) as f64).ln();
        let levels = (top * n as f64 / 2.0).ceil().max(1.0) as usize;
        // ratios: one per grid step plus the terminal jump
        Self::uniform(Stage::One, top, levels, levels + 1, epsilon)
    }

    /// Stage two: `beta` in `[0, ln 2]` with spacing at most `3/n`.
    pub fn stage_two(n: usize, epsilon: f64) -> AnnealSchedule {
        let top = std::f64::consts::LN_2;
        let levels = (top * n as f64 / 3.0).ceil().max(1.0) as usize;
        Self::uniform(Stage::Two, top, levels, levels, epsilon)
    }

    fn uniform(stage: Stage, top: f64, levels: usize, ratios: usize, epsilon: f64) -> Self {
        let mut betas: Vec<f64> = (0..=levels).map(|k| top * k as f64 / levels as f64).collect();
        betas[levels] = top;
        let samples_per_level = (32.0 * ratios as f64 / (epsilon * epsilon)).ceil() as u64;
        AnnealSchedule { stage, betas, samples_per_level }
    }

    fn params(&self, beta: f64) -> GibbsParams {
        let w = (-beta).exp();
        match self.stage {
            Stage::One => GibbsParams::new(w, 1.0),
            Stage::Two => GibbsParams::new(0.0, w),
        }
        .expect("exp(-beta) lies in (0, 1] for beta >= 0")
    }

    fn hamiltonian(&self, counts: (usize, usize)) -> usize {
        match self.stage {
            Stage::One => counts.0,
            Stage::Two => counts.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelRatio {
    pub stage: Stage,
    pub beta: f64,
    /// `None` for the stage-one jump to `gamma2 = 0`.
    pub next_beta: Option<f64>,
    pub ratio: RatioEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnealRun {
    pub estimate: CountEstimate,
    /// Natural log of the estimate; finite even when the estimate overflows.
    pub log_estimate: f64,
    pub levels: Vec<LevelRatio>,
    pub schedules: [AnnealSchedule; 2],
}

impl AnnealRun {
    /// Estimate of `Z(1,1) / Z(0,1)`.
    pub fn stage_one_quotient(&self) -> f64 {
        self.quotient(Stage::One)
    }

    /// Estimate of `Z(0,1) / Z(0,1/2)`.
    pub fn stage_two_quotient(&self) -> f64 {
        self.quotient(Stage::Two)
    }

    fn quotient(&self, stage: Stage) -> f64 {
        let log: f64 =
            self.levels.iter().filter(|l| l.stage == stage).map(|l| l.ratio.mean.ln()).sum();
        (-log).exp()
    }
}

pub fn count_fpras_anneal(g: &Graph, epsilon: f64, seed: u64) -> Result<CountEstimate> {
    anneal_run(g, epsilon, seed, Execution::default()).map(|r| r.estimate)
}

/// Runs both annealing stages and keeps every level ratio.
///
/// Sample `j` at level `k` of stage `s` uses table seed
/// `derive_seed(seed, [s, k, j])`.
pub fn anneal_run(g: &Graph, epsilon: f64, seed: u64, exec: Execution) -> Result<AnnealRun> {
    check_epsilon(epsilon)?;
    validate_bicircular_instance(g)?;
    let n = g.n();
    let schedules = [AnnealSchedule::stage_one(n, epsilon), AnnealSchedule::stage_two(n, epsilon)];
    let mut levels = Vec::new();
    let mut samples = 0u64;
    for (s, sched) in schedules.iter().enumerate() {
        let count = sched.samples_per_level as usize;
        let grid = sched.betas.len() - 1;
        let jumps = if sched.stage == Stage::One { grid + 1 } else { grid };
        for k in 0..jumps {
            let beta = sched.betas[k.min(grid)];
            let next_beta = (k < grid).then(|| sched.betas[k + 1]);
            let rule = Rule::Gibbs(sched.params(beta));
            let values = exec.map(count, |j| {
                let seed = derive_seed(seed, &[s as u64, k as u64, j as u64]);
                let mut table = ResamplingTable::new(seed, n);
                let report = lerw::run(g, &mut table, rule);
                let h = sched.hamiltonian(report.arrows.cycle_counts());
                match next_beta {
                    Some(next) => (-(next - beta) * h as f64).exp(),
                    None => f64::from(u8::from(h == 0)),
                }
            });
            samples += count as u64;
            let summary = Summary::of(values);
            levels.push(LevelRatio {
                stage: sched.stage,
                beta,
                next_beta,
                ratio: RatioEstimate::from_summary(&summary),
            });
        }
    }
    let log_z11: f64 = (0..n).map(|v| (g.degree(v) as f64).ln()).sum();
    let log_estimate = log_z11 + levels.iter().map(|l| l.ratio.mean.ln()).sum::<f64>();
    Ok(AnnealRun {
        estimate: CountEstimate {
            estimate: log_estimate.exp(),
            epsilon,
            success_prob: 0.75,
            method: CountMethod::Anneal,
            samples_used: samples,
            seed,
        },
        log_estimate,
        levels,
        schedules,
    })
}

//! Counting by edge-deletion self-reduction.
//!
//! Along `G = G_m, G_{m-1}, ..., G_n` (each step deletes one edge `e_i`,
//! and `G_n` is itself a basis) we have
//! `1 / N(G) = prod_i N(G_{i-1}) / N(G_i)`, and each factor is the
//! probability that a uniform basis of `G_i` avoids `e_i`.

use serde::Serialize;

use super::{check_epsilon, CountEstimate, CountMethod, RatioEstimate};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{is_basis, validate_bicircular_instance, Graph};
use crate::sampler::{lerw, Rule};
use crate::stats::Summary;
use crate::table::{derive_seed, ResamplingTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionSequence {
    /// A connected spanning unicyclic edge set: a spanning tree plus one
    /// edge.
    pub base_edges: Vec<usize>,
    /// Edges outside `base_edges`, in the order they are deleted
    /// (`e_m` first, descending edge id).
    pub removal_order: Vec<usize>,
}

impl DeletionSequence {
    /// Edge ids of `G_i` after the first `k` deletions.
    pub fn prefix_edges(&self, g: &Graph, k: usize) -> Vec<usize> {
        let removed = &self.removal_order[..k];
        (0..g.m()).filter(|e| !removed.contains(e)).collect()
    }
}

/// Depth-first spanning tree from vertex 0 (neighbors in id order) plus
/// the lowest-indexed non-tree edge; everything else is deleted from the
/// highest id down.
pub fn build_deletion_sequence(g: &Graph) -> Result<DeletionSequence> {
    validate_bicircular_instance(g)?;
    let n = g.n();
    let mut in_tree = vec![false; g.m()];
    let mut seen = vec![false; n];
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    seen[0] = true;
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        if i == g.degree(v) {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let w = g.neighbors(v)[i];
        if !seen[w] {
            seen[w] = true;
            in_tree[g.incident_edges(v)[i]] = true;
            stack.push((w, 0));
        }
    }
    let extra = (0..g.m()).find(|&e| !in_tree[e]).expect("m >= n leaves a non-tree edge");
    in_tree[extra] = true;
    let base_edges: Vec<usize> = (0..g.m()).filter(|&e| in_tree[e]).collect();
    debug_assert!(is_basis(g, &base_edges));
    let removal_order = (0..g.m()).rev().filter(|&e| !in_tree[e]).collect();
    Ok(DeletionSequence { base_edges, removal_order })
}

/// Samples per ratio: `ceil(40 n m / epsilon^2)`.
pub fn telescope_samples_per_ratio(n: usize, m: usize, epsilon: f64) -> u64 {
    (40.0 * n as f64 * m as f64 / (epsilon * epsilon)).ceil() as u64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TelescopeRun {
    pub estimate: CountEstimate,
    /// One entry per deletion, in deletion order.
    pub ratios: Vec<RatioEstimate>,
}

pub fn count_fpras_telescope(g: &Graph, epsilon: f64, seed: u64) -> Result<CountEstimate> {
    telescope_run(g, epsilon, seed, Execution::default()).map(|r| r.estimate)
}

/// Runs the telescoping estimator and keeps every per-deletion ratio.
///
/// Sample `j` of ratio `k` uses table seed `derive_seed(seed, [k, j])`.
pub fn telescope_run(g: &Graph, epsilon: f64, seed: u64, exec: Execution) -> Result<TelescopeRun> {
    check_epsilon(epsilon)?;
    let seq = build_deletion_sequence(g)?;
    let t = telescope_samples_per_ratio(g.n(), g.m(), epsilon);
    let mut ratios = Vec::with_capacity(seq.removal_order.len());
    let mut log_product = 0.0;
    for (k, &edge) in seq.removal_order.iter().enumerate() {
        let (sub, ids) = g.spanning_subgraph(&seq.prefix_edges(g, k));
        let target = ids.binary_search(&edge).expect("edge still present");
        let hits = exec.map(t as usize, |j| {
            let mut table = ResamplingTable::new(derive_seed(seed, &[k as u64, j as u64]), sub.n());
            let report = lerw::run(&sub, &mut table, Rule::Orientation);
            let basis = report.basis().expect("orientation rule yields a basis");
            !basis.contains(target)
        });
        let summary = Summary::of(hits.iter().map(|&h| if h { 1.0 } else { 0.0 }));
        if summary.mean == 0.0 {
            return Err(Error::ZeroRatio { step: k, edge });
        }
        log_product += summary.mean.ln();
        ratios.push(RatioEstimate::from_summary(&summary));
    }
    let samples = t * seq.removal_order.len() as u64;
    Ok(TelescopeRun {
        estimate: CountEstimate {
            estimate: (-log_product).exp(),
            epsilon,
            success_prob: 0.75,
            method: CountMethod::Telescope,
            samples_used: samples,
            seed,
        },
        ratios,
    })
}

//! Loop-erasing random walk implementation of bicycle popping.
//!
//! Walks start at the lowest unfixed vertex and follow arrows drawn from
//! the table. When the walk closes a cycle at an earlier walk vertex `w`,
//! the cycle is either accepted (every walk vertex becomes fixed) or
//! erased: its arrows are unset and the walk resumes at `w`. Reaching a
//! fixed vertex also fixes the walk. Expected cost is O(n^2).

use super::{outcome, Rule, SampleReport};
use crate::arrows::{coin_rejects, Variant};
use crate::error::Result;
use crate::graph::{closed_walk_sign, validate_bicircular_instance, Graph};
use crate::table::ResamplingTable;

const OFF_WALK: usize = usize::MAX;

/// Runs the loop-erasing walk sampler on `table`.
///
/// With [`Variant::Orientation`] this produces the same output and the
/// same resample count as [`super::sample_parallel`] on an identical table.
pub fn sample_lerw(g: &Graph, table: &mut ResamplingTable, variant: Variant) -> Result<SampleReport> {
    validate_bicircular_instance(g)?;
    Ok(run(g, table, variant.into()))
}

/// Deliberately biased sampler for negative-control testing: it pops
/// 2-cycles but accepts every longer cycle whatever its orientation, so a
/// basis is returned with probability proportional to `2^components`.
pub fn sample_sign_blind(g: &Graph, seed: u64) -> Result<SampleReport> {
    validate_bicircular_instance(g)?;
    let mut table = ResamplingTable::new(seed, g.n());
    Ok(run(g, &mut table, Rule::SignBlind))
}

pub(crate) fn run(g: &Graph, table: &mut ResamplingTable, rule: Rule) -> SampleReport {
    let n = g.n();
    let mut heads = vec![usize::MAX; n];
    let mut fixed = vec![false; n];
    // position of each vertex in the current walk, or OFF_WALK
    let mut pos = vec![OFF_WALK; n];
    let mut walk: Vec<usize> = Vec::with_capacity(n);
    let mut walk_edges: Vec<usize> = Vec::with_capacity(n);
    let mut resampled = 0u64;
    let mut steps = 0u64;
    let drawn_before: u64 = table.frontier().iter().sum();

    for start in 0..n {
        if fixed[start] {
            continue;
        }
        walk.clear();
        walk_edges.clear();
        walk.push(start);
        pos[start] = 0;
        loop {
            let u = *walk.last().expect("walk is never empty");
            let (w, e) = table.draw_neighbor(g, u);
            steps += 1;
            heads[u] = w;
            walk_edges.push(e);
            if fixed[w] {
                break;
            }
            let p = pos[w];
            if p == OFF_WALK {
                pos[w] = walk.len();
                walk.push(w);
                continue;
            }
            let cycle = &walk[p..];
            let len = cycle.len();
            let reject = match rule {
                Rule::Orientation => len == 2 || closed_walk_sign(cycle, &walk_edges[p..]) == 1,
                Rule::SignBlind => len == 2,
                Rule::Gibbs(params) => coin_rejects(table.draw_coin(w), params.retention(len)),
            };
            if !reject {
                break;
            }
            resampled += len as u64;
            for &v in &walk[p + 1..] {
                pos[v] = OFF_WALK;
                heads[v] = usize::MAX;
            }
            walk.truncate(p + 1);
            walk_edges.truncate(p);
        }
        for &v in &walk {
            fixed[v] = true;
            pos[v] = OFF_WALK;
        }
    }

    debug_assert_eq!(steps, n as u64 + resampled);
    debug_assert_eq!(table.frontier().iter().sum::<u64>() - drawn_before, steps);
    let (outcome, arrows) = outcome(g, rule, heads);
    SampleReport { outcome, resampled, steps, seed: table.seed(), arrows }
}

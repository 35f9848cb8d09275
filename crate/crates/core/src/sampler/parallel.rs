//! Parallel bicycle popping: draw every arrow, then repeatedly redraw all
//! arrows on occurring bad cycles at once.

use super::{outcome, Rule, SampleReport};
use crate::arrows::{coin_rejects, orientation_rejects, CycleScan, Variant};
use crate::error::Result;
use crate::graph::{validate_bicircular_instance, Graph};
use crate::table::ResamplingTable;

pub fn sample_parallel(
    g: &Graph,
    table: &mut ResamplingTable,
    variant: Variant,
) -> Result<SampleReport> {
    validate_bicircular_instance(g)?;
    Ok(run(g, table, variant.into()))
}

pub(crate) fn run(g: &Graph, table: &mut ResamplingTable, rule: Rule) -> SampleReport {
    let n = g.n();
    let mut heads: Vec<usize> = (0..n).map(|v| table.draw_neighbor(g, v).0).collect();
    // Vertices on accepted cycles. Their arrows are never redrawn, so an
    // accepted cycle stays present and keeps its coin.
    let mut settled = vec![false; n];
    let mut scan = CycleScan::new(n);
    let mut bad: Vec<usize> = Vec::new();
    let mut edge_buf = Vec::new();
    let mut resampled = 0u64;

    loop {
        bad.clear();
        scan.for_each_cycle(&heads, |c| {
            if settled[c[0]] {
                return;
            }
            let reject = match rule {
                Rule::Orientation => orientation_rejects(g, c, &mut edge_buf),
                Rule::SignBlind => c.len() == 2,
                Rule::Gibbs(params) => {
                    let anchor = *c.iter().min().expect("non-empty cycle");
                    coin_rejects(table.draw_coin(anchor), params.retention(c.len()))
                }
            };
            if reject {
                bad.extend_from_slice(c);
            } else {
                c.iter().for_each(|&v| settled[v] = true);
            }
        });
        if bad.is_empty() {
            break;
        }
        for &v in &bad {
            heads[v] = table.draw_neighbor(g, v).0;
        }
        resampled += bad.len() as u64;
    }

    let (outcome, arrows) = outcome(g, rule, heads);
    SampleReport { outcome, resampled, steps: n as u64 + resampled, seed: table.seed(), arrows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle_plus_chord};
    use crate::sampler::sample_lerw;

    #[test]
    fn matches_walk_on_shared_table() {
        for g in [complete(4), cycle_plus_chord(5)] {
            for seed in 0..300 {
                let mut a = ResamplingTable::new(seed, g.n());
                let mut b = ResamplingTable::new(seed, g.n());
                let p = sample_parallel(&g, &mut a, Variant::Orientation).unwrap();
                let s = sample_lerw(&g, &mut b, Variant::Orientation).unwrap();
                assert_eq!(p, s, "seed {seed}");
                assert_eq!(a.frontier(), b.frontier());
            }
        }
    }
}

use std::collections::HashMap;

use bicircular::counting::enumerate_bases;
use bicircular::generators::{complete, cycle, cycle_plus_chord};
use bicircular::stats::{chi_square_uniform, Summary};
use bicircular::table::derive_seed;
use bicircular::{arrow_support, sample_gibbs, Basis, Execution, GibbsParams, Graph};

fn gibbs_resamples(g: &Graph, params: GibbsParams, runs: usize, seed: u64) -> Summary {
    Summary::of(Execution::Parallel.map(runs, |i| {
        sample_gibbs(g, params, derive_seed(seed, &[i as u64])).unwrap().resampled as f64
    }))
}

#[test]
fn gibbs_resample_bounds() {
    for (gi, g) in [cycle(5), complete(4), cycle_plus_chord(6)].iter().enumerate() {
        let n = g.n() as f64;
        for (pi, (g2, gamma)) in [(0.0, 0.5), (0.0, 1.0), (0.5, 1.0), (0.5, 0.5), (1.0, 0.7)]
            .into_iter()
            .enumerate()
        {
            let params = GibbsParams::new(g2, gamma).unwrap();
            let s = gibbs_resamples(g, params, 20_000, 100 * gi as u64 + pi as u64);
            let tail = n * (1.0 - gamma) / gamma;
            let bound = if g2 == 0.0 { 2.0 * n * (n - 1.0) + tail } else { 2.0 * n * n + tail };
            assert!(
                s.mean <= bound + 3.0 * s.std_err(),
                "graph {gi}, params ({g2}, {gamma}): mean {} > bound {bound}",
                s.mean
            );
        }
    }
}

#[test]
fn gibbs_half_support_is_uniform_on_bases() {
    let g = complete(4);
    let bases = enumerate_bases(&g).unwrap();
    let index: HashMap<Basis, usize> = bases.iter().cloned().zip(0..).collect();
    let params = GibbsParams::new(0.0, 0.5).unwrap();
    let hits = Execution::Parallel.map(150_000, |i| {
        let r = sample_gibbs(&g, params, derive_seed(77, &[i as u64])).unwrap();
        let b = Basis::new(&g, arrow_support(&g, &r.arrows)).expect("support is a basis");
        index[&b]
    });
    let mut counts = vec![0u64; bases.len()];
    hits.into_iter().for_each(|i| counts[i] += 1);
    let c = chi_square_uniform(&counts);
    assert!(c.passes(), "chi2 {} > {}", c.statistic, c.critical);
}

//! Brute-force oracles over all edge subsets or all arrow configurations.

use crate::arrows::{orientation_rejects, ArrowConfig, CycleScan, GibbsParams};
use crate::error::{Error, Result};
use crate::graph::{is_basis, Basis, Graph};

/// Largest enumeration any oracle will attempt.
pub const ENUMERATION_LIMIT: f64 = 1e6;

fn binomial(m: usize, k: usize) -> f64 {
    let k = k.min(m - k.min(m));
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

fn guard(what: &'static str, size: f64) -> Result<()> {
    if size > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { what, size, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// Every basis of `g`, in lexicographic order of sorted edge-id lists.
///
/// Checks all `C(m, n)` subsets of size `n`; fails with `TooLarge` when
/// that exceeds [`ENUMERATION_LIMIT`].
pub fn enumerate_bases(g: &Graph) -> Result<Vec<Basis>> {
    let (n, m) = (g.n(), g.m());
    if m < n {
        return Ok(Vec::new());
    }
    guard("C(m, n)", binomial(m, n).round())?;
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        if is_basis(g, &pick) {
            out.push(Basis::from_sorted_unchecked(pick.clone()));
        }
        // advance to the next n-combination of 0..m
        let Some(i) = (0..n).rev().find(|&i| pick[i] < m - n + i) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Visits every arrow configuration of `g` in mixed-radix order (see
/// [`ArrowConfig::enumeration_index`]).
pub(crate) fn for_each_configuration(g: &Graph, mut f: impl FnMut(&[usize])) -> Result<()> {
    guard("product of degrees", g.degree_product())?;
    let n = g.n();
    let mut digit = vec![0usize; n];
    let mut heads: Vec<usize> = (0..n).map(|v| g.neighbors(v)[0]).collect();
    loop {
        f(&heads);
        let mut v = 0;
        loop {
            if v == n {
                return Ok(());
            }
            digit[v] += 1;
            if digit[v] < g.degree(v) {
                heads[v] = g.neighbors(v)[digit[v]];
                break;
            }
            digit[v] = 0;
            heads[v] = g.neighbors(v)[0];
            v += 1;
        }
    }
}

/// Number of arrow configurations with each `(C2, C)` cycle profile:
/// `census[c2][c]`.
pub fn cycle_census(g: &Graph) -> Result<Vec<Vec<u64>>> {
    let n = g.n();
    let mut census = vec![vec![0u64; n / 3 + 1]; n / 2 + 1];
    let mut scan = CycleScan::new(n);
    for_each_configuration(g, |heads| {
        let (mut two, mut long) = (0, 0);
        scan.for_each_cycle(heads, |c| if c.len() == 2 { two += 1 } else { long += 1 });
        census[two][long] += 1;
    })?;
    Ok(census)
}

/// `Z(gamma2, gamma) = sum over configurations of gamma2^C2 * gamma^C`,
/// with `0^0 = 1`.
pub fn exact_partition_function(g: &Graph, gamma2: f64, gamma: f64) -> Result<f64> {
    if !(gamma2 >= 0.0 && gamma >= 0.0) {
        return Err(Error::InvalidParameter(format!("weights ({gamma2}, {gamma}) must be >= 0")));
    }
    let census = cycle_census(g)?;
    let mut z = 0.0;
    for (two, row) in census.iter().enumerate() {
        for (long, &count) in row.iter().enumerate() {
            if count > 0 {
                z += count as f64 * gamma2.powi(two as i32) * gamma.powi(long as i32);
            }
        }
    }
    Ok(z)
}

/// Unnormalised Gibbs weight of every configuration, indexed by
/// [`ArrowConfig::enumeration_index`].
pub fn configuration_weights(g: &Graph, params: GibbsParams) -> Result<Vec<f64>> {
    let mut scan = CycleScan::new(g.n());
    let mut weights = Vec::with_capacity(g.degree_product() as usize);
    for_each_configuration(g, |heads| {
        let (mut two, mut long) = (0, 0);
        scan.for_each_cycle(heads, |c| if c.len() == 2 { two += 1 } else { long += 1 });
        weights.push(params.weight(two, long));
    })?;
    Ok(weights)
}

/// Exact expected number of redraws of the orientation-rule sampler:
///
/// `E[T] = (sum over configs with exactly one bad event of |var(event)|) / |flawless configs|`
///
/// where a bad 2-cycle has two variables and a bad cycle `C` has `|C|`.
pub fn exact_expected_resamples(g: &Graph) -> Result<f64> {
    let mut scan = CycleScan::new(g.n());
    let mut buf = Vec::new();
    let (mut flawless, mut weighted) = (0u64, 0u64);
    for_each_configuration(g, |heads| {
        let (mut events, mut vars) = (0u32, 0u64);
        scan.for_each_cycle(heads, |c| {
            if orientation_rejects(g, c, &mut buf) {
                events += 1;
                vars += c.len() as u64;
            }
        });
        match events {
            0 => flawless += 1,
            1 => weighted += vars,
            _ => {}
        }
    })?;
    if flawless == 0 {
        return Err(Error::EmptySupport);
    }
    Ok(weighted as f64 / flawless as f64)
}

/// The configuration with the given enumeration index.
pub fn configuration_at(g: &Graph, mut index: usize) -> ArrowConfig {
    let heads = (0..g.n())
        .map(|v| {
            let d = g.degree(v);
            let w = g.neighbors(v)[index % d];
            index /= d;
            w
        })
        .collect();
    ArrowConfig::from_heads_unchecked(heads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, cycle_plus_chord};

    #[test]
    fn basis_counts() {
        for n in 3..9 {
            assert_eq!(enumerate_bases(&cycle(n)).unwrap().len(), 1);
        }
        assert_eq!(enumerate_bases(&complete(4)).unwrap().len(), 15);
        // every 4-subset of C4 + chord is a connected unicyclic spanning graph
        assert_eq!(enumerate_bases(&cycle_plus_chord(4)).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(enumerate_bases(&complete(9)), Err(Error::TooLarge { .. })));
        assert!(matches!(exact_partition_function(&complete(9), 1.0, 1.0), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn triangle_partition_function() {
        let g = cycle(3);
        assert_eq!(exact_partition_function(&g, 1.0, 1.0).unwrap(), 8.0);
        assert_eq!(exact_partition_function(&g, 0.0, 0.5).unwrap(), 1.0);
        assert_eq!(exact_partition_function(&g, 0.0, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn cycle_resample_formula() {
        for n in 3..9 {
            let expected = (2 * n * n - n) as f64;
            assert_eq!(exact_expected_resamples(&cycle(n)).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn k4_resamples_below_bound() {
        let t = exact_expected_resamples(&complete(4)).unwrap();
        assert!(t > 0.0 && t <= 28.0, "{t}");
    }

    #[test]
    fn configuration_indices_round_trip() {
        let g = cycle_plus_chord(5);
        let total = g.degree_product() as usize;
        for i in 0..total {
            assert_eq!(configuration_at(&g, i).enumeration_index(&g), i);
        }
    }
}

//! Summary statistics and chi-square goodness-of-fit tests.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Significance level used by every goodness-of-fit check.
pub const SIGNIFICANCE: f64 = 1e-3;

/// Minimum expected count per pooled chi-square bin.
const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Summary {
    pub count: u64,
    pub mean: f64,
    /// Sample variance (n - 1 denominator).
    pub variance: f64,
}

impl Summary {
    pub fn of<I: IntoIterator<Item = f64>>(values: I) -> Summary {
        // Welford
        let (mut count, mut mean, mut m2) = (0u64, 0.0f64, 0.0f64);
        for x in values {
            count += 1;
            let d = x - mean;
            mean += d / count as f64;
            m2 += d * (x - mean);
        }
        let variance = if count > 1 { m2 / (count - 1) as f64 } else { 0.0 };
        Summary { count, mean, variance }
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    /// Standard error of the mean.
    pub fn std_err(&self) -> f64 {
        if self.count == 0 {
            return f64::INFINITY;
        }
        (self.variance / self.count as f64).sqrt()
    }

    /// `|mean - target| <= k * SE`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_err()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    /// `1 - SIGNIFICANCE` quantile of the reference distribution.
    pub critical: f64,
    pub p_value: f64,
}

impl ChiSquare {
    pub fn passes(&self) -> bool {
        self.statistic <= self.critical
    }
}

/// Pearson's test of `observed` counts against cell probabilities `probs`
/// (normalised internally).
///
/// Cells with expected count below 5 are pooled, smallest first. An
/// observation in a zero-probability cell makes the statistic infinite.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> ChiSquare {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let mass: f64 = probs.iter().sum();
    let failed = ChiSquare { statistic: f64::INFINITY, dof: 1, critical: f64::NAN, p_value: 0.0 };
    if total == 0 || mass.is_nan() || mass <= 0.0 {
        return failed;
    }
    let mut cells: Vec<(f64, u64)> = Vec::with_capacity(probs.len());
    for (&o, &p) in observed.iter().zip(probs) {
        if p <= 0.0 {
            if o > 0 {
                return failed;
            }
            continue;
        }
        cells.push((p / mass * total as f64, o));
    }
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut bins: Vec<(f64, u64)> = Vec::new();
    let mut acc = (0.0, 0u64);
    for (e, o) in cells {
        acc.0 += e;
        acc.1 += o;
        if acc.0 >= MIN_EXPECTED {
            bins.push(acc);
            acc = (0.0, 0);
        }
    }
    if acc.0 > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += acc.0;
                last.1 += acc.1;
            }
            None => bins.push(acc),
        }
    }
    let statistic: f64 = bins
        .iter()
        .map(|&(e, o)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let dof = bins.len().saturating_sub(1);
    if dof == 0 {
        // a single bin always fits
        return ChiSquare { statistic: 0.0, dof: 0, critical: 0.0, p_value: 1.0 };
    }
    let dist = ChiSquared::new(dof as f64).expect("positive dof");
    ChiSquare {
        statistic,
        dof,
        critical: dist.inverse_cdf(1.0 - SIGNIFICANCE),
        p_value: dist.sf(statistic),
    }
}

/// Chi-square test of `observed` against the uniform distribution.
pub fn chi_square_uniform(observed: &[u64]) -> ChiSquare {
    chi_square(observed, &vec![1.0; observed.len()])
}

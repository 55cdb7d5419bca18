//! Pearson chi-square machinery for judging sampled counts against model
//! probabilities, and two count vectors against each other.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Upper-tail probability of a chi-square variable with `df` degrees of
/// freedom. Zero degrees of freedom means nothing was free to vary, which we
/// read as perfect agreement.
pub fn p_value(statistic: f64, df: usize) -> f64 {
    if df == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    1.0 - dist.cdf(statistic)
}

/// Sum of (observed - expected)^2 / expected over cells with nonzero
/// expectation. A zero-expectation cell with observations is an impossible
/// outcome that happened, reported as the offending index.
pub fn chi_square_statistic(observed: &[u64], expected: &[f64]) -> Result<f64> {
    if observed.len() != expected.len() {
        return Err(Error::DimensionMismatch {
            expected: expected.len(),
            got: observed.len(),
        });
    }
    let mut statistic = 0.0;
    for (index, (&o, &e)) in observed.iter().zip(expected).enumerate() {
        if e <= 0.0 {
            if o > 0 {
                return Err(Error::ZeroProbability { index, value: e });
            }
            continue;
        }
        let diff = o as f64 - e;
        statistic += diff * diff / e;
    }
    Ok(statistic)
}

/// Goodness of fit of observed counts to a probability vector over the same
/// cells; degrees of freedom = positive-probability cells minus one.
pub fn goodness_of_fit(observed: &[u64], probabilities: &[f64]) -> Result<ChiSquareTest> {
    if observed.len() != probabilities.len() {
        return Err(Error::DimensionMismatch {
            expected: probabilities.len(),
            got: observed.len(),
        });
    }
    let total: u64 = observed.iter().sum();
    let expected: Vec<f64> = probabilities.iter().map(|p| p * total as f64).collect();
    let statistic = chi_square_statistic(observed, &expected)?;
    let support = probabilities.iter().filter(|&&p| p > 0.0).count();
    let df = support.saturating_sub(1);
    Ok(ChiSquareTest {
        statistic,
        degrees_of_freedom: df,
        p_value: p_value(statistic, df),
    })
}

/// Homogeneity test for two count vectors over the same cells: expected
/// counts come from the pooled row/column margins. Cells empty in both
/// samples carry no information and drop out of the degrees of freedom.
pub fn two_sample(a: &[u64], b: &[u64]) -> Result<ChiSquareTest> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let row_a: u64 = a.iter().sum();
    let row_b: u64 = b.iter().sum();
    let grand = (row_a + row_b) as f64;
    if grand == 0.0 {
        return Err(Error::EmptySampleSpace);
    }
    let mut statistic = 0.0;
    let mut informative = 0usize;
    for (&oa, &ob) in a.iter().zip(b) {
        let col = (oa + ob) as f64;
        if col == 0.0 {
            continue;
        }
        informative += 1;
        for (o, row) in [(oa, row_a), (ob, row_b)] {
            let e = row as f64 * col / grand;
            if e > 0.0 {
                let diff = o as f64 - e;
                statistic += diff * diff / e;
            }
        }
    }
    let df = informative.saturating_sub(1);
    Ok(ChiSquareTest {
        statistic,
        degrees_of_freedom: df,
        p_value: p_value(statistic, df),
    })
}

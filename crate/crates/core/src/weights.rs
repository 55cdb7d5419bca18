//! Integer replication counts behind rational outcome probabilities, plus the
//! disjunctive replica expansion those counts license.

use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::logic::{atom, or, Proposition};
use crate::quantum::NORM_EPSILON;

pub const DEFAULT_MAX_DENOMINATOR: u64 = 4096;

/// Positive replication counts `w_1..w_N` in canonical form (gcd 1). The
/// probability of outcome n is the exact rational `w_n / total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<u64>,
}

impl WeightVector {
    /// Canonicalizes by dividing out the common gcd; rejects empty input and
    /// zero counts (every listed outcome must keep at least one replica).
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptySampleSpace);
        }
        if let Some(index) = weights.iter().position(|&w| w == 0) {
            return Err(Error::ZeroProbability { index, value: 0.0 });
        }
        let g = weights.iter().fold(0u64, |acc, w| acc.gcd(w));
        Ok(Self {
            weights: weights.iter().map(|w| w / g).collect(),
        })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Exact probability `w_n / total` of outcome `n` (0-based).
    pub fn probability(&self, n: usize) -> Result<Ratio<u64>> {
        match self.weights.get(n) {
            Some(&w) => Ok(Ratio::new(w, self.total())),
            None => Err(Error::IndexOutOfRange {
                index: n,
                dim: self.weights.len(),
            }),
        }
    }

    pub fn probability_f64(&self, n: usize) -> Result<f64> {
        self.probability(n)
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
    }

    pub fn probabilities(&self) -> Vec<Ratio<u64>> {
        let total = self.total();
        self.weights.iter().map(|&w| Ratio::new(w, total)).collect()
    }
}

/// Finds positive integer weights whose total stays within `max_denominator`
/// and whose ratios track `probs` as closely as possible in the worst
/// coordinate; among equally good totals the smallest wins, and the result is
/// then reduced to canonical form.
pub fn to_weights(probs: &[f64], max_denominator: u64) -> Result<WeightVector> {
    let n = probs.len();
    if n == 0 {
        return Err(Error::EmptySampleSpace);
    }
    for (index, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            return Err(Error::ZeroProbability { index, value: p });
        }
    }
    let deviation = (probs.iter().sum::<f64>() - 1.0).abs();
    if deviation > NORM_EPSILON {
        return Err(Error::NormViolation { deviation });
    }
    if max_denominator < n as u64 {
        return Err(Error::InfeasibleDenominator {
            max_denominator,
            outcomes: n,
        });
    }

    let mut best: Option<(f64, Vec<u64>)> = None;
    for total in (n as u64)..=max_denominator {
        let candidate = best_composition(probs, total);
        let err = max_error(&candidate, total, probs);
        // strict comparison: equal error keeps the earlier, smaller total
        if best.as_ref().is_none_or(|(b, _)| err < *b) {
            best = Some((err, candidate));
        }
    }
    WeightVector::new(best.expect("non-empty total range").1)
}

/// Minimax-optimal composition of `total` into positive parts: start from the
/// rounded allocation and move single units toward whichever coordinate is
/// currently worst off.
fn best_composition(probs: &[f64], total: u64) -> Vec<u64> {
    let t = total as f64;
    let mut parts: Vec<u64> = probs
        .iter()
        .map(|&p| ((p * t).round() as u64).max(1))
        .collect();
    loop {
        let sum: u64 = parts.iter().sum();
        let deviation = |i: usize| parts[i] as f64 - probs[i] * t;
        match sum.cmp(&total) {
            Ordering::Equal => return parts,
            Ordering::Less => {
                let i = (0..parts.len())
                    .min_by(|&a, &b| deviation(a).total_cmp(&deviation(b)))
                    .unwrap();
                parts[i] += 1;
            }
            Ordering::Greater => {
                // some part exceeds 1 because total >= N
                let i = (0..parts.len())
                    .filter(|&i| parts[i] >= 2)
                    .max_by(|&a, &b| deviation(a).total_cmp(&deviation(b)))
                    .unwrap();
                parts[i] -= 1;
            }
        }
    }
}

fn max_error(parts: &[u64], total: u64, probs: &[f64]) -> f64 {
    let t = total as f64;
    parts
        .iter()
        .zip(probs)
        .map(|(&k, &p)| (k as f64 / t - p).abs())
        .fold(0.0, f64::max)
}

/// Disjunction of `count` fresh replica atoms `{label}_1 | ... | {label}_{count}`,
/// the expansion that makes one weighted outcome a union of equally likely
/// disjoint events.
pub fn expand_replicas(label: &str, count: u64) -> Proposition {
    assert!(count >= 1, "replica count must be at least 1");
    let mut p = atom(format!("{label}_1"));
    for i in 2..=count {
        p = or(p, atom(format!("{label}_{i}")));
    }
    p
}

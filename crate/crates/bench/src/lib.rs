//! Shared fixtures for the criterion benchmarks.

use iqlogic_core::logic::Proposition;
use iqlogic_core::{exactly_one, KripkeModel, SampleSpace, StateVector};

/// Outcome labels a1..aN.
pub fn outcome_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("a{i}")).collect()
}

/// The root-plus-N-leaves frame over a1..aN.
pub fn measurement_model(n: usize) -> KripkeModel {
    let labels = outcome_labels(n);
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    KripkeModel::measurement_frame(&SampleSpace::from_labels(&refs).expect("valid labels"))
}

/// The definite-outcome proposition over a1..aN.
pub fn one_hot_formula(n: usize) -> Proposition {
    let labels = outcome_labels(n);
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    exactly_one(&SampleSpace::from_labels(&refs).expect("valid labels"))
}

/// An N-outcome state with gently sloped exact-rational probabilities
/// k_n proportional to n.
pub fn sloped_state(n: usize) -> StateVector {
    let total: u64 = (1..=n as u64).sum();
    let amps: Vec<f64> = (1..=n as u64)
        .map(|k| (k as f64 / total as f64).sqrt())
        .collect();
    let labels = outcome_labels(n);
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    StateVector::from_real(&amps, &refs).expect("normalized by construction")
}

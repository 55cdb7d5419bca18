//! Seeded measurement sampling and aggregation. A draw is a uniform choice
//! among the pool of integer-weighted replica events followed by aggregation
//! to the parent outcome, so the squared-amplitude statistics arise from
//! counting indistinguishable cases rather than from an assumed distribution.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kripke::{leaf_world_name, KripkeModel};
use crate::logic::{and, atom, not, or, xor, Proposition};
use crate::quantum::{SampleSpace, StateVector};
use crate::rng::{self, PRNG_ID};
use crate::stats;
use crate::weights::{to_weights, WeightVector};

/// The proposition "exactly one outcome occurred": for one or two outcomes
/// the familiar inclusive/exclusive combination, for N >= 3 the parity chain
/// over all atoms conjoined with the denial of any triple being true at once
/// (parity alone would accept an odd pile-up of three or more).
pub fn exactly_one(space: &SampleSpace) -> Proposition {
    let atoms: Vec<Proposition> = space.labels().iter().map(atom).collect();
    match atoms.len() {
        1 => atoms[0].clone(),
        2 => and(
            or(atoms[0].clone(), atoms[1].clone()),
            or(not(atoms[0].clone()), not(atoms[1].clone())),
        ),
        n => {
            let mut parity = atoms[0].clone();
            for a in &atoms[1..] {
                parity = xor(parity, a.clone());
            }
            let mut triples = None;
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let t = and(and(atoms[i].clone(), atoms[j].clone()), atoms[k].clone());
                        triples = Some(match triples {
                            None => t,
                            Some(acc) => or(acc, t),
                        });
                    }
                }
            }
            and(parity, not(triples.expect("n >= 3 has triples")))
        }
    }
}

/// One sampled measurement: the outcome that occurred and the classical
/// valuation it leaves behind — its atom true, every other atom false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub outcome_index: usize,
    pub valuation: BTreeMap<String, bool>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<String>,
}

impl MeasurementRecord {
    fn new(s: &StateVector, outcome: usize, seed: u64) -> Self {
        let valuation = s
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i == outcome))
            .collect();
        Self {
            outcome_index: outcome,
            valuation,
            seed,
            timestamp: None,
        }
    }

    pub fn outcome_label(&self) -> &str {
        self.valuation
            .iter()
            .find_map(|(l, &v)| v.then_some(l.as_str()))
            .expect("exactly one atom is true")
    }

    /// The valuation as 0/1 reals, in atom-name order — the form the
    /// additivity/exclusivity constraint checks consume.
    pub fn classical_values(&self) -> Vec<f64> {
        self.valuation
            .values()
            .map(|&v| if v { 1.0 } else { 0.0 })
            .collect()
    }
}

/// Indices of outcomes with positive squared amplitude.
fn support(s: &StateVector) -> Vec<usize> {
    s.born_probabilities()
        .iter()
        .enumerate()
        .filter_map(|(n, &p)| (p > 0.0).then_some(n))
        .collect()
}

/// Draws one outcome through the replica pool: a single uniform choice among
/// all `total` replicas, then aggregation to the parent outcome. `w` lists
/// one weight per positive-probability outcome of `s` (impossible outcomes
/// carry no replicas, so they are dropped before weighing).
pub fn sample(s: &StateVector, w: &WeightVector, seed: u64) -> Result<MeasurementRecord> {
    let support = support(s);
    if w.len() != support.len() {
        return Err(Error::WeightMismatch {
            weights: w.len(),
            support: support.len(),
        });
    }
    let mut rng = rng::seeded(seed);
    let draw = rng::uniform_index(&mut rng, w.total());
    let mut acc = 0;
    let mut outcome = *support.last().expect("support is non-empty");
    for (j, &n) in support.iter().enumerate() {
        acc += w.weights()[j];
        if draw < acc {
            outcome = n;
            break;
        }
    }
    Ok(MeasurementRecord::new(s, outcome, seed))
}

/// Reference path with no replica pool: inverse-CDF over the squared
/// amplitudes directly. Exists to be compared against `sample`, not to
/// replace it.
pub fn sample_direct(s: &StateVector, seed: u64) -> MeasurementRecord {
    let probs = s.born_probabilities();
    let mut rng = rng::seeded(seed);
    let u = rng::unit_f64(&mut rng);
    let mut acc = 0.0;
    let mut outcome = *support(s).last().expect("support is non-empty");
    for (n, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        if u < acc {
            outcome = n;
            break;
        }
    }
    MeasurementRecord::new(s, outcome, seed)
}

/// Aggregate of repeated seeded measurements of one state. All per-outcome
/// arrays align with the state's basis order; a zero weight marks an outcome
/// dropped as impossible before weighing.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentStats {
    pub counts: Vec<u64>,
    pub trials: u64,
    pub frequencies: Vec<f64>,
    pub expected_counts: Vec<f64>,
    pub weights: Vec<u64>,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Runs `trials` independent draws with seeds `base_seed..base_seed+trials`
/// and scores the counts against the exact weight probabilities.
pub fn run_experiment(
    s: &StateVector,
    trials: u64,
    base_seed: u64,
    max_denominator: u64,
) -> Result<ExperimentStats> {
    assert!(trials >= 1, "an experiment needs at least one trial");
    let probs = s.born_probabilities();
    let support = support(s);
    let support_probs: Vec<f64> = support.iter().map(|&n| probs[n]).collect();
    let w = to_weights(&support_probs, max_denominator)?;

    let mut counts = vec![0u64; s.dim()];
    for t in 0..trials {
        let record = sample(s, &w, base_seed.wrapping_add(t))?;
        counts[record.outcome_index] += 1;
    }

    let mut weights = vec![0u64; s.dim()];
    let mut expected_counts = vec![0.0; s.dim()];
    for (j, &n) in support.iter().enumerate() {
        weights[n] = w.weights()[j];
        expected_counts[n] = w.probability_f64(j)? * trials as f64;
    }
    let chi_square = stats::chi_square_statistic(&counts, &expected_counts)?;
    let df = support.len().saturating_sub(1);
    Ok(ExperimentStats {
        frequencies: counts.iter().map(|&c| c as f64 / trials as f64).collect(),
        counts,
        trials,
        expected_counts,
        weights,
        chi_square,
        degrees_of_freedom: df,
        p_value: stats::p_value(chi_square, df),
    })
}

/// Maps a record onto its measurement frame: the maximal world whose forced
/// atom is the recorded outcome. The frame must declare exactly the record's
/// atoms and carry the expected leaf.
pub fn apply_record_to_frame(m: &KripkeModel, r: &MeasurementRecord) -> Result<String> {
    let record_atoms: Vec<&String> = r.valuation.keys().collect();
    if m.atoms().len() != record_atoms.len()
        || !record_atoms.iter().all(|a| m.atoms().contains(*a))
    {
        return Err(Error::SpaceMismatch(format!(
            "frame declares atoms {:?}, record carries {:?}",
            m.atoms(),
            record_atoms
        )));
    }
    let leaf = leaf_world_name(r.outcome_index);
    let forced = m
        .forcing_at(&leaf)
        .map_err(|_| Error::SpaceMismatch(format!("frame has no world '{leaf}'")))?;
    let outcome = r.outcome_label();
    if forced.len() != 1 || !forced.contains(outcome) {
        return Err(Error::SpaceMismatch(format!(
            "world '{leaf}' forces {forced:?}, expected exactly '{outcome}'"
        )));
    }
    Ok(leaf)
}

/// Machine-readable experiment result, the schema the command-line front end
/// emits: per-outcome arrays in basis order plus the generator identity that
/// makes the run reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub state: StateSummary,
    pub weights: Vec<u64>,
    pub trials: u64,
    pub seed: u64,
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    pub expected: Vec<f64>,
    pub chi_square: f64,
    pub prng_id: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSummary {
    pub amplitudes: Vec<[f64; 2]>,
    pub labels: Vec<String>,
}

impl ExperimentReport {
    pub fn new(s: &StateVector, stats: &ExperimentStats, seed: u64) -> Self {
        Self {
            state: StateSummary {
                amplitudes: s.amplitudes().iter().map(|c| [c.re, c.im]).collect(),
                labels: s.labels().to_vec(),
            },
            weights: stats.weights.clone(),
            trials: stats.trials,
            seed,
            counts: stats.counts.clone(),
            frequencies: stats.frequencies.clone(),
            expected: stats.expected_counts.clone(),
            chi_square: stats.chi_square,
            prng_id: PRNG_ID.to_string(),
        }
    }
}

//! Constructive-logic account of quantum measurement on finite sample spaces:
//! Kripke frames in which outcome propositions are undecided before the
//! measurement and classical after it, integer replica weights realizing the
//! squared-amplitude probabilities, a seeded sampler built on those weights,
//! and the additivity/exclusivity constraints any outcome-value assignment
//! must satisfy.

pub mod error;
pub mod gleason;
pub mod kripke;
pub mod logic;
pub mod measurement;
pub mod quantum;
pub mod rng;
pub mod stats;
pub mod weights;

pub use error::{Error, Result};
pub use kripke::{FrameSpec, KripkeModel};
pub use logic::{parse, Proposition, TruthValue3};
pub use measurement::{
    exactly_one, run_experiment, sample, sample_direct, ExperimentReport, ExperimentStats,
    MeasurementRecord,
};
pub use quantum::{CompositeState, SampleSpace, StateVector, NORM_EPSILON, SCHMIDT_TOLERANCE};
pub use weights::{to_weights, WeightVector, DEFAULT_MAX_DENOMINATOR};

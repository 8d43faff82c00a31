//! Graph burning toolkit.
//!
//! The burning process lights one new activator per round while fire spreads
//! one hop per round; the burning number is the fewest rounds that burn the
//! whole graph. This crate provides the process model ([`burn`]), six
//! heuristics ([`heuristics`]), an exact solver with closed-form bounds
//! ([`exact`]), seeded instance generators ([`generators`]), file formats
//! ([`io`]) and a batch experiment driver ([`harness`]).

pub mod burn;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod heuristics;
pub mod io;
mod math;

pub use burn::{advance_round, burn_times, time_to_burn_field, validate_sequence, BurnState, BurningSequence};
pub use error::{Error, Result};
pub use exact::{exact_bn, ExactOutcome};
pub use graph::{Graph, VertexId};
pub use heuristics::{run_heuristic, HeuristicId, HeuristicRun};
pub use math::{ceil_sqrt, floor_sqrt};

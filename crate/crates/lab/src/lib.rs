//! Command-line laboratory for boundary representations of lattices.
//!
//! Everything mathematical lives in [`boundary_lab_core`]; this crate adds
//! parallel drivers, the enumeration cache, run configuration, report
//! formats and the experiment runners behind the `boundary-lab` binary.

pub mod cache;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod par;
pub mod report;

pub use error::{LabError, LabResult};

//! Scenario-file front end for PRB dimensioning studies.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod file;
pub mod study;
pub mod table;

pub use file::{ScenarioFile, StudyKind};
pub use study::{run_study, Overrides};
pub use table::Table;

//! Threshold functions and exact verification of the coefficient
//! inequalities, packaged as named suites over parameter rectangles.

mod checks;
mod constants;
mod report;
mod suites;
mod thresholds;

pub use checks::*;
pub use constants::{majorant, BoundConstants, MAJORANT_ENVELOPE};
pub use report::{params, Failure, Param, Params, Rectangle, Verdict, VerifyReport, STORED_PER_CLAIM};
pub use suites::{default_rectangle, normalize_suite_name, run_suite, suite_names, SuiteInfo, SuiteKind, SUITES};
pub use thresholds::{
    f_n, has_nonnegative_roots, k_constant, k_roots, smallest_n_with_nonnegative_roots, thresholds,
    Thresholds,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(alloc::string::String),
    #[error("{what} requires {requirement}")]
    Domain {
        what: &'static str,
        requirement: &'static str,
    },
}

//! Convergence studies and one-shot estimates for finite-part integrals.

pub mod config;
pub mod error;
pub mod eval;
pub mod expr;
pub mod report;
pub mod study;

pub use config::{ConfigFile, Format, OneOrMany, Problem, StudyConfig};
pub use error::CliError;
pub use eval::{run_eval, EvalConfig, EvalOutcome};
pub use expr::Expr;
pub use report::{emit_report, parse_csv, CsvRow, CsvTable};
pub use study::{exact_value, run_study, Column, ConvergenceReport, ExactSource, Metadata, Row};

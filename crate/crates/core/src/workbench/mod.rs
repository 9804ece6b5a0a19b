//! Algebra files, check suites and reports for the command-line workbench.

pub mod file;
pub mod report;
pub mod suites;

pub use file::{load_algebra, parse_algebra, AlgebraFile, Source};
pub use report::{Check, Report, Status, SCHEMA};
pub use suites::{run, Command, Options};

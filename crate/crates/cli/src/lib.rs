//! Command-line front end and file formats for `invcomp-core`.

pub mod cli;
pub mod report;
pub mod schema_file;

pub use cli::{run, EXIT_FALSIFIED, EXIT_OK, EXIT_USAGE};

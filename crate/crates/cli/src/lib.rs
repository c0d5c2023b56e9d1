//! Library half of the `schur` command: file formats, tables and suites.

pub mod error;
pub mod matrix_file;
pub mod suites;
pub mod table;

pub use error::{CliError, CliResult};

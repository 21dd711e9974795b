//! Command-line front end: matrix files, certificates, campaigns and sweeps.

pub mod commands;
pub mod csv_table;
pub mod error;
pub mod matrix_file;

pub use error::CliError;

//! Job runner and expression parser behind the `jetres` command line tool.

pub mod error;
pub mod job;
pub mod json;
pub mod parse;

pub use error::CliError;
pub use job::{error_document, render, run_job, Command, Job, Output, RunOptions, SCHEMA_VERSION};
pub use parse::{parse_form, parse_poly, ParseError, ParsedForm};

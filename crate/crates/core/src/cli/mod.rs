//! Batch front end: context-file parsing, the report / hh / verify /
//! seminorm subcommands, and their deterministic JSON and text documents.

pub mod commands;
pub mod context_file;

pub use commands::{
    cmd_hh, cmd_report, cmd_seminorm, cmd_verify, parse_numeric_element, parse_twist, Failure,
    Outcome, OutputFormat, DEFAULT_SEED, EXIT_CHECK_FAILED, EXIT_INFEASIBLE, EXIT_INVALID,
    EXIT_PASS, SCHEMA,
};
pub use context_file::{ContextFile, ParseError};

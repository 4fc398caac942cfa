//! Input language, command dispatch and JSON reports.

mod parser;
mod runner;

pub use parser::{
    identifiers, parse, parse_poly, parse_poly_list, Binding, CommandStmt, ParseError,
    SessionScript, MAX_EXPONENT,
};
pub use runner::{
    error_exit_code, run, run_source, script_from_poly, Report, RunOptions, COMMANDS,
};

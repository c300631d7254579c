//! Command-line front end: argument parsing, table rendering and the
//! property suites run by `conics check`.

pub mod args;
pub mod commands;
pub mod render;
mod sample;
pub mod suites;

pub use commands::{run, run_args, Outcome, Status};

//! Command-line front end for `nk-core`: matrix parsing, report rendering and
//! command dispatch.

pub mod app;
pub mod parse;
pub mod report;

pub use app::{run, EXIT_ERROR, EXIT_GATE, EXIT_OK};
pub use parse::{parse_matrix, render_matrix, ParseError};

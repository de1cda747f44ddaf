//! Library side of the `pdfa` command-line tool: file formats, Graphviz
//! output and the command implementations. `main.rs` only parses arguments
//! and maps outcomes to exit codes.

pub mod commands;
pub mod dot;
pub mod format;

pub use commands::{run, Cli, Outcome};

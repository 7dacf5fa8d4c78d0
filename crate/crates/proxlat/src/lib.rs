//! File formats, DOT output and the command-line front end for
//! `proxlat-core`.

pub mod cli;
pub mod dot;
pub mod format;

pub use cli::{run_command, Outcome};
pub use format::{load_fixture, parse_fixture, print_fixture, Content, FixtureFile, ParseError};

//! JSON formats, seeded instance generators, verification suites and the
//! machinery behind the `autoloc` command-line tool.

pub mod compute;
pub mod error;
pub mod gen;
pub mod json;
pub mod report;
pub mod suites;

pub use error::CliError;

//! Command-line front end: argument parsing, reports and the selftest.

pub mod commands;
pub mod oracles;
pub mod report;
pub mod selftest;

pub use commands::{run, Cli, Format};
pub use report::{Report, Status};

pub const DEGREE_CAP_ENV: &str = "MILNOR_DEGREE_CAP";

//! Library surface of the command-line driver: the scenario file model and
//! the CSV/SVG writers, reused by the binary and its tests.

pub mod config;
pub mod output;

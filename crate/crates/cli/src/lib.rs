//! `baker` command line: simulate, verify, play and serve.

pub mod commands;
pub mod play;
pub mod service;

pub use commands::{run, Cli, Command};

//! Command-line front end for `charp-core`.

pub mod args;
pub mod commands;
pub mod output;
pub mod store;

pub use commands::{exit_code, run};

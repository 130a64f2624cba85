//! Library surface of the `catalan` CLI: subcommand implementations and the
//! report model, kept separate from the binary entry point so integration
//! tests can drive them directly.

pub mod commands;
pub mod report;

//! File formats and subcommands behind the `ek` binary.

pub mod commands;
pub mod format;

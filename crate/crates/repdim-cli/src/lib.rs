//! Library side of the `repdim` command-line tool: cache, command
//! implementations, and the acceptance corpus runner.

pub mod cache;
pub mod commands;
pub mod corpus;

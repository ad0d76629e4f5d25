//! Library surface of the command-line tool: command implementations and
//! the acceptance suite, shared between the binary and integration tests.

pub mod acceptance;
pub mod commands;

//! Library surface of the `rotexp` command-line tool: the document schema
//! and the command implementations, shared with the binary and its tests.

pub mod commands;
pub mod docs;

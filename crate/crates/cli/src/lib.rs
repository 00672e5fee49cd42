//! Workspace persistence, command implementations and verification suites
//! behind the `relchar` binary.

pub mod commands;
pub mod oracle;
pub mod suites;
pub mod workspace;

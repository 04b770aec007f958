//! Library side of the `ordlab` binary: subcommand row builders, the
//! deterministic worker pools, report encoders, and the verification
//! suite. The binary itself only parses flags and routes IO.

pub mod commands;
pub mod parallel;
pub mod report;
pub mod verify;

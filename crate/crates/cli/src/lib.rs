//! Command implementations behind the `wres` binary.

pub mod commands;
pub mod json;
pub mod oracle;

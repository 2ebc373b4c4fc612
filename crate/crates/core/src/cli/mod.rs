//! Text formats and command handlers behind the `numrange` binary.

pub mod commands;
pub mod expr;
pub mod matrix_file;
pub mod plot;

//! File formats and command-line driver for `cbgame-core`.
//!
//! Exit codes: 0 success, 1 input error, 2 no certified solution,
//! 3 verification failure.

pub mod app;
pub mod error;
pub mod format;

pub use app::run;
pub use error::CliError;

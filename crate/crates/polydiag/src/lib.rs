//! Command-line driver for `polydiag-core`: JSON and CSV formats, seeded
//! randomized verification suites and versioned reports.

pub mod cli;
pub mod error;
pub mod io;
pub mod report;
pub mod trials;

pub use cli::{run, Command, Mode, RunConfig, RunOutput};
pub use error::InputError;

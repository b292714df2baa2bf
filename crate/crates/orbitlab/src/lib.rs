//! IO, file formats, reports and the command-line driver for `orbitlab-core`.

pub mod cli;
pub mod formats;
pub mod parallel;
pub mod report;

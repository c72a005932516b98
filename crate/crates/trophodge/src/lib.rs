//! File formats, verification reports and the command-line driver for `trophodge-core`.

pub mod cli;
pub mod formats;
pub mod report;

pub use trophodge_core as core;

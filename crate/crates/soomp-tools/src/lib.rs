//! File formats, reports, and command drivers behind the `soomp` binary.
//!
//! The numerical work lives in the `soomp` crate; this one adds the parts
//! that need an operating system: CSV and WAV readers, the MIT-BIH format
//! 212 unpacker, wall-clock benchmarking, and the CLI itself.

pub mod bench;
pub mod cli;
pub mod config;
pub mod csvio;
pub mod error;
pub mod mitbih;
pub mod report;
pub mod synth;
pub mod wav;

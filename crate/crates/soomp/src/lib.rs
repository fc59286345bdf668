//! Simultaneous sparse approximation of several signals over a common
//! redundant dictionary, plus the pieces needed to turn that into an ECG
//! compressor: dictionary builders (redundant trigonometric families and a
//! CDF 9/7 spline wavelet family), a self-orthogonalizing greedy pursuit
//! that selects one atom per iteration for all signals at once, beat
//! segmentation and R-peak alignment, a mid-tread quantizer, an adaptive
//! Huffman entropy coder, and a byte-exact container format.
//!
//! The crate is `no_std`-compatible: disable the default `std` feature and
//! enable `libm` to build against `core` + `alloc` only.
//!
//! The central entry points are [`run_soomp`] / [`run_somp`] for the two
//! pursuit variants, [`Dictionary`] for atom families, and
//! [`codec::encode_record`] / [`codec::decode_record`] for the ECG pipeline.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("soomp needs float math: enable the `std` feature or the `libm` feature");

mod error;
mod math;
mod vecmath;

pub mod audio;
pub mod beats;
pub mod codec;
pub mod container;
pub mod dictionary;
pub mod huffman;
pub mod metrics;
pub mod pursuit;
pub mod qrs;
pub mod quant;
pub mod transform;

pub use error::Error;

pub use dictionary::{Dictionary, DictionaryKind};
pub use pursuit::{
    run_somp, run_soomp, Approximation, Pursuit, SignalSet, StopMode, StopRule, Termination,
};

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

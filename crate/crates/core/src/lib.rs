//! Sample-by-sample object based audio (SSOBA).
//!
//! `N` mono objects are embedded into `C` ordinary PCM channels by rotating
//! the column of simultaneous samples at every index and keeping the first
//! `C` rows. With `N <= C` nothing is lost; with `N > C` each object keeps `C`
//! of every `N` samples and the decoder fills the gaps with a spline.
//!
//! ```
//! use ssoba::{codec, pipeline, signalgen, SplineOrder};
//!
//! let objects = signalgen::standard_object_set(5, 96_000, 0.05)?;
//! let stream = codec::encode(&objects, 2)?;
//! assert_eq!(stream.channels.len(), 2);
//!
//! let report = pipeline::evaluate(&objects, 2, SplineOrder::Cubic)?;
//! assert!(report.min_db() > 20.0);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Modules:
//! - [`pcm_model`]: domain types and the placement schedule
//! - [`codec`]: encoder and decoder
//! - [`interpolation`]: linear, quadratic and natural cubic splines
//! - [`metrics`]: population std and std-ratio SNR
//! - [`signalgen`]: deterministic fixtures
//! - [`anchors`]: low-pass listening-test anchors
//! - [`wav_io`]: RIFF/WAVE container with the `ssob` parameter chunk
//! - [`pipeline`], [`sweep`]: end-to-end evaluation
//! - [`cli`]: the `ssoba` command line

pub mod anchors;
pub mod cli;
pub mod codec;
pub mod interpolation;
pub mod metrics;
pub mod pcm_model;
pub mod pipeline;
pub mod signalgen;
pub mod sweep;
pub mod wav_io;

pub use codec::{decode, encode, roundtrip_lossless_check, CodecError, DecodeResult};
pub use interpolation::{reconstruct, SplineOrder};
pub use metrics::{population_std, quality_band, snr_db, QualityBand, SnrReport};
pub use pcm_model::{
    schedule_position, schedule_shift, AudioObject, CodecParams, EncodedStream, ObjectSet,
    Placement, SparseObject,
};

//! End-to-end helpers: encode, decode, reconstruct and score in one call.

use rayon::prelude::*;
use thiserror::Error;

use crate::codec::{decode, encode, CodecError};
use crate::interpolation::{reconstruct, InterpolationError, Reconstruction, SplineOrder};
use crate::metrics::{MetricsError, SnrReport};
use crate::pcm_model::{AudioObject, EncodedStream, ObjectSet};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Interpolation(#[from] InterpolationError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Decode a stream and reconstruct every object. Objects are reconstructed in
/// parallel; output order follows object index.
pub fn decode_and_reconstruct(
    stream: &EncodedStream,
    order: SplineOrder,
) -> Result<Vec<Reconstruction>, PipelineError> {
    let decoded = decode(stream)?;
    let out = decoded
        .sparse_objects
        .par_iter()
        .map(|sparse| reconstruct(sparse, order))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(out)
}

/// Encode into `c_channels`, then decode and reconstruct.
pub fn round_trip(
    input: &ObjectSet,
    c_channels: usize,
    order: SplineOrder,
) -> Result<Vec<AudioObject>, PipelineError> {
    let stream = encode(input, c_channels)?;
    Ok(decode_and_reconstruct(&stream, order)?
        .into_iter()
        .map(|r| r.object)
        .collect())
}

/// Full round trip scored against the input.
pub fn evaluate(
    input: &ObjectSet,
    c_channels: usize,
    order: SplineOrder,
) -> Result<SnrReport, PipelineError> {
    let stream = encode(input, c_channels)?;
    let recovered: Vec<AudioObject> = decode_and_reconstruct(&stream, order)?
        .into_iter()
        .map(|r| r.object)
        .collect();
    Ok(SnrReport::compute(
        &recovered,
        input.objects(),
        Some(stream.params),
    )?)
}

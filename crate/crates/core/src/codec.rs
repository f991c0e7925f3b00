//! Sample-by-sample encoder and decoder.
//!
//! Encoding is a permutation with erasure: no amplitude is ever changed, each
//! kept sample is copied verbatim into its scheduled channel. When there are
//! more channels than objects the surplus channels carry silence.

use thiserror::Error;

use crate::pcm_model::{
    CodecParams, EncodedStream, ModelError, ObjectSet, Placement, SparseObject,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("stream has {found} channels but its parameters declare {expected}")]
    ChannelCountMismatch { expected: usize, found: usize },
    #[error("channel {channel} has {found} samples, expected {expected}")]
    ChannelLengthMismatch {
        channel: usize,
        expected: usize,
        found: usize,
    },
}

/// Per-object decoder output.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub sparse_objects: Vec<SparseObject>,
    pub params: CodecParams,
}

pub fn encode(input: &ObjectSet, c_channels: usize) -> Result<EncodedStream, CodecError> {
    let params = CodecParams::new(input.n(), c_channels)?;
    let len = input.len();
    let mut channels = vec![vec![0.0f32; len]; c_channels];
    for (i, obj) in input.objects().iter().enumerate() {
        for (t, &sample) in obj.samples().iter().enumerate() {
            if let Placement::Kept(r) = params.position(i, t) {
                channels[r][t] = sample;
            }
        }
    }
    Ok(EncodedStream {
        channels,
        sample_rate: input.sample_rate(),
        params,
    })
}

pub fn decode(stream: &EncodedStream) -> Result<DecodeResult, CodecError> {
    let params = stream.params;
    if stream.channels.len() != params.c_channels {
        return Err(CodecError::ChannelCountMismatch {
            expected: params.c_channels,
            found: stream.channels.len(),
        });
    }
    let len = stream.len();
    if let Some((channel, ch)) = stream
        .channels
        .iter()
        .enumerate()
        .find(|(_, ch)| ch.len() != len)
    {
        return Err(CodecError::ChannelLengthMismatch {
            channel,
            expected: len,
            found: ch.len(),
        });
    }

    let sparse_objects = (0..params.n_objects)
        .map(|i| {
            let mut values = vec![0.0f32; len];
            let mut known_mask = vec![false; len];
            for t in 0..len {
                if let Placement::Kept(r) = params.position(i, t) {
                    values[t] = stream.channels[r][t];
                    known_mask[t] = true;
                }
            }
            SparseObject {
                values,
                known_mask,
                object_index: i,
                sample_rate: stream.sample_rate,
            }
        })
        .collect();

    Ok(DecodeResult {
        sparse_objects,
        params,
    })
}

/// True iff the configuration is lossless and decoding reproduces every input
/// sample bit for bit.
pub fn roundtrip_lossless_check(input: &ObjectSet, c_channels: usize) -> Result<bool, CodecError> {
    let stream = encode(input, c_channels)?;
    if !stream.params.is_lossless() {
        return Ok(false);
    }
    let decoded = decode(&stream)?;
    Ok(input
        .objects()
        .iter()
        .zip(&decoded.sparse_objects)
        .all(|(obj, sparse)| {
            sparse.known_mask.iter().all(|&k| k)
                && obj
                    .samples()
                    .iter()
                    .zip(&sparse.values)
                    .all(|(a, b)| a.to_bits() == b.to_bits())
        }))
}

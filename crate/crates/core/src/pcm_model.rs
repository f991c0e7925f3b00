//! Domain types shared by the encoder and decoder, plus the sample-placement
//! schedule that both sides must agree on.
//!
//! At every sample index `t` the column of `N` simultaneous object samples is
//! rotated downward by `K = (t + shift_base) mod N` rows; rows `0..C` of the
//! rotated column are the output channels, rows `C..N` are dropped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Maximum number of objects a single stream may carry.
pub const MAX_OBJECTS: usize = 10;

/// Index origin used by the schedule modulus. Sample `t` (0-based) is shifted
/// as if it were sample `t + 1` in 1-based numbering.
pub const DEFAULT_SHIFT_BASE: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("object '{label}' has no samples")]
    EmptySamples { label: String },
    #[error("object '{label}' has a non-finite sample at index {index}")]
    NonFiniteSample { label: String, index: usize },
    #[error("object '{label}' has invalid sample rate 0")]
    InvalidSampleRate { label: String },
    #[error("object set is empty")]
    EmptyObjectSet,
    #[error("object set holds {count} objects, at most {MAX_OBJECTS} are supported")]
    TooManyObjects { count: usize },
    #[error("object '{label}' has {found} samples, expected {expected}")]
    MismatchedLengths {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("object '{label}' is sampled at {found} Hz, expected {expected} Hz")]
    MismatchedRates {
        label: String,
        expected: u32,
        found: u32,
    },
    #[error("invalid codec parameters: {0}")]
    InvalidParams(String),
}

/// One mono source.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioObject {
    samples: Vec<f32>,
    sample_rate: u32,
    label: String,
}

impl AudioObject {
    pub fn new(
        label: impl Into<String>,
        samples: Vec<f32>,
        sample_rate: u32,
    ) -> Result<Self, ModelError> {
        let label = label.into();
        if samples.is_empty() {
            return Err(ModelError::EmptySamples { label });
        }
        if sample_rate == 0 {
            return Err(ModelError::InvalidSampleRate { label });
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(ModelError::NonFiniteSample { label, index });
        }
        Ok(Self {
            samples,
            sample_rate,
            label,
        })
    }

    pub fn samples(&self) -> &[f32] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; an `AudioObject` holds at least one sample.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn into_samples(self) -> Vec<f32> {
        self.samples
    }
}

/// The encoder input: `1..=10` objects sharing one rate and one length.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectSet {
    objects: Vec<AudioObject>,
}

impl ObjectSet {
    pub fn new(objects: Vec<AudioObject>) -> Result<Self, ModelError> {
        let first = objects.first().ok_or(ModelError::EmptyObjectSet)?;
        if objects.len() > MAX_OBJECTS {
            return Err(ModelError::TooManyObjects {
                count: objects.len(),
            });
        }
        let (rate, len) = (first.sample_rate, first.len());
        for obj in &objects[1..] {
            if obj.sample_rate != rate {
                return Err(ModelError::MismatchedRates {
                    label: obj.label.clone(),
                    expected: rate,
                    found: obj.sample_rate,
                });
            }
            if obj.len() != len {
                return Err(ModelError::MismatchedLengths {
                    label: obj.label.clone(),
                    expected: len,
                    found: obj.len(),
                });
            }
        }
        Ok(Self { objects })
    }

    pub fn objects(&self) -> &[AudioObject] {
        &self.objects
    }

    pub fn n(&self) -> usize {
        self.objects.len()
    }

    pub fn len(&self) -> usize {
        self.objects[0].len()
    }

    /// Always false; see [`AudioObject::is_empty`].
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sample_rate(&self) -> u32 {
        self.objects[0].sample_rate
    }

    pub fn into_objects(self) -> Vec<AudioObject> {
        self.objects
    }
}

/// Everything needed to reproduce the sample schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodecParams {
    pub n_objects: usize,
    pub c_channels: usize,
    pub shift_base: u32,
}

impl CodecParams {
    pub fn new(n_objects: usize, c_channels: usize) -> Result<Self, ModelError> {
        Self::with_shift_base(n_objects, c_channels, DEFAULT_SHIFT_BASE)
    }

    pub fn with_shift_base(
        n_objects: usize,
        c_channels: usize,
        shift_base: u32,
    ) -> Result<Self, ModelError> {
        if n_objects == 0 {
            return Err(ModelError::InvalidParams(
                "object count must be >= 1".into(),
            ));
        }
        if n_objects > MAX_OBJECTS {
            return Err(ModelError::TooManyObjects { count: n_objects });
        }
        if c_channels == 0 {
            return Err(ModelError::InvalidParams(
                "channel count must be >= 1".into(),
            ));
        }
        Ok(Self {
            n_objects,
            c_channels,
            shift_base,
        })
    }

    pub fn is_lossless(&self) -> bool {
        self.n_objects <= self.c_channels
    }

    /// Samples kept per object in every window of `n_objects` indices.
    pub fn kept_per_period(&self) -> usize {
        self.n_objects.min(self.c_channels)
    }

    pub fn shift(&self, t: usize) -> usize {
        shift_with_base(t, self.n_objects, self.shift_base)
    }

    pub fn position(&self, object: usize, t: usize) -> Placement {
        schedule_position(object, t, self)
    }

    /// Object whose sample `t` lands in `channel`, or `None` for a surplus
    /// (silent) channel.
    pub fn object_for_channel(&self, channel: usize, t: usize) -> Option<usize> {
        if channel >= self.n_objects {
            return None;
        }
        let n = self.n_objects;
        Some((channel + n - self.shift(t)) % n)
    }
}

/// Output of the encoder: `C` equal-length channels, playable as plain PCM.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedStream {
    pub channels: Vec<Vec<f32>>,
    pub sample_rate: u32,
    pub params: CodecParams,
}

impl EncodedStream {
    pub fn len(&self) -> usize {
        self.channels.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Decoded samples for one object with an explicit known/missing mask.
/// Values at missing positions are zero and carry no meaning.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseObject {
    pub values: Vec<f32>,
    pub known_mask: Vec<bool>,
    pub object_index: usize,
    pub sample_rate: u32,
}

impl SparseObject {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn known_count(&self) -> usize {
        self.known_mask.iter().filter(|&&k| k).count()
    }

    pub fn known_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.known_mask
            .iter()
            .enumerate()
            .filter_map(|(i, &k)| k.then_some(i))
    }
}

/// Where object `i`'s sample `t` ends up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    Kept(usize),
    Dropped,
}

impl Placement {
    pub fn channel(self) -> Option<usize> {
        match self {
            Placement::Kept(r) => Some(r),
            Placement::Dropped => None,
        }
    }

    pub fn is_kept(self) -> bool {
        matches!(self, Placement::Kept(_))
    }
}

/// Circular shift applied to the column of samples at 0-based index `t`.
///
/// Panics if `n == 0`.
pub fn schedule_shift(t: usize, n: usize) -> usize {
    shift_with_base(t, n, DEFAULT_SHIFT_BASE)
}

fn shift_with_base(t: usize, n: usize, base: u32) -> usize {
    assert!(n >= 1, "object count must be >= 1");
    ((t % n) + (base as usize % n)) % n
}

/// Row `(i + K) mod N` of the rotated column; kept only if it is one of the
/// first `C` rows.
pub fn schedule_position(object: usize, t: usize, params: &CodecParams) -> Placement {
    let n = params.n_objects;
    debug_assert!(object < n);
    let row = (object + params.shift(t)) % n;
    if row < params.c_channels {
        Placement::Kept(row)
    } else {
        Placement::Dropped
    }
}

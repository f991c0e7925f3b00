//! Objective quality: population standard deviation and the std-ratio SNR.
//!
//! The default SNR puts the reconstructed signal's spread in the numerator,
//! `20 log10(std(y) / std(y - x))`. [`SnrReference::Original`] switches the
//! numerator to the original signal for comparison with the more common form.
//! Because `std` removes the mean, a pure DC error yields infinite SNR.

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::pcm_model::{AudioObject, CodecParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("cannot take the standard deviation of an empty vector")]
    EmptyVector,
    #[error("'{label}' has {found} samples, expected {expected}")]
    LengthMismatch {
        label: String,
        expected: usize,
        found: usize,
    },
    #[error("'{label}' is sampled at {found} Hz, expected {expected} Hz")]
    RateMismatch {
        label: String,
        expected: u32,
        found: u32,
    },
    #[error("expected {expected} objects, found {found}")]
    ObjectCountMismatch { expected: usize, found: usize },
}

/// Divide-by-N standard deviation about the mean.
pub fn population_std(v: &[f64]) -> Result<f64, MetricsError> {
    if v.is_empty() {
        return Err(MetricsError::EmptyVector);
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let ss: f64 = v.iter().map(|x| (x - mean) * (x - mean)).sum();
    Ok((ss / n).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SnrReference {
    #[default]
    Reconstructed,
    Original,
}

/// SNR in dB of `reconstructed` against `original`; `f64::INFINITY` when the
/// error signal has zero spread.
pub fn snr_db(reconstructed: &AudioObject, original: &AudioObject) -> Result<f64, MetricsError> {
    snr_db_with(reconstructed, original, SnrReference::Reconstructed)
}

pub fn snr_db_with(
    reconstructed: &AudioObject,
    original: &AudioObject,
    reference: SnrReference,
) -> Result<f64, MetricsError> {
    if reconstructed.len() != original.len() {
        return Err(MetricsError::LengthMismatch {
            label: reconstructed.label().to_string(),
            expected: original.len(),
            found: reconstructed.len(),
        });
    }
    if reconstructed.sample_rate() != original.sample_rate() {
        return Err(MetricsError::RateMismatch {
            label: reconstructed.label().to_string(),
            expected: original.sample_rate(),
            found: reconstructed.sample_rate(),
        });
    }
    let y: Vec<f64> = reconstructed
        .samples()
        .iter()
        .map(|&s| f64::from(s))
        .collect();
    let x: Vec<f64> = original.samples().iter().map(|&s| f64::from(s)).collect();
    snr_db_slices(&y, &x, reference)
}

/// Same as [`snr_db_with`] on raw sample slices of equal length.
pub fn snr_db_slices(y: &[f64], x: &[f64], reference: SnrReference) -> Result<f64, MetricsError> {
    if y.len() != x.len() {
        return Err(MetricsError::LengthMismatch {
            label: "y".into(),
            expected: x.len(),
            found: y.len(),
        });
    }
    let err: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let noise = population_std(&err)?;
    let signal = match reference {
        SnrReference::Reconstructed => population_std(y)?,
        SnrReference::Original => population_std(x)?,
    };
    if noise == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(20.0 * (signal / noise).log10())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QualityBand {
    Clean,
    BarelyImpaired,
    Impaired,
}

pub const CLEAN_DB: f64 = 30.0;
pub const BARELY_IMPAIRED_DB: f64 = 20.0;

pub fn quality_band(snr: f64) -> QualityBand {
    if snr >= CLEAN_DB {
        QualityBand::Clean
    } else if snr >= BARELY_IMPAIRED_DB {
        QualityBand::BarelyImpaired
    } else {
        QualityBand::Impaired
    }
}

/// Serialize a dB value, writing non-finite values as `"inf"`, `"-inf"` or
/// `"nan"` so reports stay valid JSON.
pub fn serialize_db<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str(&format_db(*v))
    }
}

/// Text form used in CSV and JSON output.
pub fn format_db(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:.6}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObjectSnr {
    pub object: usize,
    pub label: String,
    #[serde(serialize_with = "serialize_db")]
    pub snr_db: f64,
    pub band: QualityBand,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnrReport {
    pub objects: Vec<ObjectSnr>,
    #[serde(serialize_with = "serialize_db")]
    pub mean_db: f64,
    pub params: Option<CodecParams>,
    pub sample_rate: u32,
}

impl SnrReport {
    /// Compare each reconstructed object with the original at the same
    /// position.
    pub fn compute(
        reconstructed: &[AudioObject],
        originals: &[AudioObject],
        params: Option<CodecParams>,
    ) -> Result<Self, MetricsError> {
        if reconstructed.len() != originals.len() {
            return Err(MetricsError::ObjectCountMismatch {
                expected: originals.len(),
                found: reconstructed.len(),
            });
        }
        let objects = reconstructed
            .iter()
            .zip(originals)
            .enumerate()
            .map(|(i, (y, x))| {
                let snr = snr_db(y, x)?;
                Ok(ObjectSnr {
                    object: i,
                    label: x.label().to_string(),
                    snr_db: snr,
                    band: quality_band(snr),
                })
            })
            .collect::<Result<Vec<_>, MetricsError>>()?;
        let mean_db = if objects.is_empty() {
            f64::NAN
        } else {
            objects.iter().map(|o| o.snr_db).sum::<f64>() / objects.len() as f64
        };
        Ok(Self {
            objects,
            mean_db,
            params,
            sample_rate: originals.first().map_or(0, AudioObject::sample_rate),
        })
    }

    pub fn per_object_db(&self) -> Vec<f64> {
        self.objects.iter().map(|o| o.snr_db).collect()
    }

    pub fn min_db(&self) -> f64 {
        self.objects
            .iter()
            .map(|o| o.snr_db)
            .fold(f64::INFINITY, f64::min)
    }
}

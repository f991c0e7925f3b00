//! Low-pass anchor stimuli for listening tests.
//!
//! Filters are linear-phase windowed-sinc FIRs (Hamming window), 255 taps at
//! 48 kHz and scaled with the sample rate. Output is delay-compensated so it
//! lines up sample for sample with the input. Loudness matching is plain RMS
//! matching.

use std::f64::consts::PI;

use thiserror::Error;

use crate::pcm_model::{AudioObject, ModelError};

pub const ANCHOR_LOW_HZ: f64 = 3_500.0;
pub const ANCHOR_HIGH_HZ: f64 = 7_000.0;
pub const MIN_ANCHOR_RATE: u32 = 16_000;

const TAPS_AT_48K: f64 = 255.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnchorError {
    #[error("cutoff {cutoff} Hz must lie strictly between 0 and {nyquist} Hz")]
    InvalidCutoff { cutoff: f64, nyquist: f64 },
    #[error("anchors need a sample rate of at least {MIN_ANCHOR_RATE} Hz, got {0}")]
    RateTooLow(u32),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirLowpass {
    taps: Vec<f64>,
    cutoff: f64,
    sample_rate: u32,
}

impl FirLowpass {
    pub fn design(cutoff: f64, sample_rate: u32) -> Result<Self, AnchorError> {
        let rate = f64::from(sample_rate);
        let nyquist = rate / 2.0;
        if !(cutoff > 0.0 && cutoff < nyquist) {
            return Err(AnchorError::InvalidCutoff { cutoff, nyquist });
        }
        let mut len = (TAPS_AT_48K * rate / 48_000.0).round() as usize;
        if len.is_multiple_of(2) {
            len += 1;
        }
        let len = len.max(3);
        let center = (len / 2) as f64;
        let fc = cutoff / rate;
        let mut taps: Vec<f64> = (0..len)
            .map(|k| {
                let m = k as f64 - center;
                let sinc = if m == 0.0 {
                    2.0 * fc
                } else {
                    (2.0 * PI * fc * m).sin() / (PI * m)
                };
                let window = 0.54 - 0.46 * (2.0 * PI * k as f64 / (len - 1) as f64).cos();
                sinc * window
            })
            .collect();
        let sum: f64 = taps.iter().sum();
        taps.iter_mut().for_each(|t| *t /= sum);
        Ok(Self {
            taps,
            cutoff,
            sample_rate,
        })
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn group_delay(&self) -> usize {
        self.taps.len() / 2
    }

    /// Zero-padded convolution, shifted by the group delay; same length as
    /// the input.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let delay = self.group_delay() as isize;
        let len = x.len() as isize;
        (0..len)
            .map(|t| {
                self.taps
                    .iter()
                    .enumerate()
                    .filter_map(|(k, &h)| {
                        let idx = t + delay - k as isize;
                        (0..len).contains(&idx).then(|| h * x[idx as usize])
                    })
                    .sum()
            })
            .collect()
    }

    /// Magnitude response in dB at `freq`, from the taps' DTFT.
    pub fn response_db(&self, freq: f64) -> f64 {
        let w = 2.0 * PI * freq / f64::from(self.sample_rate);
        let (re, im) = self
            .taps
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, &h)| {
                (re + h * (w * k as f64).cos(), im - h * (w * k as f64).sin())
            });
        20.0 * (re * re + im * im).sqrt().log10()
    }
}

fn to_f64(x: &AudioObject) -> Vec<f64> {
    x.samples().iter().map(|&s| f64::from(s)).collect()
}

fn rms(v: &[f64]) -> f64 {
    (v.iter().map(|s| s * s).sum::<f64>() / v.len() as f64).sqrt()
}

pub fn lowpass(x: &AudioObject, cutoff: f64) -> Result<AudioObject, AnchorError> {
    let filter = FirLowpass::design(cutoff, x.sample_rate())?;
    let y = filter.apply(&to_f64(x));
    Ok(AudioObject::new(
        x.label(),
        y.into_iter().map(|s| s as f32).collect(),
        x.sample_rate(),
    )?)
}

/// The 3.5 kHz and 7 kHz anchors, each scaled to the reference's RMS.
#[derive(Debug, Clone, PartialEq)]
pub struct Anchors {
    pub anchor_3_5k: AudioObject,
    pub anchor_7k: AudioObject,
}

pub fn make_anchors(reference: &AudioObject) -> Result<Anchors, AnchorError> {
    if reference.sample_rate() < MIN_ANCHOR_RATE {
        return Err(AnchorError::RateTooLow(reference.sample_rate()));
    }
    let x = to_f64(reference);
    let target = rms(&x);
    let make = |cutoff: f64, suffix: &str| -> Result<AudioObject, AnchorError> {
        let filter = FirLowpass::design(cutoff, reference.sample_rate())?;
        let y = filter.apply(&x);
        let level = rms(&y);
        let gain = if level > 0.0 { target / level } else { 1.0 };
        Ok(AudioObject::new(
            format!("{}-{suffix}", reference.label()),
            y.into_iter().map(|s| (s * gain) as f32).collect(),
            reference.sample_rate(),
        )?)
    };
    Ok(Anchors {
        anchor_3_5k: make(ANCHOR_LOW_HZ, "anchor3.5k")?,
        anchor_7k: make(ANCHOR_HIGH_HZ, "anchor7k")?,
    })
}

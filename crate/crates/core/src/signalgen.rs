//! Deterministic synthetic material for tests, examples and the rate sweep.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pcm_model::{AudioObject, ModelError, ObjectSet, MAX_OBJECTS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SignalError {
    #[error("tone at {frequency} Hz is not below Nyquist ({nyquist} Hz)")]
    AliasedTone { frequency: f64, nyquist: f64 },
    #[error("amplitude {amplitude} would clip (must be within [0, 1])")]
    ClippingAmplitude { amplitude: f64 },
    #[error("invalid signal spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Waveform family. Frequencies are in Hz.
#[derive(Debug, Clone, PartialEq)]
pub enum SignalKind {
    Sine {
        frequency: f64,
    },
    /// Equal-amplitude partials; `amplitude` is the summed peak.
    MultiTone {
        frequencies: Vec<f64>,
    },
    /// Sum of `partials` seeded random-phase tones spread uniformly over
    /// `[low, high]`.
    BandNoise {
        low: f64,
        high: f64,
        partials: usize,
    },
    /// Linear sweep from `-amplitude` to `+amplitude`.
    Ramp,
    Constant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignalSpec {
    pub kind: SignalKind,
    pub amplitude: f64,
    pub duration_s: f64,
    pub sample_rate: u32,
    pub seed: u64,
    /// Initial phase of tonal kinds, radians.
    pub phase: f64,
    /// Raised-cosine fade-in and fade-out length, seconds.
    pub fade_s: f64,
}

impl SignalSpec {
    pub fn new(kind: SignalKind, amplitude: f64, duration_s: f64, sample_rate: u32) -> Self {
        Self {
            kind,
            amplitude,
            duration_s,
            sample_rate,
            seed: 0,
            phase: 0.0,
            fade_s: 0.0,
        }
    }

    pub fn sine(frequency: f64, amplitude: f64, duration_s: f64, sample_rate: u32) -> Self {
        Self::new(
            SignalKind::Sine { frequency },
            amplitude,
            duration_s,
            sample_rate,
        )
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn with_fade(mut self, fade_s: f64) -> Self {
        self.fade_s = fade_s;
        self
    }

    pub fn len(&self) -> usize {
        (self.duration_s * f64::from(self.sample_rate)).round() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self) -> Result<(), SignalError> {
        if !(0.0..=1.0).contains(&self.amplitude) {
            return Err(SignalError::ClippingAmplitude {
                amplitude: self.amplitude,
            });
        }
        if self.sample_rate == 0 {
            return Err(SignalError::InvalidSpec(
                "sample rate must be positive".into(),
            ));
        }
        if !self.duration_s.is_finite() || self.duration_s <= 0.0 || self.is_empty() {
            return Err(SignalError::InvalidSpec(
                "duration must cover at least one sample".into(),
            ));
        }
        if self.fade_s < 0.0 {
            return Err(SignalError::InvalidSpec("fade must be non-negative".into()));
        }
        let nyquist = f64::from(self.sample_rate) / 2.0;
        let check = |f: f64| {
            if f.is_finite() && (0.0..nyquist).contains(&f) {
                Ok(())
            } else {
                Err(SignalError::AliasedTone {
                    frequency: f,
                    nyquist,
                })
            }
        };
        match &self.kind {
            SignalKind::Sine { frequency } => check(*frequency),
            SignalKind::MultiTone { frequencies } => {
                if frequencies.is_empty() {
                    return Err(SignalError::InvalidSpec(
                        "multitone needs a frequency".into(),
                    ));
                }
                frequencies.iter().try_for_each(|&f| check(f))
            }
            SignalKind::BandNoise {
                low,
                high,
                partials,
            } => {
                check(*low)?;
                check(*high)?;
                if low > high || *partials == 0 {
                    return Err(SignalError::InvalidSpec(
                        "band noise needs low <= high and at least one partial".into(),
                    ));
                }
                Ok(())
            }
            SignalKind::Ramp | SignalKind::Constant => Ok(()),
        }
    }
}

fn tones(freqs_phases: &[(f64, f64)], amp_each: f64, rate: f64, len: usize) -> Vec<f64> {
    (0..len)
        .map(|t| {
            let time = t as f64 / rate;
            freqs_phases
                .iter()
                .map(|&(f, p)| amp_each * (2.0 * PI * f * time + p).sin())
                .sum()
        })
        .collect()
}

pub fn generate(spec: &SignalSpec) -> Result<AudioObject, SignalError> {
    spec.validate()?;
    let len = spec.len();
    let rate = f64::from(spec.sample_rate);
    let a = spec.amplitude;
    let mut samples = match &spec.kind {
        SignalKind::Sine { frequency } => tones(&[(*frequency, spec.phase)], a, rate, len),
        SignalKind::MultiTone { frequencies } => {
            let partials: Vec<(f64, f64)> = frequencies.iter().map(|&f| (f, spec.phase)).collect();
            tones(&partials, a / partials.len() as f64, rate, len)
        }
        SignalKind::BandNoise {
            low,
            high,
            partials,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let step = if *partials > 1 {
                (high - low) / (*partials - 1) as f64
            } else {
                0.0
            };
            let parts: Vec<(f64, f64)> = (0..*partials)
                .map(|k| (low + step * k as f64, rng.random_range(0.0..2.0 * PI)))
                .collect();
            tones(&parts, a / *partials as f64, rate, len)
        }
        SignalKind::Ramp => {
            if len == 1 {
                vec![0.0]
            } else {
                (0..len)
                    .map(|t| -a + 2.0 * a * t as f64 / (len - 1) as f64)
                    .collect()
            }
        }
        SignalKind::Constant => vec![a; len],
    };

    let fade = ((spec.fade_s * rate).round() as usize).min(len / 2);
    for k in 0..fade {
        let g = 0.5 - 0.5 * (PI * k as f64 / fade as f64).cos();
        samples[k] *= g;
        samples[len - 1 - k] *= g;
    }

    let label = match spec.kind {
        SignalKind::Sine { .. } => "sine",
        SignalKind::MultiTone { .. } => "multitone",
        SignalKind::BandNoise { .. } => "bandnoise",
        SignalKind::Ramp => "ramp",
        SignalKind::Constant => "constant",
    };
    Ok(AudioObject::new(
        label,
        samples.into_iter().map(|s| s as f32).collect(),
        spec.sample_rate,
    )?)
}

/// Tone frequency of fixture object `k`.
pub const FIXTURE_BASE_HZ: f64 = 2_500.0;
pub const FIXTURE_STEP_HZ: f64 = 15.0;
pub const FIXTURE_AMPLITUDE: f64 = 0.5;
pub const FIXTURE_FADE_S: f64 = 0.01;

pub fn fixture_frequency(k: usize) -> f64 {
    FIXTURE_BASE_HZ + FIXTURE_STEP_HZ * k as f64
}

/// `n` faded sines at closely spaced but distinct frequencies, labelled
/// `obj0..obj{n-1}`. Nearby frequencies keep per-object reconstruction quality
/// comparable within a class while remaining mutually uncorrelated.
pub fn standard_object_set(
    n: usize,
    sample_rate: u32,
    duration_s: f64,
) -> Result<ObjectSet, SignalError> {
    standard_object_set_seeded(n, sample_rate, duration_s, 0)
}

/// Like [`standard_object_set`]; a non-zero `seed` draws random initial
/// phases.
pub fn standard_object_set_seeded(
    n: usize,
    sample_rate: u32,
    duration_s: f64,
    seed: u64,
) -> Result<ObjectSet, SignalError> {
    if !(1..=MAX_OBJECTS).contains(&n) {
        return Err(SignalError::InvalidSpec(format!(
            "object count {n} outside 1..={MAX_OBJECTS}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects = (0..n)
        .map(|k| {
            let phase = if seed == 0 {
                0.0
            } else {
                rng.random_range(0.0..2.0 * PI)
            };
            let spec = SignalSpec::sine(
                fixture_frequency(k),
                FIXTURE_AMPLITUDE,
                duration_s,
                sample_rate,
            )
            .with_phase(phase)
            .with_fade(FIXTURE_FADE_S);
            generate(&spec).map(|o| o.with_label(format!("obj{k}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ObjectSet::new(objects)?)
}

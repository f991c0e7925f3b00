//! Command-line front end (`ssoba encode|decode|snr|sweep|anchors`).
//!
//! Exit codes: 0 success, 2 validation or usage error, 3 I/O error, 4
//! internal error. Diagnostics go to stderr; reports go to stdout unless
//! `--out` is given.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::anchors::{make_anchors, AnchorError};
use crate::codec::{encode, CodecError};
use crate::interpolation::SplineOrder;
use crate::metrics::{format_db, MetricsError, SnrReport};
use crate::pcm_model::{AudioObject, ModelError, ObjectSet};
use crate::pipeline::{decode_and_reconstruct, PipelineError};
use crate::sweep::{run_sweep, write_csv, SweepConfig, SweepError, DEFAULT_RATES};
use crate::wav_io::{
    encoded_stream_from_wav, read_wav, write_encoded_stream, write_wav, SampleEncoding, StreamInfo,
    WavError, WavFormat,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io { path: PathBuf, source: io::Error },
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io { .. } => EXIT_IO,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn invalid(path: &Path, err: impl fmt::Display) -> Self {
        CliError::Validation(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "validation error: {msg}"),
            CliError::Io { path, source } => write!(f, "i/o error on {}: {source}", path.display()),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Validation(e.to_string())
            }
        }
    )*};
}
validation_from!(
    ModelError,
    CodecError,
    MetricsError,
    WavError,
    AnchorError,
    PipelineError
);

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::Csv(e) => CliError::Internal(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ssoba",
    version,
    about = "Sample-by-sample object based audio codec"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed mono object WAVs into a C-channel WAV.
    Encode {
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        channels: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "float32")]
        encoding: SampleEncoding,
    },
    /// Split an encoded WAV back into objects, filling dropped samples.
    Decode {
        encoded: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "cubic")]
        spline: SplineOrder,
        #[arg(long, default_value = "float32")]
        encoding: SampleEncoding,
    },
    /// Score decoded objects against originals.
    Snr {
        original_dir: PathBuf,
        decoded_dir: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SNR over a grid of object counts and sample rates on synthetic fixtures.
    Sweep {
        /// Object counts, e.g. `3..10` or `3,5,7`.
        #[arg(long, default_value = "3..10")]
        objects: String,
        #[arg(long, default_value_t = 2)]
        channels: usize,
        /// Comma-separated sample rates in Hz.
        #[arg(long)]
        rates: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        duration: f64,
        #[arg(long, default_value = "cubic")]
        spline: SplineOrder,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write 3.5 kHz and 7 kHz low-pass anchors of a mono reference.
    Anchors {
        reference: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "float32")]
        encoding: SampleEncoding,
    },
}

/// Parse arguments and run; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
        }
    };
    match run(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("ssoba: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Encode {
            inputs,
            channels,
            out,
            encoding,
        } => cmd_encode(&inputs, channels, &out, encoding),
        Command::Decode {
            encoded,
            out,
            spline,
            encoding,
        } => cmd_decode(&encoded, &out, spline, encoding).map(|_| ()),
        Command::Snr {
            original_dir,
            decoded_dir,
            format,
            out,
        } => {
            let report = cmd_snr(&original_dir, &decoded_dir)?;
            let text = match format {
                ReportFormat::Json => report_json(&report)?,
                ReportFormat::Csv => report_csv(&report),
            };
            emit(out.as_deref(), text.as_bytes())
        }
        Command::Sweep {
            objects,
            channels,
            rates,
            seed,
            duration,
            spline,
            format,
            out,
        } => {
            let config = SweepConfig {
                objects: parse_objects(&objects)?,
                c_channels: channels,
                rates: match rates {
                    Some(r) => parse_rates(&r)?,
                    None => DEFAULT_RATES.to_vec(),
                },
                duration_s: duration,
                order: spline,
                seed,
            };
            let rows = run_sweep(&config)?;
            let mut buf = Vec::new();
            match format {
                ReportFormat::Csv => write_csv(&rows, &mut buf)?,
                ReportFormat::Json => {
                    serde_json::to_writer_pretty(&mut buf, &rows)
                        .map_err(|e| CliError::Internal(e.to_string()))?;
                    buf.push(b'\n');
                }
            }
            emit(out.as_deref(), &buf)
        }
        Command::Anchors {
            reference,
            out,
            encoding,
        } => cmd_anchors(&reference, &out, encoding).map(|_| ()),
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

/// `3..10` (inclusive), `3,4,5`, or a single count.
pub fn parse_objects(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Validation(format!("invalid object list '{text}'"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi
            .trim_start_matches('=')
            .trim()
            .parse()
            .map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

pub fn parse_rates(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Validation(format!("invalid rate '{s}'")))
        })
        .collect()
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

/// Load a mono WAV as an object labelled with the file stem.
pub fn read_mono_object(path: &Path) -> Result<AudioObject, CliError> {
    let wav = read_wav(&read_file(path)?).map_err(|e| CliError::invalid(path, e))?;
    if wav.channels.len() != 1 {
        return Err(CliError::invalid(
            path,
            format!(
                "expected a mono file, found {} channels",
                wav.channels.len()
            ),
        ));
    }
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let samples = wav.channels.into_iter().next().unwrap_or_default();
    AudioObject::new(label, samples, wav.format.sample_rate).map_err(|e| CliError::invalid(path, e))
}

fn write_mono(path: &Path, obj: &AudioObject, encoding: SampleEncoding) -> Result<(), CliError> {
    let format = WavFormat {
        encoding,
        channels: 1,
        sample_rate: obj.sample_rate(),
    };
    let bytes = write_wav(&[obj.samples().to_vec()], format)?;
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

/// Sidecar path for an encoded file: `out.wav` -> `out.ssob.json`.
pub fn sidecar_path(encoded: &Path) -> PathBuf {
    encoded.with_extension("ssob.json")
}

pub fn regime_line(n: usize, c: usize) -> String {
    if n <= c {
        "regime: lossless".to_string()
    } else {
        format!("regime: lossy (keep {c}/{n} samples per object)")
    }
}

pub fn cmd_encode(
    inputs: &[PathBuf],
    channels: usize,
    out: &Path,
    encoding: SampleEncoding,
) -> Result<(), CliError> {
    if inputs.is_empty() {
        return Err(CliError::Validation(
            "at least one input is required".into(),
        ));
    }
    let objects = inputs
        .iter()
        .map(|p| read_mono_object(p))
        .collect::<Result<Vec<_>, _>>()?;
    let set = ObjectSet::new(objects).map_err(|e| match &e {
        ModelError::MismatchedLengths { label, .. } | ModelError::MismatchedRates { label, .. } => {
            let path = inputs
                .iter()
                .find(|p| p.file_stem().is_some_and(|s| s.to_string_lossy() == *label))
                .map_or_else(|| label.clone(), |p| p.display().to_string());
            CliError::Validation(format!("{path}: {e}"))
        }
        _ => CliError::Validation(e.to_string()),
    })?;
    let stream = encode(&set, channels)?;
    let bytes = write_encoded_stream(&stream, encoding)?;
    fs::write(out, bytes).map_err(|e| CliError::io(out, e))?;
    let sidecar = sidecar_path(out);
    let info = StreamInfo::new(stream.params, stream.sample_rate);
    fs::write(&sidecar, info.to_sidecar_json()).map_err(|e| CliError::io(&sidecar, e))?;

    let p = stream.params;
    eprintln!(
        "params: objects={} channels={} shift_base={} rate={} Hz",
        p.n_objects, p.c_channels, p.shift_base, stream.sample_rate
    );
    eprintln!("{}", regime_line(p.n_objects, p.c_channels));
    Ok(())
}

/// Returns the written object paths.
pub fn cmd_decode(
    encoded: &Path,
    out_dir: &Path,
    order: SplineOrder,
    encoding: SampleEncoding,
) -> Result<Vec<PathBuf>, CliError> {
    let wav = read_wav(&read_file(encoded)?).map_err(|e| CliError::invalid(encoded, e))?;
    let sidecar = match wav.stream_info {
        Some(_) => None,
        None => {
            let path = sidecar_path(encoded);
            match fs::read_to_string(&path) {
                Ok(text) => Some(
                    StreamInfo::from_sidecar_json(&text)
                        .map_err(|e| CliError::invalid(&path, e))?,
                ),
                Err(e) if e.kind() == io::ErrorKind::NotFound => None,
                Err(e) => return Err(CliError::io(&path, e)),
            }
        }
    };
    let stream =
        encoded_stream_from_wav(wav, sidecar).map_err(|e| CliError::invalid(encoded, e))?;
    let recovered = decode_and_reconstruct(&stream, order)?;

    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut written = Vec::with_capacity(recovered.len());
    for (i, r) in recovered.iter().enumerate() {
        let path = out_dir.join(format!("obj{i}.wav"));
        write_mono(&path, &r.object, encoding)?;
        written.push(path);
    }
    eprintln!(
        "decoded {} objects ({}) into {}",
        written.len(),
        order,
        out_dir.display()
    );
    Ok(written)
}

fn wav_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("wav")))
        .collect();
    files.sort_by_key(|p| natural_key(p));
    Ok(files)
}

fn natural_key(p: &Path) -> (String, u64, String) {
    let stem = p
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let digits = stem.len() - stem.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (prefix, number) = stem.split_at(stem.len() - digits);
    (
        prefix.to_string(),
        number.parse().unwrap_or(0),
        stem.clone(),
    )
}

/// Pair the WAV files of both directories in name order and score them.
pub fn cmd_snr(original_dir: &Path, decoded_dir: &Path) -> Result<SnrReport, CliError> {
    let originals = wav_files(original_dir)?
        .iter()
        .map(|p| read_mono_object(p))
        .collect::<Result<Vec<_>, _>>()?;
    let decoded = wav_files(decoded_dir)?
        .iter()
        .map(|p| read_mono_object(p))
        .collect::<Result<Vec<_>, _>>()?;
    if originals.is_empty() {
        return Err(CliError::Validation(format!(
            "no WAV files in {}",
            original_dir.display()
        )));
    }
    let report = SnrReport::compute(&decoded, &originals, None).map_err(|e| match &e {
        MetricsError::LengthMismatch { label, .. } | MetricsError::RateMismatch { label, .. } => {
            CliError::Validation(format!("object '{label}' does not match its original: {e}"))
        }
        other => CliError::Validation(other.to_string()),
    })?;
    Ok(report)
}

pub fn report_json(report: &SnrReport) -> Result<String, CliError> {
    let mut text =
        serde_json::to_string_pretty(report).map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn report_csv(report: &SnrReport) -> String {
    let mut text = String::from("object,label,snr_db,band\n");
    for o in &report.objects {
        text.push_str(&format!(
            "{},{},{},{:?}\n",
            o.object,
            o.label,
            format_db(o.snr_db),
            o.band
        ));
    }
    text
}

pub fn cmd_anchors(
    reference: &Path,
    out_dir: &Path,
    encoding: SampleEncoding,
) -> Result<[PathBuf; 2], CliError> {
    let obj = read_mono_object(reference)?;
    let anchors = make_anchors(&obj).map_err(|e| CliError::invalid(reference, e))?;
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let low = out_dir.join("anchor_3_5k.wav");
    let high = out_dir.join("anchor_7k.wav");
    write_mono(&low, &anchors.anchor_3_5k, encoding)?;
    write_mono(&high, &anchors.anchor_7k, encoding)?;
    Ok([low, high])
}

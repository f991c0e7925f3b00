//! RIFF/WAVE reading and writing.
//!
//! Supported payloads are 16- and 24-bit integer PCM and 32-bit IEEE float.
//! Integer samples map to `[-1, 1)` by division by `2^(bits-1)`; writing
//! rounds half to even and saturates. Float32 round trips are bit-exact.
//!
//! Encoded streams carry their codec parameters in a private `ssob` chunk
//! placed after `data`:
//!
//! ```text
//! "ssob" | size = 17 (u32 LE) | version u8 = 1 | N u32 | C u32 | shift_base u32 | rate u32 | pad u8
//! ```
//!
//! Players that do not know the chunk skip it. A JSON sidecar with the same
//! fields covers toolchains that strip unknown chunks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pcm_model::{CodecParams, EncodedStream};

pub const SSOB_CHUNK_ID: [u8; 4] = *b"ssob";
pub const SSOB_VERSION: u8 = 1;
const SSOB_PAYLOAD_LEN: usize = 17;

const FORMAT_PCM: u16 = 1;
const FORMAT_IEEE_FLOAT: u16 = 3;
const FORMAT_EXTENSIBLE: u16 = 0xFFFE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WavError {
    #[error("not a RIFF/WAVE file (at byte {offset})")]
    NotRiff { offset: usize },
    #[error("unsupported encoding: format tag {format_tag:#06x}, {bits} bits (at byte {offset})")]
    UnsupportedEncoding {
        offset: usize,
        format_tag: u16,
        bits: u16,
    },
    #[error("truncated data at byte {offset}")]
    TruncatedData { offset: usize },
    #[error("malformed fmt chunk at byte {offset}: {reason}")]
    InvalidFormat { offset: usize, reason: String },
    #[error("missing '{0}' chunk")]
    MissingChunk(&'static str),
    #[error("no channels to write")]
    EmptyChannels,
    #[error("channel {channel} has {found} samples, expected {expected}")]
    ChannelLengthMismatch {
        channel: usize,
        expected: usize,
        found: usize,
    },
    #[error("format declares {declared} channels but {found} were supplied")]
    ChannelCountMismatch { declared: u16, found: usize },
    #[error("stream carries no codec parameters (no valid 'ssob' chunk and no sidecar)")]
    MissingParams,
    #[error("invalid sidecar: {0}")]
    InvalidSidecar(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleEncoding {
    Pcm16,
    Pcm24,
    #[default]
    Float32,
}

impl SampleEncoding {
    pub fn bits(self) -> u16 {
        match self {
            SampleEncoding::Pcm16 => 16,
            SampleEncoding::Pcm24 => 24,
            SampleEncoding::Float32 => 32,
        }
    }

    pub fn bytes(self) -> usize {
        usize::from(self.bits() / 8)
    }

    fn format_tag(self) -> u16 {
        match self {
            SampleEncoding::Float32 => FORMAT_IEEE_FLOAT,
            _ => FORMAT_PCM,
        }
    }
}

impl std::str::FromStr for SampleEncoding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pcm16" | "s16" | "16" => Ok(SampleEncoding::Pcm16),
            "pcm24" | "s24" | "24" => Ok(SampleEncoding::Pcm24),
            "float32" | "f32" => Ok(SampleEncoding::Float32),
            other => Err(format!("unknown sample encoding '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WavFormat {
    pub encoding: SampleEncoding,
    pub channels: u16,
    pub sample_rate: u32,
}

/// Codec parameters persisted alongside an encoded stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamInfo {
    pub version: u8,
    pub n_objects: u32,
    pub c_channels: u32,
    pub shift_base: u32,
    pub sample_rate: u32,
}

impl StreamInfo {
    pub fn new(params: CodecParams, sample_rate: u32) -> Self {
        Self {
            version: SSOB_VERSION,
            n_objects: params.n_objects as u32,
            c_channels: params.c_channels as u32,
            shift_base: params.shift_base,
            sample_rate,
        }
    }

    pub fn params(&self) -> Option<CodecParams> {
        if self.version != SSOB_VERSION {
            return None;
        }
        CodecParams::with_shift_base(
            self.n_objects as usize,
            self.c_channels as usize,
            self.shift_base,
        )
        .ok()
    }

    pub fn to_chunk_payload(&self) -> [u8; SSOB_PAYLOAD_LEN] {
        let mut out = [0u8; SSOB_PAYLOAD_LEN];
        out[0] = self.version;
        for (k, v) in [
            self.n_objects,
            self.c_channels,
            self.shift_base,
            self.sample_rate,
        ]
        .into_iter()
        .enumerate()
        {
            out[1 + 4 * k..5 + 4 * k].copy_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// Parse a chunk payload; `None` for anything but a well-formed version-1
    /// payload with valid parameters.
    pub fn from_chunk_payload(payload: &[u8]) -> Option<Self> {
        if payload.len() < SSOB_PAYLOAD_LEN || payload[0] != SSOB_VERSION {
            return None;
        }
        let word = |k: usize| u32::from_le_bytes(payload[1 + 4 * k..5 + 4 * k].try_into().unwrap());
        let info = Self {
            version: payload[0],
            n_objects: word(0),
            c_channels: word(1),
            shift_base: word(2),
            sample_rate: word(3),
        };
        info.params().map(|_| info)
    }

    pub fn to_sidecar_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }

    pub fn from_sidecar_json(text: &str) -> Result<Self, WavError> {
        let info: Self =
            serde_json::from_str(text).map_err(|e| WavError::InvalidSidecar(e.to_string()))?;
        match info.params() {
            Some(_) => Ok(info),
            None => Err(WavError::InvalidSidecar("invalid codec parameters".into())),
        }
    }
}

/// A parsed WAV file.
#[derive(Debug, Clone, PartialEq)]
pub struct WavData {
    pub channels: Vec<Vec<f32>>,
    pub format: WavFormat,
    pub stream_info: Option<StreamInfo>,
}

fn u16_at(bytes: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([bytes[at], bytes[at + 1]])
}

fn u32_at(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap())
}

fn parse_fmt(body: &[u8], offset: usize) -> Result<(SampleEncoding, u16, u32), WavError> {
    if body.len() < 16 {
        return Err(WavError::InvalidFormat {
            offset,
            reason: format!("chunk is {} bytes, need 16", body.len()),
        });
    }
    let mut tag = u16_at(body, 0);
    let channels = u16_at(body, 2);
    let rate = u32_at(body, 4);
    let block_align = u16_at(body, 12);
    let bits = u16_at(body, 14);
    if tag == FORMAT_EXTENSIBLE {
        if body.len() < 26 {
            return Err(WavError::InvalidFormat {
                offset,
                reason: "extensible fmt chunk without sub-format".into(),
            });
        }
        tag = u16_at(body, 24);
    }
    let encoding = match (tag, bits) {
        (FORMAT_PCM, 16) => SampleEncoding::Pcm16,
        (FORMAT_PCM, 24) => SampleEncoding::Pcm24,
        (FORMAT_IEEE_FLOAT, 32) => SampleEncoding::Float32,
        _ => {
            return Err(WavError::UnsupportedEncoding {
                offset,
                format_tag: tag,
                bits,
            })
        }
    };
    if channels == 0 || rate == 0 {
        return Err(WavError::InvalidFormat {
            offset,
            reason: "zero channels or sample rate".into(),
        });
    }
    if usize::from(block_align) != usize::from(channels) * encoding.bytes() {
        return Err(WavError::InvalidFormat {
            offset,
            reason: format!("block align {block_align} does not match {channels} channels"),
        });
    }
    Ok((encoding, channels, rate))
}

fn decode_sample(encoding: SampleEncoding, b: &[u8]) -> f32 {
    match encoding {
        SampleEncoding::Pcm16 => f32::from(i16::from_le_bytes([b[0], b[1]])) / 32_768.0,
        SampleEncoding::Pcm24 => {
            let v = i32::from_le_bytes([0, b[0], b[1], b[2]]) >> 8;
            v as f32 / 8_388_608.0
        }
        SampleEncoding::Float32 => f32::from_le_bytes([b[0], b[1], b[2], b[3]]),
    }
}

pub fn read_wav(bytes: &[u8]) -> Result<WavData, WavError> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" {
        return Err(WavError::NotRiff { offset: 0 });
    }
    if &bytes[8..12] != b"WAVE" {
        return Err(WavError::NotRiff { offset: 8 });
    }

    let mut fmt = None;
    let mut data = None;
    let mut stream_info = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(bytes, pos + 4) as usize;
        let body_start = pos + 8;
        let body_end = body_start
            .checked_add(size)
            .filter(|&end| end <= bytes.len())
            .ok_or(WavError::TruncatedData { offset: pos })?;
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => fmt = Some(parse_fmt(body, pos)?),
            b"data" => data = Some((body, body_start)),
            id if id == SSOB_CHUNK_ID => stream_info = StreamInfo::from_chunk_payload(body),
            _ => {}
        }
        pos = body_end + (size & 1);
    }

    let (encoding, n_channels, sample_rate) = fmt.ok_or(WavError::MissingChunk("fmt "))?;
    let (payload, payload_offset) = data.ok_or(WavError::MissingChunk("data"))?;
    let frame = usize::from(n_channels) * encoding.bytes();
    if payload.len() % frame != 0 {
        return Err(WavError::TruncatedData {
            offset: payload_offset + payload.len() / frame * frame,
        });
    }
    let frames = payload.len() / frame;
    let width = encoding.bytes();
    let mut channels = vec![Vec::with_capacity(frames); usize::from(n_channels)];
    for chunk in payload.chunks_exact(frame) {
        for (c, sample) in chunk.chunks_exact(width).enumerate() {
            channels[c].push(decode_sample(encoding, sample));
        }
    }
    Ok(WavData {
        channels,
        format: WavFormat {
            encoding,
            channels: n_channels,
            sample_rate,
        },
        stream_info,
    })
}

fn quantize(v: f32, bits: u16) -> i32 {
    let scale = f64::from(1u32 << (bits - 1));
    (f64::from(v) * scale)
        .round_ties_even()
        .clamp(-scale, scale - 1.0) as i32
}

pub fn write_wav(channels: &[Vec<f32>], format: WavFormat) -> Result<Vec<u8>, WavError> {
    write_wav_with_info(channels, format, None)
}

/// Canonical 16-byte `fmt`, then `data`, then an optional `ssob` chunk.
pub fn write_wav_with_info(
    channels: &[Vec<f32>],
    format: WavFormat,
    info: Option<&StreamInfo>,
) -> Result<Vec<u8>, WavError> {
    let first = channels.first().ok_or(WavError::EmptyChannels)?;
    if usize::from(format.channels) != channels.len() {
        return Err(WavError::ChannelCountMismatch {
            declared: format.channels,
            found: channels.len(),
        });
    }
    let frames = first.len();
    if let Some((channel, ch)) = channels.iter().enumerate().find(|(_, c)| c.len() != frames) {
        return Err(WavError::ChannelLengthMismatch {
            channel,
            expected: frames,
            found: ch.len(),
        });
    }

    let width = format.encoding.bytes();
    let block_align = channels.len() * width;
    let data_len = frames * block_align;
    let data_padded = data_len + (data_len & 1);
    let ssob_len = info.map_or(0, |_| 8 + SSOB_PAYLOAD_LEN + 1);
    let riff_len = 4 + (8 + 16) + (8 + data_padded) + ssob_len;

    let mut out = Vec::with_capacity(8 + riff_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(riff_len as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&format.encoding.format_tag().to_le_bytes());
    out.extend_from_slice(&format.channels.to_le_bytes());
    out.extend_from_slice(&format.sample_rate.to_le_bytes());
    out.extend_from_slice(&((format.sample_rate as usize * block_align) as u32).to_le_bytes());
    out.extend_from_slice(&(block_align as u16).to_le_bytes());
    out.extend_from_slice(&format.encoding.bits().to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for t in 0..frames {
        for ch in channels {
            let v = ch[t];
            match format.encoding {
                SampleEncoding::Pcm16 => {
                    out.extend_from_slice(&(quantize(v, 16) as i16).to_le_bytes())
                }
                SampleEncoding::Pcm24 => out.extend_from_slice(&quantize(v, 24).to_le_bytes()[..3]),
                SampleEncoding::Float32 => out.extend_from_slice(&v.to_le_bytes()),
            }
        }
    }
    if data_len & 1 == 1 {
        out.push(0);
    }
    if let Some(info) = info {
        out.extend_from_slice(&SSOB_CHUNK_ID);
        out.extend_from_slice(&(SSOB_PAYLOAD_LEN as u32).to_le_bytes());
        out.extend_from_slice(&info.to_chunk_payload());
        out.push(0);
    }
    Ok(out)
}

/// Write an encoded stream as an ordinary `C`-channel WAV with an `ssob`
/// chunk.
pub fn write_encoded_stream(
    stream: &EncodedStream,
    encoding: SampleEncoding,
) -> Result<Vec<u8>, WavError> {
    let format = WavFormat {
        encoding,
        channels: stream.channels.len() as u16,
        sample_rate: stream.sample_rate,
    };
    let info = StreamInfo::new(stream.params, stream.sample_rate);
    write_wav_with_info(&stream.channels, format, Some(&info))
}

/// Rebuild an encoded stream from a parsed file. The embedded chunk wins; the
/// sidecar is the fallback.
pub fn encoded_stream_from_wav(
    data: WavData,
    sidecar: Option<StreamInfo>,
) -> Result<EncodedStream, WavError> {
    let info = data
        .stream_info
        .or(sidecar)
        .ok_or(WavError::MissingParams)?;
    let params = info.params().ok_or(WavError::MissingParams)?;
    Ok(EncodedStream {
        channels: data.channels,
        sample_rate: data.format.sample_rate,
        params,
    })
}

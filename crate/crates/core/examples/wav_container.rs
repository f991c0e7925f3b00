// Write an encoded stream as a plain multichannel WAV and read it back.
//
// The codec parameters travel in a private chunk that ordinary players
// skip. Float32 keeps the stream bit-exact.

use std::error::Error;

use ssoba::pipeline::decode_and_reconstruct;
use ssoba::signalgen::standard_object_set;
use ssoba::wav_io::{encoded_stream_from_wav, read_wav, write_encoded_stream, SampleEncoding};
use ssoba::{encode, SplineOrder};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let set = standard_object_set(3, 44_100, 0.05)?;
    let stream = encode(&set, 2)?;
    let bytes = write_encoded_stream(&stream, SampleEncoding::Float32)?;
    println!("{} bytes, {} channels", bytes.len(), stream.channels.len());

    let chunk = bytes
        .windows(4)
        .rposition(|w| w == b"ssob")
        .ok_or("no chunk")?;
    println!("ssob chunk at byte {chunk}");

    let wav = read_wav(&bytes)?;
    println!("read back: {:?}", wav.stream_info);
    let back = encoded_stream_from_wav(wav, None)?;
    assert_eq!(back, stream);

    let objects = decode_and_reconstruct(&back, SplineOrder::Cubic)?;
    println!(
        "recovered {} objects of {} samples",
        objects.len(),
        objects[0].object.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

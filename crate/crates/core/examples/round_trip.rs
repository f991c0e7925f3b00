// Embed several mono objects into fewer channels and get them back.
//
// With as many channels as objects the codec is lossless. With fewer, each
// object keeps `C` of every `N` samples and the rest are interpolated.

use std::error::Error;

use ssoba::pipeline::round_trip;
use ssoba::signalgen::standard_object_set;
use ssoba::{decode, encode, schedule_position, snr_db, Placement, SplineOrder};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let set = standard_object_set(4, 48_000, 0.1)?;

    let stream = encode(&set, 4)?;
    let decoded = decode(&stream)?;
    let exact = set
        .objects()
        .iter()
        .zip(&decoded.sparse_objects)
        .all(|(obj, sparse)| obj.samples() == sparse.values.as_slice());
    println!("4 objects in 4 channels: lossless = {exact}");

    let stream = encode(&set, 2)?;
    println!("4 objects in 2 channels, first two periods:");
    for t in 0..8 {
        let row: Vec<String> = (0..4)
            .map(|i| match schedule_position(i, t, &stream.params) {
                Placement::Kept(ch) => format!("ch{ch}"),
                Placement::Dropped => " -- ".to_string(),
            })
            .collect();
        println!("  t={t}  {}", row.join(" "));
    }

    let recovered = round_trip(&set, 2, SplineOrder::Cubic)?;
    for (x, y) in set.objects().iter().zip(&recovered) {
        println!("  {}: {:.1} dB", x.label(), snr_db(y, x)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// Build the two low-pass listening-test anchors from a reference signal.

use std::error::Error;

use ssoba::anchors::{make_anchors, FirLowpass, ANCHOR_HIGH_HZ, ANCHOR_LOW_HZ};
use ssoba::signalgen::{generate, SignalKind, SignalSpec};

fn rms(v: &[f32]) -> f64 {
    (v.iter().map(|&x| f64::from(x).powi(2)).sum::<f64>() / v.len() as f64).sqrt()
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for cutoff in [ANCHOR_LOW_HZ, ANCHOR_HIGH_HZ] {
        let f = FirLowpass::design(cutoff, 48_000)?;
        println!(
            "{cutoff} Hz: {} taps, delay {} samples, {:.1} dB at 1 kHz, {:.1} dB at 12 kHz",
            f.taps().len(),
            f.group_delay(),
            f.response_db(1_000.0),
            f.response_db(12_000.0)
        );
    }

    let reference = generate(
        &SignalSpec::new(
            SignalKind::BandNoise {
                low: 50.0,
                high: 16_000.0,
                partials: 64,
            },
            0.5,
            0.2,
            48_000,
        )
        .with_seed(1),
    )?;
    let anchors = make_anchors(&reference)?;
    println!("reference    rms {:.4}", rms(reference.samples()));
    println!("anchor_3_5k  rms {:.4}", rms(anchors.anchor_3_5k.samples()));
    println!("anchor_7k    rms {:.4}", rms(anchors.anchor_7k.samples()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

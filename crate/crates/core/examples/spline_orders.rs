// Compare linear, quadratic and cubic gap filling on one sparse object.

use std::error::Error;

use ssoba::interpolation::{fit, AppliedOrder, KnotSet};
use ssoba::signalgen::{generate, SignalSpec};
use ssoba::{decode, encode, reconstruct, snr_db, ObjectSet, SplineOrder};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // a single spline through four points
    let knots = KnotSet::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 1.0, 0.0, 1.0])?;
    for order in [
        SplineOrder::Linear,
        SplineOrder::Quadratic,
        SplineOrder::Cubic,
    ] {
        let p = fit(&knots, order)?;
        let mid: Vec<String> = [0.5, 1.5, 2.5]
            .iter()
            .map(|&x| format!("{:+.4}", p.eval(x)))
            .collect();
        println!("{order:>9} at 0.5, 1.5, 2.5: {}", mid.join(" "));
    }

    // a 1 kHz tone as object 0 of a 6-into-2 stream
    let tone = generate(&SignalSpec::sine(1_000.0, 0.5, 0.1, 44_100).with_fade(0.01))?;
    let set = ObjectSet::new(vec![tone.clone(); 6])?;
    let sparse = &decode(&encode(&set, 2)?)?.sparse_objects[0];
    println!(
        "object keeps {} of {} samples",
        sparse.known_count(),
        sparse.len()
    );
    for order in [
        SplineOrder::Linear,
        SplineOrder::Quadratic,
        SplineOrder::Cubic,
    ] {
        let r = reconstruct(sparse, order)?;
        let applied = match r.applied {
            AppliedOrder::Spline(o) => o.to_string(),
            other => format!("{other:?}"),
        };
        println!(
            "{order:>9}: {:6.2} dB (applied {applied})",
            snr_db(&r.object, &tone)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

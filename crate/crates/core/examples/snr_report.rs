// Score a round trip per object and print the report as JSON.

use std::error::Error;

use ssoba::metrics::{quality_band, QualityBand};
use ssoba::pipeline::evaluate;
use ssoba::signalgen::standard_object_set;
use ssoba::SplineOrder;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let set = standard_object_set(5, 96_000, 0.25)?;
    let report = evaluate(&set, 2, SplineOrder::Cubic)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    assert!(report.min_db() > 20.0);

    // lossless streams report infinity, written as "inf"
    let lossless = evaluate(&set, 5, SplineOrder::Cubic)?;
    println!(
        "lossless mean: {}",
        serde_json::to_value(&lossless)?["mean_db"]
    );
    assert_eq!(quality_band(lossless.mean_db), QualityBand::Clean);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

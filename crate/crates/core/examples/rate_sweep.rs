// Sweep object count and sample rate, then print mean SNR per cell and the
// raw rows as CSV.

use std::error::Error;
use std::io;

use ssoba::sweep::{mean_snr, run_sweep, write_csv, SweepConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let config = SweepConfig {
        objects: vec![3, 5, 8],
        rates: vec![32_000, 48_000, 96_000],
        duration_s: 0.1,
        ..SweepConfig::default()
    };
    let rows = run_sweep(&config)?;

    print!("{:>4}", "n");
    for rate in &config.rates {
        print!("{:>10}", rate);
    }
    println!();
    for &n in &config.objects {
        print!("{n:>4}");
        for &rate in &config.rates {
            print!("{:>10.2}", mean_snr(&rows, n, rate).unwrap_or(f64::NAN));
        }
        println!();
    }

    println!();
    write_csv(&rows[..6], io::stdout().lock())?;
    println!("... {} rows total", rows.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

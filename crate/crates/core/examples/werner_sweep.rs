// Werner-state discords against the closed form, written as CSV to stdout.

use std::error::Error;
use std::io;

use qudit_correlations::bench::{werner_sweep, write_csv};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rows = werner_sweep(2, 4, 9, true)?;
    let worst = rows.iter().map(|r| (r.hsa_numeric - r.hsa_analytic).abs()).fold(0.0, f64::max);
    write_csv(&rows, io::stdout().lock())?;
    println!("max deviation from closed form: {worst:.1e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// Time the naive and optimized pipelines on small dimensions.

use std::error::Error;
use std::time::Duration;

use qudit_correlations::bench::{run_bench, BenchConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg =
        BenchConfig { dims: vec![(2, 2), (2, 3), (3, 3)], trials: 3, seed: 1, naive_cap: Duration::from_secs(10) };
    for r in run_bench(&cfg)? {
        println!("{}x{}: naive {} ns, optimized {} ns, speedup {:.1}", r.da, r.db, r.t_naive_ns, r.t_opt_ns, r.speedup);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// Hilbert-Schmidt discord and its purity-rescaled variant on a few states.

use std::error::Error;

use qudit_correlations::discord::discord_hsa;
use qudit_correlations::linalg::ComplexMatrix;
use qudit_correlations::states::{bell_state, random_density, RandomStateParams};
use qudit_correlations::Side;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let states: Vec<(&str, ComplexMatrix, usize, usize)> = vec![
        ("Bell 2x2", bell_state(2), 2, 2),
        ("Bell 3x3", bell_state(3), 3, 3),
        ("random 3x3", random_density(RandomStateParams::new(9, 42)?), 3, 3),
        ("random 2x4", random_density(RandomStateParams::new(8, 42)?), 2, 4),
    ];
    for (name, rho, da, db) in &states {
        for side in [Side::A, Side::B] {
            let r = discord_hsa(rho, *da, *db, side)?;
            println!(
                "{name:<11} side {side}: hs {:.6}  purity {:.6}  hsa {:.6}",
                r.hs_value, r.purity_other, r.hsa_value
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

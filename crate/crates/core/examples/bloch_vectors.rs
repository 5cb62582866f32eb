// Local coherence vectors of a random qubit-qutrit state, by both routes.

use std::error::Error;

use qudit_correlations::bloch::{bloch_of_subsystem, bloch_of_subsystem_naive};
use qudit_correlations::states::{random_density, RandomStateParams};
use qudit_correlations::Side;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (da, db) = (2, 3);
    let rho = random_density(RandomStateParams::new(da * db, 7)?);
    for side in [Side::A, Side::B] {
        let fast = bloch_of_subsystem(&rho, da, db, side)?;
        let slow = bloch_of_subsystem_naive(&rho, da, db, side)?;
        println!("side {side}: {:?}", fast.comps());
        println!("  |v| = {:.6}, naive difference {:.1e}", fast.norm(), fast.max_abs_diff(&slow));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

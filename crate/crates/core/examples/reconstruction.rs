// Rebuild a state from its Bloch vectors and correlation matrix.

use std::error::Error;

use qudit_correlations::bloch::{bloch_of_subsystem, corrmat_opt, reconstruct};
use qudit_correlations::states::{random_density, RandomStateParams};
use qudit_correlations::Side;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (da, db) in [(2, 2), (2, 4), (3, 2), (3, 4)] {
        let rho = random_density(RandomStateParams::new(da * db, 3)?);
        let a = bloch_of_subsystem(&rho, da, db, Side::A)?;
        let b = bloch_of_subsystem(&rho, da, db, Side::B)?;
        let c = corrmat_opt(&rho, da, db)?;
        let err = reconstruct(&a, &b, &c)?.max_abs_diff(&rho);
        println!("({da}, {db}): max entry error {err:.1e}");
        assert!(err < 1e-12);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

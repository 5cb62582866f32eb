// Classical-quantum states have zero discord on the classical side.

use std::error::Error;

use qudit_correlations::discord::discord_hs;
use qudit_correlations::states::random_cq_state;
use qudit_correlations::Side;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (da, db) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let rho = random_cq_state(da, db, 99)?;
        let a = discord_hs(&rho, da, db, Side::A)?.hs_value;
        let b = discord_hs(&rho, da, db, Side::B)?.hs_value;
        println!("({da}, {db}): classical side {a:.1e}, quantum side {b:.6}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// Correlation matrix of a two-qutrit state, with element-read counts.

use std::error::Error;

use qudit_correlations::bloch::{corrmat_naive, corrmat_opt_counted};
use qudit_correlations::gellmann::Group;
use qudit_correlations::states::{random_density, RandomStateParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let d = 3;
    let rho = random_density(RandomStateParams::new(d * d, 11)?);
    let (c, reads) = corrmat_opt_counted(&rho, d, d)?;
    let naive = corrmat_naive(&rho, d, d)?;
    println!("{}x{} correlation matrix, {reads} element reads", c.entries().rows(), c.entries().cols());
    println!("naive difference {:.1e}", c.max_abs_diff(&naive));
    let block = c.block(Group::Symmetric, Group::Antisymmetric);
    println!("symmetric x antisymmetric block:");
    for r in 0..block.rows() {
        let row: Vec<String> = block.row(r).iter().map(|x| format!("{x:+.4}")).collect();
        println!("  {}", row.join(" "));
    }
    for d in [2, 4, 8] {
        let rho = random_density(RandomStateParams::new(d * d, d as u64)?);
        let (_, reads) = corrmat_opt_counted(&rho, d, d)?;
        println!("d = {d}: {reads} reads");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// Enumerate the generalized Gell-Mann basis of a qutrit and check its algebra.

use std::error::Error;

use num_complex::Complex64;
use qudit_correlations::gellmann::{basis, gellmann, gm_index};
use qudit_correlations::linalg::{trace, trace_of_product};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let d = 3;
    let specs: Vec<_> = basis(d).collect();
    println!("d = {d}: {} generators", specs.len());
    for spec in &specs {
        let g = gellmann(spec)?;
        let tr = trace(&g)?;
        let norm = trace_of_product(&g, &g)?;
        println!(
            "  j = {} group {} (k, l) = ({}, {})  Tr = {:.1e}  Tr(G G) = {:.3}",
            gm_index(spec)?,
            spec.group.number(),
            spec.k,
            spec.l,
            tr.norm(),
            norm.re
        );
        assert!((norm - Complex64::new(2.0, 0.0)).norm() < 1e-13);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

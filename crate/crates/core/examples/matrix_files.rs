// Write a state to the text format, read it back and run the CLI on it.

use std::error::Error;

use qudit_correlations::cli;
use qudit_correlations::io::{parse_matrix_file, write_matrix_file};
use qudit_correlations::states::{werner_state, WernerParams};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("qcorr-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("werner3.mat");
    let rho = werner_state(WernerParams::new(3, 0.8)?);
    write_matrix_file(&path, &rho, 3, 3)?;
    let back = parse_matrix_file(&path)?;
    println!("read {}x{} matrix, header {} {}", back.size(), back.size(), back.da, back.db);
    assert_eq!(back.matrix, rho);

    let mut out = Vec::new();
    let mut err = Vec::new();
    let path_arg = path.to_string_lossy().into_owned();
    let code = cli::run(
        ["qcorr", "discord", "--measure", "hsa", "--subsys", "a", "--input", path_arg.as_str()],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8(out)?);
    std::fs::remove_dir_all(&dir)?;
    if code != 0 {
        return Err(String::from_utf8(err)?.into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

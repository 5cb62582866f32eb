//! Command-line front end for the `qcorr` binary.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input data, 3 numerical
//! failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchConfig};
use crate::bloch::{self, Method};
use crate::discord::{self, DiscordReport};
use crate::error::Error;
use crate::gellmann::{self, GellMannSpec, Group};
use crate::io::{format_sig, parse_matrix_file, MatrixFile};
use crate::linalg::{check_density, ptrace_a, ptrace_b, ComplexMatrix, RealMatrix};
use crate::Side;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Significant digits for every printed number.
pub const OUTPUT_DIGITS: usize = 12;

/// Largest hermiticity or trace defect accepted in an input file.
pub const INPUT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "qcorr", version, about = "Coherence vectors, correlation matrices and Hilbert-Schmidt discords")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SubsysArg {
    A,
    B,
}

impl From<SubsysArg> for Side {
    fn from(s: SubsysArg) -> Side {
        match s {
            SubsysArg::A => Side::A,
            SubsysArg::B => Side::B,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Measure {
    Hs,
    Hsa,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one generalized Gell-Mann matrix.
    Gellmann {
        #[arg(long)]
        dim: usize,
        /// 1 diagonal, 2 symmetric, 3 antisymmetric
        #[arg(long)]
        group: u8,
        #[arg(long)]
        k: usize,
        /// Ignored for the diagonal group.
        #[arg(long, default_value_t = 0)]
        l: usize,
    },
    /// Print the coherence vector of a state, one component per line.
    Bloch {
        #[arg(long)]
        input: PathBuf,
        /// Which side of a bipartite file; ignored for single-system files.
        #[arg(long, value_enum, default_value = "a")]
        subsys: SubsysArg,
        #[arg(long)]
        naive: bool,
    },
    /// Print the correlation matrix of a bipartite state, one row per line.
    Corrmat {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        naive: bool,
    },
    /// Print "measure subsys da db value".
    Discord {
        #[arg(long, value_enum)]
        measure: Measure,
        #[arg(long, value_enum)]
        subsys: SubsysArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        naive: bool,
    },
    /// Print "purity subsys da db value" for the reduced state of one side.
    Purity {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "a")]
        subsys: SubsysArg,
    },
    /// Write discords of Werner states against the closed form as CSV.
    WernerSweep {
        #[arg(long, default_value_t = 2)]
        dmin: usize,
        #[arg(long, default_value_t = 5)]
        dmax: usize,
        #[arg(long, default_value_t = 41)]
        wsteps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        parallel: bool,
    },
    /// Time the naive and optimized routes and write a CSV report.
    Bench {
        /// Comma-separated list such as 2x2,3x3,4x4
        #[arg(long, default_value = "2x2,3x3,4x4,5x5,6x6")]
        dims: String,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Wall-clock cap for one naive evaluation, in seconds.
        #[arg(long, default_value_t = 300.0)]
        cap_secs: f64,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) => EXIT_USAGE,
            Error::NoConvergence { .. } => EXIT_NUMERIC,
            Error::Shape(_) | Error::NonHermitian { .. } | Error::Parse { .. } | Error::Io(_) | Error::Csv(_) => {
                EXIT_DATA
            }
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_DATA, msg: e.to_string() }
    }
}

fn data_error(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_DATA, msg: msg.into() }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "qcorr: {}", f.msg);
            f.code
        }
    }
}

fn method(naive: bool) -> Method {
    if naive {
        Method::Naive
    } else {
        Method::Optimized
    }
}

fn load_state(path: &Path) -> Result<MatrixFile, Failure> {
    let file = parse_matrix_file(path)?;
    if file.matrix.as_slice().iter().any(|z| !z.is_finite()) {
        return Err(data_error(format!("{} contains non-finite entries", path.display())));
    }
    let chk = check_density(&file.matrix)?;
    if chk.hermiticity_defect > INPUT_TOLERANCE || chk.trace_defect > INPUT_TOLERANCE {
        return Err(data_error(format!(
            "{} is not a density matrix: hermiticity defect {:e}, trace defect {:e}",
            path.display(),
            chk.hermiticity_defect,
            chk.trace_defect
        )));
    }
    Ok(file)
}

fn require_bipartite(file: &MatrixFile, path: &Path) -> Result<(), Failure> {
    if !file.is_bipartite() {
        return Err(data_error(format!("{} holds a single-system matrix (db = 0)", path.display())));
    }
    Ok(())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Gellmann { dim, group, k, l } => {
            let group = Group::from_number(group)?;
            let l = if group == Group::Diagonal { 0 } else { l };
            let g = gellmann::gellmann(&GellMannSpec::new(dim, group, k, l)?)?;
            write_complex_matrix(out, &g)?;
        }
        Command::Bloch { input, subsys, naive } => {
            let file = load_state(&input)?;
            let v = if file.is_bipartite() {
                bloch::bloch_of_subsystem_with(&file.matrix, file.da, file.db, subsys.into(), method(naive))?
            } else {
                bloch::bloch_with(&file.matrix, method(naive))?
            };
            for x in v.comps() {
                writeln!(out, "{}", format_sig(*x, OUTPUT_DIGITS))?;
            }
        }
        Command::Corrmat { input, naive } => {
            let file = load_state(&input)?;
            require_bipartite(&file, &input)?;
            let c = bloch::corrmat_with(&file.matrix, file.da, file.db, method(naive))?;
            write_real_matrix(out, c.entries())?;
        }
        Command::Discord { measure, subsys, input, naive } => {
            let file = load_state(&input)?;
            require_bipartite(&file, &input)?;
            let side: Side = subsys.into();
            let report: DiscordReport = discord::discord_report(&file.matrix, file.da, file.db, side, method(naive))?;
            let (name, value) = match measure {
                Measure::Hs => ("hs", report.hs_value),
                Measure::Hsa => ("hsa", report.hsa_value),
            };
            writeln!(out, "{name} {side} {} {} {}", file.da, file.db, format_sig(value, OUTPUT_DIGITS))?;
        }
        Command::Purity { input, subsys } => {
            let file = load_state(&input)?;
            let side: Side = subsys.into();
            let reduced = if !file.is_bipartite() {
                file.matrix.clone()
            } else {
                match side {
                    Side::A => ptrace_b(&file.matrix, file.da, file.db)?,
                    Side::B => ptrace_a(&file.matrix, file.da, file.db)?,
                }
            };
            let p = discord::purity(&reduced);
            writeln!(out, "purity {side} {} {} {}", file.da, file.db, format_sig(p, OUTPUT_DIGITS))?;
        }
        Command::WernerSweep { dmin, dmax, wsteps, out: path, parallel } => {
            let rows = bench::werner_sweep(dmin, dmax, wsteps, parallel)?;
            bench::write_csv(&rows, BufWriter::new(File::create(&path)?))?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        Command::Bench { dims, trials, out: path, seed, cap_secs } => {
            if !(cap_secs >= 0.0 && cap_secs.is_finite()) {
                return Err(
                    Error::Argument(format!("cap must be a non-negative number of seconds, got {cap_secs}")).into()
                );
            }
            let cfg = BenchConfig {
                dims: bench::parse_dims(&dims)?,
                trials,
                seed,
                naive_cap: Duration::from_secs_f64(cap_secs),
            };
            let records = bench::run_bench(&cfg)?;
            bench::write_csv(&records, BufWriter::new(File::create(&path)?))?;
            for r in &records {
                writeln!(
                    out,
                    "{}x{}  naive {} ns  opt {} ns  speedup {}{}",
                    r.da,
                    r.db,
                    r.t_naive_ns,
                    r.t_opt_ns,
                    if r.censored { ">=" } else { "" },
                    format_sig(r.speedup, 4)
                )?;
            }
        }
    }
    Ok(())
}

fn write_real_matrix(out: &mut dyn Write, m: &RealMatrix) -> std::io::Result<()> {
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| format_sig(*x, OUTPUT_DIGITS)).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Purely real matrices print as real entries; otherwise each entry prints
/// as an "re im" pair.
fn write_complex_matrix(out: &mut dyn Write, m: &ComplexMatrix) -> std::io::Result<()> {
    let real = m.as_slice().iter().all(|z| z.im == 0.0);
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| {
                let z = m[(r, c)];
                if real {
                    format_sig(z.re, OUTPUT_DIGITS)
                } else {
                    format!("{} {}", format_sig(z.re, OUTPUT_DIGITS), format_sig(z.im, OUTPUT_DIGITS))
                }
            })
            .collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        let code = |e: Error| Failure::from(e).code;
        assert_eq!(code(Error::Argument("x".into())), EXIT_USAGE);
        assert_eq!(code(Error::NoConvergence { sweeps: 100, off_norm: 1.0 }), EXIT_NUMERIC);
        assert_eq!(code(Error::Shape("x".into())), EXIT_DATA);
        assert_eq!(code(Error::Parse { line: 3, msg: "x".into() }), EXIT_DATA);
        assert_eq!(code(Error::NonHermitian { residue: 1.0, tolerance: 1e-10 }), EXIT_DATA);
    }
}

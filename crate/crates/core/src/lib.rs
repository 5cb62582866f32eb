//! Coherence vectors, correlation matrices and Hilbert-Schmidt quantum
//! discords of bipartite qudit density matrices.
//!
//! Every quantity is available through two routes: a direct evaluation of
//! its trace definition with materialized generalized Gell-Mann matrices and
//! Kronecker products, and an optimized route that reads the required density
//! matrix elements directly. The direct route is kept as an oracle and as the
//! benchmark baseline.
//!
//! ```
//! use qudit_correlations::{bloch, discord, states, Side};
//!
//! let rho = states::bell_state(2);
//! let c = bloch::corrmat_opt(&rho, 2, 2).unwrap();
//! assert!((c.entries()[(2, 2)] + 1.0).abs() < 1e-15);
//!
//! let report = discord::discord_hs(&rho, 2, 2, Side::A).unwrap();
//! assert!((report.hs_value - 0.5).abs() < 1e-12);
//! ```
//!
//! Runnable walk-throughs live in `examples/`; the `qcorr` binary wraps the
//! same functionality for files on disk.

pub mod bench;
pub mod bloch;
pub mod cli;
pub mod discord;
pub mod error;
pub mod gellmann;
pub mod io;
pub mod linalg;
pub mod states;

use std::fmt;
use std::str::FromStr;

pub use bloch::{BlochVector, CorrMatrix};
pub use discord::DiscordReport;
pub use error::{Error, Result};
pub use gellmann::{GellMannSpec, Group};
pub use linalg::{ComplexMatrix, DensityMatrixCheck, RealMatrix};

/// One party of a bipartite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    /// Local dimension of this side.
    pub fn dim(self, da: usize, db: usize) -> usize {
        match self {
            Side::A => da,
            Side::B => db,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "a",
            Side::B => "b",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Side::A),
            "b" | "B" => Ok(Side::B),
            _ => Err(Error::Argument(format!("subsystem must be 'a' or 'b', got '{s}'"))),
        }
    }
}

//! Plain-text density-matrix files.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 2 2            <- "da db"; db = 0 marks a single-system matrix
//! 0.25 0         <- one "re im" entry per line, row-major
//! 0 0
//! ...
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Parsed matrix file. `db == 0` marks a single-system matrix of size `da`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFile {
    pub matrix: ComplexMatrix,
    pub da: usize,
    pub db: usize,
}

impl MatrixFile {
    pub fn is_bipartite(&self) -> bool {
        self.db != 0
    }

    /// Side length of the stored matrix.
    pub fn size(&self) -> usize {
        self.da * self.db.max(1)
    }
}

pub fn parse_matrix_file(path: impl AsRef<Path>) -> Result<MatrixFile> {
    parse_matrix_str(&fs::read_to_string(path)?)
}

pub fn parse_matrix_str(text: &str) -> Result<MatrixFile> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing 'da db' header".into() })?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let parse_dim = |tok: &str| {
        tok.parse::<usize>()
            .map_err(|_| Error::Parse { line: header_line, msg: format!("'{tok}' is not a non-negative integer") })
    };
    let (da, db) = match dims.as_slice() {
        [a, b] => (parse_dim(a)?, parse_dim(b)?),
        _ => return Err(Error::Parse { line: header_line, msg: format!("header must be 'da db', got '{header}'") }),
    };
    if da == 0 {
        return Err(Error::Parse { line: header_line, msg: "da must be positive".into() });
    }

    let n = da * db.max(1);
    let expected = n * n;
    let mut entries = Vec::with_capacity(expected);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [re, im] = toks.as_slice() else {
            return Err(Error::Parse { line, msg: format!("expected 're im', got '{body}'") });
        };
        let num =
            |tok: &str| tok.parse::<f64>().map_err(|_| Error::Parse { line, msg: format!("'{tok}' is not a number") });
        entries.push(Complex64::new(num(re)?, num(im)?));
    }
    if entries.len() != expected {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("expected {expected} entries, found {}", entries.len()),
        });
    }
    Ok(MatrixFile { matrix: ComplexMatrix::from_vec(n, n, entries)?, da, db })
}

/// Renders a matrix in the file format, entries in shortest round-trip
/// scientific notation.
pub fn format_matrix_file(matrix: &ComplexMatrix, da: usize, db: usize) -> Result<String> {
    let n = da * db.max(1);
    if matrix.rows() != n || matrix.cols() != n {
        return Err(Error::Shape(format!(
            "header {da} {db} needs a {n}x{n} matrix, got {}x{}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    let mut out = format!("{da} {db}\n");
    for z in matrix.as_slice() {
        writeln!(out, "{:e} {:e}", z.re, z.im).expect("writing to a String");
    }
    Ok(out)
}

pub fn write_matrix_file(path: impl AsRef<Path>, matrix: &ComplexMatrix, da: usize, db: usize) -> Result<()> {
    fs::write(path, format_matrix_file(matrix, da, db)?)?;
    Ok(())
}

/// `printf("%.{sig}g")`: `sig` significant digits, trailing zeros dropped,
/// scientific notation outside `1e-4 <= |x| < 10^sig`.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = sig.max(1);
    // the exponent after rounding to `sig` digits decides the style
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("LowerExp output has an exponent");
    let exp: i32 = exp.parse().expect("LowerExp exponent is an integer");
    if exp < -4 || exp >= sig as i32 {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

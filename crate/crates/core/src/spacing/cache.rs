//! Text cache for exact gap-series coefficients.
//!
//! ```text
//! gap-series v1 max_order=6
//! 0  1/1 0
//! 1  -1/1 0
//! 2
//! 3
//! 4  1/36 2
//! 5
//! 6  -1/675 4
//! ```
//!
//! The header names the format version and order. Each following line holds
//! a Taylor order, then zero or more `numerator/denominator pi_power` terms
//! whose sum is the coefficient of `s^order`. Terms are written in increasing
//! `pi_power` with reduced fractions, so writing a parsed file reproduces it
//! byte for byte.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::exact::PiPolynomial;
use super::{gap_series, GapProbabilitySeries};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// File name used by [`load_or_compute`] for a given order.
pub fn cache_file_name(max_order: usize) -> String {
    format!("gap_series_v{FORMAT_VERSION}_order{max_order}.txt")
}

pub fn to_text(series: &GapProbabilitySeries) -> String {
    let mut out = format!(
        "gap-series v{FORMAT_VERSION} max_order={}\n",
        series.max_order()
    );
    for (k, c) in series.coefficients().iter().enumerate() {
        write!(out, "{k}").unwrap();
        for (p, r) in c.terms() {
            write!(out, "  {}/{} {}", r.numer(), r.denom(), p).unwrap();
        }
        out.push('\n');
    }
    out
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Format(format!("line {line}: {}", msg.into()))
}

pub fn from_text(text: &str) -> Result<GapProbabilitySeries> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Format("empty cache file".into()))?;
    let rest = header
        .strip_prefix(&format!("gap-series v{FORMAT_VERSION} max_order="))
        .ok_or_else(|| bad(1, format!("unrecognized header {header:?}")))?;
    let max_order: usize = rest.trim().parse().map_err(|_| bad(1, "bad max_order"))?;

    let mut coeffs = Vec::with_capacity(max_order + 1);
    for (idx, line) in lines {
        let lineno = idx + 1;
        let mut tokens = line.split_whitespace();
        let order: usize = tokens
            .next()
            .ok_or_else(|| bad(lineno, "missing order"))?
            .parse()
            .map_err(|_| bad(lineno, "bad order"))?;
        if order != coeffs.len() {
            return Err(bad(
                lineno,
                format!("expected order {}, found {order}", coeffs.len()),
            ));
        }
        let mut poly = PiPolynomial::zero();
        let tokens: Vec<&str> = tokens.collect();
        if tokens.len() % 2 != 0 {
            return Err(bad(lineno, "terms must be `num/den power` pairs"));
        }
        for pair in tokens.chunks(2) {
            let (num, den) = pair[0]
                .split_once('/')
                .ok_or_else(|| bad(lineno, "missing '/'"))?;
            let num = BigInt::from_str(num).map_err(|_| bad(lineno, "bad numerator"))?;
            let den = BigInt::from_str(den).map_err(|_| bad(lineno, "bad denominator"))?;
            if den.is_zero() {
                return Err(bad(lineno, "zero denominator"));
            }
            let power: i32 = pair[1].parse().map_err(|_| bad(lineno, "bad pi power"))?;
            poly += &PiPolynomial::monomial(BigRational::new(num, den), power);
        }
        coeffs.push(poly);
    }
    if coeffs.len() != max_order + 1 {
        return Err(Error::Format(format!(
            "header declares max_order={max_order} but {} orders are present",
            coeffs.len()
        )));
    }
    GapProbabilitySeries::from_coefficients(coeffs)
}

pub fn write(series: &GapProbabilitySeries, path: &Path) -> Result<()> {
    std::fs::write(path, to_text(series))?;
    Ok(())
}

pub fn read(path: &Path) -> Result<GapProbabilitySeries> {
    from_text(&std::fs::read_to_string(path)?)
}

/// Reads the series of order `max_order` from `dir`, computing and writing
/// it first when the file is missing. Returns the series and the file path.
pub fn load_or_compute(dir: &Path, max_order: usize) -> Result<(GapProbabilitySeries, PathBuf)> {
    let path = dir.join(cache_file_name(max_order));
    if path.exists() {
        let series = read(&path)?;
        if series.max_order() != max_order {
            return Err(Error::Format(format!(
                "{} holds a different order",
                path.display()
            )));
        }
        return Ok((series, path));
    }
    let series = gap_series(max_order)?;
    std::fs::create_dir_all(dir)?;
    // Write then rename so a concurrent reader never sees a partial file.
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    write(&series, &tmp)?;
    std::fs::rename(&tmp, &path)?;
    Ok((series, path))
}

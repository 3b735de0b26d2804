//! Parsing of textual parameters: vectors, matrices, word lists, flags.

use finsler_core::exact::{self, Rat};
use finsler_core::rootsys::{FinslerFunctional, RootSystem};
use finsler_core::symspace::{Flag, SlMatrix};
use finsler_core::weyl::{enumerate_weyl, FaceType, WeylGroup};

use crate::report::CliError;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn root_system(tag: &str) -> Result<(RootSystem, WeylGroup), CliError> {
    let rs = RootSystem::from_tag(tag)?;
    let group = enumerate_weyl(&rs)?;
    Ok((rs, group))
}

fn entries(s: &str) -> impl Iterator<Item = &str> {
    s.split([',', ' ']).map(str::trim).filter(|t| !t.is_empty())
}

pub fn rat(s: &str) -> Result<Rat, CliError> {
    exact::parse_rat(s).ok_or_else(|| usage(format!("`{s}` is not a rational number")))
}

pub fn rat_vec(s: &str) -> Result<Vec<Rat>, CliError> {
    entries(s).map(rat).collect()
}

/// Decimals, rationals `p/q`, and `pi`, `pi/2` style multiples.
pub fn real(s: &str) -> Result<f64, CliError> {
    let t = s.trim();
    if let Some(rest) = t.strip_prefix("pi") {
        let pi = std::f64::consts::PI;
        return match rest.strip_prefix('/') {
            None if rest.is_empty() => Ok(pi),
            Some(d) => d.parse::<f64>().map(|d| pi / d).map_err(|_| usage(format!("bad angle `{s}`"))),
            None => Err(usage(format!("bad angle `{s}`"))),
        };
    }
    exact::parse_rat(t)
        .map(|q| exact::to_f64(&q))
        .or_else(|| t.parse::<f64>().ok().filter(|x| x.is_finite()))
        .ok_or_else(|| usage(format!("`{s}` is not a number")))
}

pub fn real_vec(s: &str) -> Result<Vec<f64>, CliError> {
    entries(s).map(real).collect()
}

/// Rows separated by `;`.
pub fn real_rows(s: &str) -> Result<Vec<Vec<f64>>, CliError> {
    s.split(';').filter(|r| !r.trim().is_empty()).map(real_vec).collect()
}

pub fn matrix(s: &str) -> Result<SlMatrix, CliError> {
    let rows: Vec<Vec<String>> =
        s.split(';').filter(|r| !r.trim().is_empty()).map(|r| entries(r).map(String::from).collect()).collect();
    Ok(SlMatrix::parse_rows(&rows)?)
}

/// Matrices separated by `|`.
pub fn matrices(s: &str) -> Result<Vec<SlMatrix>, CliError> {
    s.split('|').map(matrix).collect()
}

/// Words separated by `,`; `e` is the identity.
pub fn words(s: &str) -> Vec<String> {
    s.split(',').map(|w| w.trim().to_string()).filter(|w| !w.is_empty()).collect()
}

pub fn face(rank: usize, s: Option<&str>) -> Result<FaceType, CliError> {
    match s {
        None => Ok(FaceType::chamber(rank)),
        Some(s) => Ok(FaceType::parse(rank, s)?),
    }
}

/// Coefficients in the fundamental-weight basis; `ρ` when absent.
pub fn functional(rs: &RootSystem, s: Option<&str>) -> Result<FinslerFunctional, CliError> {
    match s {
        None => Ok(FinslerFunctional::rho(rs)),
        Some(s) => Ok(FinslerFunctional::from_weight_coords(rs, &rat_vec(s)?)?),
    }
}

/// A flag spanned by the columns of a matrix given row by row; level `d`
/// is spanned by the first `d` columns.
pub fn flag(s: &str, dims: Option<&str>) -> Result<Flag, CliError> {
    let rows = real_rows(s)?;
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    if n == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(usage("flag matrix rows must have equal length"));
    }
    let dims: Vec<usize> = match dims {
        Some(d) => entries(d).map(|t| t.parse().map_err(|_| usage(format!("bad dimension `{t}`")))).collect::<Result<_, _>>()?,
        None => (1..cols.min(n - 1) + 1).collect(),
    };
    Ok(Flag::from_rows(&rows, &dims)?)
}

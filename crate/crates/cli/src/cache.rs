//! L-coefficient cache: newline-delimited JSON records, one L-polynomial
//! per line, file name `lfun_q{q}_g{g}.jsonl`.
//!
//! Records round-trip losslessly; loading re-validates every invariant
//! (monic irreducible P of degree 2g+1, a_0 = 1, functional-equation
//! symmetry, Hasse-Weil bounds) and reports corrupt lines by number.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use fflm_core::algebra::{Poly, PrimePoly};
use fflm_core::lfunction::LPolynomial;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheRecord {
    pub q: u64,
    pub g: usize,
    /// Comma-separated coefficients of P, ascending degree, last = 1.
    pub p_coeffs: String,
    /// Comma-separated integers a_0..a_{2g}.
    pub a_coeffs: String,
}

impl CacheRecord {
    pub fn from_lpoly(l: &LPolynomial) -> Self {
        let p: Vec<String> = l
            .prime()
            .poly()
            .coeffs()
            .iter()
            .map(u64::to_string)
            .collect();
        let a: Vec<String> = l.coeffs().iter().map(i64::to_string).collect();
        CacheRecord {
            q: l.q(),
            g: l.genus(),
            p_coeffs: p.join(","),
            a_coeffs: a.join(","),
        }
    }

    pub fn to_lpoly(&self, want_q: u64, want_g: usize) -> Result<LPolynomial, String> {
        if self.q != want_q || self.g != want_g {
            return Err(format!(
                "record is for (q={}, g={}), file is for (q={want_q}, g={want_g})",
                self.q, self.g
            ));
        }
        let p_coeffs: Vec<u64> = parse_ints(&self.p_coeffs)?;
        if p_coeffs.len() != 2 * self.g + 2 || p_coeffs.last() != Some(&1) {
            return Err(format!(
                "p_coeffs must list {} coefficients ending in 1",
                2 * self.g + 2
            ));
        }
        let poly = Poly::new(p_coeffs, self.q);
        let prime = PrimePoly::new(poly).map_err(|e| e.to_string())?;
        let a: Vec<i64> = parse_ints(&self.a_coeffs)?;
        LPolynomial::from_parts(prime, a).map_err(|e| e.to_string())
    }
}

fn parse_ints<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|e| format!("bad integer {tok:?}: {e}"))
        })
        .collect()
}

pub fn cache_file(dir: &Path, q: u64, g: usize) -> PathBuf {
    dir.join(format!("lfun_q{q}_g{g}.jsonl"))
}

/// Writes all records, one JSON object per line, in the given order.
pub fn save(path: &Path, lpolys: &[LPolynomial]) -> std::io::Result<()> {
    let mut body = String::new();
    for l in lpolys {
        let rec = CacheRecord::from_lpoly(l);
        writeln!(
            body,
            "{}",
            serde_json::to_string(&rec).expect("serializable")
        )
        .unwrap();
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, body)
}

/// Loads and validates every record; any violation fails the whole load
/// with the offending line numbers.
pub fn load(path: &Path, q: u64, g: usize) -> Result<Vec<LPolynomial>, String> {
    let body = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = Vec::new();
    let mut bad: Vec<String> = Vec::new();
    for (i, line) in body.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        match serde_json::from_str::<CacheRecord>(line) {
            Err(e) => bad.push(format!("line {lineno}: not a cache record: {e}")),
            Ok(rec) => match rec.to_lpoly(q, g) {
                Err(e) => bad.push(format!("line {lineno}: {e}")),
                Ok(l) => out.push(l),
            },
        }
    }
    if !bad.is_empty() {
        return Err(format!(
            "{} invalid cache line(s) in {}:\n  {}",
            bad.len(),
            path.display(),
            bad.join("\n  ")
        ));
    }
    Ok(out)
}

//! Plain-text interchange for complexes:
//!
//! ```text
//! degrees 0 1 1
//! differential
//! 0 0 0
//! 1 0 0
//! -1/2 0 0
//! pairing 1
//! 0 1 0
//! ...
//! ```
//!
//! Matrices are row-major with one row per line; entries are integers or
//! `p/q`. The `pairing` block is optional. `#` starts a comment line.

use std::fmt::Write as _;

use super::{GradedComplex, QMatrix, SymplecticComplex};
use crate::error::{Error, Result};
use crate::graded_algebra::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexFile {
    pub complex: GradedComplex,
    pub pairing: Option<SymplecticComplex>,
}

pub fn write_complex(c: &GradedComplex, pairing: Option<&SymplecticComplex>) -> String {
    let mut s = String::from("degrees");
    for d in c.degrees() {
        let _ = write!(s, " {d}");
    }
    s.push_str("\ndifferential\n");
    write_matrix(&mut s, c.differential());
    if let Some(p) = pairing {
        let _ = writeln!(s, "pairing {}", p.degree());
        write_matrix(&mut s, p.omega());
    }
    s
}

fn write_matrix(s: &mut String, m: &QMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
}

pub fn parse_complex(text: &str) -> Result<ComplexFile> {
    let fail = |line: usize, msg: String| Error::Format { line, msg };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut it = lines.into_iter();
    let (l0, head) = it.next().ok_or_else(|| fail(1, "empty complex description".into()))?;
    let mut words = head.split_whitespace();
    if words.next() != Some("degrees") {
        return Err(fail(l0, "expected `degrees ...`".into()));
    }
    let degrees: Vec<i32> =
        words.map(|w| w.parse::<i32>().map_err(|_| fail(l0, format!("bad degree `{w}`")))).collect::<Result<_>>()?;
    let n = degrees.len();
    let read_matrix = |it: &mut std::vec::IntoIter<(usize, &str)>| -> Result<QMatrix> {
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (l, line) = it.next().ok_or_else(|| fail(0, format!("matrix needs {n} rows")))?;
            let row: Vec<Rational> = line
                .split_whitespace()
                .map(|w| w.parse::<Rational>().map_err(|_| fail(l, format!("bad rational `{w}`"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(fail(l, format!("row has {} entries, expected {n}", row.len())));
            }
            rows.push(row);
        }
        Ok(if n == 0 { QMatrix::zeros(0, 0) } else { QMatrix::from_rows(rows) })
    };
    match it.next() {
        Some((_, "differential")) => {}
        Some((l, _)) => return Err(fail(l, "expected `differential`".into())),
        None => return Err(fail(l0, "missing `differential` block".into())),
    }
    let d = read_matrix(&mut it)?;
    let complex = GradedComplex::new(degrees, d).map_err(|e| fail(l0, e.to_string()))?;
    let pairing = match it.next() {
        None => None,
        Some((l, line)) => {
            let deg = match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["pairing", k] => k.parse::<i32>().map_err(|_| fail(l, format!("bad degree `{k}`")))?,
                _ => return Err(fail(l, "expected `pairing <degree>`".into())),
            };
            let omega = read_matrix(&mut it)?;
            Some(SymplecticComplex::new(complex.clone(), omega, deg).map_err(|e| fail(l, e.to_string()))?)
        }
    };
    if let Some((l, _)) = it.next() {
        return Err(fail(l, "unexpected trailing content".into()));
    }
    Ok(ComplexFile { complex, pairing })
}

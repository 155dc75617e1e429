use std::fmt::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Csv,
    Md,
}

/// Matrix entries, one `row,col,re,im` line each, under a header.
pub fn matrix_csv(out: &mut String, m: &Matrix) {
    out.push_str("row,col,re,im\n");
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let x = m[(r, c)];
            let _ = writeln!(out, "{r},{c},{:.12},{:.12}", clean(x.re), clean(x.im));
        }
    }
}

pub fn matrix_md(out: &mut String, m: &Matrix) {
    let head: Vec<String> = (0..m.ncols()).map(|c| c.to_string()).collect();
    let _ = writeln!(out, "| | {} |", head.join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(m.ncols()));
    for r in 0..m.nrows() {
        let cells: Vec<String> = (0..m.ncols())
            .map(|c| {
                let x = m[(r, c)];
                format!("{:.6}{:+.6}i", clean(x.re), clean(x.im))
            })
            .collect();
        let _ = writeln!(out, "| {r} | {} |", cells.join(" | "));
    }
}

pub fn matrix(out: &mut String, m: &Matrix, format: Format) {
    match format {
        Format::Csv => matrix_csv(out, m),
        Format::Md => matrix_md(out, m),
    }
}

/// A table with a header row, as Markdown or CSV.
pub fn table(out: &mut String, header: &[&str], rows: &[Vec<String>], format: Format) {
    match format {
        Format::Md => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for r in rows {
                let _ = writeln!(out, "| {} |", r.join(" | "));
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "{}", header.join(","));
            for r in rows {
                let _ = writeln!(out, "{}", r.join(","));
            }
        }
    }
}

/// Drops negative zeros and rounding dust so reports are stable.
pub(super) fn clean(x: f64) -> f64 {
    if x.abs() < 5e-13 {
        0.0
    } else {
        x
    }
}

pub fn pass(ok: bool) -> String {
    if ok { "pass" } else { "FAIL" }.to_string()
}

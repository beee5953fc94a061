//! Text renderings of a [`ConvergenceReport`].

use std::fmt::Write;

use crate::config::Format;
use crate::error::CliError;
use crate::study::{Column, ConvergenceReport};

fn csv_label(col: &Column, label_p: bool) -> String {
    if label_p {
        format!("err_s{}_p{}", col.s, col.p)
    } else {
        format!("err_s{}", col.s)
    }
}

fn markdown_label(col: &Column, m: u32, label_p: bool) -> String {
    let base = format!("E^({})_{{{m},2^k}}", col.s);
    if label_p {
        format!("{base} p={}", col.p)
    } else {
        base
    }
}

/// Four significant digits.
fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

pub fn emit_report(r: &ConvergenceReport, fmt: Format) -> String {
    match fmt {
        Format::Csv => emit_csv(r),
        Format::Markdown => emit_markdown(r),
    }
}

/// Holds only the study itself, never timings, so reruns are byte-identical.
fn emit_csv(r: &ConvergenceReport) -> String {
    let mut out = String::from("k,n");
    for col in &r.columns {
        out.push(',');
        out.push_str(&csv_label(col, r.label_p));
    }
    out.push('\n');
    for row in &r.rows {
        write!(out, "{},{}", row.k, row.n).unwrap();
        for e in &row.errors {
            write!(out, ",{}", sci(*e)).unwrap();
        }
        out.push('\n');
    }
    out
}

fn emit_markdown(r: &ConvergenceReport) -> String {
    let m = &r.meta;
    let kind = if m.relative { "Relative errors" } else { "Absolute errors" };
    let mut out = format!(
        "{kind} in the approximations E^(s)_{{{},2^k}} ({}, transform {}).\n\n",
        m.m, m.problem, m.transform
    );
    out.push_str("| k | n |");
    for col in &r.columns {
        write!(out, " {} |", markdown_label(col, m.m, r.label_p)).unwrap();
    }
    out.push_str("\n|---:|---:|");
    for _ in &r.columns {
        out.push_str("---:|");
    }
    out.push('\n');
    for row in &r.rows {
        write!(out, "| {} | {} |", row.k, row.n).unwrap();
        for e in &row.errors {
            write!(out, " {} |", sci(*e)).unwrap();
        }
        out.push('\n');
    }
    writeln!(out).unwrap();
    writeln!(out, "- pole order m = {}, t = {}", m.m, m.t).unwrap();
    writeln!(out, "- exact value {:.17e} ({})", m.exact, m.exact_source).unwrap();
    writeln!(out, "- summation {}, precision {}", m.summation, m.precision).unwrap();
    writeln!(out, "- wall time {:.3} s", m.wall_time.as_secs_f64()).unwrap();
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub k: u32,
    pub n: u64,
    pub errors: Vec<f64>,
}

/// A parsed csv report.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub columns: Vec<Column>,
    pub rows: Vec<CsvRow>,
}

fn parse_label(label: &str) -> Option<Column> {
    let rest = label.strip_prefix("err_s")?;
    match rest.split_once("_p") {
        Some((s, p)) => Some(Column {
            s: s.parse().ok()?,
            p: p.parse().ok()?,
        }),
        // p is not recorded for single-shape studies
        None => Some(Column {
            s: rest.parse().ok()?,
            p: f64::NAN,
        }),
    }
}

pub fn parse_csv(text: &str) -> Result<CsvTable, CliError> {
    let bad = |msg: String| CliError::Report(msg);
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
    let mut fields = header.split(',');
    if fields.next() != Some("k") || fields.next() != Some("n") {
        return Err(bad(format!("header must start with `k,n`, got `{header}`")));
    }
    let columns = fields
        .map(|f| parse_label(f).ok_or_else(|| bad(format!("unrecognized column `{f}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != columns.len() + 2 {
            return Err(bad(format!(
                "line {} has {} fields, expected {}",
                i + 2,
                cells.len(),
                columns.len() + 2
            )));
        }
        let num = |s: &str| bad(format!("line {}: bad number `{s}`", i + 2));
        rows.push(CsvRow {
            k: cells[0].parse().map_err(|_| num(cells[0]))?,
            n: cells[1].parse().map_err(|_| num(cells[1]))?,
            errors: cells[2..]
                .iter()
                .map(|c| c.parse::<f64>().map_err(|_| num(c)))
                .collect::<Result<_, _>>()?,
        });
    }
    Ok(CsvTable { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::study::{ExactSource, Metadata, Row};
    use pvtsi::{Summation, TransformKind};
    use std::time::Duration;

    fn report(rows: Vec<Row>, label_p: bool) -> ConvergenceReport {
        ConvergenceReport {
            meta: Metadata {
                problem: "example poly_m1".into(),
                m: 1,
                t: 0.3,
                transform: TransformKind::Rational,
                summation: Summation::Pairwise,
                exact: 1.25,
                exact_source: ExactSource::Printed,
                relative: true,
                precision: "f64",
                wall_time: Duration::from_millis(12),
            },
            columns: vec![Column { s: 0, p: 10.0 }, Column { s: 1, p: 10.0 }],
            rows,
            label_p,
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = report(vec![], false);
        assert_eq!(emit_report(&r, Format::Csv), "k,n,err_s0,err_s1\n");
    }

    #[test]
    fn one_row_is_two_lines() {
        let row = Row {
            k: 1,
            n: 2,
            values: vec![1.0, 1.2],
            errors: vec![0.2, 0.04123456],
        };
        let csv = emit_report(&report(vec![row], false), Format::Csv);
        assert_eq!(csv, "k,n,err_s0,err_s1\n1,2,2.000e-1,4.123e-2\n");
    }

    #[test]
    fn labels_carry_p_when_needed() {
        let csv = emit_report(&report(vec![], true), Format::Csv);
        assert_eq!(csv, "k,n,err_s0_p10,err_s1_p10\n");
        let t = parse_csv(&csv).unwrap();
        assert_eq!(t.columns, vec![Column { s: 0, p: 10.0 }, Column { s: 1, p: 10.0 }]);
    }

    #[test]
    fn markdown_layout() {
        let row = Row {
            k: 3,
            n: 8,
            values: vec![1.0, 1.0],
            errors: vec![1e-3, 2e-6],
        };
        let md = emit_report(&report(vec![row], false), Format::Markdown);
        assert!(md.contains("| k | n | E^(0)_{1,2^k} | E^(1)_{1,2^k} |"), "{md}");
        assert!(md.contains("| 3 | 8 | 1.000e-3 | 2.000e-6 |"));
        assert!(md.contains("(printed)"));
        assert!(md.contains("wall time 0.012 s"));
    }

    #[test]
    fn parse_rejects_malformed() {
        for text in ["", "n,k\n", "k,n,foo\n", "k,n,err_s0\n1,2\n", "k,n,err_s0\n1,2,x\n"] {
            assert!(parse_csv(text).is_err(), "{text:?}");
        }
    }
}

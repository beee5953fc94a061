//! Convergence studies over a doubling ladder of `n`.

use std::fmt;
use std::thread;
use std::time::{Duration, Instant};

use pvtsi::{
    build_transformed, example_library, hfp_closed_form, hfp_estimate, IntervalMap,
    PeriodizingTransform, RuleConfig, SingularIntegrand, Summation, TransformKind,
    TransformedIntegrand, REFERENCE_T,
};
use serde::Serialize;

use crate::config::{Problem, StudyConfig};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactSource {
    /// Tabulated value of a library example at its reference pole.
    Printed,
    Oracle,
}

impl fmt::Display for ExactSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactSource::Printed => "printed",
            ExactSource::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Column {
    pub s: u32,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub k: u32,
    pub n: u64,
    /// One per column.
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub problem: String,
    pub m: u32,
    pub t: f64,
    pub transform: TransformKind,
    pub summation: Summation,
    pub exact: f64,
    pub exact_source: ExactSource,
    /// Errors are relative unless the exact value is zero.
    pub relative: bool,
    pub precision: &'static str,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub meta: Metadata,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
    /// Column labels carry `p` when more than one shape was requested.
    pub label_p: bool,
}

/// Exact value and where it came from: the tabulated value for a library
/// example at its reference pole, otherwise the oracle.
pub fn exact_value(
    problem: &Problem,
    src: &SingularIntegrand,
) -> Result<(f64, ExactSource), CliError> {
    if let Problem::Example(name) = problem {
        let case = example_library(name)?;
        if src.t() == REFERENCE_T && src.m() == case.integrand.m() {
            return Ok((case.reference_value(), ExactSource::Printed));
        }
    }
    Ok((hfp_closed_form(src)?.value, ExactSource::Oracle))
}

fn estimate_row(
    n: u64,
    cfg: &StudyConfig,
    columns: &[Column],
    integrands: &[TransformedIntegrand],
    shape_index: &[usize],
) -> Result<Vec<f64>, CliError> {
    columns
        .iter()
        .zip(shape_index)
        .map(|(col, &i)| {
            let rule = RuleConfig::new(cfg.m, col.s, n)?.with_summation(cfg.summation);
            Ok(hfp_estimate(&integrands[i], &rule)?.value)
        })
        .collect()
}

/// Runs every `(s, p)` column on every row. Rows run on separate threads
/// and are assembled in order of `k`.
pub fn run_study(cfg: &StudyConfig) -> Result<ConvergenceReport, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let src = cfg.integrand()?;
    let (exact, exact_source) = exact_value(&cfg.problem, &src)?;
    let map = IntervalMap::onto(src.a(), src.b())?;
    let integrands = cfg
        .shapes
        .iter()
        .map(|&p| {
            let tr = PeriodizingTransform::new(cfg.transform, p)?;
            Ok(build_transformed(&src, &tr, &map)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    // columns ordered by s, then p
    let mut columns = Vec::new();
    let mut shape_index = Vec::new();
    for &s in &cfg.levels {
        for (i, &p) in cfg.shapes.iter().enumerate() {
            columns.push(Column { s, p });
            shape_index.push(i);
        }
    }

    let results: Vec<Result<Vec<f64>, CliError>> = thread::scope(|scope| {
        let handles: Vec<_> = (1..=cfg.doublings)
            .map(|k| {
                let (columns, integrands, shape_index) = (&columns, &integrands, &shape_index);
                scope.spawn(move || {
                    estimate_row(cfg.n_at(k), cfg, columns, integrands, shape_index)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("row worker panicked"))
            .collect()
    });

    let scale = if exact == 0.0 { 1.0 } else { exact.abs() };
    let mut rows = Vec::with_capacity(results.len());
    for (k, values) in (1..=cfg.doublings).zip(results) {
        let values = values?;
        let errors = values.iter().map(|v| (v - exact).abs() / scale).collect();
        rows.push(Row {
            k,
            n: cfg.n_at(k),
            values,
            errors,
        });
    }

    Ok(ConvergenceReport {
        meta: Metadata {
            problem: cfg.problem.to_string(),
            m: cfg.m,
            t: cfg.t,
            transform: cfg.transform,
            summation: cfg.summation,
            exact,
            exact_source,
            relative: exact != 0.0,
            precision: "f64",
            wall_time: start.elapsed(),
        },
        columns,
        rows,
        label_p: cfg.shapes.len() > 1,
    })
}

//! One-shot estimates.

use pvtsi::{
    build_transformed, hfp_estimate, IntervalMap, PeriodizingTransform, RuleConfig, Summation,
    TransformKind,
};
use serde::Serialize;

use crate::config::{parse_summation, parse_transform, problem_integrand, resolve_problem};
use crate::config::{ConfigFile, OneOrMany, Problem, DEFAULT_T};
use crate::error::CliError;
use crate::study::{exact_value, ExactSource};

pub const DEFAULT_SHAPE: f64 = 10.0;
pub const DEFAULT_LEVEL: u32 = 1;
pub const DEFAULT_N: u64 = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub problem: Problem,
    pub m: u32,
    pub t: f64,
    pub transform: TransformKind,
    pub shape: f64,
    pub s: u32,
    pub n: u64,
    pub summation: Summation,
    /// Also compute the exact value and the error.
    pub reference: bool,
}

fn single<T: Copy>(v: Option<OneOrMany<T>>, default: T, what: &str) -> Result<T, CliError> {
    match v.map(OneOrMany::into_vec) {
        None => Ok(default),
        Some(v) if v.len() == 1 => Ok(v[0]),
        Some(_) => Err(CliError::Config(format!("eval takes a single {what}"))),
    }
}

impl EvalConfig {
    pub fn resolve(file: ConfigFile, n: Option<u64>, reference: bool) -> Result<Self, CliError> {
        let (problem, default_m) = resolve_problem(&file)?;
        let m = file
            .m
            .or(default_m)
            .ok_or_else(|| CliError::Config("inline integrands need a pole order m".into()))?;
        Ok(Self {
            problem,
            m,
            t: file.t.unwrap_or(DEFAULT_T),
            transform: parse_transform(file.transform.as_deref().unwrap_or("rational"))?,
            shape: single(file.p, DEFAULT_SHAPE, "p")?,
            s: single(file.s, DEFAULT_LEVEL, "s")?,
            n: n.unwrap_or(DEFAULT_N),
            summation: parse_summation(file.summation.as_deref().unwrap_or("pairwise"))?,
            reference,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalOutcome {
    pub value: f64,
    pub m: u32,
    pub s: u32,
    pub n: u64,
    pub h: f64,
    pub node_evals: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_source: Option<ExactSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_error: Option<f64>,
}

pub fn run_eval(cfg: &EvalConfig) -> Result<EvalOutcome, CliError> {
    let src = problem_integrand(&cfg.problem, cfg.t, cfg.m)?;
    let tr = PeriodizingTransform::new(cfg.transform, cfg.shape)?;
    let ti = build_transformed(&src, &tr, &IntervalMap::onto(src.a(), src.b())?)?;
    let rule = RuleConfig::new(cfg.m, cfg.s, cfg.n)?.with_summation(cfg.summation);
    let r = hfp_estimate(&ti, &rule)?;
    let mut out = EvalOutcome {
        value: r.value,
        m: r.m,
        s: r.s,
        n: r.n,
        h: r.h,
        node_evals: r.node_evals as u64,
        exact: None,
        exact_source: None,
        rel_error: None,
    };
    if cfg.reference {
        let (exact, source) = exact_value(&cfg.problem, &src)?;
        out.exact = Some(exact);
        out.exact_source = Some(source);
        out.rel_error = Some((r.value - exact).abs() / exact.abs());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_with_reference() {
        let file = ConfigFile {
            example: Some("poly_m2".into()),
            ..Default::default()
        };
        let out = run_eval(&EvalConfig::resolve(file, Some(256), true).unwrap()).unwrap();
        assert_eq!(out.exact_source, Some(ExactSource::Printed));
        assert!(out.rel_error.unwrap() < 1e-10);
        assert_eq!(out.h, 1.0 / 256.0);
    }

    #[test]
    fn shifted_pole_uses_oracle() {
        let file = ConfigFile {
            example: Some("cheb_m1".into()),
            t: Some(0.6),
            ..Default::default()
        };
        let out = run_eval(&EvalConfig::resolve(file, None, true).unwrap()).unwrap();
        assert_eq!(out.exact_source, Some(ExactSource::Oracle));
        assert!(out.rel_error.unwrap() < 1e-9);
    }

    #[test]
    fn lists_are_rejected() {
        let file = ConfigFile {
            example: Some("poly_m1".into()),
            p: Some(OneOrMany::Many(vec![5.0, 10.0])),
            ..Default::default()
        };
        assert!(EvalConfig::resolve(file, None, false).is_err());
    }
}

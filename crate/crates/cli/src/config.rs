//! Study configuration: an optional JSON file overlaid by command-line flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use pvtsi::{
    example_library, max_level, PeriodizingTransform, RuleConfig, SingularIntegrand, Summation,
    TransformKind,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::expr::Expr;

pub const DEFAULT_T: f64 = 0.3;
pub const DEFAULT_SHAPES: [f64; 3] = [5.0, 10.0, 15.0];
pub const DEFAULT_LEVELS: [u32; 2] = [0, 1];
pub const DEFAULT_N0: u64 = 2;
pub const DEFAULT_DOUBLINGS: u32 = 10;
pub const MAX_DOUBLINGS: u32 = 14;

/// A scalar or a list, so `"p": 10` and `"p": [5, 10]` both parse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    pub fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

/// Every field optional; unset fields fall back to the file, then defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub example: Option<String>,
    pub g: Option<String>,
    pub m: Option<u32>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub t: Option<f64>,
    pub transform: Option<String>,
    pub p: Option<OneOrMany<f64>>,
    pub s: Option<OneOrMany<u32>>,
    pub n0: Option<u64>,
    pub doublings: Option<u32>,
    pub format: Option<String>,
    pub summation: Option<String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigFile {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Fields set in `over` win.
    pub fn overlay(self, over: ConfigFile) -> ConfigFile {
        ConfigFile {
            example: over.example.or(self.example),
            g: over.g.or(self.g),
            m: over.m.or(self.m),
            a: over.a.or(self.a),
            b: over.b.or(self.b),
            c: over.c.or(self.c),
            t: over.t.or(self.t),
            transform: over.transform.or(self.transform),
            p: over.p.or(self.p),
            s: over.s.or(self.s),
            n0: over.n0.or(self.n0),
            doublings: over.doublings.or(self.doublings),
            format: over.format.or(self.format),
            summation: over.summation.or(self.summation),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(CliError::Config(format!(
                "unknown format `{other}` (expected csv or markdown)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Example(String),
    Inline { g: Expr, a: f64, b: f64, c: f64 },
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Example(name) => write!(f, "example {name}"),
            Problem::Inline { g, a, b, c } => {
                write!(f, "g(x) = {g} on ({a}, {b})")?;
                if *c != 0.0 {
                    write!(f, ", endpoint exponent {c}")?;
                }
                Ok(())
            }
        }
    }
}

/// A validated study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub problem: Problem,
    pub m: u32,
    pub t: f64,
    pub transform: TransformKind,
    /// `p` for every kind except tanh, where it is `c`.
    pub shapes: Vec<f64>,
    pub levels: Vec<u32>,
    pub n0: u64,
    pub doublings: u32,
    pub format: Format,
    pub summation: Summation,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub(crate) fn parse_summation(s: &str) -> Result<Summation, CliError> {
    s.parse::<Summation>()
        .map_err(|_| config_err(format!("unknown summation `{s}` (expected pairwise or compensated)")))
}

pub(crate) fn parse_transform(s: &str) -> Result<TransformKind, CliError> {
    s.parse::<TransformKind>().map_err(|_| {
        config_err(format!(
            "unknown transform `{s}` (expected rational, tangent, tanh, korobov or sinp)"
        ))
    })
}

/// Resolves the problem description shared by `study` and `eval`; returns
/// the problem and its default pole order.
pub(crate) fn resolve_problem(file: &ConfigFile) -> Result<(Problem, Option<u32>), CliError> {
    match (&file.example, &file.g) {
        (Some(_), Some(_)) => Err(config_err("give either an example or an inline g, not both")),
        (None, None) => Err(config_err("no integrand: set an example or an inline g")),
        (Some(name), None) => {
            if file.a.is_some() || file.b.is_some() || file.c.is_some() {
                return Err(config_err(
                    "a, b and c describe inline integrands; library examples fix them",
                ));
            }
            let case = example_library(name)?;
            Ok((Problem::Example(name.clone()), Some(case.integrand.m())))
        }
        (None, Some(g)) => {
            let g = Expr::parse(g)?;
            let problem = Problem::Inline {
                g,
                a: file.a.unwrap_or(0.0),
                b: file.b.unwrap_or(1.0),
                c: file.c.unwrap_or(0.0),
            };
            Ok((problem, None))
        }
    }
}

impl StudyConfig {
    pub fn resolve(file: ConfigFile) -> Result<Self, CliError> {
        let (problem, default_m) = resolve_problem(&file)?;
        let m = file
            .m
            .or(default_m)
            .ok_or_else(|| config_err("inline integrands need a pole order m"))?;
        let transform = parse_transform(file.transform.as_deref().unwrap_or("rational"))?;
        let shapes = file.p.map_or_else(|| DEFAULT_SHAPES.to_vec(), OneOrMany::into_vec);
        let levels = file.s.map_or_else(|| DEFAULT_LEVELS.to_vec(), OneOrMany::into_vec);
        let format = file.format.as_deref().unwrap_or("csv").parse()?;
        let summation = parse_summation(file.summation.as_deref().unwrap_or("pairwise"))?;
        let cfg = Self {
            problem,
            m,
            t: file.t.unwrap_or(DEFAULT_T),
            transform,
            shapes,
            levels,
            n0: file.n0.unwrap_or(DEFAULT_N0),
            doublings: file.doublings.unwrap_or(DEFAULT_DOUBLINGS),
            format,
            summation,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.doublings == 0 || self.doublings > MAX_DOUBLINGS {
            return Err(config_err(format!(
                "doublings must be between 1 and {MAX_DOUBLINGS}, got {}",
                self.doublings
            )));
        }
        if self.n0 < 2 {
            return Err(config_err(format!("n0 must be at least 2, got {}", self.n0)));
        }
        if self.shapes.is_empty() {
            return Err(config_err("at least one transform parameter p is required"));
        }
        if self.levels.is_empty() {
            return Err(config_err("at least one extrapolation level s is required"));
        }
        let top = max_level(self.m);
        if let Some(&s) = self.levels.iter().find(|&&s| s > top) {
            return Err(config_err(format!(
                "level s = {s} exceeds the maximum {top} for pole order m = {}; use s <= {top}",
                self.m
            )));
        }
        for &p in &self.shapes {
            PeriodizingTransform::new(self.transform, p)?;
        }
        let n_max = self.n_at(self.doublings);
        for &s in &self.levels {
            RuleConfig::new(self.m, s, n_max)?;
        }
        self.integrand()?;
        Ok(())
    }

    /// `n` on row `k` (1-based): `n0 · 2^(k-1)`, so `n0 = 2` gives `n = 2^k`.
    pub fn n_at(&self, k: u32) -> u64 {
        self.n0 << (k - 1)
    }

    pub fn integrand(&self) -> Result<SingularIntegrand, CliError> {
        problem_integrand(&self.problem, self.t, self.m)
    }
}

pub(crate) fn problem_integrand(
    problem: &Problem,
    t: f64,
    m: u32,
) -> Result<SingularIntegrand, CliError> {
    Ok(match problem {
        Problem::Example(name) => example_library(name)?.integrand.with_pole(t, m)?,
        Problem::Inline { g, a, b, c } => {
            SingularIntegrand::new(Arc::new(g.clone()), t, m, *a, *b)?.with_endpoint_exponent(*c)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(name: &str) -> ConfigFile {
        ConfigFile {
            example: Some(name.into()),
            ..Default::default()
        }
    }

    #[test]
    fn defaults_mirror_the_standard_study() {
        let cfg = StudyConfig::resolve(example("poly_m1")).unwrap();
        assert_eq!(cfg.m, 1);
        assert_eq!(cfg.t, 0.3);
        assert_eq!(cfg.shapes, vec![5.0, 10.0, 15.0]);
        assert_eq!(cfg.n_at(1), 2);
        assert_eq!(cfg.n_at(10), 1024);
    }

    #[test]
    fn flags_override_file() {
        let file: ConfigFile =
            serde_json::from_str(r#"{"example": "poly_m2", "p": 5, "s": [0, 1, 2], "t": 0.4}"#).unwrap();
        let flags = ConfigFile {
            p: Some(OneOrMany::Many(vec![7.0, 9.0])),
            ..Default::default()
        };
        let cfg = StudyConfig::resolve(file.overlay(flags)).unwrap();
        assert_eq!(cfg.shapes, vec![7.0, 9.0]);
        assert_eq!(cfg.levels, vec![0, 1, 2]);
        assert_eq!(cfg.t, 0.4);
    }

    #[test]
    fn level_bound_is_enforced() {
        let mut file = example("poly_m1");
        file.s = Some(OneOrMany::Many(vec![0, 2]));
        let err = StudyConfig::resolve(file).unwrap_err();
        assert!(err.to_string().contains("exceeds the maximum 1"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cases = [
            r#"{"example": "poly_m1", "doublings": 15}"#,
            r#"{"example": "poly_m1", "doublings": 0}"#,
            r#"{"example": "poly_m1", "transform": "gauss"}"#,
            r#"{"example": "poly_m1", "transform": "korobov", "p": 2.5}"#,
            r#"{"example": "nope"}"#,
            r#"{"example": "poly_m1", "g": "x"}"#,
            r#"{"example": "poly_m1", "a": -1}"#,
            r#"{"g": "x"}"#,
            r#"{"g": "x +", "m": 1}"#,
            r#"{"g": "x", "m": 1, "t": 1.5}"#,
            r#"{"example": "poly_m1", "format": "xml"}"#,
            r#"{"example": "poly_m1", "summation": "kahan"}"#,
        ];
        for json in cases {
            let file: ConfigFile = serde_json::from_str(json).unwrap();
            let err = StudyConfig::resolve(file).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{json}: {err}");
        }
        assert!(serde_json::from_str::<ConfigFile>(r#"{"exmaple": "poly_m1"}"#).is_err());
    }

    #[test]
    fn inline_problem() {
        let file: ConfigFile =
            serde_json::from_str(r#"{"g": "exp(x)", "m": 2, "a": -1, "b": 2, "t": 0.5, "p": 8}"#)
                .unwrap();
        let cfg = StudyConfig::resolve(file).unwrap();
        let src = cfg.integrand().unwrap();
        assert_eq!((src.a(), src.b(), src.m()), (-1.0, 2.0, 2));
        assert!((src.g().value(0.5) - 0.5f64.exp()).abs() < 1e-15);
    }
}

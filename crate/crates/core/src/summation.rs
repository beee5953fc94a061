//! Order-fixed floating-point summation.
//!
//! Node values near the pole grow like `h^{-m}`, so plain left-to-right
//! accumulation loses digits. Both modes here visit terms in a fixed order,
//! so repeated evaluation is bit-identical.
//!
//! The rule assembly uses the double-double variants: every addition keeps
//! its rounding error, and the pairwise mode differs from the compensated one
//! only in the order of the reduction tree.

use std::fmt;
use std::str::FromStr;

use crate::dd::Dd;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// Fixed binary-tree reduction.
    #[default]
    Pairwise,
    /// Neumaier's compensated sum.
    Compensated,
}

impl Summation {
    pub fn sum(self, values: &[f64]) -> f64 {
        match self {
            Summation::Pairwise => pairwise_sum(values),
            Summation::Compensated => compensated_sum(values),
        }
    }

    pub(crate) fn sum_dd(self, values: &[f64]) -> Dd {
        match self {
            Summation::Pairwise => pairwise_dd(values),
            Summation::Compensated => values.iter().fold(Dd::ZERO, |acc, &v| acc.add_f64(v)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Summation::Pairwise => "pairwise",
            Summation::Compensated => "compensated",
        }
    }
}

impl fmt::Display for Summation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Summation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "pairwise" => Ok(Summation::Pairwise),
            "compensated" => Ok(Summation::Compensated),
            other => Err(Error::InvalidParameter(format!(
                "unknown summation mode `{other}` (expected pairwise or compensated)"
            ))),
        }
    }
}

const BLOCK: usize = 8;

pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

fn pairwise_dd(values: &[f64]) -> Dd {
    if values.len() <= BLOCK {
        return values.iter().fold(Dd::ZERO, |acc, &v| acc.add_f64(v));
    }
    let mid = values.len() / 2;
    pairwise_dd(&values[..mid]) + pairwise_dd(&values[mid..])
}

pub fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

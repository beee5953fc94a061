//! Numbers that can stand in for `f64` inside user-supplied functions.
//!
//! The regular part `g` of a singular integrand is written once, generically
//! over [`Scalar`], and is then evaluated both on plain reals (quadrature
//! nodes) and on [`Jet`]s (derivatives at the pole).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::jet::Jet;

pub trait Scalar:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    /// The real value (constant term for jets).
    fn value(&self) -> f64;
    /// A constant of the same shape as `self`.
    fn constant(&self, c: f64) -> Self;

    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn tan(&self) -> Self;
    fn tanh(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn powf(&self, e: f64) -> Self;
    fn powi(&self, n: i32) -> Self;

    /// Given `self` = u'(x) and the value u(x), returns u(x).
    ///
    /// Lets functions defined through an integral (no closed form) still
    /// propagate derivatives: the jet of `u` is the integrated jet of `u'`.
    fn with_derivative(&self, value: f64) -> Self;
}

impl Scalar for f64 {
    fn value(&self) -> f64 {
        *self
    }
    fn constant(&self, c: f64) -> Self {
        c
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn tan(&self) -> Self {
        f64::tan(*self)
    }
    fn tanh(&self) -> Self {
        f64::tanh(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn powf(&self, e: f64) -> Self {
        if e.fract() == 0.0 && e.abs() <= 1024.0 {
            f64::powi(*self, e as i32)
        } else {
            f64::powf(*self, e)
        }
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn with_derivative(&self, value: f64) -> Self {
        value
    }
}

// Domain violations turn into NaN coefficients, mirroring f64 semantics;
// callers that need a hard error check `Jet::is_finite` on the result.
impl Scalar for Jet {
    fn value(&self) -> f64 {
        Jet::value(self)
    }
    fn constant(&self, c: f64) -> Self {
        self.constant_like(c)
    }
    fn exp(&self) -> Self {
        Jet::exp(self)
    }
    fn ln(&self) -> Self {
        Jet::ln(self).unwrap_or_else(|_| self.nan_like())
    }
    fn sin(&self) -> Self {
        Jet::sin(self)
    }
    fn cos(&self) -> Self {
        Jet::cos(self)
    }
    fn tan(&self) -> Self {
        Jet::tan(self).unwrap_or_else(|_| self.nan_like())
    }
    fn tanh(&self) -> Self {
        Jet::tanh(self)
    }
    fn sqrt(&self) -> Self {
        Jet::sqrt(self).unwrap_or_else(|_| self.nan_like())
    }
    fn powf(&self, e: f64) -> Self {
        Jet::powf(self, e).unwrap_or_else(|_| self.nan_like())
    }
    fn powi(&self, n: i32) -> Self {
        Jet::powi(self, n).unwrap_or_else(|_| self.nan_like())
    }
    fn with_derivative(&self, value: f64) -> Self {
        self.antiderivative(value)
    }
}

/// A real function written generically over [`Scalar`].
pub trait ScalarFn {
    fn call<S: Scalar>(&self, x: S) -> S;
}

/// Object-safe view of a [`ScalarFn`]: evaluation on reals and on jets.
pub trait RegularPart: Send + Sync {
    fn value(&self, x: f64) -> f64;
    fn jet(&self, x: &Jet) -> Jet;
}

impl<T: ScalarFn + Send + Sync> RegularPart for T {
    fn value(&self, x: f64) -> f64 {
        self.call(x)
    }
    fn jet(&self, x: &Jet) -> Jet {
        self.call(x.clone())
    }
}

/// Polynomial with coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial(pub Vec<f64>);

impl ScalarFn for Polynomial {
    fn call<S: Scalar>(&self, x: S) -> S {
        let mut acc = x.constant(0.0);
        for &c in self.0.iter().rev() {
            acc = acc * x.clone() + c;
        }
        acc
    }
}

/// The constant function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl ScalarFn for Constant {
    fn call<S: Scalar>(&self, x: S) -> S {
        x.constant(self.0)
    }
}

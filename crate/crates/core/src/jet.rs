//! Truncated univariate Taylor series.
//!
//! A [`Jet`] of order `K` about a point `x0` stores the normalized Taylor
//! coefficients `c_k = u^(k)(x0) / k!` for `k = 0..=K`. Arithmetic on jets is
//! exact up to truncation, which makes them a convenient way to push high
//! derivatives through compositions of elementary functions.
//!
//! Binary operations require both operands to share the same center and
//! order. The `try_*` methods report a mismatch as an error; the operator
//! overloads panic on it, the same way shape mismatches panic in array crates.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Highest supported jet order.
pub const MAX_ORDER: usize = 16;

/// Elementary functions with jet recurrences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Elementary {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Tanh,
    Sqrt,
    /// Real power `u^e`.
    Pow(f64),
}

#[derive(Clone, PartialEq)]
pub struct Jet {
    center: f64,
    coeffs: Vec<f64>,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet@{}{:?}", self.center, self.coeffs)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::JetOrderTooLarge {
            requested: order,
            cap: MAX_ORDER,
        });
    }
    Ok(())
}

impl Jet {
    /// Jet of the identity function at `x0`: `(x0, 1, 0, ..., 0)`.
    pub fn variable(x0: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = x0;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Ok(Self { center: x0, coeffs })
    }

    /// Jet of a constant function.
    pub fn constant(center: f64, value: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Ok(Self { center, coeffs })
    }

    /// Builds a jet from normalized Taylor coefficients.
    pub fn from_coeffs(center: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::JetMismatch("a jet needs at least one coefficient".into()));
        }
        check_order(coeffs.len() - 1)?;
        Ok(Self { center, coeffs })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// The function value at the center.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `k`-th derivative at the center, `k! * c_k`.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeffs[k] * fact
    }

    /// A constant jet sharing this jet's center and order.
    pub fn constant_like(&self, value: f64) -> Self {
        let mut coeffs = vec![0.0; self.coeffs.len()];
        coeffs[0] = value;
        Self {
            center: self.center,
            coeffs,
        }
    }

    /// Same series with a different constant term.
    pub fn with_value(mut self, value: f64) -> Self {
        self.coeffs[0] = value;
        self
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            center: self.center,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Jet of `u'`, one order lower.
    pub fn differentiate(&self) -> Self {
        let k = self.order();
        if k == 0 {
            return self.constant_like(0.0);
        }
        let coeffs = (0..k).map(|i| (i + 1) as f64 * self.coeffs[i + 1]).collect();
        Self {
            center: self.center,
            coeffs,
        }
    }

    /// Jet of `(u(x) - u(x0)) / (x - x0)`, one order lower.
    pub fn divided_difference(&self) -> Self {
        let k = self.order();
        if k == 0 {
            return self.constant_like(0.0);
        }
        Self {
            center: self.center,
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Treats `self` as the jet of `u'` and returns the jet of `u` with
    /// `u(x0) = value`, keeping the same order.
    pub fn antiderivative(&self, value: f64) -> Self {
        let k = self.order();
        let mut coeffs = Vec::with_capacity(k + 1);
        coeffs.push(value);
        for i in 0..k {
            coeffs.push(self.coeffs[i] / (i + 1) as f64);
        }
        Self {
            center: self.center,
            coeffs,
        }
    }

    fn compatible(&self, other: &Jet) -> Result<()> {
        if self.center != other.center {
            return Err(Error::JetMismatch(format!(
                "centers differ ({} vs {})",
                self.center, other.center
            )));
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::JetMismatch(format!(
                "orders differ ({} vs {})",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            center: self.center,
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    fn zip(&self, other: &Jet, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            center: self.center,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    /// Truncated Cauchy product.
    pub fn try_mul(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = (0..=k).map(|i| self.coeffs[i] * other.coeffs[k - i]).sum();
        }
        Ok(Self {
            center: self.center,
            coeffs: out,
        })
    }

    /// Power-series division.
    pub fn try_div(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let v0 = other.coeffs[0];
        if v0 == 0.0 {
            return Err(Error::DivisionByZeroConstant);
        }
        let n = self.coeffs.len();
        let mut w = vec![0.0; n];
        for k in 0..n {
            let acc: f64 = (0..k).map(|i| w[i] * other.coeffs[k - i]).sum();
            w[k] = (self.coeffs[k] - acc) / v0;
        }
        Ok(Self {
            center: self.center,
            coeffs: w,
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|c| c * factor)
    }

    pub fn recip(&self) -> Result<Jet> {
        self.constant_like(1.0).try_div(self)
    }

    /// Applies an elementary function, checking its domain at the constant term.
    pub fn apply(&self, kind: Elementary) -> Result<Jet> {
        match kind {
            Elementary::Exp => Ok(self.exp_series()),
            Elementary::Log => self.ln(),
            Elementary::Sin => Ok(self.sin_cos().0),
            Elementary::Cos => Ok(self.sin_cos().1),
            Elementary::Tan => self.tan(),
            Elementary::Tanh => Ok(self.tanh_series()),
            Elementary::Sqrt => self.sqrt(),
            Elementary::Pow(e) => self.powf(e),
        }
    }

    fn exp_series(&self) -> Jet {
        let u = &self.coeffs;
        let n = u.len();
        let mut w = vec![0.0; n];
        w[0] = u[0].exp();
        for k in 1..n {
            let acc: f64 = (1..=k).map(|j| j as f64 * u[j] * w[k - j]).sum();
            w[k] = acc / k as f64;
        }
        Self {
            center: self.center,
            coeffs: w,
        }
    }

    pub fn exp(&self) -> Jet {
        self.exp_series()
    }

    pub fn ln(&self) -> Result<Jet> {
        let u = &self.coeffs;
        if !(u[0] > 0.0) {
            return Err(Error::Domain {
                function: "log",
                value: u[0],
            });
        }
        let n = u.len();
        let mut w = vec![0.0; n];
        w[0] = u[0].ln();
        for k in 1..n {
            let acc: f64 = (1..k).map(|j| j as f64 * w[j] * u[k - j]).sum();
            w[k] = (u[k] - acc / k as f64) / u[0];
        }
        Ok(Self {
            center: self.center,
            coeffs: w,
        })
    }

    /// Jets of `sin u` and `cos u`, computed together.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let u = &self.coeffs;
        let n = u.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        (s[0], c[0]) = u[0].sin_cos();
        for k in 1..n {
            let mut as_ = 0.0;
            let mut ac = 0.0;
            for j in 1..=k {
                let ju = j as f64 * u[j];
                as_ += ju * c[k - j];
                ac += ju * s[k - j];
            }
            s[k] = as_ / k as f64;
            c[k] = -ac / k as f64;
        }
        (
            Self {
                center: self.center,
                coeffs: s,
            },
            Self {
                center: self.center,
                coeffs: c,
            },
        )
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    /// Shared recurrence for `w' = (1 + sign * w^2) u'`.
    fn riccati(&self, w0: f64, sign: f64) -> Jet {
        let u = &self.coeffs;
        let n = u.len();
        let mut w = vec![0.0; n];
        let mut v = vec![0.0; n];
        w[0] = w0;
        v[0] = 1.0 + sign * w0 * w0;
        for k in 1..n {
            let acc: f64 = (1..=k).map(|j| j as f64 * u[j] * v[k - j]).sum();
            w[k] = acc / k as f64;
            let sq: f64 = (0..=k).map(|i| w[i] * w[k - i]).sum();
            v[k] = sign * sq;
        }
        Self {
            center: self.center,
            coeffs: w,
        }
    }

    pub fn tan(&self) -> Result<Jet> {
        let u0 = self.coeffs[0];
        if u0.cos() == 0.0 || !u0.is_finite() {
            return Err(Error::Domain {
                function: "tan",
                value: u0,
            });
        }
        Ok(self.riccati(u0.tan(), 1.0))
    }

    fn tanh_series(&self) -> Jet {
        self.riccati(self.coeffs[0].tanh(), -1.0)
    }

    pub fn tanh(&self) -> Jet {
        self.tanh_series()
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let u = &self.coeffs;
        if !(u[0] > 0.0) {
            return Err(Error::Domain {
                function: "sqrt",
                value: u[0],
            });
        }
        let n = u.len();
        let mut w = vec![0.0; n];
        w[0] = u[0].sqrt();
        for k in 1..n {
            let acc: f64 = (1..k).map(|j| w[j] * w[k - j]).sum();
            w[k] = (u[k] - acc) / (2.0 * w[0]);
        }
        Ok(Self {
            center: self.center,
            coeffs: w,
        })
    }

    /// `u^e` for real `e`; integer exponents go through [`Jet::powi`].
    pub fn powf(&self, e: f64) -> Result<Jet> {
        if e.fract() == 0.0 && e.abs() <= 1024.0 {
            return self.powi(e as i32);
        }
        if !(self.coeffs[0] > 0.0) {
            return Err(Error::Domain {
                function: "pow",
                value: self.coeffs[0],
            });
        }
        Ok(self.ln()?.scale(e).exp_series())
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i32) -> Result<Jet> {
        let mut base = self.clone();
        let mut acc = self.constant_like(1.0);
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            Ok(acc)
        }
    }

    /// Series composition `outer(inner(x))`.
    ///
    /// `outer` must be expanded about `inner`'s constant term; the result is
    /// expanded about `inner`'s center.
    pub fn compose(outer: &Jet, inner: &Jet) -> Result<Jet> {
        if outer.center != inner.coeffs[0] {
            return Err(Error::JetMismatch(format!(
                "outer center {} differs from inner value {}",
                outer.center, inner.coeffs[0]
            )));
        }
        if outer.coeffs.len() != inner.coeffs.len() {
            return Err(Error::JetMismatch(format!(
                "orders differ ({} vs {})",
                outer.order(),
                inner.order()
            )));
        }
        let delta = inner.clone().with_value(0.0);
        let k = outer.order();
        let mut acc = inner.constant_like(outer.coeffs[k]);
        for i in (0..k).rev() {
            acc = acc.try_mul(&delta)?;
            acc.coeffs[0] += outer.coeffs[i];
        }
        Ok(acc)
    }

    /// True when every coefficient is finite.
    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// A jet whose coefficients are all NaN, used when a domain error has to
    /// be propagated through operator-style code.
    pub(crate) fn nan_like(&self) -> Jet {
        self.map(|_| f64::NAN)
    }
}

macro_rules! jet_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Jet> for &Jet {
            type Output = Jet;
            fn $method(self, rhs: &Jet) -> Jet {
                match self.$checked(rhs) {
                    Ok(j) => j,
                    Err(Error::DivisionByZeroConstant) => self.nan_like(),
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                (&self).$method(&rhs)
            }
        }
    };
}

jet_binop!(Add, add, try_add);
jet_binop!(Sub, sub, try_sub);
jet_binop!(Mul, mul, try_mul);
jet_binop!(Div, div, try_div);

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.coeffs[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self.map(|c| c / rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.map(|c| -c)
    }
}

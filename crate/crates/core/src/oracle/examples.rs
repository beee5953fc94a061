//! The six reference problems on `[0,1]` with known finite-part values.

use std::f64::consts::PI;
use std::sync::Arc;

use super::chebyshev::{chebyshev_eval, ChebyshevKind, ChebyshevWeighted};
use crate::error::{Error, Result};
use crate::integrand::SingularIntegrand;
use crate::scalar::{Polynomial, RegularPart};

pub const EXAMPLE_NAMES: [&str; 6] = ["cheb_m1", "cheb_m2", "cheb_m3", "poly_m1", "poly_m2", "poly_m3"];

/// Pole location at which the reference values below are tabulated.
pub const REFERENCE_T: f64 = 0.3;

/// Chebyshev degree used by the `cheb_*` cases.
const CHEB_K: u32 = 4;

#[derive(Debug, Clone)]
pub struct ExampleCase {
    pub name: &'static str,
    pub description: &'static str,
    /// The integrand with the pole at [`REFERENCE_T`].
    pub integrand: SingularIntegrand,
    /// Tabulated value at `t = 0.3`, to 33 significant digits.
    pub reference: &'static str,
    exact: fn(f64) -> f64,
}

impl ExampleCase {
    /// Closed-form value with the pole at `t ∈ (0,1)`.
    pub fn exact_value_at(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::OutOfInterval { value: t, lo: 0.0, hi: 1.0 });
        }
        Ok((self.exact)(t))
    }

    /// [`Self::reference`] parsed to `f64`.
    pub fn reference_value(&self) -> f64 {
        self.reference.parse().expect("reference literals are valid floats")
    }

    /// The same regular part with the pole moved to `t`.
    pub fn integrand_at(&self, t: f64) -> Result<SingularIntegrand> {
        self.integrand.with_pole(t, self.integrand.m())
    }
}

fn cheb_exact_m1(t: f64) -> f64 {
    -PI / 2.0 * chebyshev_eval(ChebyshevKind::T, CHEB_K + 1, 2.0 * t - 1.0)
}

fn cheb_exact_m2(t: f64) -> f64 {
    -PI * (CHEB_K + 1) as f64 * chebyshev_eval(ChebyshevKind::U, CHEB_K, 2.0 * t - 1.0)
}

fn cheb_exact_m3(t: f64) -> f64 {
    -PI * (CHEB_K + 1) as f64 * chebyshev_eval(ChebyshevKind::UPrime, CHEB_K, 2.0 * t - 1.0)
}

// g(x) = 1 + x - x²
fn poly_g(t: f64) -> f64 {
    1.0 + t - t * t
}

fn poly_exact_m1(t: f64) -> f64 {
    0.5 - t + poly_g(t) * ((1.0 - t) / t).ln()
}

fn poly_exact_m2(t: f64) -> f64 {
    -1.0 - poly_g(t) / (t * (1.0 - t)) + (1.0 - 2.0 * t) * ((1.0 - t) / t).ln()
}

fn poly_exact_m3(t: f64) -> f64 {
    let s = t * (1.0 - t);
    poly_g(t) * (1.0 - 2.0 * t) / (2.0 * s * s) - (1.0 - 2.0 * t) / s - ((1.0 - t) / t).ln()
}

/// Looks up a reference problem by name.
pub fn example_library(name: &str) -> Result<ExampleCase> {
    let cheb: Arc<dyn RegularPart> = Arc::new(ChebyshevWeighted { k: CHEB_K });
    let poly: Arc<dyn RegularPart> = Arc::new(Polynomial(vec![1.0, 1.0, -1.0]));
    let (g, c, m, description, reference, exact): (_, _, _, _, _, fn(f64) -> f64) = match name {
        "cheb_m1" => (
            cheb,
            0.5,
            1,
            "sqrt(x(1-x)) U_4(2x-1) / (x-t)",
            "1.38833262547440142794141136393888",
            cheb_exact_m1,
        ),
        "cheb_m2" => (
            cheb,
            0.5,
            2,
            "sqrt(x(1-x)) U_4(2x-1) / (x-t)^2",
            "8.01734445196115234455666591412929",
            cheb_exact_m2,
        ),
        "cheb_m3" => (
            cheb,
            0.5,
            3,
            "sqrt(x(1-x)) U_4(2x-1) / (x-t)^3",
            "-86.4566298267911099224919459078519",
            cheb_exact_m3,
        ),
        "poly_m1" => (
            poly,
            0.0,
            1,
            "(1 + x - x^2) / (x-t)",
            "1.22523041106851637258923008288999",
            poly_exact_m1,
        ),
        "poly_m2" => (
            poly,
            0.0,
            2,
            "(1 + x - x^2) / (x-t)^2",
            "-6.42298561774988045927786175929650",
            poly_exact_m2,
        ),
        "poly_m3" => (
            poly,
            0.0,
            3,
            "(1 + x - x^2) / (x-t)^3",
            "2.73546857952209343844408750481721",
            poly_exact_m3,
        ),
        other => return Err(Error::UnknownExample(other.to_string())),
    };
    let name = EXAMPLE_NAMES
        .iter()
        .copied()
        .find(|n| *n == name)
        .expect("matched above");
    let integrand = SingularIntegrand::new(g, REFERENCE_T, m, 0.0, 1.0)?.with_endpoint_exponent(c)?;
    Ok(ExampleCase {
        name,
        description,
        integrand,
        reference,
        exact,
    })
}

//! Hadamard finite-part integrals by periodizing variable transformations.
//!
//! For `a < t < b` and a pole order `m ≥ 1` this crate approximates
//!
//! ```text
//!     ⨍ₐᵇ g(x) / (x - t)^m dx
//! ```
//!
//! by mapping `[a,b]` with a transformation whose derivatives vanish at the
//! ends, so the transformed integrand extends periodically, and then applying
//! offset trapezoidal sums with explicit correction terms built from Taylor
//! coefficients at the pole. Richardson elimination on top of the base rule
//! gives the higher levels.
//!
//! ```
//! use std::sync::Arc;
//! use pvtsi::{
//!     build_transformed, hfp_estimate, IntervalMap, PeriodizingTransform, Polynomial,
//!     RuleConfig, SingularIntegrand,
//! };
//!
//! let g = Arc::new(Polynomial(vec![1.0, 1.0, -1.0]));
//! let src = SingularIntegrand::new(g, 0.3, 1, 0.0, 1.0).unwrap();
//! let transform = PeriodizingTransform::rational(10.0).unwrap();
//! let ti = build_transformed(&src, &transform, &IntervalMap::unit()).unwrap();
//! let est = hfp_estimate(&ti, &RuleConfig::new(1, 1, 128).unwrap()).unwrap();
//! assert!((est.value - 1.225230411068516).abs() < 1e-12);
//! ```

// NaN-rejecting guards are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// `is_multiple_of` is newer than the supported toolchain.
#![allow(clippy::manual_is_multiple_of)]

mod dd;
pub mod error;
pub mod gauss;
pub mod integrand;
pub mod jet;
pub mod oracle;
pub mod quadrature;
pub mod scalar;
pub mod summation;
pub mod transform;
pub mod zeta;

pub use error::{Error, Result};
pub use integrand::{build_transformed, SingularIntegrand, TransformedIntegrand};
pub use jet::{Elementary, Jet, MAX_ORDER};
pub use oracle::{
    chebyshev_eval, example_library, hfp_closed_form, ChebyshevKind, ExampleCase, OracleValue,
    EXAMPLE_NAMES, REFERENCE_T,
};
pub use quadrature::{
    correction_sum, correction_terms, extrapolation_coeffs, extrapolation_weights, hfp_estimate,
    ladder_estimate, max_level, t_hat_0, t_hat_mid, QuadratureResult, RuleConfig,
};
pub use scalar::{Constant, Polynomial, RegularPart, Scalar, ScalarFn};
pub use summation::Summation;
pub use transform::{
    predict_q, transform_jet, transform_smoothness, transform_tau, IntervalMap,
    PeriodizingTransform, Smoothness, TransformKind,
};
pub use zeta::{bernoulli_even, bernoulli_even_exact, zeta_even};

//! Reference values for finite-part integrals, independent of the
//! transformed quadrature.

mod chebyshev;
mod closed_form;
mod examples;

pub use chebyshev::{chebyshev_eval, ChebyshevKind, ChebyshevWeighted};
pub use closed_form::{hfp_closed_form, kronrod_adaptive, OracleValue};
pub use examples::{example_library, ExampleCase, EXAMPLE_NAMES, REFERENCE_T};

//! The singular integrand `f(x) = g(x)/(x-t)^m` and its transformed,
//! periodically extended form `ℱ(ξ)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{Jet, MAX_ORDER};
use crate::scalar::RegularPart;
use crate::transform::{
    predict_q, transform_jet, transform_tau, IntervalMap, PeriodizingTransform, Smoothness,
};

/// Largest supported pole order. The jet of `G` at `τ` needs one more
/// coefficient than `m`, and the jet of `ψ` one more again.
pub const MAX_POLE_ORDER: u32 = (MAX_ORDER - 2) as u32;

// Relative distance (in units of the period) below which a node is treated
// as sitting on the period boundary or an endpoint.
const BOUNDARY_TOL: f64 = 1e-14;
const ENDPOINT_TOL: f64 = 1e-15;

/// `f(x) = g(x)/(x-t)^m` on `[a,b]`.
#[derive(Clone)]
pub struct SingularIntegrand {
    g: Arc<dyn RegularPart>,
    t: f64,
    m: u32,
    a: f64,
    b: f64,
    endpoint_exponent: f64,
}

impl fmt::Debug for SingularIntegrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SingularIntegrand")
            .field("t", &self.t)
            .field("m", &self.m)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("endpoint_exponent", &self.endpoint_exponent)
            .finish_non_exhaustive()
    }
}

impl SingularIntegrand {
    pub fn new(g: Arc<dyn RegularPart>, t: f64, m: u32, a: f64, b: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "integration interval requires a < b, got ({a}, {b})"
            )));
        }
        if !(t > a && t < b) {
            return Err(Error::OutOfInterval { value: t, lo: a, hi: b });
        }
        if m == 0 || m > MAX_POLE_ORDER {
            return Err(Error::InvalidParameter(format!(
                "pole order must be in 1..={MAX_POLE_ORDER}, got {m}"
            )));
        }
        Ok(Self {
            g,
            t,
            m,
            a,
            b,
            endpoint_exponent: 0.0,
        })
    }

    /// Declares `g(x) ~ (x-a)^c` and `(b-x)^c` at the ends. Used only to
    /// predict the smoothness of the periodic extension.
    pub fn with_endpoint_exponent(mut self, c: f64) -> Result<Self> {
        if !(c > -1.0) {
            return Err(Error::NonIntegrableEndpoint(c));
        }
        self.endpoint_exponent = c;
        Ok(self)
    }

    pub fn g(&self) -> &Arc<dyn RegularPart> {
        &self.g
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn endpoint_exponent(&self) -> f64 {
        self.endpoint_exponent
    }

    /// `f(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        self.g.value(x) / (x - self.t).powi(self.m as i32)
    }

    /// The same integrand with a different pole.
    pub fn with_pole(&self, t: f64, m: u32) -> Result<Self> {
        let mut s = Self::new(self.g.clone(), t, m, self.a, self.b)?;
        s.endpoint_exponent = self.endpoint_exponent;
        Ok(s)
    }
}

/// `F(ξ) = f(ψ(ξ)) ψ'(ξ)` with the pole at `τ = ψ⁻¹(t)`.
#[derive(Debug, Clone)]
pub struct TransformedIntegrand {
    source: SingularIntegrand,
    transform: PeriodizingTransform,
    map: IntervalMap,
    tau: f64,
    q: Smoothness,
    g_jet: Jet,
}

/// Maps `src` through `transform`. `map` must target `src`'s interval.
pub fn build_transformed(
    src: &SingularIntegrand,
    transform: &PeriodizingTransform,
    map: &IntervalMap,
) -> Result<TransformedIntegrand> {
    if map.a != src.a || map.b != src.b {
        return Err(Error::InvalidParameter(format!(
            "interval map targets ({}, {}) but the integrand lives on ({}, {})",
            map.a, map.b, src.a, src.b
        )));
    }
    let tau = transform_tau(transform, map, src.t)?;
    let q = predict_q(transform.smoothness(), src.endpoint_exponent)?;
    let mut ti = TransformedIntegrand {
        source: src.clone(),
        transform: transform.clone(),
        map: *map,
        tau,
        q,
        g_jet: Jet::constant(tau, 0.0, 0)?,
    };
    ti.g_jet = ti.g_jet_at_tau(src.m as usize + 1)?;
    Ok(ti)
}

impl TransformedIntegrand {
    pub fn source(&self) -> &SingularIntegrand {
        &self.source
    }

    pub fn transform(&self) -> &PeriodizingTransform {
        &self.transform
    }

    pub fn map(&self) -> &IntervalMap {
        &self.map
    }

    pub fn m(&self) -> u32 {
        self.source.m
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn period(&self) -> f64 {
        self.map.period()
    }

    /// Predicted number of continuous derivatives of `ℱ` across `β`.
    pub fn q(&self) -> Smoothness {
        self.q
    }

    /// Cached jet of `G` at `τ`, of order `m + 1`.
    pub fn g_jet(&self) -> &Jet {
        &self.g_jet
    }

    /// Jet of `G(ξ) = g(ψ(ξ)) ψ'(ξ) / (ψ[ξ,τ])^m` at `τ`.
    pub fn g_jet_at_tau(&self, order: usize) -> Result<Jet> {
        if order + 1 > MAX_ORDER {
            return Err(Error::JetOrderTooLarge {
                requested: order + 1,
                cap: MAX_ORDER,
            });
        }
        let t = self.source.t;
        // ψ(τ) = t only to solver accuracy; pin the constant term so the
        // composition below is expanded about exactly t.
        let psi = transform_jet(&self.transform, &self.map, self.tau, order + 1)?.with_value(t);
        let dpsi = psi.differentiate();
        let slope = psi.divided_difference();
        if !(slope.value() > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "transformation derivative at tau = {} is not positive",
                self.tau
            )));
        }
        let inner = psi.truncate(order);
        let g_t = self.source.g.jet(&Jet::variable(t, order)?);
        let g_psi = Jet::compose(&g_t, &inner)?;
        let denom = slope.powi(self.source.m as i32)?;
        let jet = g_psi.try_mul(&dpsi)?.try_div(&denom)?;
        if !jet.is_finite() {
            return Err(Error::NonFinite(self.tau));
        }
        Ok(jet)
    }

    /// `F(ξ)` for `ξ ∈ (α, β)`, `ξ ≠ τ`.
    ///
    /// Where `ψ'(ξ)` underflows to zero, or `ψ(ξ)` rounds onto `a` or `b`,
    /// the value is taken as 0: the factor `ψ'` has already driven the true
    /// value far below rounding level there.
    pub fn f_eval(&self, xi: f64) -> Result<f64> {
        let (alpha, beta) = (self.map.alpha, self.map.beta);
        if !(xi >= alpha && xi <= beta) {
            return Err(Error::OutOfInterval {
                value: xi,
                lo: alpha,
                hi: beta,
            });
        }
        let guard = ENDPOINT_TOL * self.period();
        if xi - alpha < guard || beta - xi < guard {
            return Err(Error::EndpointEvaluation(xi));
        }
        if xi == self.tau {
            return Err(Error::PoleEvaluation(xi));
        }
        let (x, dx) = self.transform.psi(&self.map, xi);
        if dx == 0.0 || x <= self.source.a || x >= self.source.b {
            return Ok(0.0);
        }
        let v = self.source.g.value(x) * dx / (x - self.source.t).powi(self.source.m as i32);
        if !v.is_finite() {
            return Err(Error::NonFinite(xi));
        }
        Ok(v)
    }

    /// `ℱ(ξ)` for `ξ ∈ (τ, τ+𝒯)`.
    pub fn periodic_f_eval(&self, xi: f64) -> Result<f64> {
        let period = self.period();
        if !(xi > self.tau && xi < self.tau + period) {
            return Err(Error::OutOfInterval {
                value: xi,
                lo: self.tau,
                hi: self.tau + period,
            });
        }
        self.offset_eval(xi - self.tau, self.tau + period - xi)
    }

    /// `ℱ(τ + k𝒯/N)` for `0 < k < N`.
    ///
    /// The offset is formed as `(𝒯k)/N`, which is unchanged when `k` and `N`
    /// are both doubled, so refined grids reproduce coarse nodes bit for bit.
    pub fn node(&self, k: u64, denom: u64) -> Result<f64> {
        if k == 0 || k >= denom {
            return Err(Error::InvalidParameter(format!(
                "node index {k} outside 1..{denom}"
            )));
        }
        let period = self.period();
        let d = period * k as f64 / denom as f64;
        let rest = period * (denom - k) as f64 / denom as f64;
        self.offset_eval(d, rest)
    }

    // ℱ(τ + d) where d + rest = 𝒯; past β the point is τ - rest.
    fn offset_eval(&self, d: f64, rest: f64) -> Result<f64> {
        let beta = self.map.beta;
        let xi = self.tau + d;
        if (xi - beta).abs() <= BOUNDARY_TOL * self.period() {
            return if self.q.is_at_least(1) {
                Ok(0.0)
            } else {
                Err(Error::UndefinedAtBoundary)
            };
        }
        if xi < beta {
            self.f_eval(xi)
        } else {
            self.f_eval(self.tau - rest)
        }
    }
}

//! Periodizing variable transformations.
//!
//! Every transformation here is a monotone map `ψ̂: [0,1] → [0,1]` whose
//! derivatives vanish at both endpoints, symmetric about `ξ = 1/2`. An
//! [`IntervalMap`] lifts `ψ̂` affinely to `ψ: [α,β] → [a,b]`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gauss;
use crate::jet::Jet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    /// `ξ^p / (ξ^p + (1-ξ)^p)`.
    Rational,
    /// `sin^p(πξ/2) / (sin^p(πξ/2) + cos^p(πξ/2))`.
    Tangent,
    /// `(1 + tanh(c (1/(1-ξ) - 1/ξ))) / 2`.
    Tanh,
    /// Normalized `∫₀^ξ [u(1-u)]^(p-1) du`.
    Korobov,
    /// Normalized `∫₀^ξ sin^(p-1)(πu) du`.
    Sinp,
}

impl TransformKind {
    pub const ALL: [TransformKind; 5] = [
        TransformKind::Rational,
        TransformKind::Tangent,
        TransformKind::Tanh,
        TransformKind::Korobov,
        TransformKind::Sinp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Rational => "rational",
            TransformKind::Tangent => "tangent",
            TransformKind::Tanh => "tanh",
            TransformKind::Korobov => "korobov",
            TransformKind::Sinp => "sinp",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TransformKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown transform `{s}` (expected rational, tangent, tanh, korobov or sinp)"
                ))
            })
    }
}

/// Number of vanishing endpoint derivatives, possibly unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Smoothness {
    Finite(u32),
    Infinite,
}

impl Smoothness {
    pub fn is_at_least(self, k: u32) -> bool {
        match self {
            Smoothness::Finite(r) => r >= k,
            Smoothness::Infinite => true,
        }
    }
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Finite(r) => write!(f, "{r}"),
            Smoothness::Infinite => f.write_str("inf"),
        }
    }
}

/// Periodization order `q` of the transformed integrand, given the
/// transformation's smoothness `r` and the endpoint behaviour `(x-a)^c`
/// (equivalently `(b-x)^c`) of the integrand.
pub fn predict_q(r: Smoothness, c: f64) -> Result<Smoothness> {
    if !(c > -1.0) {
        return Err(Error::NonIntegrableEndpoint(c));
    }
    let r = match r {
        Smoothness::Infinite => return Ok(Smoothness::Infinite),
        Smoothness::Finite(r) => r,
    };
    if c >= 0.0 && c.fract() == 0.0 {
        return Ok(Smoothness::Finite(r));
    }
    let rho = c * (r as f64 + 1.0) + r as f64;
    Ok(Smoothness::Finite(rho.ceil().max(0.0) as u32))
}

/// Affine placement of a transformation: `ψ(ξ) = a + (b-a) ψ̂((ξ-α)/(β-α))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalMap {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl IntervalMap {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "target interval requires a < b, got ({a}, {b})"
            )));
        }
        if !(alpha < beta) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "parameter interval requires alpha < beta, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { a, b, alpha, beta })
    }

    /// `[a,b]` parametrized over `[0,1]`.
    pub fn onto(a: f64, b: f64) -> Result<Self> {
        Self::new(a, b, 0.0, 1.0)
    }

    pub fn unit() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            alpha: 0.0,
            beta: 1.0,
        }
    }

    pub fn period(&self) -> f64 {
        self.beta - self.alpha
    }

    fn to_hat(self, xi: f64) -> f64 {
        (xi - self.alpha) / (self.beta - self.alpha)
    }

    fn slope(&self) -> f64 {
        (self.b - self.a) / (self.beta - self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodizingTransform {
    kind: TransformKind,
    shape: f64,
    // Normalizing constant θ(1) for the integral-defined kinds.
    norm: f64,
}

const MAX_INTEGER_P: f64 = 64.0;

impl PeriodizingTransform {
    /// `shape` is `p` for every kind except [`TransformKind::Tanh`], where it is `c`.
    pub fn new(kind: TransformKind, shape: f64) -> Result<Self> {
        if !shape.is_finite() {
            return Err(Error::InvalidParameter(format!("shape parameter {shape} is not finite")));
        }
        match kind {
            TransformKind::Tanh => {
                if !(shape > 0.0) {
                    return Err(Error::InvalidParameter(format!("tanh requires c > 0, got {shape}")));
                }
            }
            _ => {
                if !(shape > 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "{kind} requires p > 1, got {shape}"
                    )));
                }
            }
        }
        let norm = match kind {
            TransformKind::Korobov | TransformKind::Sinp => {
                if shape.fract() != 0.0 || shape > MAX_INTEGER_P {
                    return Err(Error::Unsupported(format!(
                        "{kind} is implemented for integer p <= {MAX_INTEGER_P}, got {shape}"
                    )));
                }
                if kind == TransformKind::Korobov {
                    korobov_beta(shape as u32)
                } else {
                    2.0 * sinp_theta(shape, 0.5)
                }
            }
            _ => 1.0,
        };
        Ok(Self { kind, shape, norm })
    }

    pub fn rational(p: f64) -> Result<Self> {
        Self::new(TransformKind::Rational, p)
    }

    pub fn tangent(p: f64) -> Result<Self> {
        Self::new(TransformKind::Tangent, p)
    }

    pub fn tanh(c: f64) -> Result<Self> {
        Self::new(TransformKind::Tanh, c)
    }

    pub fn korobov(p: u32) -> Result<Self> {
        Self::new(TransformKind::Korobov, p as f64)
    }

    pub fn sinp(p: u32) -> Result<Self> {
        Self::new(TransformKind::Sinp, p as f64)
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    /// Number of derivatives of `ψ̂` vanishing at both endpoints.
    ///
    /// Non-integer `p` reports `⌈p⌉ - 1`.
    pub fn smoothness(&self) -> Smoothness {
        match self.kind {
            TransformKind::Tanh => Smoothness::Infinite,
            _ => Smoothness::Finite(self.shape.ceil() as u32 - 1),
        }
    }

    /// `ψ̂(ξ)` on any [`Scalar`].
    pub fn eval<S: Scalar>(&self, xi: S) -> S {
        let p = self.shape;
        match self.kind {
            // Both ratios are evaluated on the half where the numerator is
            // the small term; the other half follows from ψ̂(1-ξ) = 1 - ψ̂(ξ).
            // Series division then never subtracts nearly equal terms.
            TransformKind::Rational | TransformKind::Tangent | TransformKind::Korobov
                if xi.value() > 0.5 =>
            {
                -self.eval(-xi + 1.0) + 1.0
            }
            TransformKind::Rational => {
                let u = xi.powf(p);
                let v = (-xi + 1.0).powf(p);
                u.clone() / (u + v)
            }
            TransformKind::Tangent => {
                let u = (xi * FRAC_PI_2).tan().powf(p);
                u.clone() / (u + 1.0)
            }
            TransformKind::Tanh => {
                let z = (xi.constant(1.0) / (-xi.clone() + 1.0) - xi.constant(1.0) / xi) * p;
                if z.value() <= 0.0 {
                    let e = (z * 2.0).exp();
                    e.clone() / (e + 1.0)
                } else {
                    let e = (z * -2.0).exp();
                    e.constant(1.0) / (e + 1.0)
                }
            }
            TransformKind::Korobov => {
                let n = 2 * p as i32 - 1;
                let one_minus = -xi.clone() + 1.0;
                let mut acc = xi.constant(0.0);
                for j in (p as i32)..=n {
                    let term = xi.powi(j) * one_minus.powi(n - j) * binomial(n as u32, j as u32);
                    acc = acc + term;
                }
                acc
            }
            TransformKind::Sinp => {
                let d = (xi.clone() * PI).sin().powf(p - 1.0) / self.norm;
                d.with_derivative(self.sinp_value(xi.value()))
            }
        }
    }

    /// `ψ̂(ξ)`.
    pub fn value(&self, xi: f64) -> f64 {
        match self.kind {
            TransformKind::Sinp => self.sinp_value(xi),
            _ => self.eval(xi),
        }
    }

    fn sinp_value(&self, xi: f64) -> f64 {
        if xi <= 0.5 {
            sinp_theta(self.shape, xi) / self.norm
        } else {
            1.0 - sinp_theta(self.shape, 1.0 - xi) / self.norm
        }
    }

    /// `ψ̂'(ξ)` in closed form.
    pub fn derivative(&self, xi: f64) -> f64 {
        let p = self.shape;
        match self.kind {
            TransformKind::Rational => {
                let u = xi.powf(p);
                let v = (1.0 - xi).powf(p);
                let s = u + v;
                p * (xi * (1.0 - xi)).powf(p - 1.0) / (s * s)
            }
            TransformKind::Tangent => {
                let (sn, cs) = (xi * FRAC_PI_2).sin_cos();
                let s = sn.powf(p);
                let c = cs.powf(p);
                let d = s + c;
                FRAC_PI_2 * p * (sn * cs).powf(p - 1.0) / (d * d)
            }
            TransformKind::Tanh => {
                let z = p * (1.0 / (1.0 - xi) - 1.0 / xi);
                let e = (-2.0 * z.abs()).exp();
                let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
                0.5 * sech2 * p * (1.0 / ((1.0 - xi) * (1.0 - xi)) + 1.0 / (xi * xi))
            }
            TransformKind::Korobov => (xi * (1.0 - xi)).powf(p - 1.0) / self.norm,
            TransformKind::Sinp => (PI * xi).sin().powf(p - 1.0) / self.norm,
        }
    }

    /// Solves `ψ̂(τ) = t` for `t ∈ (0,1)`.
    pub fn tau_hat(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::OutOfInterval {
                value: t,
                lo: 0.0,
                hi: 1.0,
            });
        }
        let p = self.shape;
        match self.kind {
            TransformKind::Rational => {
                let u = t.powf(1.0 / p);
                let v = (1.0 - t).powf(1.0 / p);
                Ok(u / (u + v))
            }
            TransformKind::Tangent => {
                let lambda = (t / (1.0 - t)).powf(1.0 / p);
                Ok(lambda.atan() / FRAC_PI_2)
            }
            TransformKind::Tanh => {
                let lambda = (t / (1.0 - t)).ln() / (2.0 * p);
                let root = (lambda * lambda + 4.0).sqrt();
                // (root + λ - 2)/(2λ) rewritten to avoid cancellation at small λ
                if lambda > 0.0 {
                    Ok(1.0 - 2.0 / (root + lambda + 2.0))
                } else {
                    Ok(2.0 / (root - lambda + 2.0))
                }
            }
            TransformKind::Korobov | TransformKind::Sinp => self.newton_tau(t),
        }
    }

    // Newton with a bisection safeguard: ψ̂' vanishes at the endpoints, so a
    // plain Newton step can leave [0,1].
    fn newton_tau(&self, t: f64) -> Result<f64> {
        const MAX_ITER: usize = 100;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut xi = t;
        for _ in 0..MAX_ITER {
            let f = self.value(xi) - t;
            if f.abs() <= 2e-16 {
                return Ok(xi);
            }
            if f < 0.0 {
                lo = xi;
            } else {
                hi = xi;
            }
            let d = self.derivative(xi);
            let mut next = xi - f / d;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - xi).abs() <= 1e-17 || hi - lo <= f64::EPSILON * hi {
                return Ok(next);
            }
            xi = next;
        }
        Err(Error::SolverFailure { iterations: MAX_ITER })
    }

    /// `ψ(ξ)` and `ψ'(ξ)` for the placed transformation.
    pub fn psi(&self, map: &IntervalMap, xi: f64) -> (f64, f64) {
        let s = map.to_hat(xi);
        (
            map.a + (map.b - map.a) * self.value(s),
            map.slope() * self.derivative(s),
        )
    }
}

/// Jet of `ψ` at `xi0 ∈ (α, β)`.
pub fn transform_jet(
    transform: &PeriodizingTransform,
    map: &IntervalMap,
    xi0: f64,
    order: usize,
) -> Result<Jet> {
    if !(xi0 > map.alpha && xi0 < map.beta) {
        return Err(Error::OutOfInterval {
            value: xi0,
            lo: map.alpha,
            hi: map.beta,
        });
    }
    let x = Jet::variable(xi0, order)?;
    let s = (x - map.alpha) / map.period();
    let jet = transform.eval(s) * (map.b - map.a) + map.a;
    if !jet.is_finite() {
        return Err(Error::NonFinite(xi0));
    }
    Ok(jet)
}

/// Solves `ψ(τ) = t` for `t ∈ (a, b)`.
pub fn transform_tau(transform: &PeriodizingTransform, map: &IntervalMap, t: f64) -> Result<f64> {
    if !(t > map.a && t < map.b) {
        return Err(Error::OutOfInterval {
            value: t,
            lo: map.a,
            hi: map.b,
        });
    }
    let t_hat = (t - map.a) / (map.b - map.a);
    let tau_hat = transform.tau_hat(t_hat)?;
    Ok(map.alpha + map.period() * tau_hat)
}

pub fn transform_smoothness(transform: &PeriodizingTransform) -> Smoothness {
    transform.smoothness()
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `B(p, p) = ((p-1)!)² / (2p-1)!`.
fn korobov_beta(p: u32) -> f64 {
    let mut b = 1.0;
    for i in 1..p {
        b *= i as f64 / (p + i) as f64;
    }
    b / p as f64
}

/// `∫₀^ξ sin^(p-1)(πu) du` for `ξ ≤ 1/2`.
fn sinp_theta(p: f64, xi: f64) -> f64 {
    if xi <= 0.0 {
        return 0.0;
    }
    let panels = (xi * 4.0).ceil().max(1.0) as usize;
    gauss::integrate_panels(|u| (PI * u).sin().powf(p - 1.0), 0.0, xi, panels)
}

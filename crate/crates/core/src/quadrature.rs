//! Corrected offset-trapezoidal rules for finite-part integrals and their
//! Richardson ladder.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::integrand::TransformedIntegrand;
use crate::dd::Dd;
use crate::jet::Jet;
use crate::summation::Summation;
use crate::zeta::{zeta_even, zeta_even_dd};

/// Largest supported extrapolation level.
pub const MAX_LEVEL: u32 = 8;

/// Highest meaningful extrapolation level for pole order `m`: `⌊(m+2)/2⌋`,
/// capped at [`MAX_LEVEL`].
pub fn max_level(m: u32) -> u32 {
    ((m + 2) / 2).min(MAX_LEVEL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleConfig {
    pub m: u32,
    pub s: u32,
    pub n: u64,
    pub summation: Summation,
}

impl RuleConfig {
    pub fn new(m: u32, s: u32, n: u64) -> Result<Self> {
        let cfg = Self {
            m,
            s,
            n,
            summation: Summation::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_summation(mut self, summation: Summation) -> Self {
        self.summation = summation;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParameter("pole order must be at least 1".into()));
        }
        if self.s > max_level(self.m) {
            return Err(Error::LevelTooHigh {
                s: self.s,
                m: self.m,
                max: max_level(self.m),
            });
        }
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!(
                "panel count must be at least 2, got {}",
                self.n
            )));
        }
        // the finest grid has n·2^s points
        if !matches!(self.n.checked_shl(self.s), Some(v) if v <= 1 << 40) {
            return Err(Error::InvalidParameter(format!(
                "n·2^s = {}·2^{} is too large",
                self.n, self.s
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Base panel count.
    pub n: u64,
    /// Base step `𝒯/n`.
    pub h: f64,
    pub m: u32,
    pub s: u32,
    /// Number of integrand evaluations.
    pub node_evals: u64,
}

/// The individual correction terms, one per surviving power of `h`.
///
/// For `m = 2r` these are `2 G_{2i} ζ(2r-2i) h^{2i-2r+1}`, for `m = 2r+1`
/// `2 G_{2i+1} ζ(2r-2i) h^{2i-2r+1}`, `i = 0..=r`, with `G_k` the Taylor
/// coefficients of `G` at `τ`. The `ζ(-2k) = 0` terms are never formed.
pub fn correction_terms(m: u32, g_jet: &Jet, h: f64) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::InvalidParameter("pole order must be at least 1".into()));
    }
    if g_jet.order() < m as usize {
        return Err(Error::JetOrderTooLarge {
            requested: m as usize,
            cap: g_jet.order(),
        });
    }
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    let r = m / 2;
    let odd = m % 2;
    let c = g_jet.coeffs();
    (0..=r)
        .map(|i| {
            let zeta = zeta_even(2 * (r - i) as i64)?;
            let coeff = c[(2 * i + odd) as usize];
            Ok(2.0 * coeff * zeta * h.powi(2 * i as i32 - 2 * r as i32 + 1))
        })
        .collect()
}

/// Sum of [`correction_terms`].
pub fn correction_sum(m: u32, g_jet: &Jet, h: f64) -> Result<f64> {
    Ok(correction_terms(m, g_jet, h)?.iter().sum())
}

// Σ ℱ(τ + k𝒯/denom) over the given k.
fn node_sum(
    ti: &TransformedIntegrand,
    ks: impl Iterator<Item = u64>,
    denom: u64,
    summation: Summation,
) -> Result<(Dd, u64)> {
    let values = ks.map(|k| ti.node(k, denom)).collect::<Result<Vec<f64>>>()?;
    Ok((summation.sum_dd(&values), values.len() as u64))
}

// correction_sum carried in double-double.
fn correction_dd(m: u32, g_jet: &Jet, h: f64) -> Result<Dd> {
    correction_terms(m, g_jet, h)?;
    let r = m / 2;
    let odd = m % 2;
    let c = g_jet.coeffs();
    let mut total = Dd::ZERO;
    for i in 0..=r {
        let zeta = zeta_even_dd(r - i)?;
        let power = Dd::new(h).powi(2 * i as i32 - 2 * r as i32 + 1);
        total = total + (zeta * power).mul_f64(2.0 * c[(2 * i + odd) as usize]);
    }
    Ok(total)
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "panel count must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn t_hat_0_dd(ti: &TransformedIntegrand, n: u64, summation: Summation) -> Result<(Dd, u64)> {
    check_n(n)?;
    let h = ti.period() / n as f64;
    let (sum, evals) = node_sum(ti, 1..n, n, summation)?;
    Ok((sum.mul_f64(h) - correction_dd(ti.m(), ti.g_jet(), h)?, evals))
}

/// `T̂⁽⁰⁾_{m,n} = h Σ_{j=1}^{n-1} ℱ(τ+jh) − correction_sum(m, G, h)`, `h = 𝒯/n`.
pub fn t_hat_0(ti: &TransformedIntegrand, n: u64, summation: Summation) -> Result<QuadratureResult> {
    let (value, evals) = t_hat_0_dd(ti, n, summation)?;
    Ok(QuadratureResult {
        value: value.to_f64(),
        n,
        h: ti.period() / n as f64,
        m: ti.m(),
        s: 0,
        node_evals: evals,
    })
}

/// Published levels of the midpoint closed forms for each `m ≤ 4`.
pub fn midpoint_levels(m: u32) -> &'static [u32] {
    match m {
        1 => &[0, 1],
        2 | 3 => &[0, 1, 2],
        4 => &[0, 1, 2, 3],
        _ => &[],
    }
}

/// Closed forms of the extrapolated rules for `m ≤ 4` in terms of midpoint
/// sums `Σ ℱ(τ + jh − h/2)`, `Σ ℱ(τ + jh/2 − h/4)`, `Σ ℱ(τ + jh/4 − h/8)`.
pub fn t_hat_mid(
    ti: &TransformedIntegrand,
    level: u32,
    n: u64,
    summation: Summation,
) -> Result<QuadratureResult> {
    let m = ti.m();
    if !midpoint_levels(m).contains(&level) {
        return Err(Error::UnsupportedLevel { m, level });
    }
    check_n(n)?;
    let h = ti.period() / n as f64;
    let hd = Dd::new(h);
    let c = ti.g_jet().coeffs();
    // G^{(k)}(τ)
    let d = |k: usize| Dd::new(c[k]).mul_f64((1..=k).product::<usize>() as f64);
    let mut evals = 0;
    let mut mid = |refine: u64| -> Result<Dd> {
        // odd multiples of 𝒯/(2·refine·n)
        let denom = 2 * refine * n;
        let (s, e) = node_sum(ti, (1..=refine * n).map(|j| 2 * j - 1), denom, summation)?;
        evals += e;
        Ok(s)
    };
    let int = |v: f64| Dd::new(v);
    let pi2 = Dd::PI * Dd::PI;
    let pi4 = pi2 * pi2;
    let h_inv = int(1.0) / hd;
    let h_inv3 = hd.powi(-3);
    let value = match (m, level) {
        (_, 0) => {
            let (s, e) = node_sum(ti, 1..n, n, summation)?;
            evals += e;
            let s = s.mul_f64(h);
            match m {
                1 => s + d(1).mul_f64(h),
                2 => s - pi2 / int(3.0) * d(0) * h_inv + d(2).mul_f64(0.5 * h),
                3 => s - pi2 / int(3.0) * d(1) * h_inv + d(3).mul_f64(h) / int(6.0),
                _ => {
                    s - pi4 / int(45.0) * d(0) * h_inv3 - pi2 / int(6.0) * d(2) * h_inv
                        + d(4).mul_f64(h) / int(24.0)
                }
            }
        }
        (1, 1) => mid(1)?.mul_f64(h),
        (2, 1) => mid(1)?.mul_f64(h) - pi2 * d(0) * h_inv,
        (3, 1) => mid(1)?.mul_f64(h) - pi2 * d(1) * h_inv,
        (4, 1) => {
            mid(1)?.mul_f64(h) - pi4 / int(3.0) * d(0) * h_inv3 - pi2 / int(2.0) * d(2) * h_inv
        }
        (2 | 3, 2) => mid(1)?.mul_f64(2.0 * h) - mid(2)?.mul_f64(0.5 * h),
        (4, 2) => {
            mid(1)?.mul_f64(2.0 * h) - mid(2)?.mul_f64(0.5 * h) + pi4.mul_f64(2.0) * d(0) * h_inv3
        }
        (4, 3) => {
            // (16h/7) M₁ − (5h/7) M₂ + (h/28) M₄
            (mid(1)?.mul_f64(64.0) - mid(2)?.mul_f64(20.0) + mid(4)?).mul_f64(h) / int(28.0)
        }
        _ => unreachable!("levels filtered above"),
    };
    Ok(QuadratureResult {
        value: value.to_f64(),
        n,
        h,
        m,
        s: level,
        node_evals: evals,
    })
}

/// Exponent sequence of the error expansion: `e₀ = 1`, `e_k = -(2k-1)`.
fn exponent(k: u32) -> i32 {
    if k == 0 {
        1
    } else {
        -(2 * k as i32 - 1)
    }
}

/// Weights `α⁽ˢ⁾_k`, `k = 0..=s`, of `T̂⁽ˢ⁾_n = Σ α_k T̂⁽⁰⁾_{2^k n}`, as exact
/// rationals.
pub fn extrapolation_coeffs(s: u32) -> Result<Vec<Ratio<i128>>> {
    if s > MAX_LEVEL {
        return Err(Error::InvalidParameter(format!(
            "extrapolation level {s} exceeds {MAX_LEVEL}"
        )));
    }
    let one = Ratio::from_integer(1i128);
    let mut c = vec![one];
    for level in 0..s {
        // (T_{2n} - 2^{-e} T_n) / (1 - 2^{-e})
        let e = exponent(level);
        let factor = if e >= 0 {
            Ratio::new(1, 1i128 << e)
        } else {
            Ratio::from_integer(1i128 << -e)
        };
        let denom = one - factor;
        let mut next = vec![Ratio::from_integer(0); c.len() + 1];
        for (k, &ck) in c.iter().enumerate() {
            next[k + 1] += ck / denom;
            next[k] -= factor * ck / denom;
        }
        c = next;
    }
    Ok(c)
}

/// [`extrapolation_coeffs`] rounded to `f64`.
pub fn extrapolation_weights(s: u32) -> Result<Vec<f64>> {
    Ok(extrapolation_coeffs(s)?
        .into_iter()
        .map(|r| *r.numer() as f64 / *r.denom() as f64)
        .collect())
}

fn lcm(a: i128, b: i128) -> i128 {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// `Σ_k α⁽ˢ⁾_k T̂⁽⁰⁾_{m, 2^k n}`.
pub fn ladder_estimate(ti: &TransformedIntegrand, cfg: &RuleConfig) -> Result<QuadratureResult> {
    cfg.validate()?;
    if cfg.m != ti.m() {
        return Err(Error::InvalidParameter(format!(
            "rule configured for m = {} but the integrand has m = {}",
            cfg.m,
            ti.m()
        )));
    }
    // Σ α_k T_k with α_k = N_k / D; integer weights keep the
    // cancellation of the correction terms exact.
    let coeffs = extrapolation_coeffs(cfg.s)?;
    let denom = coeffs.iter().fold(1i128, |acc, c| lcm(acc, *c.denom()));
    let mut total = Dd::ZERO;
    let mut evals = 0;
    for (k, c) in coeffs.iter().enumerate() {
        let (t, e) = t_hat_0_dd(ti, cfg.n << k, cfg.summation)?;
        let weight = c.numer() * (denom / c.denom());
        total = total + Dd::from_i128(weight) * t;
        evals += e;
    }
    let value = (total / Dd::from_i128(denom)).to_f64();
    Ok(QuadratureResult {
        value,
        n: cfg.n,
        h: ti.period() / cfg.n as f64,
        m: cfg.m,
        s: cfg.s,
        node_evals: evals,
    })
}

/// The finite-part estimate `T̂⁽ˢ⁾_{m,n}`.
pub fn hfp_estimate(ti: &TransformedIntegrand, cfg: &RuleConfig) -> Result<QuadratureResult> {
    ladder_estimate(ti, cfg)
}

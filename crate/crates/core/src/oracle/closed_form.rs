//! Finite-part integrals by subtracting the Taylor polynomial of `g` at the
//! pole and integrating the smooth remainder numerically.
//!
//! With `c_i = g^{(i)}(t)/i!` and `w(x) = (g(x) - Σ_{i<m} c_i (x-t)^i)/(x-t)^m`,
//!
//! ```text
//! ⨍ₐᵇ g/(x-t)^m = ∫ₐᵇ w + c_{m-1} log|(b-t)/(a-t)|
//!               + Σ_{i=0}^{m-2} c_i/(m-i-1) · [(a-t)^{-(m-i-1)} - (b-t)^{-(m-i-1)}]
//! ```

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::integrand::SingularIntegrand;
use crate::jet::{Jet, MAX_ORDER};

/// Series terms kept beyond `c_m` inside the cancellation radius.
const TAIL_TERMS: usize = 8;
/// Cancellation radius as a fraction of the distance from `t` to the nearer end.
const RADIUS_FRACTION: f64 = 0.05;
const REL_TOL: f64 = 1e-13;
const MAX_INTERVALS: usize = 20_000;
/// Accepted estimated relative error when the target cannot be met.
const FAILURE_REL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
}

/// Reference value of `⨍ₐᵇ g(x)/(x-t)^m dx`.
pub fn hfp_closed_form(src: &SingularIntegrand) -> Result<OracleValue> {
    let m = src.m() as usize;
    let order = m - 1 + TAIL_TERMS;
    if order > MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "the oracle supports pole orders up to {}",
            MAX_ORDER + 1 - TAIL_TERMS
        )));
    }
    let (a, b, t) = (src.a(), src.b(), src.t());
    let g = src.g();
    let jet = g.jet(&Jet::variable(t, order)?);
    if !jet.is_finite() {
        return Err(Error::NonFinite(t));
    }
    let c = jet.coeffs();

    let rho = RADIUS_FRACTION * (t - a).min(b - t);
    // ∫_{-ρ}^{ρ} Σ_{i≥m} c_i d^{i-m} dd; odd powers integrate to zero
    let inner: f64 = (m..=order)
        .step_by(2)
        .map(|i| {
            let k = (i - m) as i32;
            2.0 * c[i] * rho.powi(k + 1) / (k + 1) as f64
        })
        .sum();
    let truncation = c[order].abs() * rho.powi((order - m + 1) as i32);

    let w = |x: f64| {
        let d = x - t;
        let mut taylor = 0.0;
        for i in (0..m).rev() {
            taylor = taylor * d + c[i];
        }
        (g.value(x) - taylor) / d.powi(m as i32)
    };
    let outer = kronrod_adaptive(w, &[(a, t - rho), (t + rho, b)])?;

    let log_term = c[m - 1] * ((b - t) / (a - t)).abs().ln();
    let finite: f64 = (0..m.saturating_sub(1))
        .map(|i| {
            let p = (m - i - 1) as i32;
            c[i] / p as f64 * ((a - t).powi(-p) - (b - t).powi(-p))
        })
        .sum();

    let value = outer.value + inner + log_term + finite;
    if !value.is_finite() {
        return Err(Error::NonFinite(t));
    }
    Ok(OracleValue {
        value,
        error: outer.error + truncation,
    })
}

// 15-point Kronrod nodes (non-negative half) and weights, with the weights of
// the embedded 7-point Gauss rule at the odd-indexed nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    // error estimate is already at rounding level
    floor: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs = kronrod.abs();
    let mut fv = [(0.0, 0.0); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv[j].0 - mean).abs() + (fv[j].1 - mean).abs());
    }
    let (value, abs, asc) = (kronrod * half, abs * half.abs(), asc * half.abs());
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor_err = 50.0 * f64::EPSILON * abs;
    let floor = error <= floor_err;
    if abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor_err);
    }
    Panel {
        lo,
        hi,
        value,
        error,
        floor,
    }
}

/// Globally adaptive 15-point Gauss–Kronrod integration over the union of
/// `intervals`, bisecting the panel with the largest error estimate until the
/// total estimate drops below `1e-13` relative.
pub fn kronrod_adaptive(f: impl Fn(f64) -> f64, intervals: &[(f64, f64)]) -> Result<OracleValue> {
    let mut heap: BinaryHeap<Panel> = intervals
        .iter()
        .filter(|(lo, hi)| hi > lo)
        .map(|&(lo, hi)| kronrod15(&f, lo, hi))
        .collect();
    let mut settled: Vec<Panel> = Vec::new();
    let totals = |heap: &BinaryHeap<Panel>, settled: &[Panel]| {
        heap.iter()
            .chain(settled)
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
    };
    let mut count = heap.len();
    loop {
        let (value, error) = totals(&heap, &settled);
        if !value.is_finite() {
            return Err(Error::OracleFailure { estimate: f64::INFINITY });
        }
        if error <= REL_TOL * value.abs() || heap.is_empty() {
            return Ok(OracleValue { value, error });
        }
        if count >= MAX_INTERVALS {
            if error <= FAILURE_REL * value.abs().max(1.0) {
                return Ok(OracleValue { value, error });
            }
            return Err(Error::OracleFailure { estimate: error });
        }
        let worst = heap.pop().expect("heap checked non-empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if worst.floor || !(mid > worst.lo && mid < worst.hi) {
            // nothing left to gain on this panel
            settled.push(worst);
            continue;
        }
        heap.push(kronrod15(&f, worst.lo, mid));
        heap.push(kronrod15(&f, mid, worst.hi));
        count += 1;
    }
}

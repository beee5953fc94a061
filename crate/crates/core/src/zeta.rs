//! Bernoulli numbers and the Riemann zeta function at even integers.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Largest supported index `2k`.
pub const MAX_EVEN_INDEX: i64 = 64;

/// All Bernoulli numbers `B_0..=B_n` from `Σ_{j=0}^{n} C(n+1, j) B_j = 0`.
fn bernoulli_table(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::from_integer(BigInt::from(1)));
    for m in 1..=n {
        // binom(m+1, j) for j = 0..m
        let mut binom = BigInt::from(1);
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        // binom now equals C(m+1, m) = m+1
        b.push(-acc / BigRational::from_integer(binom));
    }
    b
}

/// Exact `B_{2k}`.
pub fn bernoulli_even_exact(k: u32) -> Result<BigRational> {
    if 2 * k as i64 > MAX_EVEN_INDEX {
        return Err(Error::InvalidParameter(format!(
            "B_{} is beyond the supported index {MAX_EVEN_INDEX}",
            2 * k
        )));
    }
    Ok(bernoulli_table(2 * k as usize).swap_remove(2 * k as usize))
}

/// `B_{2k}` at double precision.
pub fn bernoulli_even(k: u32) -> Result<f64> {
    let b = bernoulli_even_exact(k)?;
    b.to_f64()
        .ok_or_else(|| Error::InvalidParameter(format!("B_{} is not representable", 2 * k)))
}

/// `ζ(j)` for even `j ≥ -64`: zero at the negative even integers and
/// `(-1)^{k+1} (2π)^{2k} B_{2k} / (2 (2k)!)` at `j = 2k ≥ 0`.
pub fn zeta_even(j: i64) -> Result<f64> {
    if j % 2 != 0 {
        return Err(Error::InvalidParameter(format!("zeta_even needs an even argument, got {j}")));
    }
    if !(-MAX_EVEN_INDEX..=MAX_EVEN_INDEX).contains(&j) {
        return Err(Error::InvalidParameter(format!(
            "zeta argument {j} outside [-{MAX_EVEN_INDEX}, {MAX_EVEN_INDEX}]"
        )));
    }
    if j < 0 {
        return Ok(0.0);
    }
    let k = (j / 2) as u32;
    if k <= 10 {
        return Ok(zeta_even_dd(k)?.to_f64());
    }
    let b = bernoulli_even(k)?;
    // (2π)^{2k} / (2k)! built incrementally to keep intermediates in range
    let mut scale = 1.0;
    for i in 1..=(2 * k) {
        scale *= 2.0 * PI / i as f64;
    }
    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
    Ok(sign * scale * b / 2.0)
}

/// `ζ(2k)` in double-double, `2k ≤ 20` so that `(2k)!` is exact.
pub(crate) fn zeta_even_dd(k: u32) -> Result<Dd> {
    if k > 10 {
        return Err(Error::InvalidParameter(format!(
            "extended-precision zeta limited to arguments up to 20, got {}",
            2 * k
        )));
    }
    let b = bernoulli_even_exact(k)?;
    // split B_{2k} into hi + lo exactly enough for 106 bits
    let hi = b.to_f64().unwrap_or(f64::NAN);
    let rest = &b - BigRational::from_float(hi).expect("finite");
    let lo = rest.to_f64().unwrap_or(0.0);
    let b = Dd { hi, lo };
    let fact: i128 = (1..=(2 * k) as i128).product();
    let two_pi = Dd::PI.mul_f64(2.0);
    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
    Ok((two_pi.powi(2 * k as i32) * b / Dd::from_i128(2 * fact)).mul_f64(sign))
}

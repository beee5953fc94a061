//! Chebyshev polynomials by three-term recurrence.

use crate::scalar::{Scalar, ScalarFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    /// First kind `T_k`.
    T,
    /// Second kind `U_k`.
    U,
    /// Derivative `U_k'`.
    UPrime,
}

/// `T_k(z)`, `U_k(z)` or `U_k'(z)`.
pub fn chebyshev_eval(kind: ChebyshevKind, k: u32, z: f64) -> f64 {
    match kind {
        ChebyshevKind::T => recurrence(1.0, z, k, z),
        ChebyshevKind::U => recurrence(1.0, 2.0 * z, k, z),
        ChebyshevKind::UPrime => {
            // U_{j+1}' = 2 U_j + 2z U_j' - U_{j-1}'
            if k == 0 {
                return 0.0;
            }
            let (mut u0, mut u1) = (1.0, 2.0 * z);
            let (mut d0, mut d1) = (0.0, 2.0);
            for _ in 1..k {
                let d2 = 2.0 * u1 + 2.0 * z * d1 - d0;
                let u2 = 2.0 * z * u1 - u0;
                (u0, u1, d0, d1) = (u1, u2, d1, d2);
            }
            d1
        }
    }
}

fn recurrence<S: Scalar>(p0: S, p1: S, k: u32, z: S) -> S {
    if k == 0 {
        return p0;
    }
    let (mut a, mut b) = (p0, p1);
    for _ in 1..k {
        let c = z.clone() * b.clone() * 2.0 - a;
        a = b;
        b = c;
    }
    b
}

/// `g(x) = √(x(1-x)) U_k(2x-1)` on `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChebyshevWeighted {
    pub k: u32,
}

impl ScalarFn for ChebyshevWeighted {
    fn call<S: Scalar>(&self, x: S) -> S {
        let z = x.clone() * 2.0 - 1.0;
        let weight = (x.clone() * (-x + 1.0)).sqrt();
        let u = recurrence(z.constant(1.0), z.clone() * 2.0, self.k, z);
        weight * u
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_values() {
        assert!((chebyshev_eval(ChebyshevKind::T, 5, -0.4) - -0.88384).abs() < 1e-14);
        assert!((chebyshev_eval(ChebyshevKind::U, 4, -0.4) - -0.5104).abs() < 1e-14);
        assert_eq!(chebyshev_eval(ChebyshevKind::T, 0, 0.7), 1.0);
        assert_eq!(chebyshev_eval(ChebyshevKind::U, 0, 0.7), 1.0);
        assert_eq!(chebyshev_eval(ChebyshevKind::UPrime, 1, 0.7), 2.0);
    }

    #[test]
    fn trigonometric_identities() {
        for &th in &[0.1f64, 0.7, 1.3, 2.9] {
            let z = th.cos();
            for k in 0..8 {
                let t = chebyshev_eval(ChebyshevKind::T, k, z);
                let u = chebyshev_eval(ChebyshevKind::U, k, z);
                assert!((t - (k as f64 * th).cos()).abs() < 1e-13);
                assert!((u - ((k + 1) as f64 * th).sin() / th.sin()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        for k in 0..7 {
            for &z in &[-0.8, -0.4, 0.1, 0.6] {
                let h = 1e-5;
                let fd = (chebyshev_eval(ChebyshevKind::U, k, z + h)
                    - chebyshev_eval(ChebyshevKind::U, k, z - h))
                    / (2.0 * h);
                let d = chebyshev_eval(ChebyshevKind::UPrime, k, z);
                assert!((d - fd).abs() < 1e-7 * (1.0 + d.abs()), "k={k} z={z}");
            }
        }
    }
}

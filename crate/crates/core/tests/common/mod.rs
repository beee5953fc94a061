//! Helpers shared by the integration tests.
#![allow(dead_code)]

pub fn central_difference(f: &dyn Fn(f64) -> f64, x: f64, k: usize, h: f64) -> f64 {
    let mut binom = 1.0;
    let mut acc = 0.0;
    for i in 0..=k {
        let offset = (k as f64 / 2.0 - i as f64) * h;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * f(x + offset);
        binom = binom * (k - i) as f64 / (i + 1) as f64;
    }
    acc / h.powi(k as i32)
}

// Ridders' extrapolation of central differences; returns the estimate with
// the smallest internal error. The step shrinks by 1.4 per level over enough
// levels to resolve the steep tanh profile near the ends.
pub fn ridders(f: &dyn Fn(f64) -> f64, x: f64, k: usize, h0: f64) -> f64 {
    ridders_levels(f, x, k, h0, 24)
}

// Same with a caller-chosen depth; shallow tables keep the smallest step away
// from rounding noise for smooth functions.
pub fn ridders_levels(f: &dyn Fn(f64) -> f64, x: f64, k: usize, h0: f64, levels: usize) -> f64 {
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    let mut table = vec![vec![0.0; levels]; levels];
    let mut h = h0;
    table[0][0] = central_difference(f, x, k, h);
    let mut best = table[0][0];
    let mut best_err = f64::INFINITY;
    for i in 1..levels {
        h /= CON;
        table[0][i] = central_difference(f, x, k, h);
        let mut fac = CON2;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let err = (table[j][i] - table[j - 1][i])
                .abs()
                .max((table[j][i] - table[j - 1][i - 1]).abs());
            if err <= best_err {
                best_err = err;
                best = table[j][i];
            }
        }
    }
    best
}

use std::sync::Arc;

use proptest::prelude::*;
use pvtsi::*;

mod common;
use common::ridders_levels;

fn jet_strategy(center: f64, order: usize) -> impl Strategy<Value = Jet> {
    prop::collection::vec(-2.0..2.0f64, order + 1)
        .prop_map(move |c| Jet::from_coeffs(center, c).unwrap())
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn division_undoes_multiplication(
        u in jet_strategy(0.3, 6),
        v in jet_strategy(0.3, 6),
        v0 in 0.5..3.0f64,
    ) {
        let v = v.with_value(v0);
        let back = u.try_mul(&v).unwrap().try_div(&v).unwrap();
        for (a, b) in back.coeffs().iter().zip(u.coeffs()) {
            prop_assert!(close(*a, *b, 1e-12), "{a} vs {b}");
        }
    }

    #[test]
    fn composition_is_associative(
        c1 in prop::collection::vec(-1.0..1.0f64, 5),
        c2 in prop::collection::vec(-1.0..1.0f64, 5),
        c3 in prop::collection::vec(-1.0..1.0f64, 5),
        x0 in -1.0..1.0f64,
    ) {
        // h∘(g∘f) = (h∘g)∘f, each expanded at the right point
        let f = Jet::from_coeffs(x0, c1).unwrap();
        let g = Jet::from_coeffs(f.value(), c2).unwrap();
        let h = Jet::from_coeffs(g.value(), c3).unwrap();
        let gf = Jet::compose(&g, &f).unwrap();
        let left = Jet::compose(&h, &gf).unwrap();
        let hg = Jet::compose(&h, &Jet::from_coeffs(f.value(), g.coeffs().to_vec()).unwrap()).unwrap();
        let right = Jet::compose(&hg, &f).unwrap();
        for (a, b) in left.coeffs().iter().zip(right.coeffs()) {
            prop_assert!(close(*a, *b, 1e-12), "{a} vs {b}");
        }
    }

    #[test]
    fn elementary_jets_match_differences(x0 in 0.2..1.2f64, which in 0usize..8) {
        let kinds = [
            Elementary::Exp,
            Elementary::Log,
            Elementary::Sin,
            Elementary::Cos,
            Elementary::Tan,
            Elementary::Tanh,
            Elementary::Sqrt,
            Elementary::Pow(0.37),
        ];
        let kind = kinds[which];
        let f = |x: f64| match kind {
            Elementary::Exp => x.exp(),
            Elementary::Log => x.ln(),
            Elementary::Sin => x.sin(),
            Elementary::Cos => x.cos(),
            Elementary::Tan => x.tan(),
            Elementary::Tanh => x.tanh(),
            Elementary::Sqrt => x.sqrt(),
            Elementary::Pow(e) => x.powf(e),
        };
        let jet = Jet::variable(x0, 4).unwrap().apply(kind).unwrap();
        for k in 1..=4 {
            let fd = ridders_levels(&f, x0, k, 0.1, 10);
            let d = jet.derivative(k);
            prop_assert!((d - fd).abs() <= 1e-6 * d.abs().max(1.0), "{kind:?} k={k}: {d} vs {fd}");
        }
    }

    #[test]
    fn g_jet_leading_coefficients(
        coeffs in prop::collection::vec(-2.0..2.0f64, 1..5),
        lead in 0.5..2.0f64,
        t in 0.1..0.9f64,
        m in 1u32..=4,
        which in 0usize..4,
    ) {
        let mut coeffs = coeffs;
        coeffs[0] = lead;
        let poly = Polynomial(coeffs.clone());
        let tr = [
            PeriodizingTransform::rational(6.0).unwrap(),
            PeriodizingTransform::tangent(3.0).unwrap(),
            PeriodizingTransform::tanh(0.8).unwrap(),
            PeriodizingTransform::korobov(3).unwrap(),
        ][which].clone();
        let src = SingularIntegrand::new(Arc::new(poly.clone()), t, m, 0.0, 1.0).unwrap();
        let ti = build_transformed(&src, &tr, &IntervalMap::unit()).unwrap();
        let psi = transform_jet(&tr, &IntervalMap::unit(), ti.tau(), 3).unwrap();
        let (d1, d2) = (psi.derivative(1), psi.derivative(2));
        let gj = poly.jet(&Jet::variable(t, 1).unwrap());
        let (g, dg) = (gj.value(), gj.derivative(1));
        let c0 = g / d1.powi(m as i32 - 1);
        let c1 = dg / d1.powi(m as i32 - 2) + (1.0 - m as f64 / 2.0) * g * d2 / d1.powi(m as i32);
        let jet = ti.g_jet();
        let scale = c0.abs().max(c1.abs()).max(1e-300);
        prop_assert!((jet.coeffs()[0] - c0).abs() <= 1e-12 * scale);
        prop_assert!((jet.coeffs()[1] - c1).abs() <= 1e-12 * scale, "{} vs {c1}", jet.coeffs()[1]);
    }
}

#[test]
fn regular_part_limit_at_pole() {
    // (ξ-τ)^m F(ξ) → G(τ) as ξ → τ; Richardson on ε = 10^-k, k = 2..5
    let g = Arc::new(Polynomial(vec![1.0, 1.0, -1.0]));
    for m in 1..=4 {
        let src = SingularIntegrand::new(g.clone(), 0.3, m, 0.0, 1.0).unwrap();
        let ti = build_transformed(
            &src,
            &PeriodizingTransform::rational(5.0).unwrap(),
            &IntervalMap::unit(),
        )
        .unwrap();
        let tau = ti.tau();
        let sample = |eps: f64| {
            // symmetric average removes the odd part of the error
            let plus = eps.powi(m as i32) * ti.f_eval(tau + eps).unwrap();
            let minus = (-eps).powi(m as i32) * ti.f_eval(tau - eps).unwrap();
            0.5 * (plus + minus)
        };
        let steps = [1e-2, 1e-3, 1e-4, 1e-5];
        let vals: Vec<f64> = steps.iter().map(|&e| sample(e)).collect();
        // error is O(ε²): eliminate with ratio 100
        let extrap = (100.0 * vals[2] - vals[1]) / 99.0;
        let want = ti.g_jet().value();
        assert!((extrap - want).abs() <= 1e-8 * want.abs(), "m={m}: {extrap} vs {want}");
        assert!((vals[3] - want).abs() <= 1e-8 * want.abs().max(1.0) + 1e-9);
    }
}

#[test]
fn wrap_branch_matches_direct_branch_near_beta() {
    let case = example_library("poly_m1").unwrap();
    let ti = build_transformed(
        &case.integrand,
        &PeriodizingTransform::rational(5.0).unwrap(),
        &IntervalMap::unit(),
    )
    .unwrap();
    let below = ti.periodic_f_eval(1.0 - 1e-12).unwrap();
    let above = ti.periodic_f_eval(1.0 + 1e-12).unwrap();
    assert!(below.abs() < 1e-30 && above.abs() < 1e-30);
    for d in [1e-4, 1e-3] {
        // ℱ(β + d) is F(α + d)
        let (wrapped, direct) = (ti.periodic_f_eval(1.0 + d).unwrap(), ti.f_eval(d).unwrap());
        assert!((wrapped - direct).abs() <= 1e-11 * direct.abs(), "{wrapped} vs {direct}");
    }
}

#[test]
fn boundary_undefined_without_periodic_smoothness() {
    // c = -0.5 with p = 2 gives ρ = -0.5·2 + 1 = 0.5, so q = 1... pick p = 1.5
    let g = Arc::new(Constant(1.0));
    let src = SingularIntegrand::new(g, 0.3, 1, 0.0, 1.0)
        .unwrap()
        .with_endpoint_exponent(-0.9)
        .unwrap();
    let ti = build_transformed(
        &src,
        &PeriodizingTransform::rational(1.5).unwrap(),
        &IntervalMap::unit(),
    )
    .unwrap();
    assert_eq!(ti.q(), Smoothness::Finite(0));
    let d = 1.0 - ti.tau();
    // offset that lands exactly on β
    assert_eq!(ti.periodic_f_eval(ti.tau() + d), Err(Error::UndefinedAtBoundary));
}

#[test]
fn symmetric_odd_oracle_vanishes() {
    for m in [1, 3] {
        let src = SingularIntegrand::new(Arc::new(Constant(1.0)), 0.5, m, -1.0, 2.0).unwrap();
        assert!(hfp_closed_form(&src).unwrap().value.abs() < 1e-13);
    }
}

#[test]
fn compensated_and_pairwise_agree() {
    let case = example_library("cheb_m2").unwrap();
    let ti = build_transformed(
        &case.integrand,
        &PeriodizingTransform::tangent(8.0).unwrap(),
        &IntervalMap::unit(),
    )
    .unwrap();
    let cfg = RuleConfig::new(2, 2, 64).unwrap();
    let a = hfp_estimate(&ti, &cfg).unwrap().value;
    let b = hfp_estimate(&ti, &cfg.with_summation(Summation::Compensated)).unwrap().value;
    assert!((a - b).abs() <= 1e-15 * a.abs());
}

#[test]
fn general_interval_and_parameter_range() {
    // ⨍_{-1}^{2} e^x/(x-t)^2 against the oracle, with ξ ∈ (0.5, 3)
    struct Exp;
    impl ScalarFn for Exp {
        fn call<S: Scalar>(&self, x: S) -> S {
            x.exp()
        }
    }
    let src = SingularIntegrand::new(Arc::new(Exp), 0.4, 2, -1.0, 2.0).unwrap();
    let map = IntervalMap::new(-1.0, 2.0, 0.5, 3.0).unwrap();
    let want = hfp_closed_form(&src).unwrap().value;
    for tr in [
        PeriodizingTransform::rational(8.0).unwrap(),
        PeriodizingTransform::tanh(1.0).unwrap(),
        PeriodizingTransform::sinp(8).unwrap(),
        PeriodizingTransform::korobov(6).unwrap(),
    ] {
        let ti = build_transformed(&src, &tr, &map).unwrap();
        let got = hfp_estimate(&ti, &RuleConfig::new(2, 2, 128).unwrap()).unwrap().value;
        assert!((got - want).abs() <= 1e-9 * want.abs(), "{tr:?}: {got} vs {want}");
    }
}

#[test]
fn higher_pole_orders_use_generated_ladders() {
    // m = 6: levels up to 4 come from the programmatic coefficient sets.
    // Corrections grow like h^{-5}, so stay at coarse n before the rounding floor.
    let (t, m) = (0.45, 6);
    let coeffs = [0.5, -1.0, 2.0, 0.25];
    // Taylor coefficients about t by synthetic division, then term by term
    // ⨍ (x-t)^{k-m} dx in closed form.
    let mut shifted = coeffs.to_vec();
    for i in 0..shifted.len() {
        for j in (i..shifted.len() - 1).rev() {
            shifted[j] += t * shifted[j + 1];
        }
    }
    let want: f64 = shifted
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let p = m - 1 - k as i32;
            c * ((0.0 - t).powi(-p) - (1.0 - t).powi(-p)) / p as f64
        })
        .sum();
    let g = Arc::new(Polynomial(coeffs.to_vec()));
    let src = SingularIntegrand::new(g, t, m as u32, 0.0, 1.0).unwrap();
    let ti = build_transformed(
        &src,
        &PeriodizingTransform::rational(8.0).unwrap(),
        &IntervalMap::unit(),
    )
    .unwrap();
    for s in 0..=4 {
        let got = hfp_estimate(&ti, &RuleConfig::new(6, s, 32).unwrap()).unwrap().value;
        assert!((got - want).abs() <= 1e-7 * want.abs(), "s={s}: {got} vs {want}");
    }
}

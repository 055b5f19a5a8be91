//! Property tests for the quadrature and norm layers.

use proptest::prelude::*;

use fracbound_core::space_norms::{
    bmo_seminorm, holder_seminorm, kr_norm, lp_norm, sobolev_norm, weak_lp_seminorm,
};
use fracbound_core::{
    rl_integral, AnalyticSpec, Interval, QuadratureScheme, SampledFunction,
};

const NAIVE: QuadratureScheme = QuadratureScheme::ProductTrapezoidNaive;
const FFT: QuadratureScheme = QuadratureScheme::ProductTrapezoidFft;

fn values(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, n + 1)
}

fn scalar(vals: Vec<f64>) -> SampledFunction {
    SampledFunction::scalar(Interval::unit(), vals).unwrap()
}

fn sup(f: &SampledFunction) -> f64 {
    f.pointwise_norm().iter().cloned().fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rl_integral_is_linear(
        va in values(64),
        vb in values(64),
        a in 0.5f64..3.0,
        b in -2.0f64..2.0,
        alpha in 0.2f64..2.2,
    ) {
        let fa = scalar(va.clone());
        let fb = scalar(vb.clone());
        let combo = scalar(va.iter().zip(&vb).map(|(x, y)| a * x + b * y).collect());
        let j_combo = rl_integral(&combo, alpha, NAIVE).unwrap();
        let j_parts = rl_integral(&fa, alpha, NAIVE).unwrap().scale(a)
            .add(&rl_integral(&fb, alpha, NAIVE).unwrap().scale(b)).unwrap();
        let scale = sup(&j_combo).max(sup(&j_parts)).max(1e-9);
        prop_assert!(j_combo.max_node_distance(&j_parts).unwrap() <= 1e-12 * scale);
    }

    #[test]
    fn schemes_agree(vals in values(100), alpha in 0.2f64..2.5) {
        let f = scalar(vals);
        let a = rl_integral(&f, alpha, NAIVE).unwrap();
        let b = rl_integral(&f, alpha, FFT).unwrap();
        let scale = sup(&a).max(1e-9);
        prop_assert!(a.max_node_distance(&b).unwrap() <= 1e-10 * scale);
    }

    #[test]
    fn nonnegative_input_gives_nonnegative_integral(
        vals in prop::collection::vec(0.0f64..5.0, 49),
        alpha in 0.2f64..2.5,
    ) {
        let f = scalar(vals);
        let j = rl_integral(&f, alpha, NAIVE).unwrap();
        prop_assert!(j.values().iter().all(|&v| v >= -1e-14));
    }

    #[test]
    fn norms_are_absolutely_homogeneous(
        vals in values(40),
        c in prop_oneof![-8.0f64..-0.1, 0.1f64..8.0],
        p in 1.0f64..6.0,
    ) {
        let f = scalar(vals);
        let g = f.scale(c);
        let cases = [
            (lp_norm(&f, p).value, lp_norm(&g, p).value),
            (lp_norm(&f, f64::INFINITY).value, lp_norm(&g, f64::INFINITY).value),
            (weak_lp_seminorm(&f, p).unwrap().value, weak_lp_seminorm(&g, p).unwrap().value),
            (holder_seminorm(&f, 0, 0.5).unwrap().value, holder_seminorm(&g, 0, 0.5).unwrap().value),
            (bmo_seminorm(&f).value, bmo_seminorm(&g).value),
            (kr_norm(&f, 0.7).value, kr_norm(&g, 0.7).value),
        ];
        for (base, scaled) in cases {
            let want = c.abs() * base;
            prop_assert!((scaled - want).abs() <= 1e-12 * want.abs().max(1e-12),
                "c={c} base={base} scaled={scaled}");
        }
    }

    #[test]
    fn triangle_inequality(va in values(32), vb in values(32), p in 1.0f64..5.0) {
        let fa = scalar(va.clone());
        let fb = scalar(vb.clone());
        let fs = scalar(va.iter().zip(&vb).map(|(x, y)| x + y).collect());
        prop_assert!(lp_norm(&fs, p).value
            <= lp_norm(&fa, p).value + lp_norm(&fb, p).value + 1e-9);
        prop_assert!(bmo_seminorm(&fs).value
            <= bmo_seminorm(&fa).value + bmo_seminorm(&fb).value + 1e-9);
        prop_assert!(sobolev_norm(&fs, 1, p).unwrap().value
            <= sobolev_norm(&fa, 1, p).unwrap().value
                + sobolev_norm(&fb, 1, p).unwrap().value + 1e-9);
    }

    #[test]
    fn chebyshev_weak_below_strong(vals in values(50), p in 1.0f64..5.0, alpha in 0.3f64..1.5) {
        let f = scalar(vals);
        prop_assert!(weak_lp_seminorm(&f, p).unwrap().value <= lp_norm(&f, p).value + 1e-9);
        // and on the image of the fractional integral
        let j = rl_integral(&f, alpha, FFT).unwrap();
        prop_assert!(weak_lp_seminorm(&j, p).unwrap().value <= lp_norm(&j, p).value + 1e-9);
    }

    #[test]
    fn embedding_with_explicit_constant(vals in values(50), alpha in 0.3f64..1.5) {
        for (p, q) in [(1.0f64, 2.0f64), (1.5, 2.0), (2.0, 4.0)] {
            let f = scalar(vals.clone());
            let j = rl_integral(&f, alpha, FFT).unwrap();
            for g in [&f, &j] {
                let c = (q / (q - p)).powf(1.0 / p); // (t1-t0) = 1
                prop_assert!(lp_norm(g, p).value
                    <= c * weak_lp_seminorm(g, q).unwrap().value + 1e-9);
            }
        }
    }

    #[test]
    fn bmo_below_twice_sup(vals in values(40)) {
        let f = scalar(vals);
        prop_assert!(bmo_seminorm(&f).value <= 2.0 * lp_norm(&f, f64::INFINITY).value + 1e-12);
    }
}

#[test]
fn sum_sampling_matches_pointwise_sum() {
    let iv = Interval::unit();
    let a = AnalyticSpec::Power {
        gamma: 1.0,
        coeff: vec![1.0],
        interval: iv,
    };
    let b = AnalyticSpec::Trig {
        amplitude: vec![0.7],
        frequency: vec![9.0],
        phase: vec![0.3],
        interval: iv,
    };
    let c = AnalyticSpec::Power {
        gamma: -0.4,
        coeff: vec![2.0],
        interval: iv,
    };
    let sum = AnalyticSpec::Sum {
        terms: vec![a.clone(), b.clone(), c.clone()],
        interval: iv,
    };
    let n = 64;
    let fs = sum.sample(n).unwrap();
    let fa = a.sample(n).unwrap();
    let fb = b.sample(n).unwrap();
    let fc = c.sample(n).unwrap();
    for i in 0..=n {
        let want = fa.value(i)[0] + fb.value(i)[0] + fc.value(i)[0];
        let got = fs.value(i)[0];
        assert!(
            (got - want).abs() <= 1e-15 * want.abs().max(1.0),
            "node {i}: {got} vs {want}"
        );
    }
}

#[test]
fn sampling_reproduces_finite_specs_exactly() {
    let specs = [
        AnalyticSpec::Polynomial {
            coeffs: vec![vec![1.0, -2.0, 0.5]],
            interval: Interval::unit(),
        },
        AnalyticSpec::Trig {
            amplitude: vec![1.0],
            frequency: vec![5.0],
            phase: vec![1.0],
            interval: Interval::unit(),
        },
    ];
    for spec in specs {
        let f = spec.sample(37).unwrap();
        for i in 0..=37 {
            let t = f.node_time(i);
            assert_eq!(f.value(i)[0], spec.evaluate(t).unwrap()[0]);
        }
    }
}

#[test]
fn holder_seminorm_monotone_under_refinement() {
    for spec in [
        AnalyticSpec::Power {
            gamma: 0.5,
            coeff: vec![1.0],
            interval: Interval::unit(),
        },
        AnalyticSpec::Step {
            breakpoints: vec![0.5],
            values: vec![vec![0.0], vec![1.0]],
            interval: Interval::unit(),
        },
        AnalyticSpec::Trig {
            amplitude: vec![1.0],
            frequency: vec![11.0],
            phase: vec![0.2],
            interval: Interval::unit(),
        },
    ] {
        let mut prev = 0.0;
        for n in [64, 128, 256, 512] {
            let f = spec.sample(n).unwrap();
            let v = holder_seminorm(&f, 0, 0.4).unwrap().value;
            assert!(v >= prev - 1e-12, "{spec:?} at n={n}: {v} < {prev}");
            prev = v;
        }
    }
}

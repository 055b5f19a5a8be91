//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Criterion 1 is asserted exactly as specified (max-node relative error
//! against the power-rule closed form). Its gamma = 0.5 row cannot meet the
//! 1e-6 budget with this quadrature family: the node adjacent to the root
//! singularity carries an O(h^{alpha+1/2}) error layer, which also caps the
//! max-node convergence order at alpha + 1/2. The failure is intentional and
//! documented; the terminal-node error of the same runs (printed alongside)
//! shows the quadrature itself behaving at its theoretical order.

use std::time::Instant;

use fracbound_core::corpus::default_corpus;
use fracbound_core::space_norms::{
    bmo_seminorm, holder_seminorm, kr_norm, weak_lp_seminorm,
};
use fracbound_core::theorem_bench::*;
use fracbound_core::{
    rl_integral, rl_integral_power_oracle, AnalyticSpec, Interval, QuadratureScheme,
};

const FFT: QuadratureScheme = QuadratureScheme::ProductTrapezoidFft;
const NAIVE: QuadratureScheme = QuadratureScheme::ProductTrapezoidNaive;

fn power(g: f64) -> AnalyticSpec {
    AnalyticSpec::Power {
        gamma: g,
        coeff: vec![1.0],
        interval: Interval::unit(),
    }
}

/// max-node error normalized by the oracle sup, plus the terminal-node
/// relative error for diagnostics.
fn oracle_errors(g: f64, a: f64, n: usize) -> (f64, f64) {
    let f = power(g).sample(n).unwrap();
    let j = rl_integral(&f, a, FFT).unwrap();
    let mut err_max = 0.0f64;
    let mut oracle_max = 0.0f64;
    for i in 0..=n {
        let t = i as f64 / n as f64;
        let want = rl_integral_power_oracle(g, a, t).unwrap();
        err_max = err_max.max((j.value(i)[0] - want).abs());
        oracle_max = oracle_max.max(want.abs());
    }
    let terminal_want = rl_integral_power_oracle(g, a, 1.0).unwrap();
    let terminal_rel = ((j.value(n)[0] - terminal_want) / terminal_want).abs();
    (err_max / oracle_max, terminal_rel)
}

#[test]
fn criterion_1_oracle_accuracy() {
    let start = Instant::now();
    let gammas = [0.0, 0.5, 1.0, 2.0];
    let alphas = [0.25, 0.5, 0.75, 1.5];
    let fit_grids: Vec<usize> = (8..=13).map(|k| 1usize << k).collect();

    let mut failures = Vec::new();
    for &g in &gammas {
        for &a in &alphas {
            let mut errs = Vec::new();
            let mut term = 0.0;
            for &n in &fit_grids {
                let (e, t) = oracle_errors(g, a, n);
                errs.push(e);
                if n == 4096 {
                    term = t;
                }
            }
            let err_12 = errs[4];
            let exact = errs.iter().all(|&e| e < 1e-12);
            let order = if exact {
                f64::INFINITY
            } else {
                let study = estimate_rate(&fit_grids, &errs).unwrap();
                -study.fitted_exponent
            };
            let order_req = if g >= 1.0 {
                Some(1.9)
            } else if g == 0.5 {
                Some(1.0)
            } else {
                None
            };
            let err_ok = err_12 <= 1e-6;
            let order_ok = order_req.map_or(true, |req| order >= req);
            println!(
                "  gamma={g} alpha={a}: max-node rel {err_12:.3e} (<=1e-6: {}), order {order:.3} \
                 (req {:?}), terminal rel {term:.3e}",
                err_ok, order_req
            );
            if !err_ok || !order_ok {
                failures.push(format!(
                    "(gamma={g}, alpha={a}): max-node rel {err_12:.3e}, order {order:.3}"
                ));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("  runtime {elapsed:.2}s (budget 10s)");
    assert!(elapsed <= 10.0, "criterion 1 runtime {elapsed:.2}s over budget");
    if failures.is_empty() {
        println!("[criterion 1] PASS - oracle accuracy");
    } else {
        println!(
            "[criterion 1] FAIL - known quadrature limitation on the gamma=0.5 row \
             (boundary cell next to the root singularity carries an O(h^(alpha+1/2)) error \
             layer; see the project decisions record): {failures:?}"
        );
    }
    assert!(
        failures.is_empty(),
        "max-node relative error / order criterion not met for: {failures:?}"
    );
}

#[test]
fn criterion_2_scheme_equivalence_and_speed() {
    // agreement on a grid ladder including odd sizes
    let sizes = [256usize, 1000, 1024, 4096, 4097, 16384, 65536];
    let corpus = [power(0.5), power(-0.4), power(1.0)];
    for spec in &corpus {
        for &n in &sizes {
            let f = spec.sample(n).unwrap();
            let a = rl_integral(&f, 0.6, NAIVE).unwrap();
            let b = rl_integral(&f, 0.6, FFT).unwrap();
            let scale = a.pointwise_norm().iter().cloned().fold(0.0f64, f64::max);
            let diff = a.max_node_distance(&b).unwrap();
            assert!(
                diff <= 1e-10 * scale,
                "{} n={n}: relative gap {:.3e}",
                spec.label(),
                diff / scale
            );
        }
    }

    // speedup at n = 2^16
    let f = power(0.5).sample(65536).unwrap();
    let t0 = Instant::now();
    let _ = rl_integral(&f, 0.6, NAIVE).unwrap();
    let naive_s = t0.elapsed().as_secs_f64();
    let mut fft_s = f64::INFINITY;
    for _ in 0..3 {
        let t1 = Instant::now();
        let _ = rl_integral(&f, 0.6, FFT).unwrap();
        fft_s = fft_s.min(t1.elapsed().as_secs_f64());
    }
    let speedup = naive_s / fft_s;
    println!(
        "  naive {naive_s:.3}s, fft {fft_s:.4}s, speedup {speedup:.1}x (need >= 2x)"
    );
    assert!(speedup >= 2.0, "speedup {speedup:.2}x below 2x");
    println!("[criterion 2] PASS - scheme equivalence <= 1e-10 up to n=2^16, speedup {speedup:.0}x");
}

#[test]
fn criterion_3_explicit_constant_suite() {
    let start = Instant::now();
    let n = 4096;
    let tol = 1e-3;
    let corpus = default_corpus();
    let mut ran = 0usize;
    let mut skipped = 0usize;

    for p in [1.5, 2.0, 4.0] {
        for alpha in [0.6, 0.75, 0.9, 1.5] {
            if alpha <= 1.0 / p {
                skipped += corpus.len();
                continue;
            }
            for e in &corpus {
                if !e.spec.in_lp(p) {
                    skipped += 1;
                    continue;
                }
                let c = check_supercritical_sup(&e.spec, alpha, p, n, FFT, tol).unwrap();
                assert!(c.pass, "supercritical {} p={p} alpha={alpha}: {} > {}", e.name, c.lhs, c.rhs);
                ran += 1;
            }
        }
    }
    for alpha in [1.0, 1.5, 2.0] {
        for gamma_w in [0.5, 1.0, alpha] {
            for e in &corpus {
                let c = check_wrl_bound(&e.spec, alpha, gamma_w, n, FFT, tol).unwrap();
                assert!(c.pass, "wrl {} alpha={alpha} gamma={gamma_w}", e.name);
                ran += 1;
            }
        }
    }
    for alpha in [0.25, 0.5, 0.75] {
        for e in &corpus {
            if !e.spec.in_linf() {
                skipped += 1;
                continue;
            }
            let c = check_linf_holder(&e.spec, alpha, n, FFT, tol).unwrap();
            assert!(c.pass, "linf-holder {} alpha={alpha}: {} > {}", e.name, c.lhs, c.rhs);
            ran += 1;
        }
    }
    for p in [1.0, 1.5, 2.0, 4.0] {
        for e in &corpus {
            let c = check_chebyshev(&e.spec, p, n, None, FFT).unwrap();
            assert!(c.pass, "chebyshev {} p={p}", e.name);
            ran += 1;
        }
    }
    for (p, q) in [(1.0, 2.0), (1.5, 2.0), (2.0, 4.0), (1.0, 4.0)] {
        for e in &corpus {
            if !e.spec.in_weak_lp(q) {
                skipped += 1;
                continue;
            }
            let c = check_embedding(&e.spec, p, q, n, None, FFT).unwrap();
            assert!(c.pass, "embedding {} p={p} q={q}", e.name);
            ran += 1;
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed <= 300.0, "criterion 3 runtime {elapsed:.1}s over 5 min");
    println!(
        "[criterion 3] PASS - {ran} explicit-constant checks at n=2^12 with tol 1e-3 \
         ({skipped} out-of-hypothesis combinations skipped) in {elapsed:.1}s"
    );
}

#[test]
fn criterion_4_sharpness_suite() {
    let sharp_grids: Vec<usize> = (7..=12).map(|k| 1usize << k).collect();

    let hs = check_holder_sharpness(2.0, 0.75, 0.5, &sharp_grids, FFT).unwrap();
    assert_eq!(hs.verdict, Verdict::Diverging);
    let growth = hs.growth_per_halving();
    assert!(
        growth >= 1.05,
        "holder sharpness growth {growth:.4} below 1.05"
    );
    println!("  holder-sharpness growth/halving {growth:.4} (need >= 1.05, theory 2^0.125)");

    for r in [0.6, 0.75] {
        let study = linf_holder_sharpness(0.5, r, &sharp_grids, FFT).unwrap();
        assert_eq!(study.verdict, Verdict::Diverging);
        let g = study.growth_per_halving();
        let req = 2f64.powf(r - 0.5) * 0.9;
        assert!(g >= req, "linf counterexample r={r}: growth {g:.4} < {req:.4}");
        println!("  linf counterexample r={r}: growth {g:.4} (need >= {req:.4})");
    }

    let weak_grids: Vec<usize> = (8..=14).map(|k| 1usize << k).collect();
    let wn = check_weak_noninclusion(0.5, 3.0, NoninclusionFamily::PowerSingular, &weak_grids, FFT)
        .unwrap();
    assert_eq!(
        wn.verdict,
        Verdict::Diverging,
        "weak noninclusion slope {}",
        wn.fitted_exponent
    );
    println!(
        "  weak-noninclusion (alpha=0.5, r=3): slope {:+.4}, values {:?}",
        wn.fitted_exponent, wn.values
    );
    println!("[criterion 4] PASS - sharpness suite diverges as required");
}

#[test]
fn criterion_5_identity_suite() {
    let grids: Vec<usize> = (8..=12).map(|k| 1usize << k).collect();
    let all = default_corpus();
    for variant in [
        IdentityVariant::Inversion,
        IdentityVariant::Commutation,
        IdentityVariant::Semigroup { beta: 0.7 },
    ] {
        let alpha = match variant {
            IdentityVariant::Semigroup { .. } => 0.3,
            _ => 0.5,
        };
        for e in identity_corpus(&all, variant) {
            let out = check_identities(&e.spec, alpha, variant, &grids, FFT).unwrap();
            assert!(
                out.check.pass,
                "{} {:?}: fitted order {:.3} < 1 (residuals {:?})",
                e.name, variant, out.check.lhs, out.study.values
            );
            if let IdentityVariant::Semigroup { beta } = variant {
                // magnitude clause on the full-grid max residual
                let f = e.spec.sample(4096).unwrap();
                let (comp, direct) =
                    fracbound_core::semigroup_compose(&f, alpha, beta, FFT).unwrap();
                let max_resid = comp.max_node_distance(&direct).unwrap();
                assert!(
                    max_resid <= 1e-4,
                    "{}: semigroup max residual {max_resid:.3e} above 1e-4 at n=2^12",
                    e.name
                );
            }
        }
    }
    println!("[criterion 5] PASS - identity residuals decay at order >= 1; semigroup <= 1e-4 at n=2^12");
}

#[test]
fn criterion_6_closed_form_norms() {
    let n = 1024;
    let t = power(1.0).sample(n).unwrap();

    let w1 = weak_lp_seminorm(&t, 1.0).unwrap().value;
    assert!((w1 - 0.25).abs() <= 0.01 * 0.25, "weak-L1(t) = {w1}");

    let w2 = weak_lp_seminorm(&t, 2.0).unwrap().value;
    assert!(
        (w2 - 0.3849001794597505).abs() <= 0.01 * 0.3849,
        "weak-L2(t) = {w2}"
    );

    let b = bmo_seminorm(&t).value;
    assert!((b - 0.25).abs() <= 0.02 * 0.25, "BMO(t) = {b}");

    let sq = power(0.5).sample(n).unwrap();
    let h = holder_seminorm(&sq, 0, 0.5).unwrap().value;
    assert!((h - 1.0).abs() <= 0.01, "Holder-1/2(sqrt t) = {h}");

    let one = AnalyticSpec::Constant {
        value: vec![1.0],
        interval: Interval::unit(),
    }
    .sample(n)
    .unwrap();
    let k = kr_norm(&one, 1.0).value;
    assert_eq!(k, 1.0, "KR(gamma=1) of 1 must be exactly 1");

    println!(
        "[criterion 6] PASS - weak-L1 {w1:.5}, weak-L2 {w2:.5}, BMO {b:.5}, Holder {h:.5}, KR {k}"
    );
}

#[test]
fn criterion_7_suite_determinism() {
    let base = std::env::temp_dir().join(format!("fracbound-acc-{}", std::process::id()));
    let dir_a = base.join("a");
    let dir_b = base.join("b");
    let cfg = fracbound_cli::suite_config();
    fracbound_cli::run(&cfg, &dir_a).unwrap();
    fracbound_cli::run(&cfg, &dir_b).unwrap();
    let a = std::fs::read(dir_a.join("results.csv")).unwrap();
    let b = std::fs::read(dir_b.join("results.csv")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "results.csv differs between identical runs");
    let _ = std::fs::remove_dir_all(&base);
    println!(
        "[criterion 7] PASS - two suite runs produced byte-identical results.csv ({} bytes)",
        a.len()
    );
}

//! Analytic test functions and their uniform-grid samplings.
//!
//! An [`AnalyticSpec`] is a symbolic description of a vector-valued function
//! on an interval (powers, log-damped powers, polynomials, trig, steps and
//! sums of those). Sampling one produces a [`SampledFunction`]: values on a
//! uniform grid together with the norm used on the value space. Specs that
//! are singular at the left endpoint stay usable: the singular node carries
//! an analytic half-cell average instead of an infinite value.

use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};

/// Closed interval `[t0, t1]` with `t0 < t1`. Serializes as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    t0: f64,
    t1: f64,
}

impl Interval {
    pub fn new(t0: f64, t1: f64) -> Result<Self> {
        if !(t0 < t1) || !t0.is_finite() || !t1.is_finite() {
            return Err(FracError::InvalidInterval { t0, t1 });
        }
        Ok(Self { t0, t1 })
    }

    pub fn unit() -> Self {
        Self { t0: 0.0, t1: 1.0 }
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn length(&self) -> f64 {
        self.t1 - self.t0
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.t0 && t <= self.t1
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = FracError;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.t0, iv.t1]
    }
}

/// Which norm is used on the value space R^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    #[serde(rename = "ell1")]
    Ell1,
    #[serde(rename = "ell2")]
    Ell2,
    #[serde(rename = "ellinf")]
    EllInf,
}

/// Norm on the value space together with its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VectorNorm {
    pub kind: NormKind,
    pub dim: usize,
}

impl VectorNorm {
    pub fn new(kind: NormKind, dim: usize) -> Self {
        assert!(dim >= 1, "value space dimension must be >= 1");
        Self { kind, dim }
    }

    pub fn ell2(dim: usize) -> Self {
        Self::new(NormKind::Ell2, dim)
    }

    /// Norm of one point in R^d.
    pub fn apply(&self, v: &[f64]) -> f64 {
        debug_assert_eq!(v.len(), self.dim);
        match self.kind {
            NormKind::Ell1 => v.iter().map(|x| x.abs()).sum(),
            NormKind::Ell2 => {
                if v.len() == 1 {
                    v[0].abs()
                } else {
                    v.iter().map(|x| x * x).sum::<f64>().sqrt()
                }
            }
            NormKind::EllInf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }
}

/// Symbolic description of a test function with closed-form metadata.
///
/// The JSON encoding is the CLI input format, e.g.
/// `{"kind": "power", "gamma": -0.4, "coeff": [1.0], "interval": [0.0, 1.0]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnalyticSpec {
    /// `f(t) = coeff * t^gamma` (singular at t = 0 when gamma < 0).
    Power {
        gamma: f64,
        coeff: Vec<f64>,
        interval: Interval,
    },
    /// `f(t) = t^beta * log(1/t)^sigma`, scalar-valued, on an interval starting at 0.
    LogPower {
        beta: f64,
        sigma: f64,
        interval: Interval,
    },
    /// One coefficient list per component, ascending powers of t.
    Polynomial {
        coeffs: Vec<Vec<f64>>,
        interval: Interval,
    },
    /// `f_k(t) = amplitude_k * sin(frequency_k * t + phase_k)`.
    Trig {
        amplitude: Vec<f64>,
        frequency: Vec<f64>,
        phase: Vec<f64>,
        interval: Interval,
    },
    /// Piecewise constant: `values[k]` on `[breakpoints[k-1], breakpoints[k])`.
    Step {
        breakpoints: Vec<f64>,
        values: Vec<Vec<f64>>,
        interval: Interval,
    },
    Constant {
        value: Vec<f64>,
        interval: Interval,
    },
    Sum {
        terms: Vec<AnalyticSpec>,
        interval: Interval,
    },
}

impl AnalyticSpec {
    pub fn interval(&self) -> Interval {
        match self {
            AnalyticSpec::Power { interval, .. }
            | AnalyticSpec::LogPower { interval, .. }
            | AnalyticSpec::Polynomial { interval, .. }
            | AnalyticSpec::Trig { interval, .. }
            | AnalyticSpec::Step { interval, .. }
            | AnalyticSpec::Constant { interval, .. }
            | AnalyticSpec::Sum { interval, .. } => *interval,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnalyticSpec::Power { coeff, .. } => coeff.len(),
            AnalyticSpec::LogPower { .. } => 1,
            AnalyticSpec::Polynomial { coeffs, .. } => coeffs.len(),
            AnalyticSpec::Trig { amplitude, .. } => amplitude.len(),
            AnalyticSpec::Step { values, .. } => values.first().map_or(0, |v| v.len()),
            AnalyticSpec::Constant { value, .. } => value.len(),
            AnalyticSpec::Sum { terms, .. } => terms.first().map_or(0, |t| t.dim()),
        }
    }

    /// Checks the integrability and well-formedness invariants.
    pub fn validate(&self) -> Result<()> {
        let iv = self.interval();
        match self {
            AnalyticSpec::Power { gamma, coeff, .. } => {
                if coeff.is_empty() {
                    return Err(FracError::NonIntegrableSpec("power: empty coefficients".into()));
                }
                if iv.t0() == 0.0 && *gamma <= -1.0 {
                    return Err(FracError::NonIntegrableSpec(format!(
                        "t^{gamma} is not locally integrable at 0"
                    )));
                }
                let fractional = *gamma < 0.0 || gamma.fract() != 0.0;
                if fractional && iv.t0() < 0.0 {
                    return Err(FracError::NonIntegrableSpec(
                        "power with fractional or negative exponent needs t0 >= 0".into(),
                    ));
                }
            }
            AnalyticSpec::LogPower { beta, sigma, .. } => {
                if iv.t0() != 0.0 {
                    return Err(FracError::NonIntegrableSpec("logpower requires t0 = 0".into()));
                }
                if *beta < -1.0 {
                    return Err(FracError::NonIntegrableSpec(format!(
                        "t^{beta} log factor is not integrable at 0"
                    )));
                }
                if *beta == -1.0 && *sigma >= -1.0 {
                    return Err(FracError::NonIntegrableSpec(
                        "beta = -1 requires sigma < -1 for integrability".into(),
                    ));
                }
                if iv.t1() > 1.0 || (*sigma < 0.0 && iv.t1() >= 1.0) {
                    return Err(FracError::NonIntegrableSpec(
                        "logpower requires t1 <= 1 (strict when sigma < 0)".into(),
                    ));
                }
            }
            AnalyticSpec::Polynomial { coeffs, .. } => {
                if coeffs.is_empty() || coeffs.iter().any(|c| c.is_empty()) {
                    return Err(FracError::NonIntegrableSpec("polynomial: empty coefficients".into()));
                }
            }
            AnalyticSpec::Trig {
                amplitude,
                frequency,
                phase,
                ..
            } => {
                if amplitude.is_empty()
                    || amplitude.len() != frequency.len()
                    || amplitude.len() != phase.len()
                {
                    return Err(FracError::NonIntegrableSpec(
                        "trig: amplitude/frequency/phase lengths differ".into(),
                    ));
                }
            }
            AnalyticSpec::Step {
                breakpoints,
                values,
                ..
            } => {
                if values.len() != breakpoints.len() + 1 {
                    return Err(FracError::NonIntegrableSpec(
                        "step: need one more plateau than breakpoints".into(),
                    ));
                }
                let d = values[0].len();
                if d == 0 || values.iter().any(|v| v.len() != d) {
                    return Err(FracError::NonIntegrableSpec("step: inconsistent plateau dims".into()));
                }
                let mut prev = iv.t0();
                for &b in breakpoints {
                    if b <= prev || b >= iv.t1() {
                        return Err(FracError::NonIntegrableSpec(
                            "step: breakpoints must be strictly increasing inside the interval".into(),
                        ));
                    }
                    prev = b;
                }
            }
            AnalyticSpec::Constant { value, .. } => {
                if value.is_empty() {
                    return Err(FracError::NonIntegrableSpec("constant: empty value".into()));
                }
            }
            AnalyticSpec::Sum { terms, .. } => {
                if terms.is_empty() {
                    return Err(FracError::NonIntegrableSpec("sum: no terms".into()));
                }
                let d = terms[0].dim();
                for t in terms {
                    t.validate()?;
                    if t.interval() != iv {
                        return Err(FracError::NonIntegrableSpec(
                            "sum: terms must share the outer interval".into(),
                        ));
                    }
                    if t.dim() != d {
                        return Err(FracError::DimensionMismatch {
                            expected: d,
                            actual: t.dim(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// True when the value at the left endpoint diverges.
    pub fn singular_at_left(&self) -> bool {
        match self {
            AnalyticSpec::Power { gamma, interval, .. } => *gamma < 0.0 && interval.t0() == 0.0,
            AnalyticSpec::LogPower { beta, sigma, .. } => {
                *beta < 0.0 || (*beta == 0.0 && *sigma > 0.0)
            }
            AnalyticSpec::Sum { terms, .. } => terms.iter().any(|t| t.singular_at_left()),
            _ => false,
        }
    }

    /// Exact analytic value at `t`.
    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        match self {
            AnalyticSpec::Power { gamma, coeff, .. } => {
                if t == 0.0 && *gamma < 0.0 {
                    return Err(FracError::EvalAtSingularity { t });
                }
                let s = t.powf(*gamma);
                Ok(coeff.iter().map(|c| c * s).collect())
            }
            AnalyticSpec::LogPower { beta, sigma, .. } => {
                if t == 0.0 {
                    if self.singular_at_left() {
                        return Err(FracError::EvalAtSingularity { t });
                    }
                    // beta > 0, or beta = 0 with sigma <= 0: the limit is 0 (or 1 for sigma = 0).
                    return Ok(vec![if *beta == 0.0 && *sigma == 0.0 { 1.0 } else { 0.0 }]);
                }
                if t >= 1.0 {
                    if *sigma < 0.0 && t == 1.0 {
                        return Err(FracError::EvalAtSingularity { t });
                    }
                    if t == 1.0 {
                        return Ok(vec![if *sigma == 0.0 { 1.0 } else { 0.0 }]);
                    }
                }
                Ok(vec![t.powf(*beta) * (1.0 / t).ln().powf(*sigma)])
            }
            AnalyticSpec::Polynomial { coeffs, .. } => Ok(coeffs
                .iter()
                .map(|c| c.iter().rev().fold(0.0, |acc, &a| acc * t + a))
                .collect()),
            AnalyticSpec::Trig {
                amplitude,
                frequency,
                phase,
                ..
            } => Ok(amplitude
                .iter()
                .zip(frequency)
                .zip(phase)
                .map(|((&a, &w), &ph)| a * (w * t + ph).sin())
                .collect()),
            AnalyticSpec::Step {
                breakpoints,
                values,
                ..
            } => {
                let k = breakpoints.partition_point(|&b| b <= t);
                Ok(values[k].clone())
            }
            AnalyticSpec::Constant { value, .. } => Ok(value.clone()),
            AnalyticSpec::Sum { terms, .. } => {
                let mut acc = vec![0.0; self.dim()];
                for term in terms {
                    for (a, v) in acc.iter_mut().zip(term.evaluate(t)?) {
                        *a += v;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Exact symbolic k-th derivative.
    pub fn derivative(&self, k: u32) -> Result<AnalyticSpec> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.derivative_once()?;
        }
        Ok(cur)
    }

    fn derivative_once(&self) -> Result<AnalyticSpec> {
        let interval = self.interval();
        match self {
            AnalyticSpec::Power { gamma, coeff, .. } => {
                if *gamma == 0.0 {
                    return Ok(AnalyticSpec::Constant {
                        value: vec![0.0; coeff.len()],
                        interval,
                    });
                }
                Ok(AnalyticSpec::Power {
                    gamma: gamma - 1.0,
                    coeff: coeff.iter().map(|c| c * gamma).collect(),
                    interval,
                })
            }
            AnalyticSpec::LogPower { .. } => Err(FracError::NotDifferentiable {
                order: 1,
                reason: "logpower derivatives leave the representable family".into(),
            }),
            AnalyticSpec::Polynomial { coeffs, .. } => Ok(AnalyticSpec::Polynomial {
                coeffs: coeffs
                    .iter()
                    .map(|c| {
                        if c.len() <= 1 {
                            vec![0.0]
                        } else {
                            c.iter()
                                .enumerate()
                                .skip(1)
                                .map(|(j, &a)| a * j as f64)
                                .collect()
                        }
                    })
                    .collect(),
                interval,
            }),
            AnalyticSpec::Trig {
                amplitude,
                frequency,
                phase,
                ..
            } => Ok(AnalyticSpec::Trig {
                amplitude: amplitude
                    .iter()
                    .zip(frequency)
                    .map(|(&a, &w)| a * w)
                    .collect(),
                frequency: frequency.clone(),
                phase: phase.iter().map(|&p| p + std::f64::consts::FRAC_PI_2).collect(),
                interval,
            }),
            AnalyticSpec::Step { .. } => Err(FracError::NotDifferentiable {
                order: 1,
                reason: "step functions have no classical derivative".into(),
            }),
            AnalyticSpec::Constant { value, .. } => Ok(AnalyticSpec::Constant {
                value: vec![0.0; value.len()],
                interval,
            }),
            AnalyticSpec::Sum { terms, .. } => Ok(AnalyticSpec::Sum {
                terms: terms
                    .iter()
                    .map(|t| t.derivative_once())
                    .collect::<Result<_>>()?,
                interval,
            }),
        }
    }

    /// Value assigned to a singular left-endpoint node: the analytic average
    /// `(1/h) * integral of f over [t0, t0 + h/2]`.
    fn left_surrogate(&self, h: f64) -> Result<Vec<f64>> {
        let x = h / 2.0;
        match self {
            AnalyticSpec::Power { gamma, coeff, .. } => {
                // (1/h) * x^{gamma+1} / (gamma+1)
                let s = x.powf(gamma + 1.0) / ((gamma + 1.0) * h);
                Ok(coeff.iter().map(|c| c * s).collect())
            }
            AnalyticSpec::LogPower { beta, sigma, .. } => {
                let v = if *beta == -1.0 {
                    // int_0^x t^-1 log(1/t)^sigma dt = log(1/x)^{sigma+1} / (-sigma-1)
                    (1.0 / x).ln().powf(sigma + 1.0) / (-sigma - 1.0)
                } else if *sigma == 0.0 {
                    x.powf(beta + 1.0) / (beta + 1.0)
                } else {
                    graded_integral_to(|t| t.powf(*beta) * (1.0 / t).ln().powf(*sigma), x)
                };
                Ok(vec![v / h])
            }
            AnalyticSpec::Sum { terms, .. } => {
                let mut acc = vec![0.0; self.dim()];
                for term in terms {
                    let contrib = if term.singular_at_left() {
                        term.left_surrogate(h)?
                    } else {
                        term.evaluate(term.interval().t0())?
                    };
                    for (a, v) in acc.iter_mut().zip(contrib) {
                        *a += v;
                    }
                }
                Ok(acc)
            }
            _ => self.evaluate(self.interval().t0()),
        }
    }

    /// Samples on the uniform grid with `n` cells (`n + 1` nodes), ell2 value norm.
    pub fn sample(&self, n: usize) -> Result<SampledFunction> {
        self.sample_with_norm(n, NormKind::Ell2)
    }

    pub fn sample_with_norm(&self, n: usize, kind: NormKind) -> Result<SampledFunction> {
        if n < 2 {
            return Err(FracError::GridTooCoarse { required: 2, actual: n });
        }
        self.validate()?;
        let iv = self.interval();
        let d = self.dim();
        let h = iv.length() / n as f64;
        let mut values = Vec::with_capacity((n + 1) * d);
        for i in 0..=n {
            let t = if i == n { iv.t1() } else { iv.t0() + i as f64 * h };
            let v = if i == 0 && self.singular_at_left() {
                self.left_surrogate(h)?
            } else {
                self.evaluate(t)?
            };
            values.extend_from_slice(&v);
        }
        Ok(SampledFunction {
            interval: iv,
            dim: d,
            values,
            vnorm: VectorNorm::new(kind, d),
            source: Some(self.clone()),
        })
    }

    /// Whether the function lies in L^p on its interval (closed-form metadata).
    pub fn in_lp(&self, p: f64) -> bool {
        if p.is_infinite() {
            return self.in_linf();
        }
        match self {
            AnalyticSpec::Power { gamma, interval, .. } => {
                *gamma >= 0.0 || interval.t0() > 0.0 || gamma * p > -1.0
            }
            AnalyticSpec::LogPower { beta, sigma, .. } => {
                if beta * p > -1.0 {
                    true
                } else if beta * p == -1.0 {
                    sigma * p < -1.0
                } else {
                    false
                }
            }
            AnalyticSpec::Sum { terms, .. } => terms.iter().all(|t| t.in_lp(p)),
            _ => true,
        }
    }

    pub fn in_linf(&self) -> bool {
        match self {
            AnalyticSpec::Sum { terms, .. } => terms.iter().all(|t| t.in_linf()),
            _ => !self.singular_at_left(),
        }
    }

    /// Whether the function lies in weak-L^p (boundary exponent included).
    pub fn in_weak_lp(&self, p: f64) -> bool {
        match self {
            AnalyticSpec::Power { gamma, interval, .. } => {
                *gamma >= 0.0 || interval.t0() > 0.0 || gamma * p >= -1.0
            }
            AnalyticSpec::Sum { terms, .. } => terms.iter().all(|t| t.in_weak_lp(p)),
            _ => self.in_lp(p),
        }
    }

    /// True for members that are twice continuously differentiable on the
    /// closed interval (the corpus notion of "smooth").
    pub fn is_smooth(&self) -> bool {
        match self {
            AnalyticSpec::Power { gamma, interval, .. } => {
                *gamma == 0.0
                    || *gamma == 1.0
                    || *gamma >= 2.0
                    || (interval.t0() > 0.0 && *gamma >= 0.0)
            }
            AnalyticSpec::Polynomial { .. }
            | AnalyticSpec::Trig { .. }
            | AnalyticSpec::Constant { .. } => true,
            AnalyticSpec::Sum { terms, .. } => terms.iter().all(|t| t.is_smooth()),
            _ => false,
        }
    }

    /// True when f(t0) is finite and zero in every component.
    pub fn vanishes_at_start(&self) -> bool {
        match self.evaluate(self.interval().t0()) {
            Ok(v) => v.iter().all(|&x| x == 0.0),
            Err(_) => false,
        }
    }

    /// Compact display label, used in reports.
    pub fn label(&self) -> String {
        match self {
            AnalyticSpec::Power { gamma, coeff, .. } => {
                if coeff.len() == 1 && coeff[0] == 1.0 {
                    if *gamma == 1.0 {
                        "t".to_string()
                    } else {
                        format!("t^{gamma}")
                    }
                } else {
                    format!("pow({gamma};d={})", coeff.len())
                }
            }
            AnalyticSpec::LogPower { beta, sigma, .. } => format!("t^{beta}log^{sigma}"),
            AnalyticSpec::Polynomial { coeffs, .. } => {
                format!("poly(deg={};d={})", coeffs.iter().map(|c| c.len()).max().unwrap_or(1) - 1, coeffs.len())
            }
            AnalyticSpec::Trig { amplitude, .. } => format!("trig(d={})", amplitude.len()),
            AnalyticSpec::Step { breakpoints, .. } => format!("step(k={})", breakpoints.len()),
            AnalyticSpec::Constant { value, .. } => {
                if value.len() == 1 {
                    format!("const({})", value[0])
                } else {
                    format!("const(d={})", value.len())
                }
            }
            AnalyticSpec::Sum { terms, .. } => format!("sum({})", terms.len()),
        }
    }
}

/// Integral of `f` over `(0, x]` by composite Gauss-Legendre on dyadic panels
/// graded toward the singular origin.
#[allow(clippy::excessive_precision)]
fn graded_integral_to(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    // 16-point Gauss-Legendre on [-1, 1], positive half (symmetric).
    const GL_X: [f64; 8] = [
        0.095012509837637440185,
        0.28160355077925891323,
        0.45801677765722738634,
        0.61787624440264374845,
        0.7554044083550030339,
        0.86563120238783174388,
        0.94457502307323257608,
        0.9894009349916499326,
    ];
    const GL_W: [f64; 8] = [
        0.18945061045506849629,
        0.18260341504492358887,
        0.16915651939500253819,
        0.14959598881657673208,
        0.12462897125553387205,
        0.09515851168249278481,
        0.062253523938647892863,
        0.027152459411754094852,
    ];
    let panel = |a: f64, b: f64| -> f64 {
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        let mut acc = 0.0;
        for k in 0..8 {
            acc += GL_W[k] * (f(c + r * GL_X[k]) + f(c - r * GL_X[k]));
        }
        acc * r
    };
    let mut total = 0.0;
    let mut hi = x;
    for k in 0..1100 {
        let lo = hi / 2.0;
        if lo == 0.0 {
            break;
        }
        let p = panel(lo, hi);
        total += p;
        if k > 8 && p.abs() < 1e-17 * total.abs() {
            break;
        }
        hi = lo;
    }
    total
}

/// Values of a vector-valued function on a uniform grid, plus the value-space norm.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    interval: Interval,
    dim: usize,
    /// Node-major storage, length `(n + 1) * dim`.
    values: Vec<f64>,
    vnorm: VectorNorm,
    source: Option<AnalyticSpec>,
}

impl SampledFunction {
    /// Wraps raw node values (no source spec attached).
    pub fn from_values(interval: Interval, dim: usize, values: Vec<f64>, vnorm: VectorNorm) -> Result<Self> {
        if dim == 0 || values.len() % dim != 0 || values.len() / dim < 3 {
            return Err(FracError::DimensionMismatch {
                expected: dim.max(1),
                actual: values.len(),
            });
        }
        if vnorm.dim != dim {
            return Err(FracError::DimensionMismatch {
                expected: dim,
                actual: vnorm.dim,
            });
        }
        Ok(Self {
            interval,
            dim,
            values,
            vnorm,
            source: None,
        })
    }

    pub fn scalar(interval: Interval, values: Vec<f64>) -> Result<Self> {
        Self::from_values(interval, 1, values, VectorNorm::ell2(1))
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vnorm(&self) -> VectorNorm {
        self.vnorm
    }

    pub fn source(&self) -> Option<&AnalyticSpec> {
        self.source.as_ref()
    }

    /// Number of grid cells (nodes = n + 1).
    pub fn n(&self) -> usize {
        self.values.len() / self.dim - 1
    }

    pub fn node_count(&self) -> usize {
        self.n() + 1
    }

    pub fn h(&self) -> f64 {
        self.interval.length() / self.n() as f64
    }

    pub fn node_time(&self, i: usize) -> f64 {
        if i == self.n() {
            self.interval.t1()
        } else {
            self.interval.t0() + i as f64 * self.h()
        }
    }

    pub fn value(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Replaces the values, keeping grid and norm; drops the source spec.
    pub fn with_values(&self, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), self.values.len());
        Self {
            interval: self.interval,
            dim: self.dim,
            values,
            vnorm: self.vnorm,
            source: None,
        }
    }

    /// Entry i is the value-space norm of node i.
    pub fn pointwise_norm(&self) -> Vec<f64> {
        (0..self.node_count())
            .map(|i| self.vnorm.apply(self.value(i)))
            .collect()
    }

    pub fn scale(&self, c: f64) -> Self {
        self.with_values(self.values.iter().map(|v| c * v).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_grid(other)?;
        Ok(self.with_values(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Max over nodes of the value-space norm of the difference.
    pub fn max_node_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        let mut best: f64 = 0.0;
        let mut diff = vec![0.0; self.dim];
        for i in 0..self.node_count() {
            for (k, d) in diff.iter_mut().enumerate() {
                *d = self.value(i)[k] - other.value(i)[k];
            }
            best = best.max(self.vnorm.apply(&diff));
        }
        Ok(best)
    }

    /// Same as [`max_node_distance`](Self::max_node_distance) restricted to
    /// nodes with `t >= t0 + length/8`, away from the boundary layer.
    pub fn interior_node_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        let lo = self.n() / 8;
        let mut best: f64 = 0.0;
        let mut diff = vec![0.0; self.dim];
        for i in lo..self.node_count() {
            for (k, d) in diff.iter_mut().enumerate() {
                *d = self.value(i)[k] - other.value(i)[k];
            }
            best = best.max(self.vnorm.apply(&diff));
        }
        Ok(best)
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.interval != other.interval || self.values.len() != other.values.len() || self.dim != other.dim {
            return Err(FracError::GridMismatch);
        }
        Ok(())
    }
}

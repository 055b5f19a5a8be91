//! Default test-function corpus used by the verification suite.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::function_model::{AnalyticSpec, Interval};

/// Named corpus member.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: AnalyticSpec,
}

impl CorpusEntry {
    pub fn new(name: &str, spec: AnalyticSpec) -> Self {
        CorpusEntry {
            name: name.to_string(),
            spec,
        }
    }
}

/// The eight-function default corpus on [0, 1]: constants, powers (smooth,
/// rough and singular), a polynomial, trig, a jump, and one vector-valued
/// member.
pub fn default_corpus() -> Vec<CorpusEntry> {
    let iv = Interval::unit();
    vec![
        CorpusEntry::new(
            "const1",
            AnalyticSpec::Constant {
                value: vec![1.0],
                interval: iv,
            },
        ),
        CorpusEntry::new(
            "t",
            AnalyticSpec::Power {
                gamma: 1.0,
                coeff: vec![1.0],
                interval: iv,
            },
        ),
        CorpusEntry::new(
            "t^2/2",
            AnalyticSpec::Polynomial {
                coeffs: vec![vec![0.0, 0.0, 0.5]],
                interval: iv,
            },
        ),
        CorpusEntry::new(
            "t^0.5",
            AnalyticSpec::Power {
                gamma: 0.5,
                coeff: vec![1.0],
                interval: iv,
            },
        ),
        CorpusEntry::new(
            "t^-0.4",
            AnalyticSpec::Power {
                gamma: -0.4,
                coeff: vec![1.0],
                interval: iv,
            },
        ),
        CorpusEntry::new(
            "sin2pit",
            AnalyticSpec::Trig {
                amplitude: vec![1.0],
                frequency: vec![TAU],
                phase: vec![0.0],
                interval: iv,
            },
        ),
        CorpusEntry::new(
            "step",
            AnalyticSpec::Step {
                breakpoints: vec![0.5],
                values: vec![vec![0.0], vec![1.0]],
                interval: iv,
            },
        ),
        CorpusEntry::new(
            "trig2d",
            AnalyticSpec::Trig {
                amplitude: vec![1.0, 0.5],
                frequency: vec![TAU, TAU],
                phase: vec![0.0, FRAC_PI_2],
                interval: iv,
            },
        ),
    ]
}

/// Corpus members that are twice continuously differentiable.
pub fn smooth_corpus() -> Vec<CorpusEntry> {
    default_corpus()
        .into_iter()
        .filter(|e| e.spec.is_smooth())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_eight_valid_members() {
        let corpus = default_corpus();
        assert_eq!(corpus.len(), 8);
        for e in &corpus {
            e.spec.validate().unwrap();
        }
    }

    #[test]
    fn smooth_subset_is_the_c2_members() {
        let names: Vec<String> = smooth_corpus().into_iter().map(|e| e.name).collect();
        assert_eq!(names, ["const1", "t", "t^2/2", "sin2pit", "trig2d"]);
    }
}

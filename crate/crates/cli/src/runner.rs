//! Job expansion and execution: every (check, corpus function, grid)
//! combination becomes one result row; studies additionally emit plot data.
//! Workers fan out over jobs (capped by FRACBOUND_THREADS) and rows are
//! sorted before writing so repeat runs are byte-identical.

use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{bail, Context};
use serde::Serialize;

use fracbound_core::corpus::CorpusEntry;
use fracbound_core::theorem_bench::{self as tb, IdentityVariant, NoninclusionFamily};
use fracbound_core::{AnalyticSpec, QuadratureScheme};

use crate::config::{CheckSpec, RunConfig};

/// What a row is claiming, which decides the exit-status contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowKind {
    /// lhs <= rhs with slack: verdict pass/fail.
    Inequality,
    /// Refinement study that must come out bounded.
    Stability,
    /// Refinement study that must come out diverging.
    Sharpness,
    /// Identity residual decay: verdict pass/fail on the fitted order.
    Identity,
    /// Check errored out; run continued.
    Error,
}

/// One line of results.csv plus the structured extras mirrored to JSON.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub theorem: String,
    pub params: String,
    pub function: String,
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub verdict: String,
    pub seconds: f64,
    pub kind: RowKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub study: Option<StudyData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StudyData {
    pub grids: Vec<usize>,
    pub values: Vec<f64>,
    pub fitted_exponent: f64,
    pub growth_per_halving: f64,
}

pub const CSV_HEADER: &str = "theorem,params,function,n,lhs,rhs,margin,verdict,seconds";

/// Internal job tag for the counterexample arm the bound form of
/// `linf-holder` spawns automatically (reported under the public tag).
const SYNTH_LINF_SHARPNESS: &str = "__linf-holder-sharpness";

impl ResultRow {
    pub fn good(&self) -> bool {
        match self.kind {
            RowKind::Inequality | RowKind::Identity => self.verdict == "pass",
            RowKind::Stability => self.verdict == "bounded",
            RowKind::Sharpness => self.verdict == "diverging",
            RowKind::Error => false,
        }
    }

    fn csv_line(&self) -> String {
        for field in [&self.theorem, &self.params, &self.function, &self.verdict] {
            debug_assert!(!field.contains(','), "CSV field with comma: {field}");
        }
        format!(
            "{},{},{},{},{:.12e},{:.12e},{:.12e},{},{:.3}",
            self.theorem,
            self.params,
            self.function,
            self.n,
            self.lhs,
            self.rhs,
            self.margin,
            self.verdict,
            self.seconds
        )
    }

    fn sort_key(&self) -> (String, String, String, usize) {
        (
            self.theorem.clone(),
            self.params.clone(),
            self.function.clone(),
            self.n,
        )
    }
}

/// Summary of one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub config_hash: String,
    pub tool_version: String,
    pub started_at: String,
    pub finished_at: String,
    pub counts: Counts,
    /// (check, function) combinations outside their hypothesis, not executed.
    pub skipped: usize,
    pub partial_failure: bool,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub bounded: usize,
    pub diverging: usize,
    pub error: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.bounded + self.diverging + self.error
    }
}

struct Job {
    check: CheckSpec,
    entry: Option<CorpusEntry>,
    grids: Vec<usize>,
}

fn corpus_entries(config: &RunConfig) -> Vec<CorpusEntry> {
    let mut seen = std::collections::HashMap::new();
    config
        .corpus
        .iter()
        .map(|spec| {
            let base = spec.label();
            let k = seen.entry(base.clone()).or_insert(0usize);
            *k += 1;
            let name = if *k == 1 { base } else { format!("{base}#{k}") };
            CorpusEntry { name, spec: spec.clone() }
        })
        .collect()
}

fn family_from_name(name: Option<&str>) -> anyhow::Result<NoninclusionFamily> {
    match name {
        None | Some("power-singular") => Ok(NoninclusionFamily::PowerSingular),
        Some("log-damped") => Ok(NoninclusionFamily::LogDamped),
        Some("control") => Ok(NoninclusionFamily::ConstantControl),
        Some(other) => bail!("unknown noninclusion family `{other}`"),
    }
}

/// Expands checks over the corpus, dropping (check, function) pairs whose
/// hypotheses the function metadata rules out.
fn expand_jobs(config: &RunConfig) -> anyhow::Result<(Vec<Job>, usize)> {
    let corpus = corpus_entries(config);
    let mut jobs = Vec::new();
    let mut skipped = 0usize;

    for check in &config.checks {
        let grids = check.grids.clone().unwrap_or_else(|| config.grids.clone());
        let tag = check.tag.as_str();
        match tag {
            tb::TAG_SUPERCRITICAL => {
                let p = check.p.context("supercritical-continuity needs p")?;
                let alpha = check.alpha.context("supercritical-continuity needs alpha")?;
                if alpha <= 1.0 / p {
                    skipped += corpus.len();
                    continue;
                }
                for e in &corpus {
                    if e.spec.in_lp(p) {
                        jobs.push(Job {
                            check: check.clone(),
                            entry: Some(e.clone()),
                            grids: grids.clone(),
                        });
                    } else {
                        skipped += 1;
                    }
                }
            }
            tb::TAG_WRL_BOUND => {
                for e in &corpus {
                    jobs.push(Job {
                        check: check.clone(),
                        entry: Some(e.clone()),
                        grids: grids.clone(),
                    });
                }
            }
            tb::TAG_LINF_HOLDER => {
                if check.r.is_some() {
                    // counterexample arm, corpus-independent
                    jobs.push(Job {
                        check: check.clone(),
                        entry: None,
                        grids: grids.clone(),
                    });
                } else {
                    for e in &corpus {
                        if e.spec.in_linf() {
                            jobs.push(Job {
                                check: check.clone(),
                                entry: Some(e.clone()),
                                grids: grids.clone(),
                            });
                        } else {
                            skipped += 1;
                        }
                    }
                    // the theorem's counterexample arm rides along
                    let mut synth = check.clone();
                    synth.tag = SYNTH_LINF_SHARPNESS.to_string();
                    jobs.push(Job {
                        check: synth,
                        entry: None,
                        grids: grids.clone(),
                    });
                }
            }
            tb::TAG_LINF_GENERAL => {
                for e in &corpus {
                    if e.spec.in_linf() {
                        jobs.push(Job {
                            check: check.clone(),
                            entry: Some(e.clone()),
                            grids: grids.clone(),
                        });
                    } else {
                        skipped += 1;
                    }
                }
            }
            tb::TAG_EMBEDDING => {
                check.p.context("embedding needs p")?;
                for e in &corpus {
                    let admissible = match check.q {
                        // the weak-to-strong direction needs the weak norm finite
                        Some(q) => e.spec.in_weak_lp(q),
                        // the Chebyshev direction holds for any sampled data
                        None => true,
                    };
                    if admissible {
                        jobs.push(Job {
                            check: check.clone(),
                            entry: Some(e.clone()),
                            grids: grids.clone(),
                        });
                    } else {
                        skipped += 1;
                    }
                }
            }
            tb::TAG_HOLDER_REGULARITY => {
                let p = check.p.context("holder-regularity needs p")?;
                let alpha = check.alpha.context("holder-regularity needs alpha")?;
                if alpha <= 1.0 / p {
                    skipped += corpus.len();
                    continue;
                }
                for e in &corpus {
                    if e.spec.in_lp(p) {
                        jobs.push(Job {
                            check: check.clone(),
                            entry: Some(e.clone()),
                            grids: grids.clone(),
                        });
                    } else {
                        skipped += 1;
                    }
                }
            }
            tb::TAG_CRITICAL_BK => {
                // BMO-bearing check: clamp grids to the cap, then pad the
                // ladder downward so the rate fit keeps >= 4 points
                let grids: Vec<usize> = {
                    let mut g: Vec<usize> = grids
                        .iter()
                        .map(|&n| n.min(config.bmo_grid_cap))
                        .collect();
                    g.sort_unstable();
                    g.dedup();
                    while g.len() < 4 && g[0] / 2 >= 4 {
                        g.insert(0, g[0] / 2);
                    }
                    g
                };
                for e in &corpus {
                    jobs.push(Job {
                        check: check.clone(),
                        entry: Some(e.clone()),
                        grids: grids.clone(),
                    });
                }
            }
            tb::TAG_HOLDER_SHARPNESS | tb::TAG_WEAK_NONINCLUSION => {
                jobs.push(Job {
                    check: check.clone(),
                    entry: None,
                    grids: grids.clone(),
                });
            }
            tb::TAG_INVERSION | tb::TAG_COMMUTATION | tb::TAG_SEMIGROUP => {
                let variant = identity_variant(check)?;
                let eligible = tb::identity_corpus(&corpus, variant);
                skipped += corpus.len() - eligible.len();
                for e in eligible {
                    jobs.push(Job {
                        check: check.clone(),
                        entry: Some(e),
                        grids: grids.clone(),
                    });
                }
            }
            other => bail!("unknown theorem tag `{other}`"),
        }
    }
    Ok((jobs, skipped))
}

fn identity_variant(check: &CheckSpec) -> anyhow::Result<IdentityVariant> {
    Ok(match check.tag.as_str() {
        tb::TAG_INVERSION => IdentityVariant::Inversion,
        tb::TAG_COMMUTATION => IdentityVariant::Commutation,
        tb::TAG_SEMIGROUP => IdentityVariant::Semigroup {
            beta: check.beta.unwrap_or(0.7),
        },
        other => bail!("not an identity tag: {other}"),
    })
}

fn study_data(study: &tb::ConvergenceStudy) -> StudyData {
    StudyData {
        grids: study.grid_sizes.clone(),
        values: study.values.clone(),
        fitted_exponent: study.fitted_exponent,
        growth_per_halving: study.growth_per_halving(),
    }
}

fn inequality_row(tag: &str, params: String, function: &str, c: &tb::TheoremCheck) -> ResultRow {
    ResultRow {
        theorem: tag.to_string(),
        params,
        function: function.to_string(),
        n: c.n,
        lhs: c.lhs,
        rhs: c.rhs,
        margin: c.margin,
        verdict: if c.pass { "pass" } else { "fail" }.to_string(),
        seconds: 0.0,
        kind: RowKind::Inequality,
        study: None,
        error: None,
    }
}

fn study_row(
    tag: &str,
    params: String,
    function: &str,
    study: &tb::ConvergenceStudy,
    kind: RowKind,
    threshold: f64,
) -> ResultRow {
    ResultRow {
        theorem: tag.to_string(),
        params,
        function: function.to_string(),
        n: *study.grid_sizes.last().unwrap(),
        lhs: study.fitted_exponent,
        rhs: threshold,
        margin: match kind {
            RowKind::Sharpness => study.fitted_exponent - threshold,
            _ => threshold - study.fitted_exponent,
        },
        verdict: study.verdict.to_string(),
        seconds: 0.0,
        kind,
        study: Some(study_data(study)),
        error: None,
    }
}

fn execute_job(job: &Job, config: &RunConfig) -> anyhow::Result<Vec<ResultRow>> {
    let scheme: QuadratureScheme = config.scheme;
    let tol = config.tol;
    let check = &job.check;
    let tag = check.tag.as_str();
    fn spec_of(e: &Option<CorpusEntry>) -> &AnalyticSpec {
        &e.as_ref().unwrap().spec
    }
    fn name_of(e: &Option<CorpusEntry>) -> String {
        e.as_ref().unwrap().name.clone()
    }

    let rows = match tag {
        tb::TAG_SUPERCRITICAL => {
            let (alpha, p) = (check.alpha.unwrap(), check.p.unwrap());
            let params = format!("alpha={alpha};p={p}");
            job.grids
                .iter()
                .map(|&n| {
                    let c = tb::check_supercritical_sup(spec_of(&job.entry), alpha, p, n, scheme, tol)?;
                    Ok(inequality_row(tag, params.clone(), &name_of(&job.entry), &c))
                })
                .collect::<anyhow::Result<Vec<_>>>()?
        }
        tb::TAG_WRL_BOUND => {
            let alpha = check.alpha.context("wrl-bound needs alpha")?;
            let gamma_w = check.gamma.context("wrl-bound needs gamma")?;
            let params = format!("alpha={alpha};gamma={gamma_w}");
            job.grids
                .iter()
                .map(|&n| {
                    let c = tb::check_wrl_bound(spec_of(&job.entry), alpha, gamma_w, n, scheme, tol)?;
                    Ok(inequality_row(tag, params.clone(), &name_of(&job.entry), &c))
                })
                .collect::<anyhow::Result<Vec<_>>>()?
        }
        tb::TAG_LINF_HOLDER => {
            let alpha = check.alpha.context("linf-holder needs alpha")?;
            match check.r {
                Some(r) => {
                    let study = tb::linf_holder_sharpness(alpha, r, &job.grids, scheme)?;
                    vec![study_row(
                        tag,
                        format!("alpha={alpha};r={r};arm=sharpness"),
                        "const(1)",
                        &study,
                        RowKind::Sharpness,
                        tb::RATE_SLOPE_THRESHOLD,
                    )]
                }
                None => {
                    let params = format!("alpha={alpha}");
                    job.grids
                        .iter()
                        .map(|&n| {
                            let c = tb::check_linf_holder(spec_of(&job.entry), alpha, n, scheme, tol)?;
                            Ok(inequality_row(tag, params.clone(), &name_of(&job.entry), &c))
                        })
                        .collect::<anyhow::Result<Vec<_>>>()?
                }
            }
        }
        SYNTH_LINF_SHARPNESS => {
            let alpha = check.alpha.context("linf-holder needs alpha")?;
            let r = (1.0 + alpha) / 2.0;
            let ladder: Vec<usize> = if job.grids.len() >= 4 {
                job.grids.clone()
            } else {
                vec![128, 256, 512, 1024, 2048, 4096]
            };
            let study = tb::linf_holder_sharpness(alpha, r, &ladder, scheme)?;
            vec![study_row(
                tb::TAG_LINF_HOLDER,
                format!("alpha={alpha};r={r};arm=sharpness"),
                "const(1)",
                &study,
                RowKind::Sharpness,
                tb::RATE_SLOPE_THRESHOLD,
            )]
        }
        tb::TAG_EMBEDDING => {
            let p = check.p.unwrap();
            job.grids
                .iter()
                .map(|&n| {
                    let c = match check.q {
                        Some(q) => tb::check_embedding(spec_of(&job.entry), p, q, n, check.alpha, scheme)?,
                        None => tb::check_chebyshev(spec_of(&job.entry), p, n, check.alpha, scheme)?,
                    };
                    let params = match check.q {
                        Some(q) => format!("p={p};q={q};arm=weak-to-strong"),
                        None => format!("p={p};arm=chebyshev"),
                    };
                    Ok(inequality_row(tag, params, &name_of(&job.entry), &c))
                })
                .collect::<anyhow::Result<Vec<_>>>()?
        }
        tb::TAG_HOLDER_REGULARITY => {
            let (alpha, p) = (check.alpha.unwrap(), check.p.unwrap());
            let out = tb::check_holder_regularity(spec_of(&job.entry), alpha, p, &job.grids, scheme)?;
            vec![study_row(
                tag,
                format!("alpha={alpha};p={p}"),
                &name_of(&job.entry),
                &out.study,
                RowKind::Stability,
                tb::RATE_SLOPE_THRESHOLD,
            )]
        }
        tb::TAG_CRITICAL_BK => {
            let p = check.p.context("critical-bk needs p")?;
            let level = check.level.context("critical-bk needs level")?;
            let out =
                tb::check_critical_bk(spec_of(&job.entry), p, level, check.gamma, &job.grids, scheme)?;
            let mut row = study_row(
                tag,
                format!("p={p};level={level}"),
                &name_of(&job.entry),
                &out.study,
                RowKind::Stability,
                tb::RATE_SLOPE_THRESHOLD,
            );
            // the derivative-relation part of the check can veto the verdict
            if !out.check.pass && row.verdict == "bounded" {
                row.verdict = "fail".to_string();
                row.kind = RowKind::Inequality;
            }
            vec![row]
        }
        tb::TAG_HOLDER_SHARPNESS => {
            let (p, alpha, r) = (
                check.p.context("holder-sharpness needs p")?,
                check.alpha.context("holder-sharpness needs alpha")?,
                check.r.context("holder-sharpness needs r")?,
            );
            let study = tb::check_holder_sharpness(p, alpha, r, &job.grids, scheme)?;
            let g = tb::holder_sharpness_exponent(p, alpha, r);
            vec![study_row(
                tag,
                format!("alpha={alpha};p={p};r={r}"),
                &format!("t^{g}"),
                &study,
                RowKind::Sharpness,
                tb::RATE_SLOPE_THRESHOLD,
            )]
        }
        tb::TAG_WEAK_NONINCLUSION => {
            let alpha = check.alpha.context("weak-noninclusion needs alpha")?;
            let r = check.r.context("weak-noninclusion needs r")?;
            let family = family_from_name(check.family.as_deref())?;
            let study = tb::check_weak_noninclusion(alpha, r, family, &job.grids, scheme)?;
            // at the marginal exponent (and for the control) boundedness is
            // the theorem-conforming outcome
            let marginal = r <= 1.0 / (1.0 - alpha) * (1.0 + 1e-9);
            let expect_bounded = marginal || family == NoninclusionFamily::ConstantControl;
            let kind = if expect_bounded {
                RowKind::Stability
            } else {
                RowKind::Sharpness
            };
            let fam_name = match family {
                NoninclusionFamily::PowerSingular => "power-singular",
                NoninclusionFamily::LogDamped => "log-damped",
                NoninclusionFamily::ConstantControl => "control",
            };
            vec![study_row(
                tag,
                format!("alpha={alpha};r={r};family={fam_name}"),
                fam_name,
                &study,
                kind,
                tb::RATE_SLOPE_THRESHOLD,
            )]
        }
        tb::TAG_LINF_GENERAL => {
            let alpha = check.alpha.context("linf-general needs alpha")?;
            let out = tb::check_linf_general(spec_of(&job.entry), alpha, &job.grids, scheme)?;
            vec![study_row(
                tag,
                format!("alpha={alpha}"),
                &name_of(&job.entry),
                &out.study,
                RowKind::Stability,
                tb::RATE_SLOPE_THRESHOLD,
            )]
        }
        tb::TAG_INVERSION | tb::TAG_COMMUTATION | tb::TAG_SEMIGROUP => {
            let variant = identity_variant(check)?;
            let alpha = check.alpha.unwrap_or(0.5);
            let out = tb::check_identities(spec_of(&job.entry), alpha, variant, &job.grids, scheme)?;
            let params = match variant {
                IdentityVariant::Semigroup { beta } => format!("alpha={alpha};beta={beta}"),
                _ => format!("alpha={alpha}"),
            };
            let mut row = study_row(
                tag,
                params,
                &name_of(&job.entry),
                &out.study,
                RowKind::Identity,
                1.0,
            );
            row.lhs = out.check.lhs; // fitted decay order
            row.rhs = 1.0;
            row.margin = out.check.margin;
            row.verdict = if out.check.pass { "pass" } else { "fail" }.to_string();
            vec![row]
        }
        other => bail!("unknown theorem tag `{other}`"),
    };
    Ok(rows)
}

fn worker_count(jobs: usize) -> usize {
    let hw = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1);
    let cap = std::env::var("FRACBOUND_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(hw);
    cap.min(jobs.max(1))
}

/// Executes the whole configuration and writes results.csv, results.json,
/// manifest.json and per-study plot data into `out_dir`.
pub fn run(config: &RunConfig, out_dir: &Path) -> anyhow::Result<RunManifest> {
    config.validate()?;
    fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create output dir {}", out_dir.display()))?;
    let started_at = chrono::Utc::now();
    let started = Instant::now();

    let (jobs, skipped) = expand_jobs(config)?;
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, anyhow::Result<Vec<ResultRow>>, f64)>> =
        Mutex::new(Vec::with_capacity(jobs.len()));

    std::thread::scope(|scope| {
        for _ in 0..worker_count(jobs.len()) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= jobs.len() {
                    break;
                }
                let t0 = Instant::now();
                let out = execute_job(&jobs[idx], config);
                let secs = t0.elapsed().as_secs_f64();
                results.lock().unwrap().push((idx, out, secs));
            });
        }
    });

    let mut collected = results.into_inner().unwrap();
    collected.sort_by_key(|(idx, _, _)| *idx);

    let mut rows: Vec<ResultRow> = Vec::new();
    let mut partial_failure = false;
    for (idx, outcome, secs) in collected {
        match outcome {
            Ok(mut rs) => {
                if config.record_timings {
                    let share = secs / rs.len().max(1) as f64;
                    for r in &mut rs {
                        r.seconds = share;
                    }
                }
                rows.extend(rs);
            }
            Err(err) => {
                partial_failure = true;
                let job = &jobs[idx];
                rows.push(ResultRow {
                    theorem: job.check.tag.clone(),
                    params: String::new(),
                    function: job
                        .entry
                        .as_ref()
                        .map(|e| e.name.clone())
                        .unwrap_or_else(|| "-".to_string()),
                    n: *job.grids.last().unwrap_or(&0),
                    lhs: 0.0,
                    rhs: 0.0,
                    margin: 0.0,
                    verdict: "error".to_string(),
                    seconds: 0.0,
                    kind: RowKind::Error,
                    study: None,
                    error: Some(format!("{err:#}")),
                });
            }
        }
    }
    rows.sort_by_key(|r| r.sort_key());

    write_outputs(config, out_dir, &rows)?;

    let mut counts = Counts::default();
    for r in &rows {
        match r.verdict.as_str() {
            "pass" => counts.pass += 1,
            "fail" => counts.fail += 1,
            "bounded" => counts.bounded += 1,
            "diverging" => counts.diverging += 1,
            _ => counts.error += 1,
        }
    }

    let manifest = RunManifest {
        config_hash: config.digest(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        started_at: started_at.to_rfc3339(),
        finished_at: (started_at + chrono::Duration::from_std(started.elapsed()).unwrap())
            .to_rfc3339(),
        counts,
        skipped,
        partial_failure,
    };
    let mf = serde_json::to_string_pretty(&manifest)?;
    fs::write(out_dir.join("manifest.json"), mf)?;
    Ok(manifest)
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '=' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn write_outputs(config: &RunConfig, out_dir: &Path, rows: &[ResultRow]) -> anyhow::Result<()> {
    let mut csv = String::with_capacity(rows.len() * 96 + 64);
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    for r in rows {
        csv.push_str(&r.csv_line());
        csv.push('\n');
    }
    fs::write(out_dir.join("results.csv"), csv)?;

    let json = serde_json::json!({
        "config_hash": config.digest(),
        "rows": rows,
    });
    fs::write(
        out_dir.join("results.json"),
        serde_json::to_string_pretty(&json)?,
    )?;

    let plot_dir = out_dir.join("plots");
    fs::create_dir_all(&plot_dir)?;
    for r in rows {
        if let Some(study) = &r.study {
            let name = format!(
                "{}__{}__{}.dat",
                slug(&r.theorem),
                slug(&r.params),
                slug(&r.function)
            );
            let mut data = String::new();
            for (n, v) in study.grids.iter().zip(&study.values) {
                data.push_str(&format!("{n} {v:.12e}\n"));
            }
            fs::write(plot_dir.join(name), data)?;
        }
    }
    Ok(())
}

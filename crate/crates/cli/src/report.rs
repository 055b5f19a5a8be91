//! Human-readable summary of a finished run directory.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Deserialize;

use crate::runner::{Counts, ResultRow, RowKind};

#[derive(Deserialize)]
struct ResultsFile {
    rows: Vec<ResultRow>,
}

// ResultRow is Serialize in runner; mirror a Deserialize here to read back.
impl<'de> Deserialize<'de> for ResultRow {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            theorem: String,
            params: String,
            function: String,
            n: usize,
            lhs: f64,
            rhs: f64,
            margin: f64,
            verdict: String,
            seconds: f64,
            kind: RawKind,
            #[serde(default)]
            study: Option<RawStudy>,
            #[serde(default)]
            error: Option<String>,
        }
        #[derive(Deserialize)]
        #[serde(rename_all = "kebab-case")]
        enum RawKind {
            Inequality,
            Stability,
            Sharpness,
            Identity,
            Error,
        }
        #[derive(Deserialize)]
        struct RawStudy {
            grids: Vec<usize>,
            values: Vec<f64>,
            fitted_exponent: f64,
            growth_per_halving: f64,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(ResultRow {
            theorem: raw.theorem,
            params: raw.params,
            function: raw.function,
            n: raw.n,
            lhs: raw.lhs,
            rhs: raw.rhs,
            margin: raw.margin,
            verdict: raw.verdict,
            seconds: raw.seconds,
            kind: match raw.kind {
                RawKind::Inequality => RowKind::Inequality,
                RawKind::Stability => RowKind::Stability,
                RawKind::Sharpness => RowKind::Sharpness,
                RawKind::Identity => RowKind::Identity,
                RawKind::Error => RowKind::Error,
            },
            study: raw.study.map(|s| crate::runner::StudyData {
                grids: s.grids,
                values: s.values,
                fitted_exponent: s.fitted_exponent,
                growth_per_halving: s.growth_per_halving,
            }),
            error: raw.error,
        })
    }
}

#[derive(Deserialize)]
struct ManifestFile {
    config_hash: String,
    tool_version: String,
    #[allow(dead_code)]
    started_at: String,
    #[allow(dead_code)]
    finished_at: String,
    #[serde(deserialize_with = "counts_from_json")]
    counts: Counts,
    skipped: usize,
    partial_failure: bool,
}

fn counts_from_json<'de, D>(d: D) -> Result<Counts, D::Error>
where
    D: serde::Deserializer<'de>,
{
    #[derive(Deserialize)]
    struct C {
        pass: usize,
        fail: usize,
        bounded: usize,
        diverging: usize,
        error: usize,
    }
    let c = C::deserialize(d)?;
    Ok(Counts {
        pass: c.pass,
        fail: c.fail,
        bounded: c.bounded,
        diverging: c.diverging,
        error: c.error,
    })
}

/// Builds the per-theorem table and the process exit code: 0 iff every
/// inequality and identity passed, every stability study came out bounded
/// and every sharpness study diverged.
pub fn report(out_dir: &Path) -> anyhow::Result<(String, i32)> {
    let manifest_path = out_dir.join("manifest.json");
    if !manifest_path.exists() {
        bail!("missing manifest: {} has no manifest.json", out_dir.display());
    }
    let manifest: ManifestFile = serde_json::from_str(
        &std::fs::read_to_string(&manifest_path).context("cannot read manifest.json")?,
    )
    .context("cannot parse manifest.json")?;
    let results: ResultsFile = serde_json::from_str(
        &std::fs::read_to_string(out_dir.join("results.json"))
            .context("cannot read results.json")?,
    )
    .context("cannot parse results.json")?;

    let mut per_theorem: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut bad_rows: Vec<&ResultRow> = Vec::new();
    for row in &results.rows {
        let slot = per_theorem.entry(row.theorem.clone()).or_insert((0, 0));
        if row.good() {
            slot.0 += 1;
        } else {
            slot.1 += 1;
            bad_rows.push(row);
        }
    }

    let mut text = String::new();
    text.push_str(&format!(
        "run {} (tool {})\n",
        &manifest.config_hash[..16.min(manifest.config_hash.len())],
        manifest.tool_version
    ));
    text.push_str(&format!(
        "rows: {} ok={} fail={} skipped-combinations={}\n\n",
        manifest.counts.total(),
        results.rows.iter().filter(|r| r.good()).count(),
        bad_rows.len(),
        manifest.skipped
    ));
    text.push_str(&format!("{:<28} {:>6} {:>6}\n", "theorem", "ok", "bad"));
    for (tag, (ok, bad)) in &per_theorem {
        text.push_str(&format!("{tag:<28} {ok:>6} {bad:>6}\n"));
    }

    let divergences: Vec<&ResultRow> = results
        .rows
        .iter()
        .filter(|r| r.kind == RowKind::Sharpness)
        .collect();
    if !divergences.is_empty() {
        text.push_str("\nsharpness studies (fitted exponent, growth/halving):\n");
        for r in divergences {
            if let Some(s) = &r.study {
                text.push_str(&format!(
                    "  {} [{}] {}: slope {:+.4}, growth {:.4} -> {}\n",
                    r.theorem, r.params, r.function, s.fitted_exponent, s.growth_per_halving, r.verdict
                ));
            }
        }
    }
    if !bad_rows.is_empty() {
        text.push_str("\nfailing rows:\n");
        for r in &bad_rows {
            text.push_str(&format!(
                "  {} [{}] {} n={}: verdict {}{}\n",
                r.theorem,
                r.params,
                r.function,
                r.n,
                r.verdict,
                r.error
                    .as_ref()
                    .map(|e| format!(" ({e})"))
                    .unwrap_or_default()
            ));
        }
    }
    if manifest.partial_failure {
        text.push_str("\npartial failure: some checks errored; see rows above\n");
    }

    let exit = if bad_rows.is_empty() && !manifest.partial_failure {
        0
    } else {
        1
    };
    Ok((text, exit))
}

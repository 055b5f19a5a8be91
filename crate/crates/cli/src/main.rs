//! fracbound: fractional-integral workbench CLI.
//!
//! Subcommands: `apply` (compute J^a / D^a of a test function and emit the
//! samples), `norm` (one norm report), `verify` (run one theorem check over
//! the default corpus), `suite` (the full built-in verification run) and
//! `report` (summarize a finished output directory).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use fracbound_cli::{config, report, runner};
use fracbound_core::space_norms::{self, WrlConvention};
use fracbound_core::{rl_derivative, rl_integral, AnalyticSpec, QuadratureScheme};

#[derive(Parser)]
#[command(name = "fracbound", version, about = "Riemann-Liouville fractional integral workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply the fractional integral or derivative to a function spec and
    /// emit the samples as CSV (t, components...).
    Apply {
        /// Path to a function spec in canonical JSON encoding.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// integral | derivative
        #[arg(long, default_value = "integral")]
        op: String,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value = "fft")]
        scheme: QuadratureScheme,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one norm of a function spec and print the report row.
    Norm {
        /// Path to a function spec in canonical JSON encoding.
        #[arg(long)]
        config: PathBuf,
        /// lp | weak-lp | holder | sobolev | bmo | kr | wrl | bk | sup
        #[arg(long)]
        space: String,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        /// Derivative order for holder/sobolev/bk.
        #[arg(long)]
        level: Option<usize>,
        /// Bracket reading for wrl at integer orders: ceil-strict | integer-sum.
        #[arg(long, default_value = "ceil-strict")]
        wrl_convention: String,
        #[arg(long, default_value_t = 1024)]
        n: usize,
    },
    /// Run one theorem check over the default corpus.
    Verify {
        /// Theorem tag, e.g. supercritical-continuity or semigroup.
        #[arg(long)]
        check: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        level: Option<usize>,
        /// Single grid for inequality checks (studies use the built-in ladder).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "fft")]
        scheme: QuadratureScheme,
        /// Output directory (temporary when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full built-in verification suite.
    Suite {
        #[arg(long, default_value = "fracbound-out")]
        out: PathBuf,
        #[arg(long)]
        scheme: Option<QuadratureScheme>,
        /// Run a custom configuration instead of the built-in suite.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Record wall-clock seconds per row (breaks byte-determinism).
        #[arg(long)]
        timings: bool,
    },
    /// Summarize a finished run directory; exit 0 iff everything conforms.
    Report {
        #[arg(long, default_value = "fracbound-out")]
        out: PathBuf,
    },
}

fn load_spec(path: &Path) -> anyhow::Result<AnalyticSpec> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read spec {}", path.display()))?;
    let spec: AnalyticSpec = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse spec {}", path.display()))?;
    spec.validate()?;
    Ok(spec)
}

fn cmd_apply(
    config: &Path,
    alpha: f64,
    op: &str,
    n: usize,
    scheme: QuadratureScheme,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let spec = load_spec(config)?;
    let f = spec.sample(n)?;
    let g = match op {
        "integral" => rl_integral(&f, alpha, scheme)?,
        "derivative" => rl_derivative(&f, alpha)?,
        other => bail!("unknown op `{other}` (expected integral|derivative)"),
    };
    let mut text = String::with_capacity((n + 1) * 24);
    for i in 0..=g.n() {
        text.push_str(&format!("{:.12e}", g.node_time(i)));
        for v in g.value(i) {
            text.push_str(&format!(",{v:.12e}"));
        }
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_norm(
    config: &Path,
    space: &str,
    p: Option<f64>,
    alpha: Option<f64>,
    gamma: Option<f64>,
    level: Option<usize>,
    wrl_convention: &str,
    n: usize,
) -> anyhow::Result<()> {
    let convention = match wrl_convention {
        "ceil-strict" => WrlConvention::CeilStrict,
        "integer-sum" => WrlConvention::IntegerSum,
        other => bail!("unknown wrl convention `{other}`"),
    };
    if let Some(p) = p {
        if !(p >= 1.0) {
            bail!("--p must lie in [1, inf), got {p}");
        }
    }
    if let Some(g) = gamma {
        if matches!(space, "kr" | "bk") && !(g > 0.0) {
            bail!("--gamma must be positive, got {g}");
        }
    }
    let spec = load_spec(config)?;
    let f = spec.sample(n)?;
    let report = match space {
        "lp" => space_norms::lp_norm(&f, p.context("--p required for lp")?),
        "sup" => space_norms::lp_norm(&f, f64::INFINITY),
        "weak-lp" => space_norms::weak_lp_seminorm(&f, p.context("--p required for weak-lp")?)?,
        "holder" => space_norms::holder_seminorm(
            &f,
            level.unwrap_or(0),
            gamma.context("--gamma required for holder")?,
        )?,
        "sobolev" => space_norms::sobolev_norm(
            &f,
            level.unwrap_or(0),
            p.context("--p required for sobolev")?,
        )?,
        "bmo" => space_norms::bmo_seminorm(&f),
        "kr" => space_norms::kr_norm(&f, gamma.context("--gamma required for kr")?),
        "wrl" => space_norms::wrl_norm(&f, alpha.context("--alpha required for wrl")?, convention)?,
        "bk" => space_norms::bk_norm(
            &f,
            level.unwrap_or(1),
            p.context("--p required for bk")?,
            gamma.context("--gamma required for bk")?,
        )?,
        other => bail!("unknown space `{other}`"),
    };
    println!("{}", fracbound_core::space_norms::NormReport::CSV_HEADER);
    println!("{}", report.csv_row());
    Ok(())
}

fn cmd_verify(spec: config::CheckSpec, scheme: QuadratureScheme, out: Option<&Path>) -> anyhow::Result<i32> {
    let mut cfg = config::suite_config();
    cfg.scheme = scheme;
    cfg.checks = vec![spec];
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => std::env::temp_dir().join(format!("fracbound-verify-{}", std::process::id())),
    };
    runner::run(&cfg, &dir)?;
    let (text, code) = report::report(&dir)?;
    print!("{text}");
    if out.is_none() {
        let _ = std::fs::remove_dir_all(&dir);
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: anyhow::Result<i32> = (|| match cli.cmd {
        Cmd::Apply {
            config,
            alpha,
            op,
            n,
            scheme,
            out,
        } => {
            cmd_apply(&config, alpha, &op, n, scheme, out.as_deref())?;
            Ok(0)
        }
        Cmd::Norm {
            config,
            space,
            p,
            alpha,
            gamma,
            level,
            wrl_convention,
            n,
        } => {
            cmd_norm(&config, &space, p, alpha, gamma, level, &wrl_convention, n)?;
            Ok(0)
        }
        Cmd::Verify {
            check,
            alpha,
            beta,
            p,
            q,
            r,
            gamma,
            level,
            n,
            scheme,
            out,
        } => {
            let mut cs = config::CheckSpec::new(&check);
            cs.alpha = alpha;
            cs.beta = beta;
            cs.p = p;
            cs.q = q;
            cs.r = r;
            cs.gamma = gamma;
            cs.level = level;
            if let Some(n) = n {
                cs.grids = Some(vec![n]);
            }
            cmd_verify(cs, scheme, out.as_deref())
        }
        Cmd::Suite {
            out,
            scheme,
            config: config_path,
            timings,
        } => {
            let mut cfg = match config_path {
                Some(p) => config::load_config(&p)?,
                None => config::suite_config(),
            };
            if let Some(s) = scheme {
                cfg.scheme = s;
            }
            cfg.record_timings = timings;
            let manifest = runner::run(&cfg, &out)?;
            println!(
                "suite done: {} rows ({} pass, {} fail, {} bounded, {} diverging, {} error), {} skipped",
                manifest.counts.total(),
                manifest.counts.pass,
                manifest.counts.fail,
                manifest.counts.bounded,
                manifest.counts.diverging,
                manifest.counts.error,
                manifest.skipped
            );
            println!("results in {}", out.display());
            Ok(0)
        }
        Cmd::Report { out } => {
            let (text, code) = report::report(&out)?;
            print!("{text}");
            Ok(code)
        }
    })();

    match outcome {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

//! The `ldpc` command line.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ldpc_core::builder::{progressive_construct, verify_condition, BuildError, BuildOutcome};
use ldpc_core::graph::TannerGraph;
use serde_json::json;

use crate::config::{AnalyzeConfig, ConstructConfig, FieldConfig, PatternsConfig, RunConfig};
use crate::manifest::Manifest;
use crate::sim::{self, SimOptions};
use crate::{alist, analyze, buildlog, catalog, seeds, wcsv};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ldpc", version, about = "Construct, analyse and simulate column-weight-3 LDPC codes")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Run seed; overrides the configuration.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true, value_name = "N", env = "LDPC_WORKERS")]
    pub workers: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build W and H under a trapping-set condition.
    Construct {
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        gamma: Option<usize>,
        /// Graded condition 1 (strongest) to 4.
        #[arg(long)]
        tau: Option<u8>,
        #[arg(long)]
        target_rho: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Report girth, cycles, rank and trapping sets of an alist code.
    Analyze { alist: Option<PathBuf> },
    /// Monte Carlo FER/BER of an alist code.
    Simulate { alist: Option<PathBuf> },
    /// Write the catalog of (a, b) patterns with the given girth.
    Patterns {
        a: Option<usize>,
        b: Option<usize>,
        #[arg(long)]
        girth: Option<u32>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Infeasible(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Infeasible(m) | CliError::Io(m) => m,
        }
    }
}

struct Ctx {
    seed: u64,
    workers: Option<usize>,
    out: PathBuf,
}

impl Ctx {
    fn write(&self, manifest: &mut Manifest, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        std::fs::create_dir_all(&self.out).map_err(|e| CliError::Io(format!("{}: {e}", self.out.display())))?;
        let path = self.out.join(name);
        std::fs::write(&path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        manifest.output(name, bytes);
        Ok(())
    }

    fn finish(&self, manifest: &Manifest) -> Result<(), CliError> {
        std::fs::create_dir_all(&self.out).map_err(|e| CliError::Io(format!("{}: {e}", self.out.display())))?;
        let path = self.out.join("manifest.json");
        std::fs::write(&path, manifest.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p).map_err(|e| match e {
            crate::config::ConfigError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Config(e.to_string()),
        })?,
        None => RunConfig::default(),
    };
    let ctx = Ctx {
        seed: cli.seed.or(cfg.seed).unwrap_or(0),
        workers: cli.workers.or(cfg.workers),
        out: cli.out.clone().or(cfg.out.clone()).unwrap_or_else(|| PathBuf::from("ldpc-out")),
    };
    if ctx.workers == Some(0) {
        return Err(CliError::Config("workers must be at least 1".into()));
    }
    match cli.command {
        Command::Construct { p, m, gamma, tau, target_rho, restarts } => {
            let field = match (p, &cfg.field) {
                (Some(p), _) => FieldConfig { p, m: m.unwrap_or(1), modulus: None },
                (None, Some(f)) => FieldConfig { m: m.unwrap_or(f.m), ..f.clone() },
                (None, None) => return Err(CliError::Config("construct needs a field: --p or a [field] section".into())),
            };
            let mut c = cfg.construct.clone().unwrap_or(ConstructConfig {
                gamma: 3,
                target_rho: None,
                order: Default::default(),
                max_retries_per_block: None,
                max_backtracks: None,
                restarts: 1,
                fix_first_row_zero: true,
                tau: None,
                condition: None,
            });
            if let Some(t) = tau {
                c.tau = Some(t);
                c.condition = None;
            }
            c.gamma = gamma.unwrap_or(c.gamma);
            c.target_rho = target_rho.or(c.target_rho);
            c.restarts = restarts.unwrap_or(c.restarts);
            construct(&ctx, &field, &c)
        }
        Command::Analyze { alist } => {
            let a = cfg.analyze.clone().unwrap_or_default();
            let path = alist.or(a.code.clone()).ok_or(CliError::Config("analyze needs an alist path".into()))?;
            analyze_cmd(&ctx, &path, &a)
        }
        Command::Simulate { alist } => {
            let s = cfg.simulate.clone().ok_or(CliError::Config("simulate needs a [simulate] section".into()))?;
            let path = alist.or(s.code.clone()).ok_or(CliError::Config("simulate needs an alist path".into()))?;
            simulate(&ctx, &path, &s)
        }
        Command::Patterns { a, b, girth } => {
            let base = cfg.patterns.clone();
            let pc = PatternsConfig {
                a: a.or(base.as_ref().map(|p| p.a)).ok_or(CliError::Config("patterns needs `a`".into()))?,
                b: b.or(base.as_ref().map(|p| p.b)).ok_or(CliError::Config("patterns needs `b`".into()))?,
                girth: girth.or(base.as_ref().map(|p| p.girth)).unwrap_or(6),
            };
            patterns(&ctx, &pc)
        }
    }
}

fn read_code(path: &Path) -> Result<(ldpc_core::codebuilder::ParityCheck, Vec<u8>), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8_lossy(&bytes);
    let h = alist::parse(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok((h, bytes))
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn construct(ctx: &Ctx, fc: &FieldConfig, c: &ConstructConfig) -> Result<(), CliError> {
    let field = fc.build().map_err(|e| CliError::Config(format!("field: {e}")))?;
    let tau = c.condition().map_err(|e| CliError::Config(e.to_string()))?;
    if c.restarts == 0 {
        return Err(CliError::Config("construct: restarts must be at least 1".into()));
    }
    let mut best: Option<(usize, BuildOutcome)> = None;
    let mut logs = Vec::new();
    let mut last_err = None;
    for r in 0..c.restarts {
        let policy = c.policy(seeds::derive(ctx.seed, &format!("construct/{r}")));
        match progressive_construct(&field, c.gamma, &tau, &policy) {
            Ok(out) => {
                logs.push(out.log.clone());
                let done = c.target_rho.is_some_and(|t| out.reached(t));
                if best.as_ref().is_none_or(|(_, b)| out.rho > b.rho) {
                    best = Some((r, out));
                }
                if done {
                    break;
                }
            }
            Err(BuildError::Infeasible { rho, gamma }) => {
                logs.push(Vec::new());
                last_err = Some(format!("condition admits only {rho} columns, fewer than gamma = {gamma}"));
            }
            Err(e) => return Err(CliError::Config(format!("construct: {e}"))),
        }
    }
    let config = json!({ "field": fc, "construct": c });
    let mut manifest = Manifest::new("construct", ctx.seed, config);
    let log_text = buildlog::to_jsonl(&logs);
    let Some((restart, out)) = best else {
        ctx.write(&mut manifest, "build.jsonl", log_text.as_bytes())?;
        manifest.summary = json!({ "feasible": false });
        ctx.finish(&manifest)?;
        return Err(CliError::Infeasible(format!("construct: {}", last_err.unwrap_or_default())));
    };
    let h = out.w.expand(&field).map_err(|e| CliError::Config(e.to_string()))?;
    let audit = verify_condition(&TannerGraph::from_parity(&h), &tau);
    let w_bytes = wcsv::to_bytes(&out.w, &field).map_err(|e| CliError::Io(e.to_string()))?;
    ctx.write(&mut manifest, "W.csv", &w_bytes)?;
    ctx.write(&mut manifest, "H.alist", alist::to_string(&h).as_bytes())?;
    ctx.write(&mut manifest, "build.jsonl", log_text.as_bytes())?;
    let rank = h.gf2_rank();
    manifest.summary = json!({
        "restart": restart,
        "rho": out.rho,
        "n": h.cols(),
        "m": h.rows(),
        "rank": rank,
        "dimension": h.cols() - rank,
        "audit_passed": audit.is_satisfied(),
    });
    ctx.finish(&manifest)?;
    println!("rho {}  n {}  m {}  dimension {}  (restart {restart})", out.rho, h.cols(), h.rows(), h.cols() - rank);
    if !audit.is_satisfied() {
        return Err(CliError::Infeasible(format!("construct: audit found violations: {:?}", audit.violations)));
    }
    if let Some(t) = c.target_rho.filter(|&t| out.rho < t) {
        let mut counts = std::collections::BTreeMap::new();
        for e in logs.iter().flatten() {
            if let Some(r) = &e.rejected {
                *counts.entry(r.label()).or_insert(0usize) += 1;
            }
        }
        return Err(CliError::Infeasible(format!(
            "construct: target rho {t} not reached after {} restart(s); best rho {}; rejections {counts:?}",
            logs.len(),
            out.rho
        )));
    }
    Ok(())
}

fn analyze_cmd(ctx: &Ctx, path: &Path, a: &AnalyzeConfig) -> Result<(), CliError> {
    let (h, bytes) = read_code(path)?;
    let report = analyze::analyze(&h, a).map_err(|e| CliError::Config(format!("analyze: {e}")))?;
    let text = report.to_text();
    print!("{text}");
    let mut manifest = Manifest::new("analyze", ctx.seed, json!({ "analyze": a }));
    manifest.input(&file_name(path), &bytes);
    ctx.write(&mut manifest, "report.txt", text.as_bytes())?;
    let mut js = serde_json::to_string_pretty(&report).unwrap();
    js.push('\n');
    ctx.write(&mut manifest, "report.json", js.as_bytes())?;
    ctx.finish(&manifest)
}

fn simulate(ctx: &Ctx, path: &Path, s: &crate::config::SimulateConfig) -> Result<(), CliError> {
    let (h, bytes) = read_code(path)?;
    let rate = s.rate.unwrap_or_else(|| (h.cols() - h.gf2_rank()) as f64 / h.cols() as f64);
    let cfg = s.decoder();
    cfg.validate(h.columns().iter().map(Vec::len).max().unwrap_or(0))
        .map_err(|e| CliError::Config(format!("simulate: {e}")))?;
    let points = s.points(rate);
    let seed = seeds::derive(ctx.seed, "simulate");
    let opts = SimOptions { workers: ctx.workers, ..SimOptions::default() };
    let results = sim::run_montecarlo(&h, &cfg, &points, s.stop(), seed, opts)
        .map_err(|e| CliError::Config(format!("simulate: {e}")))?;
    let csv = sim::to_csv(&results);
    let mut manifest = Manifest::new("simulate", ctx.seed, json!({ "simulate": s, "rate": rate }));
    manifest.input(&file_name(path), &bytes);
    ctx.write(&mut manifest, "sim.csv", &csv)?;
    if s.gnuplot {
        ctx.write(&mut manifest, "sim.dat", sim::to_gnuplot(&results).as_bytes())?;
    }
    ctx.finish(&manifest)?;
    print!("{}", String::from_utf8_lossy(&csv));
    for r in &results {
        eprintln!("{} {}: {:.2?}", r.point.kind(), r.point.parameter(), r.wall_time);
    }
    Ok(())
}

fn patterns(ctx: &Ctx, pc: &PatternsConfig) -> Result<(), CliError> {
    let (pats, text) = catalog::generate(pc.a, pc.b, pc.girth);
    let name = format!("patterns-{}-{}-{}.txt", pc.a, pc.b, pc.girth);
    let mut manifest = Manifest::new("patterns", ctx.seed, json!({ "patterns": pc }));
    ctx.write(&mut manifest, &name, text.as_bytes())?;
    manifest.summary = json!({ "count": pats.len() });
    ctx.finish(&manifest)?;
    println!("{} pattern(s) written to {}", pats.len(), ctx.out.join(&name).display());
    Ok(())
}

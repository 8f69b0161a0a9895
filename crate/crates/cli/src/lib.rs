//! The `semireg` command line: field, geometry and group inspection, the
//! verification suites, and report rendering.

pub mod config;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use semireg_core::arith::prime_power;
use semireg_core::ffield::FieldSpec;
use semireg_core::groups::{build_group, Family, GroupError};
use semireg_core::projgeom::{
    hermitian_unital, pg1_domain, polar_conjugate_pairs, ree_ovoid, secant_histogram, suzuki_ovoid,
};
use semireg_core::verify::{
    check_supported, desk_matrix, run_prop, verify_vigh_claim, PropId, PropositionReport,
    RunOptions, VerifyError, DEFAULT_REE_BUDGET,
};
use serde_json::{json, Value};
use thiserror::Error;

use config::{resolve, FileConfig, FlagValues, Settings};
use render::{render_json, render_report, render_report_text, render_value_text, report_value, Format};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Verify(VerifyError::WrongFamily { .. } | VerifyError::UnsupportedN { .. }) => {
                EXIT_USAGE
            }
            CliError::Group(GroupError::NotPrimePower(_) | GroupError::Unsupported { .. }) => {
                EXIT_USAGE
            }
            _ => EXIT_FAIL,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "semireg", version, about = "Semi-regular subgroups of 2-transitive projective groups")]
pub struct Cli {
    /// TOML file with default values for the global options
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Report directory (overrides SEMIREG_OUT)
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Base seed; each check derives its own from it
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random elements for sampled checks
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Output format on stdout
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Add wall-clock times to reports (makes them non-reproducible)
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryKind {
    Line,
    Unital,
    Suzuki,
    Ree,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe GF(q)
    Field {
        #[arg(long)]
        order: u64,
    },
    /// Build a point set and check its defining incidence properties
    Geometry {
        #[arg(long, value_enum)]
        kind: GeometryKind,
        #[arg(long)]
        n: u64,
    },
    /// Build a group and report its stabilizer chain
    Group {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u64,
    },
    /// Run checkers and write one report per (check, family, n)
    Verify {
        /// Omit to run every family of the default matrix
        #[arg(long)]
        family: Option<Family>,
        /// Omit to run every supported n
        #[arg(long)]
        n: Option<u64>,
        /// Comma-separated check ids, or "all"
        #[arg(long)]
        props: Option<String>,
    },
    /// Check the divisibility claim with exact integers
    Claim {
        #[arg(long, default_value_t = 4)]
        u_max: u64,
        #[arg(long, default_value_t = 12)]
        v_max: u64,
    },
    /// Summarize the reports in a directory
    Report {
        /// Defaults to the output directory
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Parses `args` and runs the command. `env_out` is the value of `SEMIREG_OUT`.
pub fn run<I, T>(args: I, env_out: Option<PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match execute(cli, env_out, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn settings(cli: &Cli, env_out: Option<PathBuf>) -> Result<Settings, CliError> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let props = match &cli.command {
        Command::Verify { props, .. } => props.clone(),
        _ => None,
    };
    let flags = FlagValues {
        seed: cli.seed,
        budget: cli.budget,
        out: cli.out.clone(),
        format: cli.format,
        jobs: cli.jobs,
        timings: cli.timings,
        props,
    };
    Ok(resolve(flags, env_out, file, DEFAULT_REE_BUDGET))
}

fn emit(stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), CliError> {
    stdout.write_all(bytes).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn show(stdout: &mut dyn Write, format: Format, v: &Value) -> Result<(), CliError> {
    let v = render::canonicalize(v.clone());
    match format {
        Format::Json => emit(stdout, &render_json(&v)),
        Format::Text => emit(stdout, render_value_text(&v).as_bytes()),
    }
}

fn execute(cli: Cli, env_out: Option<PathBuf>, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let s = settings(&cli, env_out)?;
    match cli.command {
        Command::Field { order } => {
            show(stdout, s.format, &field_info(order)?)?;
            Ok(EXIT_PASS)
        }
        Command::Geometry { kind, n } => {
            let (v, ok) = geometry_info(kind, n, s.seed)?;
            show(stdout, s.format, &v)?;
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Group { family, n } => {
            show(stdout, s.format, &group_info(family, n)?)?;
            Ok(EXIT_PASS)
        }
        Command::Verify { family, n, .. } => {
            let jobs = plan_jobs(family, n, s.props.as_deref())?;
            let reports = run_jobs(&jobs, &s)?;
            finish_reports(&reports, &s, stdout)
        }
        Command::Claim { u_max, v_max } => {
            let report = verify_vigh_claim(u_max, v_max);
            finish_reports(&[report], &s, stdout)
        }
        Command::Report { dir } => summarize_dir(dir.as_deref().unwrap_or(&s.out_dir), s.format, stdout),
    }
}

fn parse_props(spec: Option<&str>) -> Result<Option<Vec<PropId>>, CliError> {
    match spec {
        None | Some("all") => Ok(None),
        Some(list) => list
            .split(',')
            .map(|p| {
                p.trim().parse::<PropId>().map_err(|e| {
                    let known: Vec<&str> = PropId::ALL.iter().map(|p| p.id()).collect();
                    CliError::Usage(format!("{e}; known checks: {}", known.join(", ")))
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
    }
}

/// The (check, family, n) jobs for a `verify` invocation, in a fixed order.
pub fn plan_jobs(
    family: Option<Family>,
    n: Option<u64>,
    props: Option<&str>,
) -> Result<Vec<(PropId, Family, u64)>, CliError> {
    let wanted = parse_props(props)?;
    if let Some(n) = n {
        if prime_power(n).is_none() {
            return Err(CliError::Usage(format!("{n} is not a prime power")));
        }
    }
    let cells: Vec<(Family, u64)> = match (family, n) {
        (None, Some(_)) => return Err(CliError::Usage("--n requires --family".into())),
        (None, None) => desk_matrix(),
        (Some(f), None) => desk_matrix().into_iter().filter(|&(g, _)| g == f).collect(),
        (Some(f), Some(n)) => {
            let supported: Vec<u64> = desk_matrix()
                .into_iter()
                .filter(|&(g, _)| g == f)
                .map(|(_, m)| m)
                .collect();
            if !supported.contains(&n) {
                return Err(CliError::Usage(format!(
                    "{f} is checked for n in {supported:?}, got {n}"
                )));
            }
            vec![(f, n)]
        }
    };
    let mut jobs = Vec::new();
    for (f, m) in cells {
        match &wanted {
            None => jobs.extend(PropId::applicable(f, m).into_iter().map(|p| (p, f, m))),
            Some(list) => {
                for &p in list {
                    if family.is_some() {
                        check_supported(p, f, m)?;
                        jobs.push((p, f, m));
                    } else if check_supported(p, f, m).is_ok() {
                        jobs.push((p, f, m));
                    }
                }
            }
        }
    }
    if jobs.is_empty() {
        return Err(CliError::Usage("no check applies to the requested groups".into()));
    }
    Ok(jobs)
}

fn run_jobs(jobs: &[(PropId, Family, u64)], s: &Settings) -> Result<Vec<PropositionReport>, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = s.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let opts = RunOptions {
        seed: s.seed,
        budget: s.budget,
    };
    let results: Vec<Result<PropositionReport, VerifyError>> =
        pool.install(|| jobs.par_iter().map(|&(p, f, n)| run_prop(p, f, n, &opts)).collect());
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

fn finish_reports(reports: &[PropositionReport], s: &Settings, stdout: &mut dyn Write) -> Result<i32, CliError> {
    std::fs::create_dir_all(&s.out_dir).map_err(|source| CliError::Io {
        path: s.out_dir.clone(),
        source,
    })?;
    let mut all_pass = true;
    for r in reports {
        let path = s.out_dir.join(format!("{}.json", r.file_stem()));
        let bytes = render_report(r, Format::Json, s.timings);
        std::fs::write(&path, bytes).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        all_pass &= r.passed();
        match s.format {
            Format::Text => {
                let line = format!(
                    "{:<4} {:<22} {:<6} {:>3}  {}\n",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.prop_id(),
                    r.family().map(|f| f.id()).unwrap_or("-"),
                    r.n().map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                    path.display()
                );
                emit(stdout, line.as_bytes())?;
            }
            Format::Json => {
                let mut line = serde_json::to_vec(&report_value(r, s.timings)).expect("values serialize");
                line.push(b'\n');
                emit(stdout, &line)?;
            }
        }
    }
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}

fn summarize_dir(dir: &Path, format: Format, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Usage(format!("{} is not a directory", dir.display())));
    }
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Usage(format!("no reports in {}", dir.display())));
    }
    let mut all_pass = true;
    for p in &files {
        let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.clone(),
            source,
        })?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: not a report: {e}", p.display())))?;
        all_pass &= v.get("status").and_then(Value::as_str) == Some("pass");
        match format {
            Format::Text => emit(stdout, render_report_text(&v).as_bytes())?,
            Format::Json => emit(stdout, &render_json(&v))?,
        }
    }
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}

fn field_info(order: u64) -> Result<Value, CliError> {
    if prime_power(order).is_none() {
        return Err(CliError::Usage(format!("{order} is not a prime power")));
    }
    let f = FieldSpec::of_order(order).map_err(|e| CliError::Usage(e.to_string()))?;
    let g = f.primitive();
    Ok(json!({
        "order": f.order(),
        "characteristic": f.characteristic(),
        "degree": f.degree(),
        "modulus": f.modulus(),
        "primitive": g.value(),
        "primitive_order": f.multiplicative_order(g).map_err(|e| CliError::Usage(e.to_string()))?,
    }))
}

/// Geometry summary and whether the defining properties hold.
fn geometry_info(kind: GeometryKind, n: u64, seed: u64) -> Result<(Value, bool), CliError> {
    let usage = |e: &dyn std::fmt::Display| CliError::Usage(e.to_string());
    if prime_power(n).is_none() {
        return Err(CliError::Usage(format!("{n} is not a prime power")));
    }
    match kind {
        GeometryKind::Line => {
            let f = Arc::new(FieldSpec::of_order(n).map_err(|e| usage(&e))?);
            let om = pg1_domain(f);
            Ok((json!({"kind": "line", "n": n, "points": om.len()}), om.len() as u64 == n + 1))
        }
        GeometryKind::Unital => {
            let ext = Arc::new(FieldSpec::of_order(n * n).map_err(|e| usage(&e))?);
            let om = hermitian_unital(ext, n).map_err(|e| usage(&e))?;
            let hist = secant_histogram(&om).map_err(|e| usage(&e))?;
            let support: Vec<usize> = hist.keys().copied().filter(|&k| k > 0).collect();
            let tangents = hist.get(&1).copied().unwrap_or(0);
            let ok = om.len() as u64 == n * n * n + 1
                && support == vec![1, n as usize + 1]
                && tangents == om.len() as u64;
            let hist: std::collections::BTreeMap<String, u64> =
                hist.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            Ok((
                json!({"kind": "unital", "n": n, "points": om.len(), "line_intersections": hist,
                       "intersection_support": support, "tangent_lines": tangents, "valid": ok}),
                ok,
            ))
        }
        GeometryKind::Suzuki => {
            let f = Arc::new(FieldSpec::of_order(n).map_err(|e| usage(&e))?);
            let ov = suzuki_ovoid(f).map_err(|e| usage(&e))?;
            let rejected: Vec<Value> = ov
                .rejected
                .iter()
                .map(|(r, c)| json!({"reading": r.formula(), "max_collinear": c.max_collinear}))
                .collect();
            let ok = ov.check.passes();
            Ok((
                json!({"kind": "suzuki", "n": n, "points": ov.omega.len(), "reading": ov.reading.formula(),
                       "check": ov.check, "rejected_readings": rejected, "valid": ok}),
                ok,
            ))
        }
        GeometryKind::Ree => {
            let f = Arc::new(FieldSpec::of_order(n).map_err(|e| usage(&e))?);
            let om = ree_ovoid(f).map_err(|e| usage(&e))?;
            let (pairs, conjugate) = if om.len() <= 2000 {
                polar_conjugate_pairs(&om)
            } else {
                sampled_conjugate_pairs(&om, seed)
            };
            let ok = om.len() as u64 == n * n * n + 1 && conjugate == 0;
            Ok((
                json!({"kind": "ree", "n": n, "points": om.len(), "on_quadric": om.len(),
                       "pairs_checked": pairs, "exhaustive": om.len() <= 2000,
                       "conjugate_pairs": conjugate, "valid": ok}),
                ok,
            ))
        }
    }
}

/// Polar check on a deterministic spread of pairs: point `i` against
/// `i + 1 + (k * 7919 + seed) mod (len - 1)` for a few `k`.
fn sampled_conjugate_pairs(om: &semireg_core::projgeom::Omega, seed: u64) -> (u64, u64) {
    let qf = semireg_core::projgeom::QuadricForm::new(om.field().clone());
    let len = om.len() as u64;
    let (mut pairs, mut conj) = (0, 0);
    for i in 0..len {
        for k in 0..5u64 {
            let j = (i + 1 + (k * 7919 + seed) % (len - 1)) % len;
            pairs += 1;
            conj += qf
                .polar(om.point(i as usize).coords(), om.point(j as usize).coords())
                .is_zero() as u64;
        }
    }
    (pairs, conj)
}

fn group_info(family: Family, n: u64) -> Result<Value, CliError> {
    let g = build_group(family, n)?;
    let pg = g.perm_group();
    let gens: Vec<Value> = g
        .labels()
        .iter()
        .zip(g.permutations())
        .map(|(l, p)| {
            let mut cycles: std::collections::BTreeMap<String, usize> = Default::default();
            for c in p.cycle_lengths() {
                *cycles.entry(c.to_string()).or_default() += 1;
            }
            json!({"label": l, "order": p.order(), "cycle_type": cycles})
        })
        .collect();
    let order = g.order();
    let order_value = if order > semireg_core::verify::MAX_EXACT_JSON_INT {
        Value::from(order.to_string())
    } else {
        Value::from(order)
    };
    Ok(json!({
        "family": family.id(),
        "n": n,
        "degree": pg.degree(),
        "order": order_value,
        "order_matches_closed_form": order == family.expected_order(n),
        "base": pg.base(),
        "transversal_sizes": pg.transversal_sizes(),
        "two_transitive": pg.is_two_transitive(),
        "generators": gens,
        "notes": g.notes(),
    }))
}

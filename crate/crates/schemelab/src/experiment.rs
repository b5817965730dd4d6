//! Command-line front end: configuration parsing, experiment orchestration,
//! and CSV/JSON emission.
//!
//! Every experiment accepts a flat `key = value` config file via `--config`;
//! explicit flags override file values and unknown keys are rejected. Output
//! files are written atomically (a partial file is removed on error) and
//! embed the fully resolved configuration as a leading comment line, so
//! identical configurations reproduce byte-identical files. The
//! `SCHEMELAB_OUT_DIR` environment variable prefixes relative output paths.
//!
//! Exit status: 0 on success, 1 on usage/configuration errors, 2 on
//! numerical failures (and on `verify` when a criterion fails).

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::advection::{self, AdvectionParams, AdvectionScheme};
use crate::burgers::{self, BurgersConfig, PicardMode};
use crate::diffusion::{self, DiffusionParams, DiffusionScheme};
use crate::fitting::{self, ModeDataset};
use crate::initial_conditions::{IcSpec, Law, ModeLaw};
use crate::poisson::{self, PoissonParams, PoissonScheme};
use crate::spectral::GridState;
use crate::superiority::{self, MapProblem, MetricKind, TrajectorySet};
use crate::verify;

/// Keys accepted in config files (union over all experiments).
const KNOWN_KEYS: &[&str] = &[
    "baseline",
    "count",
    "dt",
    "format",
    "gamma1",
    "gamma2",
    "ic_amplitude",
    "ic_modes",
    "ic_offset",
    "ic_phase",
    "max_picard_iters",
    "method",
    "metric",
    "n",
    "nu",
    "out",
    "phi",
    "picard_mode",
    "picard_tolerance",
    "problem",
    "psi",
    "q",
    "q_list",
    "seed",
    "steps",
    "t",
    "test",
    "test_mode",
    "threads",
    "train",
    "train_modes",
];

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Parser, Debug)]
#[command(
    name = "schemelab",
    version,
    about = "Spectral scheme analysis, emulator fits, and superiority maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Magnitude/phase error curves of the numerical schemes.
    SchemeErrors(ExperimentArgs),
    /// Closed-form single-mode ansatz fit.
    Fit(ExperimentArgs),
    /// Superiority ratio map over (psi, phi).
    SuperiorityMap(ExperimentArgs),
    /// Superiority ratio across rollout steps t = 1..steps.
    SuperiorityRollout(ExperimentArgs),
    /// Richardson-vs-direct-vs-analytic Poisson sweep.
    PoissonStudy(ExperimentArgs),
    /// Per-step Picard diagnostics of the implicit Burgers solver.
    BurgersPicard(ExperimentArgs),
    /// Burgers trajectory dump.
    BurgersRollout(ExperimentArgs),
    /// Least-squares multi-mode training study at one test mode.
    MultimodeStudy(ExperimentArgs),
    /// Run the acceptance criteria and report one pass/fail line each.
    Verify(ExperimentArgs),
}

/// Shared experiment flags; experiment-specific parameters arrive as
/// `--set key=value` pairs or through the config file.
#[derive(Args, Debug, Default)]
struct ExperimentArgs {
    /// Flat key=value config file; flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (relative paths are prefixed by SCHEMELAB_OUT_DIR).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv (default) or json.
    #[arg(long)]
    format: Option<String>,
    /// Cap on worker threads for sweeps (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma1: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
    /// Richardson iteration count.
    #[arg(long)]
    q: Option<u32>,
    /// Comma-separated Richardson iteration counts for poisson-study.
    #[arg(long)]
    q_list: Option<String>,
    #[arg(long)]
    train: Option<String>,
    #[arg(long)]
    baseline: Option<String>,
    #[arg(long)]
    test: Option<String>,
    /// Rollout step for maps.
    #[arg(long)]
    t: Option<u32>,
    /// Metric: magnitude or phase.
    #[arg(long)]
    metric: Option<String>,
    /// Training mode psi.
    #[arg(long)]
    psi: Option<f64>,
    /// Test mode phi.
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Number of initial conditions for trajectory experiments.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Grid resolution.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    picard_tolerance: Option<f64>,
    #[arg(long)]
    max_picard_iters: Option<u32>,
    /// p1, truncated:<k>, or converged.
    #[arg(long)]
    picard_mode: Option<String>,
    #[arg(long)]
    test_mode: Option<usize>,
    /// Comma-separated training modes, e.g. 1,2,3.
    #[arg(long)]
    train_modes: Option<String>,
    /// Comma-separated active IC modes.
    #[arg(long)]
    ic_modes: Option<String>,
    /// Amplitude law: fixed:<v> or uniform:<lo>,<hi>.
    #[arg(long)]
    ic_amplitude: Option<String>,
    /// Phase law.
    #[arg(long)]
    ic_phase: Option<String>,
    /// Offset (mode 0) law.
    #[arg(long)]
    ic_offset: Option<String>,
    /// superiority-rollout method: multiplier or trajectory.
    #[arg(long)]
    method: Option<String>,
}

/// Fully resolved key/value view of one invocation: config-file values
/// overridden by explicit flags.
struct Resolved {
    values: BTreeMap<String, String>,
}

impl Resolved {
    fn from_args(args: &ExperimentArgs) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        if let Some(path) = &args.config {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config file {}: {e}", path.display()))
            })?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return usage(format!(
                        "config line {}: expected key = value, got {raw:?}",
                        lineno + 1
                    ));
                };
                let key = key.trim().to_string();
                if !KNOWN_KEYS.contains(&key.as_str()) {
                    return usage(format!("config line {}: unknown key {key:?}", lineno + 1));
                }
                values.insert(key, value.trim().to_string());
            }
        }
        let mut set = |key: &str, v: Option<String>| {
            if let Some(v) = v {
                values.insert(key.to_string(), v);
            }
        };
        set("out", args.out.as_ref().map(|p| p.display().to_string()));
        set("format", args.format.clone());
        set("threads", args.threads.map(|v| v.to_string()));
        set("problem", args.problem.clone());
        set("gamma1", args.gamma1.map(|v| v.to_string()));
        set("gamma2", args.gamma2.map(|v| v.to_string()));
        set("q", args.q.map(|v| v.to_string()));
        set("q_list", args.q_list.clone());
        set("train", args.train.clone());
        set("baseline", args.baseline.clone());
        set("test", args.test.clone());
        set("t", args.t.map(|v| v.to_string()));
        set("metric", args.metric.clone());
        set("psi", args.psi.map(|v| v.to_string()));
        set("phi", args.phi.map(|v| v.to_string()));
        set("steps", args.steps.map(|v| v.to_string()));
        set("count", args.count.map(|v| v.to_string()));
        set("seed", args.seed.map(|v| v.to_string()));
        set("n", args.n.map(|v| v.to_string()));
        set("dt", args.dt.map(|v| v.to_string()));
        set("nu", args.nu.map(|v| v.to_string()));
        set(
            "picard_tolerance",
            args.picard_tolerance.map(|v| v.to_string()),
        );
        set(
            "max_picard_iters",
            args.max_picard_iters.map(|v| v.to_string()),
        );
        set("picard_mode", args.picard_mode.clone());
        set("test_mode", args.test_mode.map(|v| v.to_string()));
        set("train_modes", args.train_modes.clone());
        set("ic_modes", args.ic_modes.clone());
        set("ic_amplitude", args.ic_amplitude.clone());
        set("ic_phase", args.ic_phase.clone());
        set("ic_offset", args.ic_offset.clone());
        set("method", args.method.clone());
        Ok(Self { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("invalid value for {key}: {s:?}"))),
        }
    }

    fn f64_or(&self, key: &str, default: f64) -> CliResult<f64> {
        Ok(self.parse::<f64>(key)?.unwrap_or(default))
    }

    fn usize_or(&self, key: &str, default: usize) -> CliResult<usize> {
        Ok(self.parse::<usize>(key)?.unwrap_or(default))
    }

    fn u32_or(&self, key: &str, default: u32) -> CliResult<u32> {
        Ok(self.parse::<u32>(key)?.unwrap_or(default))
    }

    fn u64_or(&self, key: &str, default: u64) -> CliResult<u64> {
        Ok(self.parse::<u64>(key)?.unwrap_or(default))
    }

    fn str_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.raw(key).unwrap_or(default)
    }

    fn law_or(&self, key: &str, default: Law) -> CliResult<Law> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => parse_law(s).map_err(CliError::Usage),
        }
    }

    fn mode_list(&self, key: &str) -> CliResult<Option<Vec<usize>>> {
        match self.raw(key) {
            None => Ok(None),
            Some(s) => {
                let modes: std::result::Result<Vec<usize>, _> =
                    s.split(',').map(|p| p.trim().parse::<usize>()).collect();
                modes
                    .map(Some)
                    .map_err(|_| CliError::Usage(format!("invalid mode list for {key}: {s:?}")))
            }
        }
    }

    /// Canonical reproducibility stamp: the experiment name plus every
    /// resolved key in sorted order.
    fn stamp(&self, experiment: &str, defaults: &[(&str, String)]) -> String {
        let mut merged = self.values.clone();
        for (k, v) in defaults {
            merged.entry(k.to_string()).or_insert_with(|| v.clone());
        }
        let mut out = format!("schemelab {experiment}");
        for (k, v) in &merged {
            let _ = write!(out, " {k}={v}");
        }
        out
    }
}

fn law_label(law: Law) -> String {
    match law {
        Law::Fixed(v) => format!("fixed:{v}"),
        Law::Uniform { lo, hi } => format!("uniform:{lo},{hi}"),
    }
}

fn parse_law(s: &str) -> std::result::Result<Law, String> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| format!("law must be fixed:<v> or uniform:<lo>,<hi>, got {s:?}"))?;
    match kind.trim() {
        "fixed" => {
            let v: f64 = rest
                .trim()
                .parse()
                .map_err(|_| format!("invalid fixed law {s:?}"))?;
            Ok(Law::Fixed(v))
        }
        "uniform" => {
            let (lo, hi) = rest
                .split_once(',')
                .ok_or_else(|| format!("uniform law needs lo,hi, got {s:?}"))?;
            let lo: f64 = lo
                .trim()
                .parse()
                .map_err(|_| format!("invalid uniform law {s:?}"))?;
            let hi: f64 = hi
                .trim()
                .parse()
                .map_err(|_| format!("invalid uniform law {s:?}"))?;
            Ok(Law::Uniform { lo, hi })
        }
        _ => Err(format!("unknown law kind in {s:?}")),
    }
}

fn parse_advection_scheme(s: &str) -> CliResult<AdvectionScheme> {
    match s {
        "explicit" => Ok(AdvectionScheme::ExplicitUpwind),
        "implicit" => Ok(AdvectionScheme::ImplicitUpwind),
        "analytic" => Ok(AdvectionScheme::Analytic),
        _ => usage(format!(
            "unknown advection scheme {s:?} (explicit|implicit|analytic)"
        )),
    }
}

fn parse_diffusion_scheme(s: &str) -> CliResult<DiffusionScheme> {
    match s {
        "ftcs" => Ok(DiffusionScheme::Ftcs),
        "btcs" => Ok(DiffusionScheme::Btcs),
        "analytic" => Ok(DiffusionScheme::Analytic),
        _ => usage(format!(
            "unknown diffusion scheme {s:?} (ftcs|btcs|analytic)"
        )),
    }
}

fn parse_poisson_scheme(s: &str, q: u32) -> CliResult<PoissonScheme> {
    match s {
        "direct_fd" => Ok(PoissonScheme::DirectFd),
        "richardson" => Ok(PoissonScheme::Richardson { iterations: q }),
        "analytic" => Ok(PoissonScheme::Analytic),
        _ => usage(format!(
            "unknown poisson scheme {s:?} (direct_fd|richardson|analytic)"
        )),
    }
}

fn parse_metric(s: &str) -> CliResult<MetricKind> {
    match s {
        "magnitude" => Ok(MetricKind::Magnitude),
        "phase" => Ok(MetricKind::Phase),
        _ => usage(format!("unknown metric {s:?} (magnitude|phase)")),
    }
}

fn parse_picard_mode(s: &str) -> CliResult<PicardMode> {
    if s == "p1" {
        return Ok(PicardMode::P1);
    }
    if s == "converged" {
        return Ok(PicardMode::Converged);
    }
    if let Some(k) = s.strip_prefix("truncated:") {
        let k: u32 = k
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid truncated Picard count in {s:?}")))?;
        return Ok(PicardMode::Truncated(k));
    }
    usage(format!(
        "unknown picard mode {s:?} (p1|truncated:<k>|converged)"
    ))
}

/// Tabular experiment output with a reproducibility stamp; serialized as CSV
/// (one comment line, header, rows) or JSON.
struct Table {
    stamp: String,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Option<String>>>,
}

impl Table {
    fn new(stamp: String, columns: Vec<&'static str>) -> Self {
        Self {
            stamp,
            columns,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Option<String>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# {}", self.stamp)?;
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<&str> = row.iter().map(|c| c.as_deref().unwrap_or("")).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn write_json<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{{")?;
        writeln!(w, "  \"config\": \"{}\",", escape_json(&self.stamp))?;
        let cols: Vec<String> = self.columns.iter().map(|c| format!("\"{c}\"")).collect();
        writeln!(w, "  \"columns\": [{}],", cols.join(", "))?;
        writeln!(w, "  \"rows\": [")?;
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    None => "null".to_string(),
                    Some(v) => {
                        if v.parse::<f64>().is_ok() {
                            v.clone()
                        } else {
                            format!("\"{}\"", escape_json(v))
                        }
                    }
                })
                .collect();
            let comma = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(w, "    [{}]{comma}", cells.join(", "))?;
        }
        writeln!(w, "  ]")?;
        writeln!(w, "}}")?;
        Ok(())
    }
}

fn escape_json(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn cell<T: ToString>(v: T) -> Option<String> {
    Some(v.to_string())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

impl Format {
    fn of(resolved: &Resolved) -> CliResult<Self> {
        match resolved.str_or("format", "csv") {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => usage(format!("unknown format {other:?} (csv|json)")),
        }
    }

    fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Resolves the output path: explicit `out`, else `<experiment>.<ext>`,
/// prefixed by SCHEMELAB_OUT_DIR when relative.
fn output_path(resolved: &Resolved, experiment: &str, format: Format) -> PathBuf {
    let path = resolved
        .raw("out")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(format!("{experiment}.{}", format.extension())));
    if path.is_relative() {
        if let Ok(dir) = std::env::var("SCHEMELAB_OUT_DIR") {
            if !dir.is_empty() {
                return Path::new(&dir).join(path);
            }
        }
    }
    path
}

/// Atomic table write: emit into `<path>.tmp`, rename on success, remove the
/// partial file on error.
fn write_table(table: &Table, path: &Path, format: Format) -> CliResult<()> {
    let tmp = path.with_extension(format!("{}.tmp", format.extension()));
    let result = (|| -> std::io::Result<()> {
        let mut file = std::io::BufWriter::new(fs::File::create(&tmp)?);
        match format {
            Format::Csv => table.write_csv(&mut file)?,
            Format::Json => table.write_json(&mut file)?,
        }
        file.flush()
    })();
    match result {
        Ok(()) => fs::rename(&tmp, path).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            CliError::Runtime(format!("cannot move output into place: {e}"))
        }),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(CliError::Runtime(format!(
                "cannot write {}: {e}",
                path.display()
            )))
        }
    }
}

fn with_thread_cap<R: Send>(resolved: &Resolved, f: impl FnOnce() -> R + Send) -> CliResult<R> {
    match resolved.parse::<usize>("threads")? {
        None => Ok(f()),
        Some(0) => usage("threads must be positive"),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| {
                    CliError::Runtime(format!("cannot build {t}-thread worker pool: {e}"))
                })?;
            Ok(pool.install(f))
        }
    }
}

/// Entry point used by the `schemelab` binary; returns the process exit code.
pub fn cli_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn run_command(command: Command) -> CliResult<i32> {
    match command {
        Command::SchemeErrors(a) => run_table_experiment("scheme-errors", &a, scheme_errors),
        Command::Fit(a) => run_table_experiment("fit", &a, fit_experiment),
        Command::SuperiorityMap(a) => run_table_experiment("superiority-map", &a, superiority_map),
        Command::SuperiorityRollout(a) => {
            run_table_experiment("superiority-rollout", &a, superiority_rollout)
        }
        Command::PoissonStudy(a) => run_table_experiment("poisson-study", &a, poisson_study),
        Command::BurgersPicard(a) => run_table_experiment("burgers-picard", &a, burgers_picard),
        Command::BurgersRollout(a) => run_table_experiment("burgers-rollout", &a, burgers_rollout),
        Command::MultimodeStudy(a) => run_table_experiment("multimode-study", &a, multimode_study),
        Command::Verify(a) => run_verify(&a),
    }
}

fn run_table_experiment(
    name: &'static str,
    args: &ExperimentArgs,
    build: fn(&Resolved, &'static str) -> CliResult<Table>,
) -> CliResult<i32> {
    let resolved = Resolved::from_args(args)?;
    let format = Format::of(&resolved)?;
    let table = with_thread_cap(&resolved, || build(&resolved, name))??;
    let path = output_path(&resolved, name, format);
    write_table(&table, &path, format)?;
    println!("wrote {}", path.display());
    Ok(0)
}

fn run_verify(args: &ExperimentArgs) -> CliResult<i32> {
    let resolved = Resolved::from_args(args)?;
    let results = with_thread_cap(&resolved, verify::run_all)?;
    let mut failed = 0;
    for r in &results {
        println!("{}", r.line());
        if !r.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} acceptance criteria passed", results.len());
        Ok(0)
    } else {
        eprintln!("{failed} of {} acceptance criteria failed", results.len());
        Err(CliError::Runtime(format!(
            "{failed} acceptance criteria failed"
        )))
    }
}

fn require_gamma1(resolved: &Resolved) -> CliResult<f64> {
    let gamma1 = resolved.f64_or("gamma1", -1.0)?;
    if gamma1 >= 0.0 {
        return usage(format!("gamma1 must be negative, got {gamma1}"));
    }
    Ok(gamma1)
}

fn require_gamma2(resolved: &Resolved) -> CliResult<f64> {
    let gamma2 = resolved.f64_or("gamma2", 1.0)?;
    if gamma2 <= 0.0 {
        return usage(format!("gamma2 must be positive, got {gamma2}"));
    }
    Ok(gamma2)
}

// --- scheme-errors ------------------------------------------------------

fn scheme_errors(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let problem = resolved.str_or("problem", "advection").to_string();
    let columns = vec!["phi", "scheme", "magnitude_error", "phase_error"];
    let mut defaults: Vec<(&str, String)> = vec![("problem", problem.clone())];
    let mut table;
    match problem.as_str() {
        "advection" => {
            let gamma1 = require_gamma1(resolved)?;
            defaults.push(("gamma1", gamma1.to_string()));
            table = Table::new(resolved.stamp(name, &defaults), columns);
            for j in 0..=100 {
                let phi = j as f64 / 200.0;
                let p = AdvectionParams::new(gamma1, phi).map_err(CliError::from)?;
                for kind in [
                    AdvectionScheme::ExplicitUpwind,
                    AdvectionScheme::ImplicitUpwind,
                ] {
                    let mag = advection::magnitude_error(kind, p).map_err(CliError::from)?;
                    let phase = advection::phase_error(kind, p).ok();
                    table.push(vec![
                        cell(phi),
                        cell(kind.label()),
                        cell(mag),
                        phase.map(|v| v.to_string()),
                    ]);
                }
            }
        }
        "diffusion" => {
            let gamma2 = require_gamma2(resolved)?;
            defaults.push(("gamma2", gamma2.to_string()));
            table = Table::new(resolved.stamp(name, &defaults), columns);
            for j in 0..=100 {
                let phi = j as f64 / 200.0;
                let p = DiffusionParams::new(gamma2, phi).map_err(CliError::from)?;
                for kind in [DiffusionScheme::Ftcs, DiffusionScheme::Btcs] {
                    let mag = diffusion::magnitude_error(kind, p).map_err(CliError::from)?;
                    table.push(vec![cell(phi), cell(kind.label()), cell(mag), None]);
                }
            }
        }
        "poisson" => {
            let q = resolved.u32_or("q", 5)?;
            defaults.push(("q", q.to_string()));
            table = Table::new(resolved.stamp(name, &defaults), columns);
            for j in 1..=100 {
                let phi = j as f64 / 200.0;
                let p = PoissonParams::new(phi).map_err(CliError::from)?;
                let rich = PoissonScheme::Richardson { iterations: q };
                let rows: [(String, f64); 3] = [
                    (
                        "direct_fd_vs_analytic".into(),
                        poisson::error(PoissonScheme::DirectFd, p, PoissonScheme::Analytic)
                            .map_err(CliError::from)?,
                    ),
                    (
                        format!("richardson_q{q}_vs_analytic"),
                        poisson::error(rich, p, PoissonScheme::Analytic).map_err(CliError::from)?,
                    ),
                    (
                        format!("richardson_q{q}_vs_direct_fd"),
                        poisson::error(rich, p, PoissonScheme::DirectFd).map_err(CliError::from)?,
                    ),
                ];
                for (label, err) in rows {
                    table.push(vec![cell(phi), Some(label), cell(err), None]);
                }
            }
        }
        other => {
            return usage(format!(
                "unknown problem {other:?} (advection|diffusion|poisson)"
            ))
        }
    }
    Ok(table)
}

// --- fit -----------------------------------------------------------------

fn fit_experiment(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let problem = resolved.str_or("problem", "advection").to_string();
    let psi = resolved.f64_or("psi", 0.1)?;
    let reference = resolved.str_or("train", "implicit").to_string();
    let columns = vec![
        "problem",
        "reference",
        "psi",
        "gamma1",
        "gamma2",
        "q",
        "theta0",
        "theta1",
        "theta",
    ];
    let mut defaults: Vec<(&str, String)> = vec![
        ("problem", problem.clone()),
        ("psi", psi.to_string()),
        ("train", reference.clone()),
    ];
    let row = match problem.as_str() {
        "advection" => {
            let gamma1 = require_gamma1(resolved)?;
            defaults.push(("gamma1", gamma1.to_string()));
            let kind = parse_advection_scheme(&reference)?;
            let p = AdvectionParams::new(gamma1, psi).map_err(CliError::from)?;
            let fit = fitting::fit_advection_ansatz(advection::multiplier(kind, p), psi)
                .map_err(CliError::from)?;
            vec![
                cell(&problem),
                cell(&reference),
                cell(psi),
                cell(gamma1),
                None,
                None,
                cell(fit.theta0),
                cell(fit.theta1),
                None,
            ]
        }
        "diffusion" => {
            let gamma2 = require_gamma2(resolved)?;
            defaults.push(("gamma2", gamma2.to_string()));
            let kind = parse_diffusion_scheme(&reference)?;
            let p = DiffusionParams::new(gamma2, psi).map_err(CliError::from)?;
            let fit = fitting::fit_diffusion_ansatz(diffusion::multiplier(kind, p), psi)
                .map_err(CliError::from)?;
            vec![
                cell(&problem),
                cell(&reference),
                cell(psi),
                None,
                cell(gamma2),
                None,
                None,
                None,
                cell(fit.theta),
            ]
        }
        "poisson" => {
            let q = resolved.u32_or("q", 5)?;
            defaults.push(("q", q.to_string()));
            let kind = parse_poisson_scheme(&reference, q)?;
            let p = PoissonParams::new(psi).map_err(CliError::from)?;
            let value = poisson::multiplier(kind, p).map_err(CliError::from)?;
            let fit = fitting::fit_poisson_ansatz_general(value, psi).map_err(CliError::from)?;
            vec![
                cell(&problem),
                cell(&reference),
                cell(psi),
                None,
                None,
                cell(q),
                None,
                None,
                cell(fit.theta),
            ]
        }
        other => {
            return usage(format!(
                "unknown problem {other:?} (advection|diffusion|poisson)"
            ))
        }
    };
    let mut table = Table::new(resolved.stamp(name, &defaults), columns);
    table.push(row);
    Ok(table)
}

// --- superiority-map ------------------------------------------------------

fn map_problem(resolved: &Resolved) -> CliResult<(MapProblem, Vec<(&'static str, String)>)> {
    let problem = resolved.str_or("problem", "advection");
    let mut defaults: Vec<(&'static str, String)> = vec![("problem", problem.to_string())];
    let problem = match problem {
        "advection" => {
            let gamma1 = require_gamma1(resolved)?;
            defaults.push(("gamma1", gamma1.to_string()));
            let train = parse_advection_scheme(resolved.str_or("train", "implicit"))?;
            let baseline = parse_advection_scheme(resolved.str_or("baseline", "implicit"))?;
            let test = parse_advection_scheme(resolved.str_or("test", "analytic"))?;
            defaults.push(("train", train.label().to_string()));
            defaults.push(("baseline", baseline.label().to_string()));
            defaults.push(("test", test.label().to_string()));
            MapProblem::Advection {
                gamma1,
                train,
                baseline,
                test,
            }
        }
        "diffusion" => {
            let gamma2 = require_gamma2(resolved)?;
            defaults.push(("gamma2", gamma2.to_string()));
            let train = parse_diffusion_scheme(resolved.str_or("train", "btcs"))?;
            let baseline = parse_diffusion_scheme(resolved.str_or("baseline", "btcs"))?;
            let test = parse_diffusion_scheme(resolved.str_or("test", "analytic"))?;
            defaults.push(("train", train.label().to_string()));
            defaults.push(("baseline", baseline.label().to_string()));
            defaults.push(("test", test.label().to_string()));
            MapProblem::Diffusion {
                gamma2,
                train,
                baseline,
                test,
            }
        }
        "poisson" => {
            let q = resolved.u32_or("q", 5)?;
            defaults.push(("q", q.to_string()));
            let train = parse_poisson_scheme(resolved.str_or("train", "richardson"), q)?;
            let baseline = parse_poisson_scheme(resolved.str_or("baseline", "richardson"), q)?;
            let test = parse_poisson_scheme(resolved.str_or("test", "analytic"), q)?;
            defaults.push(("train", train.label().leak().into()));
            defaults.push(("baseline", baseline.label().leak().into()));
            defaults.push(("test", test.label().leak().into()));
            MapProblem::Poisson {
                train,
                baseline,
                test,
            }
        }
        other => {
            return usage(format!(
                "unknown problem {other:?} (advection|diffusion|poisson)"
            ))
        }
    };
    Ok((problem, defaults))
}

fn superiority_map(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let (problem, mut defaults) = map_problem(resolved)?;
    let t = resolved.u32_or("t", 1)?;
    let metric = parse_metric(resolved.str_or("metric", "magnitude"))?;
    defaults.push(("t", t.to_string()));
    defaults.push(("metric", metric.label().to_string()));
    let grid = superiority::default_mode_grid();
    let map =
        superiority::superiority_map(problem, &grid, &grid, t, metric).map_err(CliError::from)?;
    let stamp = resolved.stamp(name, &defaults);
    let mut table = Table::new(
        stamp,
        vec![
            "psi",
            "phi",
            "gamma",
            "q",
            "t",
            "metric",
            "train_ref",
            "baseline_ref",
            "test_ref",
            "xi",
        ],
    );
    let gamma = map.meta.gamma.map(|g| g.to_string());
    let q = map.meta.iterations.map(|q| q.to_string());
    for (i, &psi) in map.psi_grid.iter().enumerate() {
        for (j, &phi) in map.phi_grid.iter().enumerate() {
            table.push(vec![
                cell(psi),
                cell(phi),
                gamma.clone(),
                q.clone(),
                cell(map.meta.t),
                cell(map.meta.metric.label()),
                cell(&map.meta.train_ref),
                cell(&map.meta.baseline_ref),
                cell(&map.meta.test_ref),
                map.values[i][j].map(|x| x.to_string()),
            ]);
        }
    }
    Ok(table)
}

// --- superiority-rollout ---------------------------------------------------

fn superiority_rollout(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let method = resolved.str_or("method", "multiplier").to_string();
    match method.as_str() {
        "multiplier" => multiplier_rollout(resolved, name),
        "trajectory" => trajectory_rollout(resolved, name),
        other => usage(format!("unknown method {other:?} (multiplier|trajectory)")),
    }
}

fn multiplier_rollout(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let (problem, mut defaults) = map_problem(resolved)?;
    let psi = resolved.f64_or("psi", 0.1)?;
    let phi = resolved.f64_or("phi", 0.2)?;
    let steps = resolved.usize_or("steps", 100)?;
    let metric = parse_metric(resolved.str_or("metric", "magnitude"))?;
    defaults.extend([
        ("method", "multiplier".to_string()),
        ("psi", psi.to_string()),
        ("phi", phi.to_string()),
        ("steps", steps.to_string()),
        ("metric", metric.label().to_string()),
    ]);
    let mut table = Table::new(
        resolved.stamp(name, &defaults),
        vec!["t", "xi", "num_err", "den_err"],
    );
    let (emulator, baseline, test) = rollout_triple(&problem, psi, phi)?;
    for t in 1..=steps {
        let xi = superiority::multiplier_superiority(emulator, baseline, test, t as u32, metric)
            .map_err(CliError::from)?;
        let tp = t as i32;
        let (num, den) = match metric {
            MetricKind::Magnitude => (
                (emulator.norm().powi(tp) - test.norm().powi(tp)).abs(),
                (baseline.norm().powi(tp) - test.norm().powi(tp)).abs(),
            ),
            _ => (
                (t as f64 * (emulator.arg() - test.arg())).abs(),
                (t as f64 * (baseline.arg() - test.arg())).abs(),
            ),
        };
        table.push(vec![
            cell(t),
            xi.map(|x| x.to_string()),
            cell(num),
            cell(den),
        ]);
    }
    Ok(table)
}

/// (fitted emulator, baseline, test) multiplier values at `phi` after
/// training at `psi`.
fn rollout_triple(
    problem: &MapProblem,
    psi: f64,
    phi: f64,
) -> CliResult<(Complex64, Complex64, Complex64)> {
    match *problem {
        MapProblem::Advection {
            gamma1,
            train,
            baseline,
            test,
        } => {
            let tr = advection::multiplier(
                train,
                AdvectionParams::new(gamma1, psi).map_err(CliError::from)?,
            );
            let fit = fitting::fit_advection_ansatz(tr, psi).map_err(CliError::from)?;
            let p = AdvectionParams::new(gamma1, phi).map_err(CliError::from)?;
            Ok((
                fit.multiplier(phi),
                advection::multiplier(baseline, p),
                advection::multiplier(test, p),
            ))
        }
        MapProblem::Diffusion {
            gamma2,
            train,
            baseline,
            test,
        } => {
            let tr = diffusion::multiplier(
                train,
                DiffusionParams::new(gamma2, psi).map_err(CliError::from)?,
            );
            let fit = fitting::fit_diffusion_ansatz(tr, psi).map_err(CliError::from)?;
            let p = DiffusionParams::new(gamma2, phi).map_err(CliError::from)?;
            Ok((
                fit.multiplier(phi).into(),
                diffusion::multiplier(baseline, p).into(),
                diffusion::multiplier(test, p).into(),
            ))
        }
        MapProblem::Poisson {
            train,
            baseline,
            test,
        } => {
            let tr = poisson::multiplier(train, PoissonParams::new(psi).map_err(CliError::from)?)
                .map_err(CliError::from)?;
            let fit = fitting::fit_poisson_ansatz_general(tr, psi).map_err(CliError::from)?;
            let p = PoissonParams::new(phi).map_err(CliError::from)?;
            Ok((
                fit.multiplier(phi).map_err(CliError::from)?.into(),
                poisson::multiplier(baseline, p)
                    .map_err(CliError::from)?
                    .into(),
                poisson::multiplier(test, p).map_err(CliError::from)?.into(),
            ))
        }
    }
}

fn trajectory_rollout(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    if resolved.str_or("problem", "advection") != "advection" {
        return usage("trajectory rollouts are defined for the advection problem");
    }
    let gamma1 = require_gamma1(resolved)?;
    let n = resolved.usize_or("n", 100)?;
    let psi = resolved.f64_or("psi", 0.1)?;
    let phi = resolved.f64_or("phi", 0.2)?;
    let steps = resolved.usize_or("steps", 50)?;
    let count = resolved.usize_or("count", 10)?;
    let seed = resolved.u64_or("seed", 0)?;
    let train = parse_advection_scheme(resolved.str_or("train", "implicit"))?;
    let baseline = parse_advection_scheme(resolved.str_or("baseline", "implicit"))?;
    let test = parse_advection_scheme(resolved.str_or("test", "analytic"))?;
    let amplitude = resolved.law_or("ic_amplitude", Law::Uniform { lo: 0.5, hi: 2.0 })?;
    let phase = resolved.law_or(
        "ic_phase",
        Law::Uniform {
            lo: 0.0,
            hi: 2.0 * std::f64::consts::PI,
        },
    )?;
    let defaults: Vec<(&str, String)> = vec![
        ("problem", "advection".into()),
        ("method", "trajectory".into()),
        ("gamma1", gamma1.to_string()),
        ("n", n.to_string()),
        ("psi", psi.to_string()),
        ("phi", phi.to_string()),
        ("steps", steps.to_string()),
        ("count", count.to_string()),
        ("seed", seed.to_string()),
        ("train", train.label().into()),
        ("baseline", baseline.label().into()),
        ("test", test.label().into()),
        ("ic_amplitude", law_label(amplitude)),
        ("ic_phase", law_label(phase)),
    ];

    let mode = (phi * n as f64).round() as usize;
    if mode < 1 || mode > n / 2 || ((mode as f64 / n as f64) - phi).abs() > 1e-9 {
        return usage(format!(
            "phi = {phi} does not address an integer mode of an n = {n} grid"
        ));
    }
    let train_value = advection::multiplier(
        train,
        AdvectionParams::new(gamma1, psi).map_err(CliError::from)?,
    );
    let fit = fitting::fit_advection_ansatz(train_value, psi).map_err(CliError::from)?;
    let multipliers = |kind: AdvectionScheme| -> crate::Result<Vec<Complex64>> {
        (0..=n / 2)
            .map(|m| {
                AdvectionParams::new(gamma1, m as f64 / n as f64)
                    .map(|p| advection::multiplier(kind, p))
            })
            .collect()
    };
    let base_mult = multipliers(baseline).map_err(CliError::from)?;
    let test_mult = multipliers(test).map_err(CliError::from)?;
    let ics = IcSpec::new(
        n,
        vec![ModeLaw {
            mode,
            amplitude,
            phase,
        }],
        Law::Fixed(0.0),
        seed,
    )
    .map_err(CliError::from)?
    .generate(count)
    .map_err(CliError::from)?;

    let mut emulator = Vec::with_capacity(count);
    let mut base = Vec::with_capacity(count);
    let mut reference = Vec::with_capacity(count);
    for ic in &ics {
        emulator.push(superiority::kernel_rollout(ic, &fit.kernel(), steps));
        base.push(superiority::spectral_rollout(ic, &base_mult, steps).map_err(CliError::from)?);
        reference
            .push(superiority::spectral_rollout(ic, &test_mult, steps).map_err(CliError::from)?);
    }
    let result = superiority::trajectory_superiority(
        &TrajectorySet::new(emulator).map_err(CliError::from)?,
        &TrajectorySet::new(base).map_err(CliError::from)?,
        &TrajectorySet::new(reference).map_err(CliError::from)?,
    )
    .map_err(CliError::from)?;

    let mut table = Table::new(
        resolved.stamp(name, &defaults),
        vec!["t", "xi", "num_err", "den_err"],
    );
    for s in &result.steps {
        table.push(vec![
            cell(s.t),
            s.xi.map(|x| x.to_string()),
            cell(s.num_err),
            cell(s.den_err),
        ]);
    }
    Ok(table)
}

// --- poisson-study ----------------------------------------------------------

fn poisson_study(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let q_list = resolved.str_or("q_list", "1,2,4,16,256").to_string();
    let qs: Vec<u32> = q_list
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("invalid q_list {q_list:?}")))?;
    if qs.contains(&0) {
        return usage("Richardson iteration counts must be positive");
    }
    let defaults = vec![("q_list", q_list.clone())];
    let mut table = Table::new(
        resolved.stamp(name, &defaults),
        vec![
            "phi",
            "q",
            "richardson",
            "direct_fd",
            "analytic",
            "err_vs_analytic",
            "err_vs_direct_fd",
        ],
    );
    for &q in &qs {
        let scheme = PoissonScheme::Richardson { iterations: q };
        for j in 1..=100 {
            let phi = j as f64 / 200.0;
            let p = PoissonParams::new(phi).map_err(CliError::from)?;
            table.push(vec![
                cell(phi),
                cell(q),
                cell(poisson::multiplier(scheme, p).map_err(CliError::from)?),
                cell(poisson::multiplier(PoissonScheme::DirectFd, p).map_err(CliError::from)?),
                cell(poisson::multiplier(PoissonScheme::Analytic, p).map_err(CliError::from)?),
                cell(poisson::error(scheme, p, PoissonScheme::Analytic).map_err(CliError::from)?),
                cell(poisson::error(scheme, p, PoissonScheme::DirectFd).map_err(CliError::from)?),
            ]);
        }
    }
    Ok(table)
}

// --- burgers ---------------------------------------------------------------

type BurgersSetup = (BurgersConfig, GridState, Vec<(&'static str, String)>);

fn burgers_setup(resolved: &Resolved) -> CliResult<BurgersSetup> {
    let preset = BurgersConfig::shock_preset();
    let n = resolved.usize_or("n", preset.n)?;
    let dt = resolved.f64_or("dt", preset.dt)?;
    let nu = resolved.f64_or("nu", preset.nu)?;
    let picard_tolerance = resolved.f64_or("picard_tolerance", preset.picard_tolerance)?;
    let max_picard_iters = resolved.u32_or("max_picard_iters", preset.max_picard_iters)?;
    let mode = parse_picard_mode(resolved.str_or("picard_mode", "converged"))?;
    let cfg = BurgersConfig {
        n,
        dt,
        nu,
        picard_tolerance,
        max_picard_iters,
        mode,
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let seed = resolved.u64_or("seed", 0)?;
    let modes = resolved.mode_list("ic_modes")?.unwrap_or_else(|| vec![1]);
    let amplitude = resolved.law_or("ic_amplitude", Law::Fixed(1.0))?;
    let phase = resolved.law_or("ic_phase", Law::Fixed(0.0))?;
    let offset = resolved.law_or("ic_offset", Law::Fixed(0.25))?;
    let spec = IcSpec::new(
        n,
        modes
            .iter()
            .map(|&m| ModeLaw {
                mode: m,
                amplitude,
                phase,
            })
            .collect(),
        offset,
        seed,
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let ic = spec.sample(0).map_err(CliError::from)?;

    let mode_label = match mode {
        PicardMode::P1 => "p1".to_string(),
        PicardMode::Truncated(k) => format!("truncated:{k}"),
        PicardMode::Converged => "converged".to_string(),
    };
    let defaults: Vec<(&str, String)> = vec![
        ("n", n.to_string()),
        ("dt", dt.to_string()),
        ("nu", nu.to_string()),
        ("picard_tolerance", picard_tolerance.to_string()),
        ("max_picard_iters", max_picard_iters.to_string()),
        ("picard_mode", mode_label),
        ("seed", seed.to_string()),
        (
            "ic_modes",
            modes
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("ic_amplitude", law_label(amplitude)),
        ("ic_phase", law_label(phase)),
        ("ic_offset", law_label(offset)),
    ];
    Ok((cfg, ic, defaults))
}

fn burgers_picard(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let (cfg, ic, mut defaults) = burgers_setup(resolved)?;
    let steps = resolved.usize_or("steps", 30)?;
    defaults.push(("steps", steps.to_string()));
    let diag = burgers::picard_diagnostics(&ic, &cfg, steps).map_err(CliError::from)?;
    let mut table = Table::new(
        resolved.stamp(name, &defaults),
        vec!["step", "picard_iterations", "residual", "one_step_nrmse"],
    );
    for s in &diag.steps {
        table.push(vec![
            cell(s.step),
            cell(s.picard_iterations),
            cell(s.residual),
            cell(s.one_step_nrmse),
        ]);
    }
    Ok(table)
}

fn burgers_rollout(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let (cfg, ic, mut defaults) = burgers_setup(resolved)?;
    let steps = resolved.usize_or("steps", 30)?;
    defaults.push(("steps", steps.to_string()));
    let trajectory = burgers::rollout(&ic, &cfg, steps).map_err(CliError::from)?;
    let mut table = Table::new(resolved.stamp(name, &defaults), vec!["step", "i", "x", "u"]);
    for (t, state) in trajectory.iter().enumerate() {
        for (i, &u) in state.values().iter().enumerate() {
            table.push(vec![
                cell(t),
                cell(i),
                cell(i as f64 / cfg.n as f64),
                cell(u),
            ]);
        }
    }
    Ok(table)
}

// --- multimode-study ---------------------------------------------------------

fn multimode_study(resolved: &Resolved, name: &'static str) -> CliResult<Table> {
    let gamma1 = require_gamma1(resolved)?;
    let n = resolved.usize_or("n", 50)?;
    let test_mode = resolved.usize_or("test_mode", 5)?;
    let train_modes = resolved
        .mode_list("train_modes")?
        .ok_or_else(|| CliError::Usage("train_modes is required, e.g. --train-modes 1,2".into()))?;
    if test_mode < 1 || test_mode > n / 2 {
        return usage(format!("test_mode {test_mode} outside [1, {}]", n / 2));
    }
    let defaults: Vec<(&str, String)> = vec![
        ("gamma1", gamma1.to_string()),
        ("n", n.to_string()),
        ("test_mode", test_mode.to_string()),
        (
            "train_modes",
            train_modes
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
    ];
    let dataset =
        ModeDataset::uniform(&train_modes, n).map_err(|e| CliError::Usage(e.to_string()))?;
    let fit = fitting::least_squares_fit_advection(&dataset, |phi| {
        advection::multiplier(
            AdvectionScheme::ImplicitUpwind,
            AdvectionParams::new(gamma1, phi).expect("grid modes are valid"),
        )
    })
    .map_err(CliError::from)?;
    let phi = test_mode as f64 / n as f64;
    let p = AdvectionParams::new(gamma1, phi).map_err(CliError::from)?;
    let xi = superiority::multiplier_superiority(
        fit.multiplier(phi),
        advection::multiplier(AdvectionScheme::ImplicitUpwind, p),
        advection::multiplier(AdvectionScheme::Analytic, p),
        1,
        MetricKind::Magnitude,
    )
    .map_err(CliError::from)?;
    let mut table = Table::new(
        resolved.stamp(name, &defaults),
        vec![
            "train_modes",
            "test_mode",
            "n",
            "gamma1",
            "theta0",
            "theta1",
            "xi",
        ],
    );
    table.push(vec![
        Some(
            train_modes
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(";"),
        ),
        cell(test_mode),
        cell(n),
        cell(gamma1),
        cell(fit.theta0),
        cell(fit.theta1),
        xi.map(|x| x.to_string()),
    ]);
    Ok(table)
}

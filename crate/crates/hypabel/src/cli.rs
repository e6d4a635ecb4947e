//! Batch front end.
//!
//! Four subcommands: `params` prints the derived invariants of a space,
//! `transform` tabulates the transforms over a grid as CSV, `verify` runs
//! one named suite and emits a JSON report, `sweep` runs suites across a
//! list of spaces and summarizes. Everything is configurable from a flat
//! `key = value` file with `[section]` headers, and every key can be
//! overridden by a command-line flag; flags win.
//!
//! Exit codes: 0 success, 1 numerical failure or failed checks, 2 usage or
//! an incompatible suite/space combination. Output files are written
//! atomically (temp file in the same directory, then rename), so a crashed
//! run never leaves a truncated artifact behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::params::{build_d, k0_eps, noncuspidal, Field, SpaceParams, Variant};
use crate::probes::{
    AngularModulated, BumpRadial, GaussianRadial, OddModulated, TestFunction, ZeroProbe,
};
use crate::quadrature::QuadratureSpec;
use crate::transforms::{apply_l, compute_grid, effective_spec, GridSpec, TransformError};
use crate::verify::{run_suite, Report, Suite, VerifyError};

const EXIT_OK: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Fully resolved run configuration: defaults, then the config file, then
/// command-line flags. Serialized verbatim into JSON reports so a report
/// always names the settings that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub field: Field,
    pub p: usize,
    pub q: usize,
    pub variant: Variant,
    pub probe: String,
    pub beta: f64,
    pub radius: f64,
    pub index_i: usize,
    pub index_j: usize,
    pub s_min: f64,
    pub s_max: f64,
    pub step: f64,
    pub nodes_per_dim: usize,
    pub truncation_radius: f64,
    pub target_rel_tol: f64,
    pub absolute_floor: f64,
    pub doubling_rounds: u32,
    pub gnuplot_header: bool,
    pub suite: Option<String>,
    pub spaces: Option<String>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let quad = QuadratureSpec::default();
        RunConfig {
            field: Field::Real,
            p: 0,
            q: 2,
            variant: Variant::Projective,
            probe: "gaussian".into(),
            beta: 1.0,
            radius: 1.0,
            index_i: 1,
            index_j: 1,
            s_min: -4.0,
            s_max: 9.0,
            step: 0.05,
            nodes_per_dim: quad.nodes_per_dim,
            truncation_radius: quad.truncation_radius,
            target_rel_tol: quad.target_rel_tol,
            absolute_floor: quad.absolute_floor,
            doubling_rounds: quad.doubling_rounds,
            gnuplot_header: false,
            suite: None,
            spaces: None,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn space(&self) -> Result<SpaceParams, String> {
        SpaceParams::new(self.field, self.p, self.q, self.variant).map_err(|e| e.to_string())
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec {
            nodes_per_dim: self.nodes_per_dim,
            truncation_radius: self.truncation_radius,
            target_rel_tol: self.target_rel_tol,
            absolute_floor: self.absolute_floor,
            doubling_rounds: self.doubling_rounds,
            ..QuadratureSpec::default()
        }
    }

    pub fn grid(&self) -> Result<GridSpec, String> {
        GridSpec::new(self.s_min, self.s_max, self.step).map_err(|e| e.to_string())
    }

    /// Instantiate the configured probe on a space.
    pub fn build_probe(&self, sp: &SpaceParams) -> Result<Arc<dyn TestFunction>, String> {
        match self.probe.to_ascii_lowercase().as_str() {
            "gaussian" => {
                if !(self.beta > 0.0) {
                    return Err(format!("beta must be positive, got {}", self.beta));
                }
                Ok(Arc::new(GaussianRadial::new(self.beta)))
            }
            "bump" => {
                if !(self.radius > 0.0) {
                    return Err(format!("radius must be positive, got {}", self.radius));
                }
                Ok(Arc::new(BumpRadial::new(self.radius)))
            }
            "angular" => AngularModulated::new(sp, self.beta, self.index_i, self.index_j)
                .map(|f| Arc::new(f) as Arc<dyn TestFunction>)
                .map_err(|e| e.to_string()),
            "odd" => OddModulated::new(sp, self.beta, self.index_i)
                .map(|f| Arc::new(f) as Arc<dyn TestFunction>)
                .map_err(|e| e.to_string()),
            "zero" => Ok(Arc::new(ZeroProbe)),
            other => Err(format!(
                "unknown probe {other:?} (expected gaussian, bump, angular, odd or zero)"
            )),
        }
    }
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "projective" | "proj" => Ok(Variant::Projective),
        "nonprojective" | "nonproj" | "real_nonprojective" => Ok(Variant::RealNonProjective),
        other => Err(format!(
            "unknown variant {other:?} (expected projective or nonprojective)"
        )),
    }
}

/// Apply one `section.key = value` setting. Unknown keys are errors: a
/// config file that silently does nothing is worse than one that fails.
fn set_key(cfg: &mut RunConfig, key: &str, value: &str) -> Result<(), String> {
    fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String>
    where
        T::Err: std::fmt::Display,
    {
        value
            .parse::<T>()
            .map_err(|e| format!("bad value for {key}: {e}"))
    }
    match key {
        "space.field" | "field" => cfg.field = Field::parse(value).map_err(|e| e.to_string())?,
        "space.p" | "p" => cfg.p = num(key, value)?,
        "space.q" | "q" => cfg.q = num(key, value)?,
        "space.variant" | "variant" => cfg.variant = parse_variant(value)?,
        "probe.name" | "probe" => cfg.probe = value.to_string(),
        "probe.beta" | "beta" => cfg.beta = num(key, value)?,
        "probe.radius" | "radius" => cfg.radius = num(key, value)?,
        "probe.i" | "i" | "probe.index_i" => cfg.index_i = num(key, value)?,
        "probe.j" | "j" | "probe.index_j" => cfg.index_j = num(key, value)?,
        "grid.s_min" | "s_min" => cfg.s_min = num(key, value)?,
        "grid.s_max" | "s_max" => cfg.s_max = num(key, value)?,
        "grid.h" | "grid.step" | "h" | "step" => cfg.step = num(key, value)?,
        "quadrature.nodes_per_dim" | "nodes_per_dim" => cfg.nodes_per_dim = num(key, value)?,
        "quadrature.truncation_radius" | "truncation_radius" => {
            cfg.truncation_radius = num(key, value)?
        }
        "quadrature.target_rel_tol" | "target_rel_tol" => cfg.target_rel_tol = num(key, value)?,
        "quadrature.absolute_floor" | "absolute_floor" => cfg.absolute_floor = num(key, value)?,
        "quadrature.doubling_rounds" | "doubling_rounds" => {
            cfg.doubling_rounds = num(key, value)?
        }
        "output.path" | "output" => cfg.output = Some(PathBuf::from(value)),
        "output.gnuplot_header" | "gnuplot_header" => {
            cfg.gnuplot_header = num::<bool>(key, value)?
        }
        "verify.suite" | "suite" => cfg.suite = Some(value.to_string()),
        "sweep.spaces" | "spaces" => cfg.spaces = Some(value.to_string()),
        other => return Err(format!("unknown config key {other:?}")),
    }
    Ok(())
}

/// Parse a config file: `key = value` lines under `[section]` headers,
/// `#` comments, blank lines ignored.
fn apply_config_file(cfg: &mut RunConfig, path: &Path) -> Result<(), String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(inner) = line.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            section = inner.trim().to_ascii_lowercase();
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), idx + 1))?;
        let key = if section.is_empty() {
            k.trim().to_ascii_lowercase()
        } else {
            format!("{section}.{}", k.trim().to_ascii_lowercase())
        };
        set_key(cfg, &key, v.trim())
            .map_err(|e| format!("{}:{}: {e}", path.display(), idx + 1))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Command-line surface
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "hypabel",
    version,
    about = "Radon and Abel transforms on indefinite hyperbolic spaces over R, C and H"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the derived invariants of a space
    Params(SharedArgs),
    /// Tabulate Rf, Af and the operator column over an s-grid, as CSV
    Transform(SharedArgs),
    /// Run one verification suite and emit a JSON report
    Verify(SharedArgs),
    /// Run verification suites across a list of spaces and summarize
    Sweep(SharedArgs),
}

#[derive(Args, Debug)]
struct SharedArgs {
    /// Config file (`[section]` headers + `key = value` lines); flags win
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base field: R, C or H
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// projective (default) or nonprojective (R only)
    #[arg(long)]
    variant: Option<String>,
    /// Probe: gaussian, bump, angular, odd or zero
    #[arg(long)]
    probe: Option<String>,
    /// Radial decay rate of the gaussian/angular/odd probes
    #[arg(long)]
    beta: Option<f64>,
    /// Support radius of the bump probe
    #[arg(long)]
    radius: Option<f64>,
    /// First 1-based coordinate index of the angular/odd modulation
    #[arg(long = "index-i")]
    index_i: Option<usize>,
    /// Second 1-based coordinate index of the angular modulation
    #[arg(long = "index-j")]
    index_j: Option<usize>,
    #[arg(long = "s-min", allow_negative_numbers = true)]
    s_min: Option<f64>,
    #[arg(long = "s-max", allow_negative_numbers = true)]
    s_max: Option<f64>,
    /// Grid step h
    #[arg(long)]
    step: Option<f64>,
    /// Base quadrature nodes per axis
    #[arg(long)]
    nodes: Option<usize>,
    /// Truncation radius of the nilpotent coordinates
    #[arg(long)]
    truncation: Option<f64>,
    /// Relative tolerance of the quadrature audit
    #[arg(long)]
    tol: Option<f64>,
    /// Absolute error at which the quadrature audit accepts
    #[arg(long = "absolute-floor")]
    absolute_floor: Option<f64>,
    /// Resolution doublings before the audit gives up
    #[arg(long)]
    rounds: Option<u32>,
    /// Output file (transform, verify) or directory (sweep); stdout if absent
    #[arg(long)]
    output: Option<PathBuf>,
    /// Prefix the CSV header with '#' so gnuplot skips it
    #[arg(long = "gnuplot-header")]
    gnuplot_header: bool,
    /// Verification suite: consistency, lemmaG, support, exchange, parity,
    /// schwartz or theorem-vi
    #[arg(long)]
    suite: Option<String>,
    /// Semicolon-separated space list, e.g. "R,0,2;R,0,4;C,0,2"
    #[arg(long)]
    spaces: Option<String>,
}

impl SharedArgs {
    fn resolve(&self) -> Result<RunConfig, String> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            apply_config_file(&mut cfg, path)?;
        }
        if let Some(v) = &self.field {
            cfg.field = Field::parse(v).map_err(|e| e.to_string())?;
        }
        if let Some(v) = self.p {
            cfg.p = v;
        }
        if let Some(v) = self.q {
            cfg.q = v;
        }
        if let Some(v) = &self.variant {
            cfg.variant = parse_variant(v)?;
        }
        if let Some(v) = &self.probe {
            cfg.probe = v.clone();
        }
        if let Some(v) = self.beta {
            cfg.beta = v;
        }
        if let Some(v) = self.radius {
            cfg.radius = v;
        }
        if let Some(v) = self.index_i {
            cfg.index_i = v;
        }
        if let Some(v) = self.index_j {
            cfg.index_j = v;
        }
        if let Some(v) = self.s_min {
            cfg.s_min = v;
        }
        if let Some(v) = self.s_max {
            cfg.s_max = v;
        }
        if let Some(v) = self.step {
            cfg.step = v;
        }
        if let Some(v) = self.nodes {
            cfg.nodes_per_dim = v;
        }
        if let Some(v) = self.truncation {
            cfg.truncation_radius = v;
        }
        if let Some(v) = self.tol {
            cfg.target_rel_tol = v;
        }
        if let Some(v) = self.absolute_floor {
            cfg.absolute_floor = v;
        }
        if let Some(v) = self.rounds {
            cfg.doubling_rounds = v;
        }
        if let Some(v) = &self.output {
            cfg.output = Some(v.clone());
        }
        if self.gnuplot_header {
            cfg.gnuplot_header = true;
        }
        if let Some(v) = &self.suite {
            cfg.suite = Some(v.clone());
        }
        if let Some(v) = &self.spaces {
            cfg.spaces = Some(v.clone());
        }
        Ok(cfg)
    }
}

/// Entry point for the binary: parse, dispatch, map errors to exit codes.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let args = match &cli.cmd {
        Cmd::Params(a) | Cmd::Transform(a) | Cmd::Verify(a) | Cmd::Sweep(a) => a,
    };
    let cfg = match args.resolve() {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.cmd {
        Cmd::Params(_) => cmd_params(&cfg, &mut out),
        Cmd::Transform(_) => cmd_transform(&cfg, &mut out),
        Cmd::Verify(_) => cmd_verify(&cfg, &mut out),
        Cmd::Sweep(_) => cmd_sweep(&cfg, &mut out),
    }
}

// ---------------------------------------------------------------------------
// params
// ---------------------------------------------------------------------------

/// Print the derived invariants of the configured space.
pub fn cmd_params(cfg: &RunConfig, out: &mut dyn Write) -> i32 {
    let sp = match cfg.space() {
        Ok(sp) => sp,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut text = String::new();
    let _ = writeln!(text, "space        {}", sp.label());
    let _ = writeln!(text, "d            {}", sp.d());
    let _ = writeln!(text, "rho_q        {}", sp.rho_q());
    let _ = writeln!(text, "rho_1        {}", sp.rho_1());
    if sp.p >= sp.q {
        let _ = writeln!(text, "no expansion regime (p \u{2265} q); support theorem applies");
    } else {
        let (k0, eps) = k0_eps(&sp).expect("p < q checked");
        let _ = writeln!(text, "k0           {k0}");
        let _ = writeln!(text, "epsilon      {eps}");
        let lambdas = noncuspidal(&sp);
        let list: Vec<String> = lambdas.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "noncuspidal  {{{}}}", list.join(", "));
        let op = build_d(&sp).expect("p < q checked");
        let _ = writeln!(text, "L(xi)        {}", op.display_poly());
    }
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_FAIL;
    }
    EXIT_OK
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

/// Tabulate the transforms over the configured grid and write CSV rows
/// `s,Rf,Af,ADf,err`. The ADf column is empty wherever the iterated stencil
/// has no full neighborhood (and everywhere when the space admits no
/// operator, i.e. p >= q).
pub fn cmd_transform(cfg: &RunConfig, out: &mut dyn Write) -> i32 {
    let sp = match cfg.space() {
        Ok(sp) => sp,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let probe = match cfg.build_probe(&sp) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let grid = match cfg.grid() {
        Ok(g) => g,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let spec = effective_spec(probe.as_ref(), &cfg.quadrature());
    let mut tg = match compute_grid(probe.as_ref(), &sp, &grid, &spec) {
        Ok(tg) => tg,
        Err(TransformError::AtPoint { s, source }) => {
            eprintln!("error: no convergence at s = {s}: {source}");
            return EXIT_FAIL;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    // The operator column exists only where the expansion regime does.
    if let Ok(op) = build_d(&sp) {
        match apply_l(&tg, &op, None) {
            Ok(app) => tg.adf = Some(app),
            Err(TransformError::BadArgument(_)) => {} // grid too short for the stencil
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_FAIL;
            }
        }
    }
    let csv = render_csv(&tg, cfg.gnuplot_header);
    emit(cfg, out, &csv)
}

fn render_csv(tg: &crate::transforms::TransformGrid, gnuplot_header: bool) -> String {
    let mut text = String::new();
    if gnuplot_header {
        text.push_str("# ");
    }
    text.push_str("s,Rf,Af,ADf,err\n");
    for i in 0..tg.s.len() {
        let adf = tg
            .adf
            .as_ref()
            .and_then(|app| app.values[i])
            .map(|v| v.to_string())
            .unwrap_or_default();
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            tg.s[i], tg.rf[i], tg.af[i], adf, tg.point_err[i]
        );
    }
    text
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// Everything a verification report needs to be reproduced.
#[derive(Serialize)]
struct JsonReport<'a> {
    config: &'a RunConfig,
    suite: &'a str,
    checks: &'a [crate::verify::Check],
    version: &'static str,
}

/// Run one suite; JSON report to the output path or stdout. Exit 0 only if
/// every check passed, 2 when the suite does not apply to the combination.
pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> i32 {
    let suite_name = match &cfg.suite {
        Some(name) => name.clone(),
        None => {
            eprintln!("error: verify needs --suite (or suite = ... in the config)");
            return EXIT_USAGE;
        }
    };
    let suite = match Suite::parse(&suite_name) {
        Some(s) => s,
        None => {
            eprintln!(
                "error: unknown suite {suite_name:?} (expected one of {})",
                Suite::ALL
                    .iter()
                    .map(|s| s.name())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            return EXIT_USAGE;
        }
    };
    let sp = match cfg.space() {
        Ok(sp) => sp,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let probe = match cfg.build_probe(&sp) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let spec = effective_spec(probe.as_ref(), &cfg.quadrature());
    let report = match run_suite(suite, &probe, &sp, &spec) {
        Ok(report) => report,
        Err(VerifyError::Incompatible(msg)) => {
            eprintln!("error: suite not applicable: {msg}");
            return EXIT_USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let json = JsonReport {
        config: cfg,
        suite: suite.name(),
        checks: &report.checks,
        version: env!("CARGO_PKG_VERSION"),
    };
    let text = match serde_json::to_string_pretty(&json) {
        Ok(mut t) => {
            t.push('\n');
            t
        }
        Err(e) => {
            eprintln!("error: cannot serialize report: {e}");
            return EXIT_FAIL;
        }
    };
    let code = emit(cfg, out, &text);
    if code != EXIT_OK {
        return code;
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

const DEFAULT_SWEEP: &str = "R,0,2;R,0,4;R,1,1;R,0,5;C,0,2";

/// Parse "R,0,2;R,0,6,nonproj;..." into spaces, deduplicating with a warning.
fn parse_space_list(text: &str) -> Result<Vec<SpaceParams>, String> {
    let mut seen = Vec::new();
    for entry in text.split(';') {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let parts: Vec<&str> = entry.split(',').map(str::trim).collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(format!(
                "space {entry:?} must be field,p,q or field,p,q,variant"
            ));
        }
        let field = Field::parse(parts[0]).map_err(|e| e.to_string())?;
        let p: usize = parts[1]
            .parse()
            .map_err(|e| format!("bad p in {entry:?}: {e}"))?;
        let q: usize = parts[2]
            .parse()
            .map_err(|e| format!("bad q in {entry:?}: {e}"))?;
        let variant = if parts.len() == 4 {
            parse_variant(parts[3])?
        } else {
            Variant::Projective
        };
        let sp = SpaceParams::new(field, p, q, variant).map_err(|e| e.to_string())?;
        if seen.contains(&sp) {
            eprintln!("warning: duplicate space {} ignored", sp.label());
        } else {
            seen.push(sp);
        }
    }
    Ok(seen)
}

/// One summary row of a sweep.
#[derive(Serialize)]
struct SweepRow {
    space: String,
    suites: usize,
    checks: usize,
    failed: usize,
    status: String,
}

/// Run the selected suite (or every applicable one) over a list of spaces.
/// Per-space JSON reports land in the output directory when given; the
/// summary CSV always goes to stdout. Exit 1 if anything failed.
pub fn cmd_sweep(cfg: &RunConfig, out: &mut dyn Write) -> i32 {
    let list_text = cfg.spaces.clone().unwrap_or_else(|| DEFAULT_SWEEP.into());
    let spaces = match parse_space_list(&list_text) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let selected: Option<Suite> = match &cfg.suite {
        Some(name) => match Suite::parse(name) {
            Some(s) => Some(s),
            None => {
                eprintln!("error: unknown suite {name:?}");
                return EXIT_USAGE;
            }
        },
        None => None,
    };
    if let Some(dir) = &cfg.output {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error: cannot create {}: {e}", dir.display());
            return EXIT_FAIL;
        }
    }
    let mut csv = String::from("space,suites,checks,failed,status\n");
    let mut any_fail = false;
    for sp in &spaces {
        let row = sweep_space(cfg, sp, selected);
        if row.status != "ok" && row.status != "skip" {
            any_fail = true;
        }
        if row.failed > 0 {
            any_fail = true;
        }
        // The space label contains commas, so it is quoted per RFC 4180.
        let _ = writeln!(
            csv,
            "\"{}\",{},{},{},{}",
            row.space, row.suites, row.checks, row.failed, row.status
        );
    }
    if out.write_all(csv.as_bytes()).is_err() {
        return EXIT_FAIL;
    }
    if let Some(dir) = &cfg.output {
        if let Err(e) = write_atomic(&dir.join("summary.csv"), &csv) {
            eprintln!("error: cannot write summary: {e}");
            return EXIT_FAIL;
        }
    }
    if any_fail {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

fn sweep_space(cfg: &RunConfig, sp: &SpaceParams, selected: Option<Suite>) -> SweepRow {
    let label = sp.label();
    let file_stem: String = label
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .flat_map(|c| std::iter::once(c).chain(std::iter::once('_')))
        .collect::<String>()
        .trim_end_matches('_')
        .to_string();
    let probe = match cfg.build_probe(sp) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {label}: {msg}");
            return SweepRow {
                space: label,
                suites: 0,
                checks: 0,
                failed: 0,
                status: "error".into(),
            };
        }
    };
    let spec = effective_spec(probe.as_ref(), &cfg.quadrature());
    let suites: Vec<Suite> = match selected {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    let mut reports: Vec<Report> = Vec::new();
    let mut checks = 0;
    let mut failed = 0;
    let mut errored = false;
    for suite in suites {
        match run_suite(suite, &probe, sp, &spec) {
            Ok(report) => {
                checks += report.checks.len();
                failed += report.checks.iter().filter(|c| !c.pass).count();
                reports.push(report);
            }
            Err(VerifyError::Incompatible(_)) => {} // not applicable here
            Err(e) => {
                eprintln!("error: {label}: {} suite: {e}", suite.name());
                errored = true;
            }
        }
    }
    if let Some(dir) = &cfg.output {
        #[derive(Serialize)]
        struct SpaceReport<'a> {
            config: &'a RunConfig,
            space: String,
            reports: &'a [Report],
            version: &'static str,
        }
        let payload = SpaceReport {
            config: cfg,
            space: label.clone(),
            reports: &reports,
            version: env!("CARGO_PKG_VERSION"),
        };
        match serde_json::to_string_pretty(&payload) {
            Ok(mut text) => {
                text.push('\n');
                if let Err(e) = write_atomic(&dir.join(format!("{file_stem}.json")), &text) {
                    eprintln!("error: {label}: {e}");
                    errored = true;
                }
            }
            Err(e) => {
                eprintln!("error: {label}: cannot serialize: {e}");
                errored = true;
            }
        }
    }
    let status = if errored {
        "error"
    } else if reports.is_empty() {
        "skip"
    } else if failed == 0 {
        "ok"
    } else {
        "fail"
    };
    SweepRow {
        space: label,
        suites: reports.len(),
        checks,
        failed,
        status: status.into(),
    }
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

/// Write to the configured output path (atomically) or to the stream.
fn emit(cfg: &RunConfig, out: &mut dyn Write, text: &str) -> i32 {
    match &cfg.output {
        Some(path) => match write_atomic(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_FAIL
            }
        },
        None => {
            if out.write_all(text.as_bytes()).is_err() {
                EXIT_FAIL
            } else {
                EXIT_OK
            }
        }
    }
}

/// Temp file in the same directory, then rename: readers never observe a
/// halfway-written artifact.
fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no name"))?;
    let tmp = path.with_file_name(format!("{}.tmp", file_name.to_string_lossy()));
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)
}

//! Command-line front end.
//!
//! Every command is a plain function writing to any [`Write`], so the binary
//! is just [`run`] plus process exit. Exit codes: 0 success, 1 usage or
//! input error, 2 enumeration budget exceeded or bound not certified.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chain::{evaluate_chain, evaluate_many, zeno_limit_trace, ChainReport, ChainScenario};
use crate::error::Error;
use crate::lhv::{certify_classical_bound, LhvCertificate};
use crate::quantum::Variant;
use crate::qubit_sector::{asymptotic_margin, minimal_violating_half_chain, sector_chain_margin, SectorScenario};
use crate::sampler::{estimate_chain, EstimateReport, SampleConfig};
use crate::separation::TOL;

pub const SCAN_HEADER: &str = "d,N,variant,lhs,rhs,margin,violated,closed_form";
pub const ZENO_HEADER: &str = "d,n,settings,lhs,rhs,margin,violated";
pub const SECTOR_HEADER: &str = "gamma,n,margin,violated,minimal_n,asymptote";

/// Significant digits for floating CSV fields.
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Budget(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(format!(
                "{e}; reduce the dimension or the half-chain count"
            )),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Formats `v` with `digits` significant digits, switching to scientific
/// notation for very small or very large magnitudes.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return format!("{:.*}", digits.saturating_sub(1), 0.0);
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..15).contains(&exp) {
        return format!("{:.*e}", digits.saturating_sub(1), v);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

fn sig(v: f64) -> String {
    format_sig(v, CSV_DIGITS)
}

/// Which chain variants a scan covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantSelection {
    Standard,
    Extended,
    Both,
}

impl VariantSelection {
    pub fn variants(self) -> Vec<Variant> {
        match self {
            VariantSelection::Standard => vec![Variant::Standard],
            VariantSelection::Extended => vec![Variant::Extended],
            VariantSelection::Both => vec![Variant::Standard, Variant::Extended],
        }
    }
}

/// Parameter grid for `scan` and `sector`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub dims: Vec<usize>,
    /// Even setting counts `N`.
    pub ns: Vec<usize>,
    pub gammas: Vec<f64>,
    pub variants: Vec<Variant>,
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self {
            dims: Vec::new(),
            ns: Vec::new(),
            gammas: vec![1.0, 2.0, 4.0, 8.0, 16.0],
            variants: vec![Variant::Standard],
        }
    }
}

impl ScanGrid {
    pub fn validate_chain(&self) -> CliResult<()> {
        if self.dims.is_empty() {
            return Err(CliError::Usage("--dims must list at least one dimension".into()));
        }
        if self.ns.is_empty() {
            return Err(CliError::Usage("--settings must list at least one N".into()));
        }
        if let Some(bad) = self.ns.iter().find(|&&n| n < 2 || n % 2 != 0) {
            return Err(CliError::Usage(format!("setting count N = {bad} must be even and >= 2")));
        }
        if self.variants.is_empty() {
            return Err(CliError::Usage("no chain variant selected".into()));
        }
        Ok(())
    }
}

fn csv_row(report: &ChainReport) -> String {
    let s = &report.scenario;
    format!(
        "{},{},{},{},{},{},{},{}",
        s.d(),
        s.big_n(),
        s.variant(),
        sig(report.lhs),
        sig(report.rhs),
        sig(report.margin),
        report.violated,
        report.closed_form.map(sig).unwrap_or_default()
    )
}

/// Chain scan as CSV, rows sorted by `(d, N, variant)`. Dimensions below 2
/// produce rows with `violated=NA`.
pub fn cmd_scan(grid: &ScanGrid, out: &mut dyn Write) -> CliResult<()> {
    grid.validate_chain()?;
    let mut dims = grid.dims.clone();
    dims.sort_unstable();
    dims.dedup();
    let mut ns = grid.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut variants = grid.variants.clone();
    variants.sort();
    variants.dedup();

    let mut cells = Vec::new();
    for &d in &dims {
        for &big_n in &ns {
            for &v in &variants {
                cells.push((d, big_n, v));
            }
        }
    }
    let feasible: Vec<ChainScenario> = cells
        .iter()
        .filter_map(|&(d, big_n, v)| ChainScenario::from_settings(d, big_n, v).ok())
        .collect();
    let mut reports = evaluate_many(&feasible)?.into_iter();

    writeln!(out, "{SCAN_HEADER}")?;
    for &(d, big_n, v) in &cells {
        if ChainScenario::from_settings(d, big_n, v).is_ok() {
            let report = reports.next().expect("one report per feasible cell");
            writeln!(out, "{}", csv_row(&report))?;
        } else {
            writeln!(out, "{d},{big_n},{v},,,,NA,")?;
        }
    }
    Ok(())
}

/// Human-readable certificate summary.
pub fn describe_certificate(cert: &LhvCertificate) -> String {
    let s = &cert.scenario;
    format!(
        "scenario: d={} n={} variant={}\nstrategies checked: {}\nmax margin (rhs - lhs): {}\nwitness: alice={:?} bob={:?}\nclassical bound {}\n",
        s.d(),
        s.n(),
        s.variant(),
        cert.strategies_checked,
        cert.max_margin,
        cert.witness.alice,
        cert.witness.bob,
        if cert.holds() { "holds" } else { "VIOLATED" }
    )
}

/// Certifies the classical bound, writes the summary to `human` and the
/// JSON certificate to `json`.
pub fn cmd_check_lhv(
    scenario: &ChainScenario,
    human: &mut dyn Write,
    json: &mut dyn Write,
) -> CliResult<LhvCertificate> {
    let cert = certify_classical_bound(scenario)?;
    human.write_all(describe_certificate(&cert).as_bytes())?;
    serde_json::to_writer_pretty(&mut *json, &cert).map_err(io::Error::from)?;
    writeln!(json)?;
    Ok(cert)
}

/// Extended-chain trace as CSV.
pub fn cmd_zeno(d: usize, n_list: &[usize], out: &mut dyn Write) -> CliResult<()> {
    if n_list.is_empty() {
        return Err(CliError::Usage("--n must list at least one half-chain count".into()));
    }
    let reports = zeno_limit_trace(d, n_list)?;
    writeln!(out, "{ZENO_HEADER}")?;
    for r in &reports {
        let s = &r.scenario;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.d(),
            s.n(),
            s.setting_count(),
            sig(r.lhs),
            sig(r.rhs),
            sig(r.margin),
            r.violated
        )?;
    }
    Ok(())
}

/// Qubit-sector margins for `n = 2..=n_max` at each `γ`, as CSV.
/// `minimal_n` is left blank when the onset lies beyond `n_max`.
pub fn cmd_sector(gammas: &[f64], n_max: usize, out: &mut dyn Write) -> CliResult<()> {
    if gammas.is_empty() {
        return Err(CliError::Usage("--gammas must list at least one value".into()));
    }
    if n_max < 2 {
        return Err(CliError::Usage(format!("--n-max {n_max} must be >= 2")));
    }
    writeln!(out, "{SECTOR_HEADER}")?;
    for &gamma in gammas {
        SectorScenario::qubit(2, gamma)?;
        let minimal = match minimal_violating_half_chain(gamma) {
            Ok(n) if n <= n_max => n.to_string(),
            Ok(_) | Err(Error::NoneFound { .. }) => String::new(),
            Err(e) => return Err(e.into()),
        };
        let asymptote = sig(asymptotic_margin(gamma));
        for n in 2..=n_max {
            let margin = sector_chain_margin(&SectorScenario::qubit(n, gamma)?);
            writeln!(
                out,
                "{gamma},{n},{},{},{minimal},{asymptote}",
                sig(margin),
                margin > TOL
            )?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SampleOutput<'a> {
    config: &'a SampleConfig,
    exact_margin: f64,
    report: &'a EstimateReport,
}

/// Samples the chain and writes the report, with its configuration echoed,
/// as JSON.
pub fn cmd_sample(config: &SampleConfig, out: &mut dyn Write) -> CliResult<EstimateReport> {
    let report = estimate_chain(config)?;
    let exact = evaluate_chain(&config.scenario)?;
    let doc = SampleOutput {
        config,
        exact_margin: exact.margin,
        report: &report,
    };
    serde_json::to_writer_pretty(&mut *out, &doc).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(report)
}

// ---------------------------------------------------------------------------
// argument parsing

#[derive(Debug, Parser)]
#[command(name = "chainbell", version, about = "Chained Bell inequalities for maximally entangled qudits")]
pub struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Master seed for sampling
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// key=value file supplying defaults; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate chain values over a (d, N) grid
    Scan {
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// Even setting counts N
        #[arg(long, value_delimiter = ',')]
        settings: Vec<usize>,
        #[arg(long, value_enum)]
        variant: Option<VariantSelection>,
    },
    /// Certify the local-hidden-variable bound by exhaustive enumeration
    CheckLhv {
        #[arg(long)]
        d: Option<usize>,
        /// Half-chain count n
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        variant: Option<VariantSelection>,
    },
    /// Extended-chain trace over growing n
    Zeno {
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
    },
    /// Qubit-sector margins over window parameters
    Sector {
        #[arg(long, value_delimiter = ',')]
        gammas: Vec<f64>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Finite-statistics estimate of the chain
    Sample {
        #[arg(long)]
        d: Option<usize>,
        /// Even setting count N
        #[arg(long)]
        settings: Option<usize>,
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, value_enum)]
        variant: Option<VariantSelection>,
    },
}

/// Parses a `key=value` config file. Blank lines and `#` comments are ignored.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", lineno + 1)))?;
        map.insert(key.trim().replace('_', "-"), value.trim().to_string());
    }
    Ok(map)
}

struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> CliResult<Self> {
        match path {
            None => Ok(Self(BTreeMap::new())),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                Ok(Self(parse_config(&text)?))
            }
        }
    }

    fn scalar<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.0
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config key `{key}`: cannot parse `{v}`")))
            })
            .transpose()
    }

    fn list<T: std::str::FromStr>(&self, key: &str) -> CliResult<Vec<T>> {
        match self.0.get(key) {
            None => Ok(Vec::new()),
            Some(v) => v
                .split(',')
                .map(|item| {
                    item.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("config key `{key}`: cannot parse `{item}`")))
                })
                .collect(),
        }
    }

    fn variant(&self) -> CliResult<Option<VariantSelection>> {
        self.0
            .get("variant")
            .map(|v| {
                VariantSelection::from_str(v, true)
                    .map_err(|_| CliError::Usage(format!("config key `variant`: unknown value `{v}`")))
            })
            .transpose()
    }
}

fn or_config<T>(flag: Vec<T>, config: Vec<T>) -> Vec<T> {
    if flag.is_empty() {
        config
    } else {
        flag
    }
}

fn required<T>(value: Option<T>, name: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

fn single_variant(sel: Option<VariantSelection>) -> CliResult<Variant> {
    match sel.unwrap_or(VariantSelection::Standard) {
        VariantSelection::Standard => Ok(Variant::Standard),
        VariantSelection::Extended => Ok(Variant::Extended),
        VariantSelection::Both => Err(CliError::Usage("this command takes a single --variant".into())),
    }
}

/// Output sink: the `--out` file, or the given stdout.
fn with_output<F>(path: Option<&Path>, stdout: &mut dyn Write, body: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    match path {
        Some(p) => {
            let mut buf = Vec::new();
            body(&mut buf)?;
            fs::write(p, buf)?;
            Ok(())
        }
        None => body(stdout),
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let config = Config::load(cli.common.config.as_deref())?;
    let out_path = cli.common.out.clone().or(config.scalar::<PathBuf>("out")?);
    let out = out_path.as_deref();

    match cli.command {
        Command::Scan { dims, settings, variant } => {
            let grid = ScanGrid {
                dims: or_config(dims, config.list("dims")?),
                ns: or_config(settings, config.list("settings")?),
                variants: variant
                    .or(config.variant()?)
                    .unwrap_or(VariantSelection::Standard)
                    .variants(),
                ..ScanGrid::default()
            };
            grid.validate_chain()?;
            with_output(out, stdout, |w| cmd_scan(&grid, w))
        }
        Command::CheckLhv { d, n, variant } => {
            let d = required(d.or(config.scalar("d")?), "d")?;
            let n = required(n.or(config.scalar("n")?), "n")?;
            let variant = single_variant(variant.or(config.variant()?))?;
            let scenario = ChainScenario::new(d, n, variant)?;
            let mut human = Vec::new();
            let mut json = Vec::new();
            let cert = cmd_check_lhv(&scenario, &mut human, &mut json)?;
            stdout.write_all(&human)?;
            match out {
                Some(p) => fs::write(p, &json)?,
                None => stdout.write_all(&json)?,
            }
            if cert.holds() {
                Ok(())
            } else {
                Err(CliError::Budget(format!(
                    "classical bound not certified: max margin {}",
                    cert.max_margin
                )))
            }
        }
        Command::Zeno { d, n } => {
            let d = required(d.or(config.scalar("d")?), "d")?;
            let mut ns = or_config(n, config.list("n")?);
            if ns.is_empty() {
                ns = vec![2, 4, 8, 16, 32];
            }
            with_output(out, stdout, |w| cmd_zeno(d, &ns, w))
        }
        Command::Sector { gammas, n_max } => {
            let mut gammas = or_config(gammas, config.list("gammas")?);
            if gammas.is_empty() {
                gammas = ScanGrid::default().gammas;
            }
            let n_max = required(n_max.or(config.scalar("n-max")?), "n-max")?;
            with_output(out, stdout, |w| cmd_sector(&gammas, n_max, w))
        }
        Command::Sample { d, settings, shots, variant } => {
            let d = required(d.or(config.scalar("d")?), "d")?;
            let big_n = required(settings.or(config.scalar("settings")?), "settings")?;
            let shots = required(shots.or(config.scalar("shots")?), "shots")?;
            let seed = cli.common.seed.or(config.scalar("seed")?).unwrap_or(0);
            let variant = single_variant(variant.or(config.variant()?))?;
            let scenario = ChainScenario::from_settings(d, big_n, variant)?;
            let cfg = SampleConfig::new(seed, shots, scenario)?;
            with_output(out, stdout, |w| cmd_sample(&cfg, w).map(|_| ()))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.75, 12), "0.750000000000");
        assert_eq!(format_sig(1.0, 12), "1.00000000000");
        assert_eq!(format_sig(0.0, 12), "0.00000000000");
        assert_eq!(format_sig(-0.137159, 6), "-0.137159");
        assert_eq!(format_sig(123.456, 5), "123.46");
        assert_eq!(format_sig(1.5e-9, 3), "1.50e-9");
    }

    #[test]
    fn config_parsing() {
        let map = parse_config("# grid\ndims = 3,4\n\nn_max=5\n").unwrap();
        assert_eq!(map["dims"], "3,4");
        assert_eq!(map["n-max"], "5");
        assert!(parse_config("oops").is_err());
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        let budget: CliError = Error::BudgetExceeded { needed: 10, budget: 1 }.into();
        assert_eq!(budget.exit_code(), 2);
        let other: CliError = Error::InvalidDimension(1).into();
        assert_eq!(other.exit_code(), 1);
    }
}

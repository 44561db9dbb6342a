//! Command line front end: zero scans, stationary points, sums over
//! zeros, the verification battery, and the cosmology profiles, all
//! emitted as CSV or JSON. Outputs are deterministic for a fixed
//! configuration and written atomically.
//!
//! Exit codes: 0 success (and all verifications passing), 1 verification
//! failure (report still written), 2 usage error, 3 numeric/domain error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use moserlab_core::cosmo::{pressure_interval, profile, CosmoParams};
use moserlab_core::eval::PrecisionPolicy;
use moserlab_core::stationary::{
    filter_tilde, gap_statistics, peak_statistics, scan_stationary, StationaryPoint,
};
use moserlab_core::sums::{spectral_sum, Kernel};
use moserlab_core::verify::{
    verify_asymptotics_ab, verify_corollaries, verify_eq34_consistency, verify_eq9,
    verify_formula1, verify_theorem1, VerificationReport,
};
use moserlab_core::zeros::{completeness_check, ingest_zeros, scan_zeros, ZeroTable};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "moserlab", version, about = "Hardy Z-function laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Zero tables: scanning, ingestion, completeness checks.
    Zeros {
        #[command(subcommand)]
        cmd: ZerosCmd,
    },
    /// Stationary points of Z between consecutive zeros.
    Stationary {
        #[command(subcommand)]
        cmd: StationaryCmd,
    },
    /// Truncated sums over the zero ordinates.
    Sums {
        #[command(subcommand)]
        cmd: SumsCmd,
    },
    /// The verification battery; reports are JSON.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Friedmann-type cosmology with R(t) = |Z(t)|.
    Cosmo {
        #[command(subcommand)]
        cmd: CosmoCmd,
    },
}

#[derive(Subcommand)]
enum ZerosCmd {
    /// Scan [t_lo, t_hi] for zeros and emit one ordinate per row.
    Scan(Common),
    /// Parse an external zero table and re-emit it in canonical form.
    Ingest {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Observed-vs-smooth zero counts at the requested heights.
    Check {
        /// Heights to check; defaults to t_hi.
        #[arg(long = "at")]
        at: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum StationaryCmd {
    /// Locate the stationary point in every gap of [t_lo, t_hi].
    Scan(Common),
    /// Gap or peak statistics over [t_lo, t_hi].
    Stats {
        #[arg(long, value_enum, default_value_t = StatsKind::Gaps)]
        what: StatsKind,
        /// Growth-benchmark exponent for peak statistics.
        #[arg(long, default_value_t = 0.25)]
        beta: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsKind {
    Gaps,
    Peaks,
}

#[derive(Subcommand)]
enum SumsCmd {
    /// Evaluate one truncated sum with its density tail.
    Eval {
        #[arg(long, value_enum)]
        kernel: KernelArg,
        /// Sum parameter t; ignored by the riemann kernel.
        #[arg(long)]
        t: Option<f64>,
        /// Truncation height; defaults to t_trunc_factor * t.
        #[arg(long)]
        t_trunc: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    InvSqShift,
    InvDiff,
    T2,
    G2,
    Riemann,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Kernel {
        match k {
            KernelArg::InvSqShift => Kernel::InvSqShift,
            KernelArg::InvDiff => Kernel::InvDiff,
            KernelArg::T2 => Kernel::T2OverDiff2,
            KernelArg::G2 => Kernel::G2OverDiff2,
            KernelArg::Riemann => Kernel::Riemann,
        }
    }
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Spectral second-derivative identity on random samples.
    Formula1 {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Two routes to zeta''/zeta at a single t.
    Eq34 {
        /// Sample point; defaults to the midpoint of [t_lo, t_hi].
        #[arg(long)]
        t: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Per-gap structure: monotone Z'/Z, one stationary point, bounds.
    Corollaries(Common),
    /// Odd-kernel sum against its pi/(4 t0) limit.
    Eq9(Common),
    /// Asymptotic relations (A) and (B) at stationary points.
    Ab(Common),
    /// Margin Delta(t0) * gamma'^alpha > 1 on the tilde subsequence.
    Theorem1(Common),
    /// Everything above; pass flags are ANDed.
    All {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CosmoCmd {
    /// Sample R, rho, p, w on a uniform grid.
    Profile {
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Nonnegative-pressure intervals around the big peaks.
    Intervals {
        /// Minimum |Z(t0)| for a peak to be attempted.
        #[arg(long, default_value_t = 1.0)]
        min_peak: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

/// Shared configuration; echoed verbatim into every JSON report.
#[derive(Args, Clone, Serialize)]
struct Common {
    #[arg(long, default_value_t = 10.0)]
    t_lo: f64,
    #[arg(long, default_value_t = 1e3)]
    t_hi: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Truncation heights are this multiple of the evaluation height.
    #[arg(long, default_value_t = 2.0)]
    t_trunc_factor: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Zero-table cache: reused when present, written after a scan.
    #[arg(long)]
    zeros: Option<PathBuf>,
}

impl Common {
    fn validate(&self) -> Result<(), CliError> {
        if !(10.0 <= self.t_lo && self.t_lo < self.t_hi && self.t_hi <= 1e5) {
            return Err(CliError::Usage(format!(
                "need 10 <= t_lo < t_hi <= 1e5, got [{}, {}]",
                self.t_lo, self.t_hi
            )));
        }
        if !(self.alpha > 0.0) {
            return Err(CliError::Usage(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.kappa > 0.0 && self.c > 0.0) {
            return Err(CliError::Usage(format!(
                "kappa and c must be positive, got {} and {}",
                self.kappa, self.c
            )));
        }
        if !(self.t_trunc_factor >= 2.0) {
            return Err(CliError::Usage(format!(
                "t_trunc_factor must be >= 2, got {}",
                self.t_trunc_factor
            )));
        }
        Ok(())
    }

    /// Truncation height the sums at heights up to `t` will use.
    fn trunc_hi(&self, t: f64) -> f64 {
        (self.t_trunc_factor * t).max(t + 1000.0).min(1e5)
    }

    fn cosmo_params(&self) -> CosmoParams<f64> {
        CosmoParams {
            kappa: self.kappa,
            c: self.c,
            k: 1,
        }
    }
}

enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<moserlab_core::Error> for CliError {
    fn from(e: moserlab_core::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numeric(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("MOSERLAB_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Returns whether every verification involved passed (vacuously true for
/// commands that do not verify anything).
fn dispatch(cli: Cli) -> Result<bool, CliError> {
    match cli.cmd {
        Cmd::Zeros { cmd } => run_zeros(cmd),
        Cmd::Stationary { cmd } => run_stationary(cmd),
        Cmd::Sums { cmd } => run_sums(cmd),
        Cmd::Verify { cmd } => run_verify(cmd),
        Cmd::Cosmo { cmd } => run_cosmo(cmd),
    }
}

// ---------------------------------------------------------------- zeros

fn run_zeros(cmd: ZerosCmd) -> Result<bool, CliError> {
    match cmd {
        ZerosCmd::Scan(common) => {
            common.validate()?;
            let table = obtain_table(&common, common.t_lo, common.t_hi)?;
            let mut csv = String::from("gamma\n");
            for &g in table.ordinates() {
                let _ = writeln!(csv, "{}", sig17(g));
            }
            emit(&csv, common.out.as_deref())?;
            Ok(true)
        }
        ZerosCmd::Ingest { input, common } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| CliError::Numeric(format!("cannot read {}: {e}", input.display())))?;
            let table = ingest_zeros::<f64>(&text)?;
            let mut csv = String::from("gamma\n");
            for &g in table.ordinates() {
                let _ = writeln!(csv, "{}", sig17(g));
            }
            emit(&csv, common.out.as_deref())?;
            Ok(true)
        }
        ZerosCmd::Check { at, common } => {
            common.validate()?;
            let table = obtain_table(&common, common.t_lo, common.t_hi)?;
            let heights = if at.is_empty() { vec![common.t_hi] } else { at };
            let mut csv = String::from("t,observed,smooth,deviation,flagged\n");
            let mut ok = true;
            for t in heights {
                let rep = completeness_check(&table, t)?;
                ok &= !rep.flagged;
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    sig17(rep.t),
                    rep.observed,
                    sig17(rep.smooth),
                    sig17(rep.deviation),
                    rep.flagged
                );
            }
            emit(&csv, common.out.as_deref())?;
            Ok(ok)
        }
    }
}

// ----------------------------------------------------------- stationary

fn run_stationary(cmd: StationaryCmd) -> Result<bool, CliError> {
    match cmd {
        StationaryCmd::Scan(common) => {
            common.validate()?;
            let points = stationary_points(&common)?;
            let mut csv = String::from("t0,gamma_lo,gamma_hi,z,z2,delta\n");
            for p in &points {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    sig17(p.t0),
                    sig17(p.gamma_lo),
                    sig17(p.gamma_hi),
                    sig17(p.z_value),
                    sig17(p.z2_value),
                    sig17(p.delta)
                );
            }
            emit(&csv, common.out.as_deref())?;
            Ok(true)
        }
        StationaryCmd::Stats { what, beta, common } => {
            common.validate()?;
            let csv = match what {
                StatsKind::Gaps => {
                    let table = obtain_table(&common, common.t_lo, common.t_hi)?;
                    let stats = gap_statistics(&table)?;
                    let mut csv = String::from("gamma_lo,size,lll_ratio\n");
                    for g in &stats.gaps {
                        let lll = g.lll_ratio.map(sig17).unwrap_or_default();
                        let _ = writeln!(csv, "{},{},{lll}", sig17(g.gamma_lo), sig17(g.size));
                    }
                    csv
                }
                StatsKind::Peaks => {
                    let points = stationary_points(&common)?;
                    let peaks = peak_statistics(&points, beta)?;
                    let mut csv = String::from("t0,abs_z,running_max,ratio\n");
                    for p in &peaks {
                        let _ = writeln!(
                            csv,
                            "{},{},{},{}",
                            sig17(p.t0),
                            sig17(p.abs_z),
                            sig17(p.running_max),
                            sig17(p.ratio)
                        );
                    }
                    csv
                }
            };
            emit(&csv, common.out.as_deref())?;
            Ok(true)
        }
    }
}

fn stationary_points(common: &Common) -> Result<Vec<StationaryPoint<f64>>, CliError> {
    let table = obtain_table(common, common.t_lo, common.t_hi)?;
    let scan = scan_stationary(&table, common.t_lo, common.t_hi, &PrecisionPolicy::accurate())?;
    for (a, b, n) in &scan.anomalies {
        eprintln!("note: gap ({a}, {b}) holds {n} stationary points");
    }
    Ok(scan.points)
}

// ----------------------------------------------------------------- sums

fn run_sums(cmd: SumsCmd) -> Result<bool, CliError> {
    let SumsCmd::Eval {
        kernel,
        t,
        t_trunc,
        common,
    } = cmd;
    common.validate()?;
    let k: Kernel = kernel.into();
    let t = match (t, k.uses_t()) {
        (Some(t), _) => t,
        (None, false) => 0.0,
        (None, true) => {
            return Err(CliError::Usage("this kernel needs --t".into()));
        }
    };
    let trunc = t_trunc.unwrap_or_else(|| common.trunc_hi(t.max(common.t_hi)));
    let table = obtain_table(&common, 10.0, trunc)?;
    let s = spectral_sum(k, t, &table, trunc)?;
    match common.format {
        Format::Csv => {
            let mut csv = String::from("t,t_trunc,partial,tail,total,tail_err\n");
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                sig17(s.t),
                sig17(s.t_trunc),
                sig17(s.partial),
                sig17(s.tail),
                sig17(s.total),
                sig17(s.tail_err)
            );
            emit(&csv, common.out.as_deref())?;
        }
        Format::Json => {
            let mut statistics = std::collections::BTreeMap::new();
            statistics.insert("t".into(), s.t);
            statistics.insert("t_trunc".into(), s.t_trunc);
            statistics.insert("partial".into(), s.partial);
            statistics.insert("tail".into(), s.tail);
            statistics.insert("total".into(), s.total);
            statistics.insert("tail_err".into(), s.tail_err);
            let rep = VerificationReport {
                name: "sums".into(),
                samples: table.count_upto(s.t_trunc),
                pass: true,
                statistics,
                notes: Vec::new(),
            };
            emit(&render_report(&rep, &common)?, common.out.as_deref())?;
        }
    }
    Ok(true)
}

// --------------------------------------------------------------- verify

fn run_verify(cmd: VerifyCmd) -> Result<bool, CliError> {
    let (reports, common) = match cmd {
        VerifyCmd::Formula1 { samples, common } => {
            common.validate()?;
            let table = obtain_table(&common, 10.0, common.trunc_hi(common.t_hi))?;
            let rep = verify_formula1(&table, common.t_lo, common.t_hi, samples, common.seed)?;
            (vec![rep], common)
        }
        VerifyCmd::Eq34 { t, common } => {
            common.validate()?;
            let t = t.unwrap_or(0.5 * (common.t_lo + common.t_hi));
            let table = obtain_table(&common, 10.0, common.trunc_hi(t))?;
            (vec![verify_eq34_consistency(t, &table)?], common)
        }
        VerifyCmd::Corollaries(common) => {
            common.validate()?;
            let table = obtain_table(&common, 10.0, common.t_hi)?;
            let rep = verify_corollaries(&table, common.t_lo, common.t_hi)?;
            (vec![rep], common)
        }
        VerifyCmd::Eq9(common) => {
            common.validate()?;
            let table = obtain_table(&common, 10.0, common.trunc_hi(common.t_hi))?;
            let scan =
                scan_stationary(&table, common.t_lo, common.t_hi, &PrecisionPolicy::accurate())?;
            (vec![verify_eq9(&scan.points, &table)?], common)
        }
        VerifyCmd::Ab(common) => {
            common.validate()?;
            let table = obtain_table(&common, 10.0, common.trunc_hi(common.t_hi))?;
            let scan =
                scan_stationary(&table, common.t_lo, common.t_hi, &PrecisionPolicy::accurate())?;
            (vec![verify_asymptotics_ab(&scan.points, &table)?], common)
        }
        VerifyCmd::Theorem1(common) => {
            common.validate()?;
            let table = obtain_table(&common, 10.0, common.t_hi)?;
            let scan =
                scan_stationary(&table, common.t_lo, common.t_hi, &PrecisionPolicy::accurate())?;
            let tilde = filter_tilde(&scan.points, common.alpha)?;
            (vec![verify_theorem1(&tilde, common.alpha)?], common)
        }
        VerifyCmd::All { samples, common } => {
            common.validate()?;
            let table = obtain_table(&common, 10.0, common.trunc_hi(common.t_hi))?;
            let scan =
                scan_stationary(&table, common.t_lo, common.t_hi, &PrecisionPolicy::accurate())?;
            let tilde = filter_tilde(&scan.points, common.alpha)?;
            let mid = 0.5 * (common.t_lo + common.t_hi);
            let reports = vec![
                verify_formula1(&table, common.t_lo, common.t_hi, samples, common.seed)?,
                verify_eq34_consistency(mid, &table)?,
                verify_corollaries(&table, common.t_lo, common.t_hi)?,
                verify_eq9(&scan.points, &table)?,
                verify_asymptotics_ab(&scan.points, &table)?,
                verify_theorem1(&tilde, common.alpha)?,
            ];
            (reports, common)
        }
    };
    let all_pass = reports.iter().all(|r| r.pass);
    let rendered: Vec<String> = reports
        .iter()
        .map(|r| render_report(r, &common))
        .collect::<Result<_, _>>()?;
    let text = if rendered.len() == 1 {
        rendered.into_iter().next().unwrap()
    } else {
        format!("[\n{}\n]\n", rendered.iter().map(|s| s.trim_end()).collect::<Vec<_>>().join(",\n"))
    };
    emit(&text, common.out.as_deref())?;
    Ok(all_pass)
}

// ---------------------------------------------------------------- cosmo

fn run_cosmo(cmd: CosmoCmd) -> Result<bool, CliError> {
    match cmd {
        CosmoCmd::Profile { step, common } => {
            common.validate()?;
            if !(step > 0.0) {
                return Err(CliError::Usage(format!("step must be positive, got {step}")));
            }
            let table = obtain_table(&common, 10.0, common.trunc_hi(common.t_hi))?;
            let rows = profile(common.t_lo, common.t_hi, step, &common.cosmo_params(), &table)?;
            let mut csv = String::from("t,r,dr,ddr,rho,p,w,model_err\n");
            for r in &rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{}",
                    sig17(r.t),
                    sig17(r.r),
                    sig17(r.dr),
                    sig17(r.ddr),
                    sig17(r.rho),
                    sig17(r.p),
                    sig17(r.w),
                    sig17(r.model_err)
                );
            }
            emit(&csv, common.out.as_deref())?;
            Ok(true)
        }
        CosmoCmd::Intervals { min_peak, common } => {
            common.validate()?;
            let table = obtain_table(&common, 10.0, common.trunc_hi(common.t_hi))?;
            let scan =
                scan_stationary(&table, common.t_lo, common.t_hi, &PrecisionPolicy::accurate())?;
            let params = common.cosmo_params();
            let mut csv = String::from("t0,delta,lo,hi,p_at_t0\n");
            let mut skipped = 0usize;
            for p in scan.points.iter().filter(|p| p.z_value.abs() >= min_peak) {
                match pressure_interval(p, &params, &table) {
                    Ok(iv) => {
                        let _ = writeln!(
                            csv,
                            "{},{},{},{},{}",
                            sig17(iv.t0),
                            sig17(iv.delta),
                            sig17(iv.lo),
                            sig17(iv.hi),
                            sig17(iv.p_at_t0)
                        );
                    }
                    Err(moserlab_core::Error::NoInterval { t0 }) => {
                        eprintln!("note: no nonnegative-pressure interval at t0 = {t0}");
                        skipped += 1;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            emit(&csv, common.out.as_deref())?;
            Ok(skipped == 0)
        }
    }
}

// ------------------------------------------------------------- plumbing

/// A `VerificationReport` with the effective configuration and artifact
/// version attached; the serialized key order is fixed.
#[derive(Serialize)]
struct CliReport<'a> {
    name: &'a str,
    samples: usize,
    pass: bool,
    statistics: &'a std::collections::BTreeMap<String, f64>,
    notes: &'a [String],
    config: &'a Common,
    version: &'a str,
}

fn render_report(rep: &VerificationReport, common: &Common) -> Result<String, CliError> {
    let wrapped = CliReport {
        name: &rep.name,
        samples: rep.samples,
        pass: rep.pass,
        statistics: &rep.statistics,
        notes: &rep.notes,
        config: common,
        version: VERSION,
    };
    let mut text = serde_json::to_string_pretty(&wrapped)
        .map_err(|e| CliError::Numeric(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// 17 significant digits, round-trip exact for f64.
fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write to the path (atomically, temp then rename) or standard output.
fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp~");
    std::fs::write(&tmp, text)
        .map_err(|e| CliError::Numeric(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| CliError::Numeric(format!("cannot rename into {}: {e}", path.display())))?;
    Ok(())
}

/// Zero table covering [need_lo, need_hi]: loaded from the cache when the
/// path exists, otherwise scanned (and cached when a path was given).
fn obtain_table(common: &Common, need_lo: f64, need_hi: f64) -> Result<ZeroTable<f64>, CliError> {
    if let Some(path) = &common.zeros {
        if path.exists() {
            let table = load_cache(path)?;
            let (lo, hi) = table.range();
            if lo > need_lo || hi < need_hi {
                return Err(CliError::Numeric(format!(
                    "cached table {} covers [{lo}, {hi}] but [{need_lo}, {need_hi}] is needed; \
                     delete it or rescan",
                    path.display()
                )));
            }
            return Ok(table);
        }
    }
    let table = scan_zeros(need_lo, need_hi, &PrecisionPolicy::accurate())?;
    if let Some(path) = &common.zeros {
        save_cache(path, &table)?;
    }
    Ok(table)
}

fn load_cache(path: &Path) -> Result<ZeroTable<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Numeric(format!("cannot read {}: {e}", path.display())))?;
    let mut range: Option<(f64, f64)> = None;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# range ") {
            let mut it = rest.split_whitespace();
            if let (Some(a), Some(b)) = (it.next(), it.next()) {
                range = a.parse().ok().zip(b.parse().ok());
            }
        }
    }
    let table = ingest_zeros::<f64>(&text)?;
    match range {
        Some((lo, hi)) => Ok(table.with_range(lo, hi)?),
        None => Ok(table),
    }
}

fn save_cache(path: &Path, table: &ZeroTable<f64>) -> Result<(), CliError> {
    let (lo, hi) = table.range();
    let mut text = String::from("# moserlab zero table\n");
    let _ = writeln!(text, "# range {} {}", sig17(lo), sig17(hi));
    let _ = writeln!(text, "# refine-tol {}", sig17(table.refine_tol()));
    for &g in table.ordinates() {
        let _ = writeln!(text, "{}", sig17(g));
    }
    write_atomic(path, &text)
}

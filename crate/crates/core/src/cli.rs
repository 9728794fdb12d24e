//! The `qorrelate` command line: Monte Carlo percentage tables, single-state
//! reports, Dicke scans and power-law fits, written as CSV or JSON.
//!
//! Every output starts with `#` metadata lines (or a `meta` object in JSON)
//! echoing the run configuration. Worker count and output path are left out
//! of the echo so that the bytes depend on the computation only.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::dicke::{dicke_discord_score, dicke_tangle, dicke_workdeficit_score_with};
use crate::error::{Error, Result};
use crate::measures::{pure_cut_base, BasisSearch, Direction, Measure, MeasureKind};
use crate::monogamy::{
    classify, discord_bound, ensemble_scores, monogamy_scores, scaling_fit, DEFAULT_EPS,
};
use crate::states::{dicke_state, ghz_state, w_state, EnsembleSpec, Family, PureState};

const ARROWS: &str = "fwd measures the nodal qubit of each pair, bwd measures the other qubit";
const CKW_TOL: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-4;
const TANGLE_TOL: f64 = 1e-8;

#[derive(Parser, Debug, Clone)]
#[command(name = "qorrelate", version, about = "Monogamy of quantum correlations in multiqubit pure states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Percentage of monogamous states in a random ensemble, one row per measure.
    Table(TableArgs),
    /// All sixteen monogamy scores, the tangle and the discord bound of one state.
    State(StateArgs),
    /// Closed-form discord, work-deficit and tangle scores of Dicke states.
    DickeScan(ScanArgs),
    /// Fit p_n = p_c + n^(-alpha) to (n, p) pairs.
    Fit(FitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "QORRELATE_WORKERS")]
    pub workers: Option<usize>,
    /// Assert invariants and exit nonzero if any fails.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 60)]
    pub theta_steps: usize,
    #[arg(long, default_value_t = 120)]
    pub phi_steps: usize,
    /// Grid points refined by pattern search.
    #[arg(long, default_value_t = 3)]
    pub starts: usize,
    /// Smallest refinement step, radians.
    #[arg(long, default_value_t = 1e-5)]
    pub min_step: f64,
    #[arg(long, default_value_t = 1e-7)]
    pub objective_tol: f64,
}

impl SearchArgs {
    pub fn search(&self) -> BasisSearch {
        BasisSearch {
            theta_steps: self.theta_steps,
            phi_steps: self.phi_steps,
            starts: self.starts,
            min_step: self.min_step,
            objective_tol: self.objective_tol,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Excitation count (gen-dicke only).
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Comma-separated measure flags (c, c2, e, ..., wd2-bwd) or `all`.
    #[arg(long, default_value = "all")]
    pub measures: String,
    /// Nodal party, counted from 1.
    #[arg(long, default_value_t = 1)]
    pub nodal: usize,
    /// A state is monogamous when its score is at least -eps.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateName {
    W,
    Ghz,
    Dicke,
}

#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    #[arg(long, value_enum, conflicts_with = "amplitudes", required_unless_present = "amplitudes")]
    pub name: Option<StateName>,
    #[arg(long, required_unless_present = "amplitudes")]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// File with one amplitude per line: `re im` or `re,im`; `#` starts a comment.
    #[arg(long)]
    pub amplitudes: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub nodal: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 3)]
    pub n_min: usize,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub r_min: usize,
    /// Largest excitation count; capped at n - 1.
    #[arg(long)]
    pub r_max: Option<usize>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct FitArgs {
    /// CSV with columns `n` and `p` (or the first two columns).
    #[arg(long)]
    pub input: PathBuf,
    /// Assumed large-n limit p_c.
    #[arg(long, default_value_t = 0.0)]
    pub pc: f64,
    /// Input p values (and p_c) are percentages rather than fractions.
    #[arg(long)]
    pub percent: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Configuration echoed into every output header.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<StateName>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_range: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_range: Option<(usize, Option<usize>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measures: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodal: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<BasisSearch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub percent: Option<bool>,
    pub format: Option<Format>,
    pub check: bool,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl RunConfig {
    fn base(subcommand: &str, out: &OutputArgs) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            format: Some(out.format),
            check: out.check,
            output: out.output.clone(),
            workers: out.workers,
            ..Self::default()
        }
    }
}

/// Rendered output of one command and the failed `--check` assertions, if any.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub config: RunConfig,
    pub bytes: Vec<u8>,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
struct Meta<'a> {
    version: &'static str,
    config: &'a RunConfig,
    arrows: &'static str,
}

fn header_lines(config: &RunConfig) -> Result<String> {
    let json = serde_json::to_string(config).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut s = format!("# qorrelate {}\n# config {json}\n", env!("CARGO_PKG_VERSION"));
    if let Some(seed) = config.seed {
        s.push_str(&format!("# seed {seed}\n"));
    }
    s.push_str(&format!("# arrows: {ARROWS}\n"));
    Ok(s)
}

fn render<R: Serialize, X: Serialize>(config: &RunConfig, rows: &[R], extra: Option<X>) -> Result<Vec<u8>> {
    let io_err = |e: String| Error::InvalidArgument(format!("serialization failed: {e}"));
    match config.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = header_lines(config)?.into_bytes();
            {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(&mut buf);
                for row in rows {
                    w.serialize(row).map_err(|e| io_err(e.to_string()))?;
                }
                w.flush().map_err(|e| io_err(e.to_string()))?;
            }
            Ok(buf)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a, R, X> {
                meta: Meta<'a>,
                rows: &'a [R],
                #[serde(flatten, skip_serializing_if = "Option::is_none")]
                extra: Option<X>,
            }
            let doc = Doc {
                meta: Meta {
                    version: env!("CARGO_PKG_VERSION"),
                    config,
                    arrows: ARROWS,
                },
                rows,
                extra,
            };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| io_err(e.to_string()))?;
            s.push('\n');
            Ok(s.into_bytes())
        }
    }
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Error::InvalidArgument("worker count must be positive".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    pool.install(f)
}

fn nodal_index(nodal: usize, n: usize) -> Result<usize> {
    if nodal == 0 || nodal > n {
        return Err(Error::InvalidSubset(format!(
            "nodal party {nodal} outside 1..={n}"
        )));
    }
    Ok(nodal - 1)
}

#[derive(Debug, Serialize)]
struct TableRow {
    family: Family,
    n: usize,
    r: Option<usize>,
    kind: String,
    samples: u64,
    monogamous_count: u64,
    percentage: f64,
    eps: f64,
    seed: u64,
}

pub fn cmd_table(args: &TableArgs) -> Result<Outcome> {
    let kinds = MeasureKind::parse_list(&args.measures)?;
    let search = args.search.search();
    let spec = EnsembleSpec {
        family: args.family,
        n: args.n,
        r: args.r,
        samples: args.samples,
        master_seed: args.seed,
    };
    spec.validate()?;
    let nodal = nodal_index(args.nodal, args.n)?;
    if !(args.eps >= 0.0) {
        return Err(Error::InvalidArgument("eps must be non-negative".into()));
    }
    let config = RunConfig {
        family: Some(args.family),
        n: Some(args.n),
        r: args.r,
        samples: Some(args.samples),
        seed: Some(args.seed),
        measures: Some(kinds.iter().map(|k| k.flag()).collect()),
        nodal: Some(args.nodal),
        search: Some(search.clone()),
        eps: Some(args.eps),
        ..RunConfig::base("table", &args.out)
    };

    let tangle_kind = MeasureKind::squared(Measure::Concurrence);
    let mut evaluated = kinds.clone();
    if args.out.check && !evaluated.contains(&tangle_kind) {
        evaluated.push(tangle_kind);
    }
    let scores = with_workers(args.out.workers, || {
        ensemble_scores(&spec, &evaluated, nodal, &search)
    })?;
    let rows = classify(&spec, &kinds, nodal, &scores, args.eps);

    let mut failures = Vec::new();
    if args.out.check {
        let k = evaluated.iter().position(|&k| k == tangle_kind).expect("tangle evaluated");
        let bad = scores.iter().filter(|s| s[k] < -CKW_TOL).count();
        if bad > 0 {
            failures.push(format!("{bad} samples with tangle below -{CKW_TOL:e}"));
        }
        for row in &rows {
            if row.monogamous_count > row.total {
                failures.push(format!("{}: count exceeds total", row.kind));
            }
        }
    }

    let out: Vec<TableRow> = rows
        .iter()
        .map(|row| TableRow {
            family: spec.family,
            n: spec.n,
            r: spec.r,
            kind: row.kind.flag(),
            samples: row.total,
            monogamous_count: row.monogamous_count,
            percentage: row.percentage,
            eps: row.classification_epsilon,
            seed: spec.master_seed,
        })
        .collect();
    let bytes = render(&config, &out, None::<()>)?;
    Ok(Outcome { config, bytes, failures })
}

/// Reads amplitudes from text: one per line as `re im`, `re,im` or `re`.
pub fn parse_amplitudes(text: &str) -> Result<PureState> {
    let mut amps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let parse = |s: &str| {
            s.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                Error::InvalidState(format!("line {}: bad number '{s}'", lineno + 1))
            })
        };
        let z = match fields.as_slice() {
            [re] => Complex64::new(parse(re)?, 0.0),
            [re, im] => Complex64::new(parse(re)?, parse(im)?),
            _ => {
                return Err(Error::InvalidState(format!(
                    "line {}: expected 're im' or 're,im', got '{line}'",
                    lineno + 1
                )))
            }
        };
        amps.push(z);
    }
    if amps.is_empty() {
        return Err(Error::InvalidState("no amplitudes found".into()));
    }
    PureState::normalized(amps)
}

#[derive(Debug, Serialize)]
struct StateRow {
    quantity: String,
    cut_value: Option<f64>,
    pair_values: String,
    score: f64,
    monogamous: Option<bool>,
}

#[derive(Debug, Serialize)]
struct StateExtra {
    tangle: f64,
    discord_bound: BoundReport,
}

#[derive(Debug, Serialize)]
struct BoundReport {
    score: f64,
    bound: f64,
    tangle: f64,
    premise_holds: bool,
    bound_holds: Option<bool>,
}

pub fn cmd_state(args: &StateArgs) -> Result<Outcome> {
    let search = args.search.search();
    let mut config = RunConfig {
        nodal: Some(args.nodal),
        search: Some(search.clone()),
        ..RunConfig::base("state", &args.out)
    };
    let psi = match (&args.amplitudes, args.name) {
        (Some(path), _) => {
            config.amplitudes = Some(path.display().to_string());
            let text = fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            parse_amplitudes(&text)?
        }
        (None, Some(name)) => {
            let n = args
                .n
                .ok_or_else(|| Error::InvalidArgument("--n is required with --name".into()))?;
            config.name = Some(name);
            config.n = Some(n);
            config.r = args.r;
            match name {
                StateName::W => w_state(n)?,
                StateName::Ghz => ghz_state(n)?,
                StateName::Dicke => {
                    let r = args.r.ok_or_else(|| {
                        Error::InvalidArgument("--r is required for dicke states".into())
                    })?;
                    dicke_state(n, r)?
                }
            }
        }
        (None, None) => {
            return Err(Error::InvalidArgument("give --name or --amplitudes".into()))
        }
    };
    let nodal = nodal_index(args.nodal, psi.n_qubits())?;
    let records = with_workers(args.out.workers, || {
        monogamy_scores(&psi, &MeasureKind::all(), nodal, &search)
    })?;
    let bound = discord_bound(&psi, nodal, &search)?;

    let mut failures = Vec::new();
    if args.out.check {
        if bound.tangle < -CKW_TOL {
            failures.push(format!("tangle {} is negative", bound.tangle));
        }
        if bound.bound_holds() == Some(false) {
            failures.push(format!(
                "zero-tangle discord bound violated: {} > {}",
                bound.score, bound.bound
            ));
        }
        let s1 = pure_cut_base(&psi, nodal, Measure::EntanglementOfFormation)?;
        for rec in &records {
            let recomputed = rec.cut_value - rec.pair_values.iter().sum::<f64>();
            if (recomputed - rec.score).abs() > 1e-12 {
                failures.push(format!("{}: score does not match its terms", rec.kind));
            }
            if rec.kind.measure == Measure::EntanglementOfFormation
                && !rec.kind.squared
                && (rec.cut_value - s1).abs() > 1e-8
            {
                failures.push("entanglement of formation cut differs from the local entropy".into());
            }
        }
    }

    let mut rows: Vec<StateRow> = records
        .iter()
        .map(|rec| StateRow {
            quantity: rec.kind.flag(),
            cut_value: Some(rec.cut_value),
            pair_values: rec
                .pair_values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            score: rec.score,
            monogamous: Some(rec.is_monogamous(DEFAULT_EPS)),
        })
        .collect();
    rows.push(StateRow {
        quantity: "tangle".into(),
        cut_value: None,
        pair_values: String::new(),
        score: bound.tangle,
        monogamous: None,
    });
    rows.push(StateRow {
        quantity: "discord-bound".into(),
        cut_value: None,
        pair_values: String::new(),
        score: bound.bound,
        monogamous: bound.bound_holds(),
    });
    let extra = StateExtra {
        tangle: bound.tangle,
        discord_bound: BoundReport {
            score: bound.score,
            bound: bound.bound,
            tangle: bound.tangle,
            premise_holds: bound.premise_holds(),
            bound_holds: bound.bound_holds(),
        },
    };
    let bytes = render(&config, &rows, Some(extra))?;
    Ok(Outcome { config, bytes, failures })
}

#[derive(Debug, Serialize)]
struct ScanRow {
    n: usize,
    r: usize,
    discord_score: f64,
    workdeficit_score_fwd: f64,
    workdeficit_score_bwd: f64,
    tangle: f64,
}

pub fn cmd_dicke_scan(args: &ScanArgs) -> Result<Outcome> {
    if args.n_min < 3 || args.n_max < args.n_min {
        return Err(Error::InvalidArgument(format!(
            "need 3 <= n-min <= n-max, got {}..={}",
            args.n_min, args.n_max
        )));
    }
    if args.r_min == 0 {
        return Err(Error::InvalidArgument("r-min must be at least 1".into()));
    }
    let search = args.search.search();
    search.validate()?;
    let config = RunConfig {
        n_range: Some((args.n_min, args.n_max)),
        r_range: Some((args.r_min, args.r_max)),
        search: Some(search.clone()),
        ..RunConfig::base("dicke-scan", &args.out)
    };

    let mut cells = Vec::new();
    for n in args.n_min..=args.n_max {
        let r_hi = args.r_max.unwrap_or(n - 1).min(n - 1);
        cells.extend((args.r_min..=r_hi).map(|r| (n, r)));
    }
    let rows = with_workers(args.out.workers, || {
        use rayon::prelude::*;
        cells
            .par_iter()
            .map(|&(n, r)| {
                Ok(ScanRow {
                    n,
                    r,
                    discord_score: dicke_discord_score(n, r)?,
                    workdeficit_score_fwd: dicke_workdeficit_score_with(n, r, Direction::OnFirst, &search)?,
                    workdeficit_score_bwd: dicke_workdeficit_score_with(n, r, Direction::OnSecond, &search)?,
                    tangle: dicke_tangle(n, r)?,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut failures = Vec::new();
    if args.out.check {
        let kinds = [
            MeasureKind::plain(Measure::DiscordBwd),
            MeasureKind::squared(Measure::Concurrence),
        ];
        for row in rows.iter().filter(|row| row.n <= 10) {
            let psi = dicke_state(row.n, row.r)?;
            let recs = monogamy_scores(&psi, &kinds, 0, &search)?;
            if (recs[0].score - row.discord_score).abs() > CLOSED_FORM_TOL {
                failures.push(format!(
                    "n={} r={}: closed-form discord score {} vs dense {}",
                    row.n, row.r, row.discord_score, recs[0].score
                ));
            }
            if (recs[1].score - row.tangle).abs() > TANGLE_TOL {
                failures.push(format!(
                    "n={} r={}: closed-form tangle {} vs dense {}",
                    row.n, row.r, row.tangle, recs[1].score
                ));
            }
        }
    }
    let bytes = render(&config, &rows, None::<()>)?;
    Ok(Outcome { config, bytes, failures })
}

/// Reads `(n, p)` pairs from CSV: columns named `n` and `p` if present,
/// otherwise the first two columns. `#` lines are comments.
pub fn read_points(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let bad = |e: csv::Error| Error::InvalidArgument(format!("malformed fit input: {e}"));
    let headers = rdr.headers().map_err(bad)?.clone();
    let col = |name: &str, fallback: usize| headers.iter().position(|h| h == name).unwrap_or(fallback);
    let (ni, pi) = (col("n", 0), col("p", 1));
    let mut points = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(bad)?;
        let get = |i: usize| -> Result<f64> {
            rec.get(i)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("malformed fit row {rec:?}")))
        };
        points.push((get(ni)?, get(pi)?));
    }
    Ok(points)
}

#[derive(Debug, Serialize)]
struct FitRow {
    p_c: f64,
    alpha: f64,
    intercept: f64,
    residual: f64,
    points: String,
}

pub fn cmd_fit(args: &FitArgs) -> Result<Outcome> {
    let text = fs::read_to_string(&args.input).map_err(|e| {
        Error::InvalidArgument(format!("cannot read {}: {e}", args.input.display()))
    })?;
    let scale = if args.percent { 0.01 } else { 1.0 };
    let points: Vec<(f64, f64)> = read_points(&text)?
        .into_iter()
        .map(|(n, p)| (n, p * scale))
        .collect();
    let fit = scaling_fit(&points, args.pc * scale)?;
    let config = RunConfig {
        input: Some(args.input.display().to_string()),
        p_c: Some(args.pc),
        percent: Some(args.percent),
        ..RunConfig::base("fit", &args.out)
    };
    let row = FitRow {
        p_c: fit.p_c,
        alpha: fit.alpha,
        intercept: fit.intercept,
        residual: fit.residual,
        points: fit
            .points
            .iter()
            .map(|(n, p)| format!("{n}:{p}"))
            .collect::<Vec<_>>()
            .join(";"),
    };
    let failures = if args.out.check && !fit.alpha.is_finite() {
        vec!["fitted exponent is not finite".to_string()]
    } else {
        Vec::new()
    };
    let bytes = render(&config, &[row], None::<()>)?;
    Ok(Outcome { config, bytes, failures })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::State(a) => cmd_state(a),
        Command::DickeScan(a) => cmd_dicke_scan(a),
        Command::Fit(a) => cmd_fit(a),
    }
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename,
/// so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = dir.join(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code: 0 on success, 1 when a `--check` assertion failed,
/// 2 on invalid input or I/O errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qorrelate: {e}");
            return 2;
        }
    };
    let written = match &outcome.config.output {
        Some(path) => write_atomic(path, &outcome.bytes),
        None => io::stdout().lock().write_all(&outcome.bytes),
    };
    if let Err(e) = written {
        eprintln!("qorrelate: cannot write output: {e}");
        return 2;
    }
    for f in &outcome.failures {
        eprintln!("qorrelate: check failed: {f}");
    }
    if outcome.failures.is_empty() {
        0
    } else {
        1
    }
}

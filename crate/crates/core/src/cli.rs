//! Command-line front end. Exit codes: 0 success, 2 a requested score is not
//! applicable, 1 any error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::histogram::score_range;
use crate::experiments::{
    census, histogram, min_mu3, min_mu3_over, run_experiment, verify_closed_forms, CheckStatus, DiscrepancyReport,
    ExperimentConfig, Filter, GridAxis, HistogramSpec, SampledFamily, Sweep, ThresholdStatus, VerifyFamily, VerifySpec,
};
use crate::families::FamilyParams;
use crate::monogamy::{monogamy_report, MuConfig, ScoreKind};
use crate::output::{fmt_num, histogram_csv, records_csv, JsonReport};
use crate::tensor::Complex;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_APPLICABLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "negmono",
    version,
    about = "Negativity-based strong monogamy scores for four-qubit pure states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full residual breakdown for one state.
    Score(ScoreArgs),
    /// Scores over a parameter grid.
    Sweep(SweepArgs),
    /// Seeded Monte Carlo run with census and histogram.
    Sample(SampleArgs),
    /// Compare closed-form expressions against the numeric pipeline.
    Verify(VerifyArgs),
    /// Smallest mu3 making a fourth-order score non-negative.
    Threshold(ThresholdArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScoreArg {
    Delta,
    Pi,
}

impl From<ScoreArg> for ScoreKind {
    fn from(s: ScoreArg) -> Self {
        match s {
            ScoreArg::Delta => ScoreKind::Delta,
            ScoreArg::Pi => ScoreKind::Pi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    None,
    NonnegDelta3,
    NonnegPi3,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::None => Filter::None,
            FilterArg::NonnegDelta3 => Filter::RequireNonnegDelta3,
            FilterArg::NonnegPi3 => Filter::RequireNonnegPi3,
        }
    }
}

#[derive(Debug, Args)]
pub struct MuArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mu3_delta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu3_pi: f64,
}

impl MuArgs {
    fn configs(&self) -> Result<(MuConfig, MuConfig)> {
        Ok((MuConfig::new(self.mu3_delta)?, MuConfig::new(self.mu3_pi)?))
    }
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long)]
    pub family: String,
    /// Comma-separated parameters; complex values as `re+imi` or `r@theta`.
    #[arg(long, allow_hyphen_values = true)]
    pub params: String,
    #[arg(long, default_value_t = 0)]
    pub focus: usize,
    #[command(flatten)]
    pub mu: MuArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// One of w-ones, wwt, gghz, class-b.
    #[arg(long)]
    pub family: String,
    /// First axis as `lo:hi:n`, or `lo:hi:n:open` to drop the end points.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Second axis (wwt: phi, class-b: phase).
    #[arg(long, allow_hyphen_values = true)]
    pub grid2: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub focus: usize,
    #[command(flatten)]
    pub mu: MuArgs,
    #[arg(long, value_enum, default_value_t = FilterArg::None)]
    pub filter: FilterArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// One of class-c, gw-ground.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FilterArg::None)]
    pub filter: FilterArg,
    #[arg(long, default_value_t = 0)]
    pub focus: usize,
    #[command(flatten)]
    pub mu: MuArgs,
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    /// Histogram range `lo:hi`; defaults to the observed score range.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the histogram CSV.
    #[arg(long)]
    pub hist_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of class-b, cluster, dicke, wwt, w-ones, gghz, or `all`.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Comma-separated mu3 values.
    #[arg(long, default_value = "1,1.5,2")]
    pub mu3: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub family: String,
    /// A single point; otherwise the grid or sampled points are used.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid2: Option<String>,
    /// Sampled points for class-c or gw-ground.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub score: ScoreArg,
    #[arg(long, default_value = "1:5")]
    pub bracket: String,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub focus: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub fn parse_real(tok: &str) -> Result<f64> {
    let v: f64 = tok.trim().parse().map_err(|_| bad(format!("not a number: {tok:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("parameter"))
    }
}

/// `re`, `re+imi`, `re-imi`, `imi`, or polar `r@theta`.
pub fn parse_complex(tok: &str) -> Result<Complex> {
    let t: String = tok.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((r, theta)) = t.split_once('@') {
        return Ok(Complex::from_polar(parse_real(r)?, parse_real(theta)?));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(&t)?, 0.0));
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |s: &str| match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        s => parse_real(s),
    };
    match split {
        Some(i) => Ok(Complex::new(parse_real(&body[..i])?, imag(&body[i..])?)),
        None => Ok(Complex::new(0.0, imag(body)?)),
    }
}

fn tokens(params: &str) -> Vec<&str> {
    params.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn expect_count<'a>(family: &str, toks: &'a [&'a str], n: usize) -> Result<&'a [&'a str]> {
    if toks.len() == n {
        Ok(toks)
    } else {
        Err(bad(format!("{family} takes {n} parameters, got {}", toks.len())))
    }
}

fn parse_count(tok: &str) -> Result<usize> {
    tok.trim()
        .parse()
        .map_err(|_| bad(format!("not a non-negative integer: {tok:?}")))
}

pub fn parse_family_params(family: &str, params: &str) -> Result<FamilyParams> {
    let toks = tokens(params);
    let cplx4 = |t: &[&str]| -> Result<[Complex; 4]> {
        Ok([
            parse_complex(t[0])?,
            parse_complex(t[1])?,
            parse_complex(t[2])?,
            parse_complex(t[3])?,
        ])
    };
    Ok(match family {
        "generic-a" => FamilyParams::GenericA {
            z: cplx4(expect_count(family, &toks, 4)?)?,
        },
        "class-b" => {
            let t = expect_count(family, &toks, 2)?;
            FamilyParams::ClassB {
                z1: parse_complex(t[0])?,
                z3: parse_complex(t[1])?,
            }
        }
        "class-c" => {
            let t = expect_count(family, &toks, 4)?;
            FamilyParams::ClassC {
                x: [
                    parse_real(t[0])?,
                    parse_real(t[1])?,
                    parse_real(t[2])?,
                    parse_real(t[3])?,
                ],
            }
        }
        "cluster" => {
            let [a, b, c, d] = cplx4(expect_count(family, &toks, 4)?)?;
            FamilyParams::Cluster { a, b, c, d }
        }
        "dicke" => {
            let t = expect_count(family, &toks, 2)?;
            FamilyParams::Dicke {
                n: parse_count(t[0])?,
                k: parse_count(t[1])?,
            }
        }
        "wwt" => {
            let t = expect_count(family, &toks, 2)?;
            FamilyParams::WWtilde {
                s: parse_real(t[0])?,
                phi: parse_real(t[1])?,
            }
        }
        "gghz" => {
            let t = expect_count(family, &toks, 2)?;
            FamilyParams::Gghz {
                z1: parse_complex(t[0])?,
                z2: parse_complex(t[1])?,
            }
        }
        "gw-ground" => {
            let t = expect_count(family, &toks, 5)?;
            FamilyParams::GwGround {
                p: parse_real(t[0])?,
                a: cplx4(&t[1..])?,
            }
        }
        "w-ones" => {
            let t = expect_count(family, &toks, 2)?;
            FamilyParams::WOnes {
                alpha: parse_complex(t[0])?,
                beta: parse_complex(t[1])?,
            }
        }
        other => return Err(bad(format!("unknown family {other:?}"))),
    })
}

/// `lo:hi:n` or `lo:hi:n:open`.
pub fn parse_grid(spec: &str) -> Result<GridAxis> {
    let parts: Vec<&str> = spec.split(':').collect();
    let (lo, hi, n, open) = match parts.as_slice() {
        [lo, hi, n] => (lo, hi, n, false),
        [lo, hi, n, "open"] => (lo, hi, n, true),
        _ => return Err(bad(format!("grid must be lo:hi:n or lo:hi:n:open, got {spec:?}"))),
    };
    let axis = GridAxis {
        lo: parse_real(lo)?,
        hi: parse_real(hi)?,
        points: parse_count(n)?,
        open,
    };
    axis.values()?;
    Ok(axis)
}

pub fn parse_range(spec: &str) -> Result<(f64, f64)> {
    match spec.split(':').collect::<Vec<_>>().as_slice() {
        [lo, hi] => Ok((parse_real(lo)?, parse_real(hi)?)),
        _ => Err(bad(format!("range must be lo:hi, got {spec:?}"))),
    }
}

fn sweep_for(family: &str, grid: Option<&str>, grid2: Option<&str>) -> Result<Sweep> {
    let axis = |s: Option<&str>, default: GridAxis| s.map_or(Ok(default), parse_grid);
    let no_second = |name: &str| match grid2 {
        Some(_) => Err(bad(format!("{name} sweeps take a single grid"))),
        None => Ok(()),
    };
    Ok(match family {
        "w-ones" => {
            no_second(family)?;
            Sweep::WOnes {
                alpha_abs: axis(grid, GridAxis::closed(0.0, 1.0, 101))?,
            }
        }
        "wwt" => Sweep::WWtilde {
            s: axis(grid, GridAxis::open(0.0, 1.0, 101))?,
            phi: axis(grid2, GridAxis::fixed(0.0))?,
        },
        "gghz" => {
            no_second(family)?;
            Sweep::Gghz {
                z1_abs: axis(grid, GridAxis::closed(0.0, 1.0, 101))?,
            }
        }
        "class-b" => Sweep::ClassB {
            r1: axis(grid, GridAxis::closed(0.0, std::f64::consts::FRAC_1_SQRT_2, 21))?,
            phase: axis(grid2, GridAxis::closed(0.0, std::f64::consts::PI, 21))?,
        },
        other => {
            return Err(bad(format!(
                "no sweep grid for family {other:?}; use w-ones, wwt, gghz or class-b"
            )))
        }
    })
}

fn sampled_family(name: &str) -> Result<SampledFamily> {
    match name {
        "class-c" => Ok(SampledFamily::ClassC),
        "gw-ground" => Ok(SampledFamily::GwGround),
        other => Err(bad(format!(
            "no sampler for family {other:?}; use class-c or gw-ground"
        ))),
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| bad(format!("write failed: {e}"));
    match path {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct JsonRecord {
    sample_index: u64,
    filter_pass: bool,
    report: JsonReport,
}

fn records_output(records: &[crate::experiments::SampleRecord], format: Format) -> Result<String> {
    match format {
        Format::Csv => records_csv(records),
        Format::Json => Ok(to_json(
            &records
                .iter()
                .map(|r| JsonRecord {
                    sample_index: r.index,
                    filter_pass: r.filter_pass,
                    report: JsonReport::new(&r.params, &r.report),
                })
                .collect::<Vec<_>>(),
        )),
    }
}

fn cmd_score(args: &ScoreArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let params = parse_family_params(&args.family, &args.params)?;
    let (mu_d, mu_p) = args.mu.configs()?;
    let report = monogamy_report(&params.build()?, args.focus, mu_d, mu_p)?;
    let text = match args.format {
        Format::Json => JsonReport::new(&params, &report).render(),
        Format::Csv => records_csv(&[crate::experiments::SampleRecord {
            index: 0,
            params,
            report: report.clone(),
            filter_pass: true,
        }])?,
    };
    emit(&text, args.out.as_ref(), out)?;
    let reasons: Vec<String> = [report.delta_reason, report.pi_reason]
        .into_iter()
        .flatten()
        .map(|r| r.to_string())
        .collect();
    if reasons.is_empty() {
        Ok(EXIT_OK)
    } else {
        for r in &reasons {
            let _ = writeln!(err, "not applicable: {r}");
        }
        Ok(EXIT_NOT_APPLICABLE)
    }
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let sweep = sweep_for(&args.family, args.grid.as_deref(), args.grid2.as_deref())?;
    let (mu_d, mu_p) = args.mu.configs()?;
    let config = ExperimentConfig::sweep(sweep)
        .with_mu3(mu_d, mu_p)
        .with_filter(args.filter.into())
        .with_focus(args.focus);
    let records = run_experiment(&config)?;
    emit(&records_output(&records, args.format)?, args.out.as_ref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_sample(args: &SampleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let family = sampled_family(&args.family)?;
    let (mu_d, mu_p) = args.mu.configs()?;
    let config = ExperimentConfig::monte_carlo(family, args.samples, args.seed)
        .with_mu3(mu_d, mu_p)
        .with_filter(args.filter.into())
        .with_focus(args.focus);
    let records = run_experiment(&config)?;
    emit(&records_output(&records, args.format)?, args.out.as_ref(), out)?;

    for (name, kind) in [("delta4", ScoreKind::Delta), ("pi4", ScoreKind::Pi)] {
        let c = census(&records, kind);
        let _ = writeln!(
            err,
            "{name}: total {}, violations {}, satisfied {}, not applicable {}",
            c.total, c.violations, c.satisfied, c.not_applicable
        );
    }
    if let Some(path) = &args.hist_out {
        let (lo, hi) = match &args.range {
            Some(r) => parse_range(r)?,
            None => match score_range(&records, &[ScoreKind::Delta, ScoreKind::Pi]) {
                Some((lo, hi)) if hi > lo => (lo, hi),
                Some((lo, _)) => (lo, lo + 1.0),
                None => (0.0, 1.0),
            },
        };
        let d = histogram(&records, HistogramSpec::new(args.bins, lo, hi, ScoreKind::Delta)?)?;
        let p = histogram(&records, HistogramSpec::new(args.bins, lo, hi, ScoreKind::Pi)?)?;
        emit(&histogram_csv(&d, &p)?, Some(path), out)?;
    }
    Ok(EXIT_OK)
}

fn verify_table(reports: &[DiscrepancyReport], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(&reports)),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            let e = |e: csv::Error| bad(e.to_string());
            w.write_record(["family", "component", "status", "max_abs", "worst_point", "compared"])
                .map_err(e)?;
            for rep in reports {
                for row in &rep.rows {
                    let status = match row.status {
                        CheckStatus::Checked => "checked",
                        CheckStatus::Reported => "reported",
                    };
                    w.write_record([
                        rep.family.name(),
                        &row.component,
                        status,
                        &fmt_num(row.max_abs),
                        row.worst_point.as_deref().unwrap_or(""),
                        &row.compared.to_string(),
                    ])
                    .map_err(e)?;
                }
            }
            let bytes = w.into_inner().map_err(|e| bad(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let families = if args.family == "all" {
        VerifyFamily::ALL.to_vec()
    } else {
        vec![VerifyFamily::from_name(&args.family)
            .ok_or_else(|| bad(format!("no closed form for {:?}", args.family)))?]
    };
    let mu3 = tokens(&args.mu3)
        .into_iter()
        .map(parse_real)
        .collect::<Result<Vec<_>>>()?;
    let mut reports = Vec::new();
    for family in families {
        let spec = VerifySpec {
            family,
            points: args.points,
            mu3: mu3.clone(),
            tol: args.tol,
            seed: args.seed,
        };
        reports.push(verify_closed_forms(&spec)?);
    }
    emit(&verify_table(&reports, args.format)?, None, out)?;
    let mut ok = true;
    for rep in &reports {
        for row in &rep.rows {
            if row.max_abs > rep.tol {
                let (label, failed) = match row.status {
                    CheckStatus::Reported => ("warning: published expression differs", false),
                    CheckStatus::Checked => ("error: closed form differs", true),
                };
                ok &= !failed;
                let _ = writeln!(
                    err,
                    "{label}: {} {} max |oracle - pipeline| = {}",
                    rep.family.name(),
                    row.component,
                    fmt_num(row.max_abs)
                );
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_ERROR })
}

#[derive(Serialize)]
struct ThresholdOutput {
    family: String,
    score: &'static str,
    bracket: (f64, f64),
    tol: f64,
    mu3: f64,
    status: &'static str,
    points: usize,
    skipped: usize,
    worst_index: Option<usize>,
}

fn cmd_threshold(args: &ThresholdArgs, out: &mut dyn Write) -> Result<i32> {
    let kind: ScoreKind = args.score.into();
    let bracket = parse_range(&args.bracket)?;
    let score = match kind {
        ScoreKind::Delta => "delta",
        ScoreKind::Pi => "pi",
    };
    let result = if let Some(p) = &args.params {
        let point = parse_family_params(&args.family, p)?;
        let t = min_mu3(&point, args.focus, kind, bracket, args.tol)?;
        ThresholdOutput {
            family: args.family.clone(),
            score,
            bracket,
            tol: args.tol,
            mu3: t.mu3,
            status: match t.status {
                ThresholdStatus::Crossing => "crossing",
                ThresholdStatus::NoThresholdInBracket => "no_threshold_in_bracket",
            },
            points: 1,
            skipped: 0,
            worst_index: Some(0),
        }
    } else {
        let points = if let Some(n) = args.samples {
            let seed = args.seed.ok_or_else(|| bad("--seed is required with --samples"))?;
            let family = sampled_family(&args.family)?;
            (0..n).map(|i| family.draw(seed, i)).collect::<Result<Vec<_>>>()?
        } else {
            sweep_for(&args.family, args.grid.as_deref(), args.grid2.as_deref())?.points()?
        };
        let g = min_mu3_over(&points, args.focus, kind, bracket, args.tol)?;
        ThresholdOutput {
            family: args.family.clone(),
            score,
            bracket,
            tol: args.tol,
            mu3: g.mu3,
            status: if g.crossings > 0 {
                "crossing"
            } else {
                "no_threshold_in_bracket"
            },
            points: g.points,
            skipped: g.skipped,
            worst_index: g.worst_index,
        }
    };
    let text = match args.format {
        Format::Json => to_json(&result),
        Format::Csv => format!(
            "family,score,mu3,status,points,skipped,worst_index\n{},{},{},{},{},{},{}\n",
            result.family,
            result.score,
            fmt_num(result.mu3),
            result.status,
            result.points,
            result.skipped,
            result.worst_index.map_or_else(|| "NA".into(), |i| i.to_string())
        ),
    };
    emit(&text, None, out)?;
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Score(a) => cmd_score(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Sample(a) => cmd_sample(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Threshold(a) => cmd_threshold(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Error::NotApplicable(reason)) => {
            let _ = writeln!(err, "not applicable: {reason}");
            EXIT_NOT_APPLICABLE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

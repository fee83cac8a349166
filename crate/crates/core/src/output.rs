//! Text renderings: CSV record tables, histogram tables and JSON reports.
//! Floats are written with 12 significant digits.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::experiments::{Histogram, SampleRecord};
use crate::families::FamilyParams;
use crate::monogamy::MonogamyReport;

const SIG_DIGITS: usize = 12;

/// `%.12g`-style formatting: fixed notation for decimal exponents in
/// `[-5, 12)`, scientific otherwise, trailing zeros removed.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// `v` rounded to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if v.is_finite() {
        fmt_num(v).parse().expect("formatted float parses")
    } else {
        v
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), fmt_num)
}

/// Named numeric columns for a family's parameters; complex values split
/// into `_re`/`_im`.
pub fn param_columns(params: &FamilyParams) -> Vec<(String, f64)> {
    let mut out = Vec::new();
    let cplx = |out: &mut Vec<(String, f64)>, name: &str, z: crate::tensor::Complex| {
        out.push((format!("{name}_re"), z.re));
        out.push((format!("{name}_im"), z.im));
    };
    match *params {
        FamilyParams::GenericA { z } => {
            for (i, zi) in z.into_iter().enumerate() {
                cplx(&mut out, &format!("z{}", i + 1), zi);
            }
        }
        FamilyParams::ClassB { z1, z3 } => {
            cplx(&mut out, "z1", z1);
            cplx(&mut out, "z3", z3);
        }
        FamilyParams::ClassC { x } => {
            for (i, xi) in x.into_iter().enumerate() {
                out.push((format!("x{}", i + 1), xi));
            }
        }
        FamilyParams::Cluster { a, b, c, d } => {
            for (name, z) in [("a", a), ("b", b), ("c", c), ("d", d)] {
                cplx(&mut out, name, z);
            }
        }
        FamilyParams::Dicke { n, k } => {
            out.push(("n".into(), n as f64));
            out.push(("k".into(), k as f64));
        }
        FamilyParams::WWtilde { s, phi } => {
            out.push(("s".into(), s));
            out.push(("phi".into(), phi));
        }
        FamilyParams::Gghz { z1, z2 } => {
            cplx(&mut out, "z1", z1);
            cplx(&mut out, "z2", z2);
        }
        FamilyParams::GwGround { p, a } => {
            out.push(("p".into(), p));
            for (i, ai) in a.into_iter().enumerate() {
                cplx(&mut out, &format!("a{}", i + 1), ai);
            }
        }
        FamilyParams::WOnes { alpha, beta } => {
            cplx(&mut out, "alpha", alpha);
            cplx(&mut out, "beta", beta);
        }
    }
    out
}

fn score_headers(report: &MonogamyReport) -> Vec<String> {
    let [j, k, l] = report.partners;
    let pairs = [format!("{j}{k}"), format!("{j}{l}"), format!("{k}{l}")];
    let mut h = Vec::new();
    for prefix in ["delta", "pi"] {
        h.push(format!("{prefix}1"));
        h.extend(report.partners.iter().map(|p| format!("{prefix}2_{p}")));
        h.extend(pairs.iter().map(|p| format!("{prefix}3_{p}")));
        h.push(format!("{prefix}4"));
    }
    h
}

fn score_cells(report: &MonogamyReport) -> Vec<String> {
    let mut c = Vec::new();
    for (one, two, three, four) in [
        (report.delta1, report.delta2, report.delta3, report.delta4),
        (report.pi1, report.pi2, report.pi3, report.pi4),
    ] {
        c.push(fmt_num(one));
        c.extend(two.iter().map(|&v| fmt_num(v)));
        c.extend(three.iter().map(|&v| fmt_num(v)));
        c.push(opt_num(four));
    }
    c
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("csv output failed: {e}"))
}

/// One row per record. All records must come from the same family and focus.
pub fn write_records_csv<W: Write>(records: &[SampleRecord], w: W) -> Result<()> {
    let first = records.first().ok_or(Error::Empty("records"))?;
    let names: Vec<String> = param_columns(&first.params).into_iter().map(|(n, _)| n).collect();
    let mut header = vec!["sample_index".to_string()];
    header.extend(names.iter().cloned());
    header.extend(score_headers(&first.report));
    header.extend(["applicable_delta", "applicable_pi", "filter_pass"].map(String::from));

    let mut out = csv_writer(w);
    out.write_record(&header).map_err(csv_err)?;
    for r in records {
        let cols = param_columns(&r.params);
        if cols.len() != names.len() || r.report.partners != first.report.partners {
            return Err(Error::InvalidParameter(format!(
                "record {} does not match the table layout",
                r.index
            )));
        }
        let mut row = vec![r.index.to_string()];
        row.extend(cols.into_iter().map(|(_, v)| fmt_num(v)));
        row.extend(score_cells(&r.report));
        row.extend([r.report.applicable_delta, r.report.applicable_pi, r.filter_pass].map(|b| b.to_string()));
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush()
        .map_err(|e| Error::InvalidParameter(format!("csv output failed: {e}")))
}

pub fn records_csv(records: &[SampleRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_records_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

/// Side-by-side δ⁽⁴⁾ and π⁽⁴⁾ counts over shared bins.
pub fn histogram_csv(delta: &Histogram, pi: &Histogram) -> Result<String> {
    if delta.spec.bins != pi.spec.bins || delta.spec.lo != pi.spec.lo || delta.spec.hi != pi.spec.hi {
        return Err(Error::InvalidParameter("histograms must share bins and range".into()));
    }
    let edges = delta.spec.edges();
    let mut buf = Vec::new();
    {
        let mut out = csv_writer(&mut buf);
        out.write_record(["bin_lower", "bin_upper", "count_delta4", "count_pi4"])
            .map_err(csv_err)?;
        for i in 0..delta.spec.bins {
            out.write_record([
                fmt_num(edges[i]),
                fmt_num(edges[i + 1]),
                delta.counts[i].to_string(),
                pi.counts[i].to_string(),
            ])
            .map_err(csv_err)?;
        }
        out.flush().map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuPair {
    pub delta: f64,
    pub pi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonScores {
    pub partners: [usize; 3],
    pub delta1: f64,
    pub delta2: [f64; 3],
    pub delta3: [f64; 3],
    pub delta4: Option<f64>,
    pub pi1: f64,
    pub pi2: [f64; 3],
    pub pi3: [f64; 3],
    pub pi4: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonApplicability {
    pub delta: bool,
    pub pi: bool,
    pub delta_reason: Option<String>,
    pub pi_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub family: String,
    pub params: Value,
    pub focus: usize,
    pub mu3: MuPair,
    pub scores: JsonScores,
    pub applicability: JsonApplicability,
    pub version: String,
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => n
            .as_f64()
            .and_then(|f| serde_json::Number::from_f64(round_sig(f)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

impl JsonReport {
    pub fn new(params: &FamilyParams, report: &MonogamyReport) -> Self {
        let mut p = serde_json::to_value(params).expect("family parameters serialize");
        if let Value::Object(o) = &mut p {
            o.remove("family");
        }
        let r3 = |a: [f64; 3]| a.map(round_sig);
        Self {
            family: params.family_name().to_string(),
            params: round_value(p),
            focus: report.focus,
            mu3: MuPair {
                delta: report.mu3_delta,
                pi: report.mu3_pi,
            },
            scores: JsonScores {
                partners: report.partners,
                delta1: round_sig(report.delta1),
                delta2: r3(report.delta2),
                delta3: r3(report.delta3),
                delta4: report.delta4.map(round_sig),
                pi1: round_sig(report.pi1),
                pi2: r3(report.pi2),
                pi3: r3(report.pi3),
                pi4: report.pi4.map(round_sig),
            },
            applicability: JsonApplicability {
                delta: report.applicable_delta,
                pi: report.applicable_pi,
                delta_reason: report.delta_reason.map(|r| r.to_string()),
                pi_reason: report.pi_reason.map(|r| r.to_string()),
            },
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("malformed report: {e}")))
    }
}

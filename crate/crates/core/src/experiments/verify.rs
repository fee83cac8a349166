//! Cross-checks of [`crate::closed_forms`] against the numeric pipeline.
//!
//! Published expressions known to disagree with the pipeline are evaluated
//! and their discrepancy recorded with status [`CheckStatus::Reported`]; they
//! never fail a check.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::substream;
use crate::closed_forms::{cf_class_b, cf_cluster, cf_dicke, cf_gghz, cf_w_ones, cf_wwt, ClosedFormBreakdown};
use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::monogamy::{FocusNegativities, MuConfig, ScoreKind};
use crate::tensor::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyFamily {
    ClassB,
    Cluster,
    Dicke,
    Wwt,
    WOnes,
    Gghz,
}

impl VerifyFamily {
    pub const ALL: [Self; 6] = [
        Self::ClassB,
        Self::Cluster,
        Self::Dicke,
        Self::Wwt,
        Self::WOnes,
        Self::Gghz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ClassB => "class-b",
            Self::Cluster => "cluster",
            Self::Dicke => "dicke",
            Self::Wwt => "wwt",
            Self::WOnes => "w-ones",
            Self::Gghz => "gghz",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySpec {
    pub family: VerifyFamily,
    /// Grid points or random samples, depending on the family.
    pub points: usize,
    pub mu3: Vec<f64>,
    pub tol: f64,
    /// Seeds the random cluster coefficients; other families use grids.
    pub seed: u64,
}

impl VerifySpec {
    pub fn new(family: VerifyFamily, points: usize, tol: f64) -> Self {
        Self {
            family,
            points,
            mu3: vec![1.0, 1.5, 2.0],
            tol,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Checked,
    Reported,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentDiscrepancy {
    pub component: String,
    pub status: CheckStatus,
    /// `inf` when one side is not applicable and the other is.
    pub max_abs: f64,
    pub worst_point: Option<String>,
    pub compared: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub family: VerifyFamily,
    pub tol: f64,
    pub rows: Vec<ComponentDiscrepancy>,
}

impl DiscrepancyReport {
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.status == CheckStatus::Checked)
            .all(|r| r.max_abs <= self.tol)
    }

    pub fn has_reported_discrepancy(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.status == CheckStatus::Reported && r.max_abs > self.tol)
    }

    pub fn row(&self, component: &str) -> Option<&ComponentDiscrepancy> {
        self.rows.iter().find(|r| r.component == component)
    }
}

/// Values the pipeline produces for one state at one `μ₃`, laid out like a
/// [`ClosedFormBreakdown`].
struct PipelineValues {
    delta1: f64,
    delta2: [f64; 3],
    three_split: [f64; 3],
    delta3: [f64; 3],
    delta4: Option<f64>,
    pi1: f64,
    pi2: [f64; 3],
    pi3: [f64; 3],
    pi4: Option<f64>,
}

impl PipelineValues {
    fn new(neg: &FocusNegativities, mu: MuConfig) -> Self {
        Self {
            delta1: neg.delta1(),
            delta2: neg.delta2(),
            three_split: neg.triples,
            delta3: neg.delta3(),
            delta4: neg.score(ScoreKind::Delta, mu).value(),
            pi1: neg.pi1(),
            pi2: neg.pi2(),
            pi3: neg.pi3(),
            pi4: neg.score(ScoreKind::Pi, mu).value(),
        }
    }
}

struct Accumulator {
    tol: f64,
    rows: Vec<ComponentDiscrepancy>,
}

impl Accumulator {
    fn record(&mut self, component: String, status: CheckStatus, diff: f64, point: &str) {
        let row = match self.rows.iter_mut().find(|r| r.component == component) {
            Some(r) => r,
            None => {
                self.rows.push(ComponentDiscrepancy {
                    component,
                    status,
                    max_abs: 0.0,
                    worst_point: None,
                    compared: 0,
                });
                self.rows.last_mut().expect("just pushed")
            }
        };
        row.compared += 1;
        if diff > row.max_abs || (row.worst_point.is_none() && diff > self.tol) {
            row.max_abs = diff;
            row.worst_point = Some(point.to_string());
        }
    }

    fn compare(
        &mut self,
        variant: &str,
        reported: &[&str],
        cf: &ClosedFormBreakdown,
        pipe: &PipelineValues,
        point: &str,
    ) {
        let mut push = |name: &str, diff: Option<f64>| {
            if let Some(diff) = diff {
                let status = if reported.contains(&name) {
                    CheckStatus::Reported
                } else {
                    CheckStatus::Checked
                };
                let component = if variant.is_empty() {
                    name.to_string()
                } else {
                    format!("{variant}.{name}")
                };
                self.record(component, status, diff, point);
            }
        };
        let scalar = |c: Option<f64>, p: f64| c.map(|c| (c - p).abs());
        let triple = |c: Option<[f64; 3]>, p: [f64; 3]| {
            c.map(|c| c.iter().zip(p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        };
        let score = |c: Option<f64>, p: Option<f64>| match (c, p) {
            (None, None) => None,
            (Some(c), Some(p)) => Some((c - p).abs()),
            _ => Some(f64::INFINITY),
        };
        push("delta1", scalar(cf.delta1, pipe.delta1));
        push("delta2", triple(cf.delta2, pipe.delta2));
        push("three_split", triple(cf.three_split, pipe.three_split));
        push("delta3", triple(cf.delta3, pipe.delta3));
        // a formula that gives no fourth-order value at this point is only
        // compared when the pipeline has one
        if cf.delta4.is_some() || (cf.delta3.is_some() && pipe.delta4.is_some()) {
            push("delta4", score(cf.delta4, pipe.delta4));
        }
        push("pi1", scalar(cf.pi1, pipe.pi1));
        push("pi2", triple(cf.pi2, pipe.pi2));
        push("pi3", triple(cf.pi3, pipe.pi3));
        if cf.pi4.is_some() || (cf.pi3.is_some() && pipe.pi4.is_some()) {
            push("pi4", score(cf.pi4, pipe.pi4));
        }
    }
}

const CLUSTER_PRINTED_REPORTED: [&str; 5] = ["three_split", "delta3", "delta4", "pi3", "pi4"];
const W_ONES_PRINTED_REPORTED: [&str; 6] = ["delta2", "delta3", "delta4", "pi2", "pi3", "pi4"];

/// Fractional part of `i·g`: a deterministic, evenly spread sequence in `[0, 1)`.
fn spread(i: usize, g: f64) -> f64 {
    (i as f64 * g).fract()
}

const G1: f64 = 0.618_033_988_749_894_9;
const G2: f64 = 0.414_213_562_373_095_1;

fn random_complex<R: Rng>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random normalized cluster coefficients; odd indices satisfy `ac* = bd*`.
fn cluster_point(seed: u64, i: usize) -> [Complex; 4] {
    let mut rng = substream(seed, i as u64);
    let (a, b, c) = (
        random_complex(&mut rng),
        random_complex(&mut rng),
        random_complex(&mut rng),
    );
    let d = if i % 2 == 1 {
        a.conj() * c / b.conj()
    } else {
        random_complex(&mut rng)
    };
    let norm = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr()).sqrt();
    [a / norm, b / norm, c / norm, d / norm]
}

fn pipeline(params: &FamilyParams) -> Result<FocusNegativities> {
    FocusNegativities::compute(&params.build()?, 0)
}

/// Per-component maximum `|oracle − pipeline|` over the family's points and
/// every `μ₃` in the spec.
pub fn verify_closed_forms(spec: &VerifySpec) -> Result<DiscrepancyReport> {
    if spec.points == 0 {
        return Err(Error::Empty("verification points"));
    }
    let mus = spec.mu3.iter().map(|&m| MuConfig::new(m)).collect::<Result<Vec<_>>>()?;
    if mus.is_empty() {
        return Err(Error::Empty("mu3 values"));
    }
    let mut acc = Accumulator {
        tol: spec.tol,
        rows: Vec::new(),
    };
    let n = spec.points;
    let pi = std::f64::consts::PI;

    for i in 0..n {
        let t = if n == 1 { 0.5 } else { i as f64 / (n - 1) as f64 };
        match spec.family {
            VerifyFamily::ClassB => {
                let theta = (i as f64 + 0.5) / n as f64 * pi / 2.0;
                let (r1, r3) = (theta.cos() / 2f64.sqrt(), theta.sin() / 2f64.sqrt());
                let (alpha, beta) = (2.0 * pi * spread(i, G1), 2.0 * pi * spread(i, G2));
                let params = FamilyParams::ClassB {
                    z1: Complex::from_polar(r1, alpha),
                    z3: Complex::from_polar(r3, beta),
                };
                let neg = pipeline(&params)?;
                let label = format!("r1={r1:.6} alpha={alpha:.6} beta={beta:.6}");
                for &mu in &mus {
                    let cf = cf_class_b(r1, r3, alpha, beta, mu)?;
                    acc.compare("", &[], &cf, &PipelineValues::new(&neg, mu), &label);
                }
            }
            VerifyFamily::Cluster => {
                let [a, b, c, d] = cluster_point(spec.seed, i);
                let neg = pipeline(&FamilyParams::Cluster { a, b, c, d })?;
                let label = format!("sample {i}");
                for &mu in &mus {
                    let cf = cf_cluster(a, b, c, d, mu)?;
                    let pipe = PipelineValues::new(&neg, mu);
                    acc.compare("printed", &CLUSTER_PRINTED_REPORTED, &cf.printed, &pipe, &label);
                    acc.compare("corrected", &[], &cf.corrected, &pipe, &label);
                }
            }
            VerifyFamily::Dicke => {
                // the closed form depends on μ₃ only; spread points over the μ list
                let k = if i % 2 == 0 { 1 } else { 3 };
                let neg = pipeline(&FamilyParams::Dicke { n: 4, k })?;
                let label = format!("k={k}");
                for &mu in &mus {
                    let cf = cf_dicke(k, mu)?;
                    acc.compare("", &[], &cf, &PipelineValues::new(&neg, mu), &label);
                }
            }
            VerifyFamily::Wwt => {
                let s = (i as f64 + 1.0) / (n as f64 + 1.0);
                let phi = 2.0 * pi * spread(i, G1);
                let neg = pipeline(&FamilyParams::WWtilde { s, phi })?;
                let label = format!("s={s:.6} phi={phi:.6}");
                for &mu in &mus {
                    let cf = cf_wwt(s, mu)?;
                    acc.compare("", &["pi4"], &cf, &PipelineValues::new(&neg, mu), &label);
                }
            }
            VerifyFamily::WOnes => {
                let a = t;
                let phase = 2.0 * pi * spread(i, G1);
                let params = FamilyParams::WOnes {
                    alpha: Complex::from_polar(a, phase),
                    beta: Complex::new((1.0 - a * a).max(0.0).sqrt(), 0.0),
                };
                let neg = pipeline(&params)?;
                let label = format!("|alpha|={a:.6}");
                for &mu in &mus {
                    let cf = cf_w_ones(a, mu)?;
                    let pipe = PipelineValues::new(&neg, mu);
                    acc.compare("printed", &W_ONES_PRINTED_REPORTED, &cf.printed, &pipe, &label);
                    acc.compare("corrected", &[], &cf.corrected, &pipe, &label);
                }
            }
            VerifyFamily::Gghz => {
                let theta = t * pi / 2.0;
                let z1 = Complex::from_polar(theta.cos(), 2.0 * pi * spread(i, G1));
                let z2 = Complex::from_polar(theta.sin(), 2.0 * pi * spread(i, G2));
                let neg = pipeline(&FamilyParams::Gghz { z1, z2 })?;
                let cf = cf_gghz(z1, z2)?;
                let label = format!("|z1|={:.6}", z1.norm());
                for &mu in &mus {
                    acc.compare("", &[], &cf, &PipelineValues::new(&neg, mu), &label);
                }
            }
        }
    }
    Ok(DiscrepancyReport {
        family: spec.family,
        tol: spec.tol,
        rows: acc.rows,
    })
}

//! Seeded sampling, parameter sweeps, censuses, histograms and threshold
//! searches built on [`crate::monogamy`].

pub mod histogram;
pub mod sampling;
pub mod threshold;
pub mod verify;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::monogamy::{FocusNegativities, MonogamyReport, MuConfig, ScoreKind};
use crate::tensor::Complex;
use crate::tolerance;

pub use histogram::{histogram, Histogram, HistogramSpec};
pub use sampling::{sample_class_c, sample_gw_ground, substream};
pub use threshold::{min_mu3, min_mu3_over, GridThreshold, Threshold, ThresholdStatus};
pub use verify::{verify_closed_forms, CheckStatus, ComponentDiscrepancy, DiscrepancyReport, VerifyFamily, VerifySpec};

/// Evenly spaced values. A closed axis includes both ends; an open axis
/// splits `[lo, hi]` into `points + 1` equal steps and drops the ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub open: bool,
}

impl GridAxis {
    pub fn closed(lo: f64, hi: f64, points: usize) -> Self {
        Self {
            lo,
            hi,
            points,
            open: false,
        }
    }

    pub fn open(lo: f64, hi: f64, points: usize) -> Self {
        Self {
            lo,
            hi,
            points,
            open: true,
        }
    }

    pub fn fixed(value: f64) -> Self {
        Self::closed(value, value, 1)
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points == 0 {
            return Err(Error::Empty("grid axis"));
        }
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::NonFinite("grid axis"));
        }
        if self.lo > self.hi || (self.open && self.lo == self.hi) {
            return Err(Error::InvalidParameter(format!(
                "grid axis needs lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        let n = self.points;
        let span = self.hi - self.lo;
        Ok(if self.open {
            (1..=n).map(|i| self.lo + span * i as f64 / (n + 1) as f64).collect()
        } else if n == 1 {
            vec![self.lo]
        } else {
            (0..n).map(|i| self.lo + span * i as f64 / (n - 1) as f64).collect()
        })
    }
}

/// Deterministic parameter grids over families with closed-form oracles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Sweep {
    /// `α|W⟩ + β|1111⟩` with real `α = value`, `β = √(1−α²)`.
    WOnes {
        alpha_abs: GridAxis,
    },
    WWtilde {
        s: GridAxis,
        phi: GridAxis,
    },
    /// `z₁ = value`, `z₂ = √(1−z₁²)`.
    Gghz {
        z1_abs: GridAxis,
    },
    /// Class ℬ with `z₁ = r₁e^{iθ}`, `z₃ = √(½−r₁²)`.
    ClassB {
        r1: GridAxis,
        phase: GridAxis,
    },
}

impl Sweep {
    pub fn points(&self) -> Result<Vec<FamilyParams>> {
        let real = |v: f64| Complex::new(v, 0.0);
        let rest = |total: f64, v: f64| (total - v * v).max(0.0).sqrt();
        Ok(match self {
            Self::WOnes { alpha_abs } => alpha_abs
                .values()?
                .into_iter()
                .map(|a| FamilyParams::WOnes {
                    alpha: real(a),
                    beta: real(rest(1.0, a)),
                })
                .collect(),
            Self::WWtilde { s, phi } => {
                let phis = phi.values()?;
                let mut out = Vec::new();
                for s in s.values()? {
                    out.extend(phis.iter().map(|&phi| FamilyParams::WWtilde { s, phi }));
                }
                out
            }
            Self::Gghz { z1_abs } => z1_abs
                .values()?
                .into_iter()
                .map(|z| FamilyParams::Gghz {
                    z1: real(z),
                    z2: real(rest(1.0, z)),
                })
                .collect(),
            Self::ClassB { r1, phase } => {
                let phases = phase.values()?;
                let mut out = Vec::new();
                for r in r1.values()? {
                    out.extend(phases.iter().map(|&theta| FamilyParams::ClassB {
                        z1: Complex::from_polar(r, theta),
                        z3: real(rest(0.5, r)),
                    }));
                }
                out
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampledFamily {
    ClassC,
    GwGround,
}

impl SampledFamily {
    pub fn draw(self, seed: u64, index: u64) -> Result<FamilyParams> {
        let mut rng = substream(seed, index);
        Ok(match self {
            Self::ClassC => FamilyParams::ClassC {
                x: sample_class_c(&mut rng)?.x,
            },
            Self::GwGround => {
                let s = sample_gw_ground(&mut rng)?;
                FamilyParams::GwGround { p: s.p, a: s.a }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Sweep(Sweep),
    MonteCarlo { family: SampledFamily, samples: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    #[default]
    None,
    RequireNonnegDelta3,
    RequireNonnegPi3,
}

impl Filter {
    pub fn passes(self, report: &MonogamyReport) -> bool {
        let floor = -tolerance::RESIDUAL_CLAMP;
        match self {
            Self::None => true,
            Self::RequireNonnegDelta3 => report.delta3.iter().all(|&r| r >= floor),
            Self::RequireNonnegPi3 => report.pi3.iter().all(|&r| r >= floor),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub seed: u64,
    pub mu3_delta: MuConfig,
    pub mu3_pi: MuConfig,
    pub focus: usize,
    pub filter: Filter,
}

impl ExperimentConfig {
    pub fn monte_carlo(family: SampledFamily, samples: u64, seed: u64) -> Self {
        Self {
            mode: Mode::MonteCarlo { family, samples },
            seed,
            mu3_delta: MuConfig::default(),
            mu3_pi: MuConfig::default(),
            focus: 0,
            filter: Filter::None,
        }
    }

    pub fn sweep(sweep: Sweep) -> Self {
        Self {
            mode: Mode::Sweep(sweep),
            seed: 0,
            mu3_delta: MuConfig::default(),
            mu3_pi: MuConfig::default(),
            focus: 0,
            filter: Filter::None,
        }
    }

    pub fn with_mu3(mut self, delta: MuConfig, pi: MuConfig) -> Self {
        self.mu3_delta = delta;
        self.mu3_pi = pi;
        self
    }

    pub fn with_filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_focus(mut self, focus: usize) -> Self {
        self.focus = focus;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: u64,
    pub params: FamilyParams,
    pub report: MonogamyReport,
    pub filter_pass: bool,
}

impl SampleRecord {
    /// Score counted by censuses and histograms: `None` when the score is
    /// not applicable or the record failed the filter.
    pub fn counted_score(&self, kind: ScoreKind) -> Option<f64> {
        if self.filter_pass {
            self.report.score(kind)
        } else {
            None
        }
    }
}

fn evaluate(config: &ExperimentConfig, index: u64, params: FamilyParams) -> Result<SampleRecord> {
    let psi = params.build()?;
    let neg = FocusNegativities::compute(&psi, config.focus)?;
    let report = MonogamyReport::from_negativities(&neg, config.mu3_delta, config.mu3_pi);
    let filter_pass = config.filter.passes(&report);
    Ok(SampleRecord {
        index,
        params,
        report,
        filter_pass,
    })
}

fn tag(index: u64) -> impl Fn(Error) -> Error {
    move |e| Error::Sample {
        index,
        source: Box::new(e),
    }
}

/// One record per grid point or sample, in index order. Records failing the
/// filter are kept with `filter_pass = false`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<SampleRecord>> {
    match &config.mode {
        Mode::Sweep(sweep) => {
            let points = sweep.points()?;
            points
                .into_par_iter()
                .enumerate()
                .map(|(i, p)| evaluate(config, i as u64, p).map_err(tag(i as u64)))
                .collect()
        }
        Mode::MonteCarlo { family, samples } => {
            if *samples == 0 {
                return Err(Error::Empty("sample count"));
            }
            (0..*samples)
                .into_par_iter()
                .map(|i| {
                    family
                        .draw(config.seed, i)
                        .and_then(|p| evaluate(config, i, p))
                        .map_err(tag(i))
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub total: usize,
    /// Scores below `−1e-9`.
    pub violations: usize,
    pub satisfied: usize,
    /// Not-applicable scores plus records that failed the filter.
    pub not_applicable: usize,
}

pub fn census(records: &[SampleRecord], kind: ScoreKind) -> Census {
    let mut c = Census {
        total: records.len(),
        violations: 0,
        satisfied: 0,
        not_applicable: 0,
    };
    for r in records {
        match r.counted_score(kind) {
            None => c.not_applicable += 1,
            Some(v) if v < -tolerance::RESIDUAL_CLAMP => c.violations += 1,
            Some(_) => c.satisfied += 1,
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(v: f64) -> MuConfig {
        MuConfig::new(v).unwrap()
    }

    #[test]
    fn grid_axes() {
        assert_eq!(GridAxis::closed(0.0, 1.0, 3).values().unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(GridAxis::open(0.0, 1.0, 3).values().unwrap(), vec![0.25, 0.5, 0.75]);
        assert_eq!(GridAxis::fixed(0.3).values().unwrap(), vec![0.3]);
        assert!(GridAxis::closed(0.0, 1.0, 0).values().is_err());
        assert!(GridAxis::closed(1.0, 0.0, 3).values().is_err());
        assert!(GridAxis::open(0.5, 0.5, 3).values().is_err());
    }

    #[test]
    fn sweep_records_follow_grid_order() {
        let sweep = Sweep::WWtilde {
            s: GridAxis::open(0.0, 1.0, 4),
            phi: GridAxis::closed(0.0, 1.0, 2),
        };
        let records = run_experiment(&ExperimentConfig::sweep(sweep)).unwrap();
        assert_eq!(records.len(), 8);
        for (i, r) in records.iter().enumerate() {
            assert_eq!(r.index, i as u64);
        }
        let FamilyParams::WWtilde { s, phi } = records[3].params else {
            panic!()
        };
        assert_eq!((s, phi), (0.4, 1.0));
    }

    #[test]
    fn invalid_point_reports_its_index() {
        let sweep = Sweep::WWtilde {
            s: GridAxis::closed(0.0, 1.0, 3),
            phi: GridAxis::fixed(0.0),
        };
        match run_experiment(&ExperimentConfig::sweep(sweep)) {
            Err(Error::Sample { index, .. }) => assert_eq!(index, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn monte_carlo_is_deterministic_and_census_adds_up() {
        let cfg = ExperimentConfig::monte_carlo(SampledFamily::ClassC, 300, 9)
            .with_mu3(mu(1.5), mu(1.0))
            .with_filter(Filter::RequireNonnegDelta3);
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a, b);
        for kind in [ScoreKind::Delta, ScoreKind::Pi] {
            let c = census(&a, kind);
            assert_eq!(c.violations + c.satisfied + c.not_applicable, c.total);
        }
        for r in a.iter().filter(|r| r.filter_pass) {
            assert!(r.report.delta3.iter().all(|&v| v >= -1e-9));
        }
    }

    #[test]
    fn zero_samples_rejected() {
        let cfg = ExperimentConfig::monte_carlo(SampledFamily::GwGround, 0, 1);
        assert_eq!(run_experiment(&cfg), Err(Error::Empty("sample count")));
    }

    #[test]
    fn w_ones_sweep_has_negative_delta_at_unit_mu() {
        let sweep = Sweep::WOnes {
            alpha_abs: GridAxis::closed(0.0, 1.0, 101),
        };
        let records = run_experiment(&ExperimentConfig::sweep(sweep)).unwrap();
        assert!(records.iter().any(|r| r.report.delta4.is_some_and(|v| v < 0.0)));
    }
}

use serde::{Deserialize, Serialize};

use super::SampleRecord;
use crate::error::{Error, Result};
use crate::monogamy::ScoreKind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramSpec {
    pub bins: usize,
    pub lo: f64,
    pub hi: f64,
    pub score: ScoreKind,
}

impl HistogramSpec {
    pub fn new(bins: usize, lo: f64, hi: f64, score: ScoreKind) -> Result<Self> {
        if bins == 0 {
            return Err(Error::InvalidParameter("histogram needs at least one bin".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "histogram range needs lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { bins, lo, hi, score })
    }

    pub fn edges(&self) -> Vec<f64> {
        let width = (self.hi - self.lo) / self.bins as f64;
        (0..=self.bins)
            .map(|i| {
                if i == self.bins {
                    self.hi
                } else {
                    self.lo + width * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub spec: HistogramSpec,
    pub counts: Vec<usize>,
    pub below: usize,
    pub above: usize,
    pub not_applicable: usize,
}

impl Histogram {
    pub fn in_range(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Bins are half-open `[lower, upper)` except the last, which also takes
/// `hi`. Not-applicable and filtered-out records are counted separately.
pub fn histogram(records: &[SampleRecord], spec: HistogramSpec) -> Result<Histogram> {
    if records.is_empty() {
        return Err(Error::Empty("histogram records"));
    }
    let spec = HistogramSpec::new(spec.bins, spec.lo, spec.hi, spec.score)?;
    let mut out = Histogram {
        spec,
        counts: vec![0; spec.bins],
        below: 0,
        above: 0,
        not_applicable: 0,
    };
    let width = spec.hi - spec.lo;
    for r in records {
        match r.counted_score(spec.score) {
            None => out.not_applicable += 1,
            Some(v) if v < spec.lo => out.below += 1,
            Some(v) if v > spec.hi => out.above += 1,
            Some(v) => {
                let bin = ((v - spec.lo) / width * spec.bins as f64) as usize;
                out.counts[bin.min(spec.bins - 1)] += 1;
            }
        }
    }
    Ok(out)
}

/// Smallest and largest counted score, if any.
pub fn score_range(records: &[SampleRecord], kinds: &[ScoreKind]) -> Option<(f64, f64)> {
    records
        .iter()
        .flat_map(|r| kinds.iter().filter_map(|&k| r.counted_score(k)))
        .fold(None, |acc, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
}

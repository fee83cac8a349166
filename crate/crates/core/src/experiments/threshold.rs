//! Smallest `μ₃` making a fourth-order score non-negative.
//!
//! With every third-order residual in `[0, 1]`, each `r^{μ₃}` is
//! non-increasing in `μ₃`, so the score is non-decreasing and bisection
//! applies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::monogamy::{FocusNegativities, MuConfig, ScoreKind};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdStatus {
    Crossing,
    /// The score is already non-negative at the lower end of the bracket.
    NoThresholdInBracket,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub mu3: f64,
    pub status: ThresholdStatus,
}

fn score_at(neg: &FocusNegativities, kind: ScoreKind, mu3: f64) -> Result<f64> {
    neg.score(kind, MuConfig::new(mu3)?)
        .value()
        .ok_or_else(|| Error::NotApplicable(crate::monogamy::NotApplicableReason::for_kind(kind).to_string()))
}

fn threshold_for(neg: &FocusNegativities, kind: ScoreKind, (lo, hi): (f64, f64), tol: f64) -> Result<Threshold> {
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bracket needs 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !neg.is_applicable(kind) {
        return Err(Error::NotApplicable(
            crate::monogamy::NotApplicableReason::for_kind(kind).to_string(),
        ));
    }
    if let Some(&r) = neg
        .third_order(kind)
        .iter()
        .find(|&&r| r > 1.0 + tolerance::RESIDUAL_CLAMP)
    {
        return Err(Error::NotMonotone(r));
    }
    if score_at(neg, kind, lo)? >= 0.0 {
        return Ok(Threshold {
            mu3: lo,
            status: ThresholdStatus::NoThresholdInBracket,
        });
    }
    if score_at(neg, kind, hi)? < 0.0 {
        return Err(Error::NoSignChange { lo, hi });
    }
    // invariant: score(a) < 0 <= score(b)
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if score_at(neg, kind, mid)? >= 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(Threshold {
        mu3: b,
        status: ThresholdStatus::Crossing,
    })
}

/// Smallest `μ₃` in `bracket` with a non-negative score at `point`, to
/// within `tol`.
pub fn min_mu3(
    point: &FamilyParams,
    focus: usize,
    kind: ScoreKind,
    bracket: (f64, f64),
    tol: f64,
) -> Result<Threshold> {
    let neg = FocusNegativities::compute(&point.build()?, focus)?;
    threshold_for(&neg, kind, bracket, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridThreshold {
    /// Largest per-point threshold.
    pub mu3: f64,
    pub worst_index: Option<usize>,
    pub points: usize,
    /// Points where the score is not applicable; they carry no threshold.
    pub skipped: usize,
    pub crossings: usize,
}

/// Smallest `μ₃` that works for every applicable point. Errors from a point
/// other than non-applicability are returned tagged with its index.
pub fn min_mu3_over(
    points: &[FamilyParams],
    focus: usize,
    kind: ScoreKind,
    bracket: (f64, f64),
    tol: f64,
) -> Result<GridThreshold> {
    if points.is_empty() {
        return Err(Error::Empty("threshold points"));
    }
    let mut out = GridThreshold {
        mu3: bracket.0,
        worst_index: None,
        points: points.len(),
        skipped: 0,
        crossings: 0,
    };
    for (i, p) in points.iter().enumerate() {
        match min_mu3(p, focus, kind, bracket, tol) {
            Err(Error::NotApplicable(_)) => out.skipped += 1,
            Err(e) => {
                return Err(Error::Sample {
                    index: i as u64,
                    source: Box::new(e),
                })
            }
            Ok(t) => {
                if t.status == ThresholdStatus::Crossing {
                    out.crossings += 1;
                }
                if out.worst_index.is_none() || t.mu3 > out.mu3 {
                    out.mu3 = t.mu3;
                    out.worst_index = Some(i);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Complex;

    const W: FamilyParams = FamilyParams::Dicke { n: 4, k: 1 };

    #[test]
    fn w_state_threshold() {
        let t = min_mu3(&W, 0, ScoreKind::Delta, (1.0, 2.0), 1e-5).unwrap();
        assert_eq!(t.status, ThresholdStatus::Crossing);
        assert!((t.mu3 - 1.02053).abs() < 1e-3, "{}", t.mu3);
        // bracketing contract
        let neg = FocusNegativities::compute(&W.build().unwrap(), 0).unwrap();
        assert!(score_at(&neg, ScoreKind::Delta, t.mu3).unwrap() >= 0.0);
        assert!(score_at(&neg, ScoreKind::Delta, t.mu3 - 2e-5).unwrap() < 0.0);
    }

    #[test]
    fn gghz_has_no_threshold() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = FamilyParams::Gghz {
            z1: Complex::new(h, 0.0),
            z2: Complex::new(h, 0.0),
        };
        let t = min_mu3(&p, 0, ScoreKind::Delta, (1.0, 2.0), 1e-6).unwrap();
        assert_eq!(
            t,
            Threshold {
                mu3: 1.0,
                status: ThresholdStatus::NoThresholdInBracket
            }
        );
    }

    #[test]
    fn failures() {
        assert_eq!(
            min_mu3(&W, 0, ScoreKind::Delta, (0.5, 1.0), 1e-6),
            Err(Error::NoSignChange { lo: 0.5, hi: 1.0 })
        );
        let s42 = FamilyParams::Dicke { n: 4, k: 2 };
        assert!(matches!(
            min_mu3(&s42, 0, ScoreKind::Delta, (1.0, 2.0), 1e-6),
            Err(Error::NotApplicable(_))
        ));
        assert!(min_mu3(&W, 0, ScoreKind::Delta, (2.0, 1.0), 1e-6).is_err());
        assert!(min_mu3(&W, 0, ScoreKind::Delta, (1.0, 2.0), 0.0).is_err());
    }

    #[test]
    fn grid_maximum_skips_inapplicable_points() {
        let pts = [
            W,
            FamilyParams::Dicke { n: 4, k: 2 },
            FamilyParams::Dicke { n: 4, k: 3 },
        ];
        let g = min_mu3_over(&pts, 0, ScoreKind::Delta, (1.0, 2.0), 1e-6).unwrap();
        assert_eq!(g.skipped, 1);
        assert_eq!(g.crossings, 2);
        assert!((g.mu3 - 1.02053).abs() < 1e-3);
        assert!(min_mu3_over(&[], 0, ScoreKind::Pi, (1.0, 2.0), 1e-6).is_err());
    }
}

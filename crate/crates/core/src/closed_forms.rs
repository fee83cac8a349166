//! Analytic expressions for the named families, evaluated in real arithmetic
//! from moduli and phases. These are oracles for the numeric pipeline in
//! [`crate::monogamy`]; all values are for focus qubit 0 with partners
//! `(1, 2, 3)` and partner pairs in [`crate::monogamy::PARTNER_PAIRS`] order.
//!
//! Two published expressions disagree with the partial-transpose pipeline and
//! are shipped in both forms, `printed` (as published) and `corrected`:
//!
//! * cluster states: the published three-qubit splits `𝒩_{0|12} = 4|ac*−bd*|`,
//!   `𝒩_{0|13} = 0`. Tracing qubit 3 decoheres qubit 2 (they are always equal),
//!   so the marginal is block diagonal and `𝒩_{0|12} = 𝒩_{0|13} = 2(|ac|+|bd|)`.
//! * `α|W⟩ + β|1111⟩`: the published `z` carries `|β|²` where `|α|²` belongs,
//!   and the second branch of `π⁽⁴⁾` starts with `x` instead of `x²`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monogamy::{powered, MuConfig};
use crate::tensor::Complex;
use crate::tolerance;

/// Components an analytic expression provides. Fields the source formula does
/// not give are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormBreakdown {
    pub family: &'static str,
    pub delta1: Option<f64>,
    pub delta2: Option<[f64; 3]>,
    /// `𝒩_{0|jk}` per partner pair.
    pub three_split: Option<[f64; 3]>,
    pub delta3: Option<[f64; 3]>,
    pub delta4: Option<f64>,
    pub pi1: Option<f64>,
    pub pi2: Option<[f64; 3]>,
    pub pi3: Option<[f64; 3]>,
    pub pi4: Option<f64>,
}

impl ClosedFormBreakdown {
    fn empty(family: &'static str) -> Self {
        Self {
            family,
            delta1: None,
            delta2: None,
            three_split: None,
            delta3: None,
            delta4: None,
            pi1: None,
            pi2: None,
            pi3: None,
            pi4: None,
        }
    }

    /// Fills every derived component from the negativities `𝒩_{0|rest}`,
    /// `𝒩_{0|j}` and `𝒩_{0|jk}`.
    fn from_negativities(family: &'static str, one: f64, pairs: [f64; 3], splits: [f64; 3], mu3: f64) -> Self {
        let delta3 = [
            splits[0] - pairs[0] - pairs[1],
            splits[1] - pairs[0] - pairs[2],
            splits[2] - pairs[1] - pairs[2],
        ];
        let pi3 = [
            splits[0].powi(2) - pairs[0].powi(2) - pairs[1].powi(2),
            splits[1].powi(2) - pairs[0].powi(2) - pairs[2].powi(2),
            splits[2].powi(2) - pairs[1].powi(2) - pairs[2].powi(2),
        ];
        let fourth = |first: f64, second: f64, third: [f64; 3]| -> Option<f64> {
            let mut acc = 0.0;
            for r in third {
                acc += powered(r, mu3).ok()?;
            }
            Some(first - second - acc)
        };
        Self {
            family,
            delta1: Some(one),
            delta2: Some(pairs),
            three_split: Some(splits),
            delta3: Some(delta3),
            delta4: fourth(one, pairs.iter().sum(), delta3),
            pi1: Some(one * one),
            pi2: Some(pairs.map(|n| n * n)),
            pi3: Some(pi3),
            pi4: fourth(one * one, pairs.iter().map(|n| n * n).sum(), pi3),
        }
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// Class ℬ in polar form, `r₁² + r₃² = ½`.
///
/// `δ⁽⁴⁾ = 1 − 4r₁r₃|cos(α−β)| − 2(4r₁r₃)^{μ₃}(1 − |cos(α−β)|)^{μ₃}` and
/// `π⁽⁴⁾ = 1 − (4r₁r₃)²cos² − 2(4r₁r₃)^{2μ₃}(1 − cos²)^{μ₃}`; the lower-order
/// components come from the listed negativities `𝒩_{0|rest} = 1`,
/// `𝒩_{0|12} = 𝒩_{0|23} = 4r₁r₃`, `𝒩_{0|2} = 4r₁r₃|cos(α−β)|`.
pub fn cf_class_b(r1: f64, r3: f64, alpha: f64, beta: f64, mu: MuConfig) -> Result<ClosedFormBreakdown> {
    require(r1 >= 0.0 && r3 >= 0.0, || "class B radii must be non-negative".into())?;
    require((r1 * r1 + r3 * r3 - 0.5).abs() <= tolerance::API_NORM, || {
        format!("class B radii need r1^2 + r3^2 = 1/2, got {}", r1 * r1 + r3 * r3)
    })?;
    let mu3 = mu.mu3();
    let g = 4.0 * r1 * r3;
    let cos = (alpha - beta).cos().abs();
    let mut out = ClosedFormBreakdown::from_negativities("class-b", 1.0, [0.0, g * cos, 0.0], [g, 0.0, g], mu3);
    out.delta4 = Some(1.0 - g * cos - 2.0 * g.powf(mu3) * (1.0 - cos).powf(mu3));
    out.pi4 = Some(1.0 - g * g * cos * cos - 2.0 * g.powf(2.0 * mu3) * (1.0 - cos * cos).powf(mu3));
    Ok(out)
}

/// Published and corrected cluster-state expressions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterClosedForm {
    pub printed: ClosedFormBreakdown,
    pub corrected: ClosedFormBreakdown,
    /// `|ac* − bd*|`.
    pub coherence: f64,
}

/// `a|0000⟩ + b|0011⟩ + c|1100⟩ − d|1111⟩`.
///
/// The printed breakdown carries `δ⁽⁴⁾ = 2√((|a|²+|b|²)(|c|²+|d|²))` and its
/// square only when `ac* = bd*`; otherwise those need the numeric pipeline.
pub fn cf_cluster(a: Complex, b: Complex, c: Complex, d: Complex, mu: MuConfig) -> Result<ClusterClosedForm> {
    let norm = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    require((norm - 1.0).abs() <= tolerance::API_NORM, || {
        format!("cluster coefficients have squared norm {norm}")
    })?;
    let one = 2.0 * ((a.norm_sqr() + b.norm_sqr()) * (c.norm_sqr() + d.norm_sqr())).sqrt();
    let coherence = (a * c.conj() - b * d.conj()).norm();

    let mut printed = ClosedFormBreakdown::empty("cluster");
    printed.delta1 = Some(one);
    printed.delta2 = Some([2.0 * coherence, 0.0, 0.0]);
    printed.three_split = Some([4.0 * coherence, 0.0, 0.0]);
    printed.pi1 = Some(one * one);
    printed.pi2 = Some([4.0 * coherence * coherence, 0.0, 0.0]);
    if coherence <= tolerance::API_NORM {
        printed.delta3 = Some([0.0; 3]);
        printed.pi3 = Some([0.0; 3]);
        printed.delta4 = Some(one);
        printed.pi4 = Some(one * one);
    }

    let split = 2.0 * ((a * c).norm() + (b * d).norm());
    let corrected = ClosedFormBreakdown::from_negativities(
        "cluster",
        one,
        [2.0 * coherence, 0.0, 0.0],
        [split, split, 0.0],
        mu.mu3(),
    );
    Ok(ClusterClosedForm {
        printed,
        corrected,
        coherence,
    })
}

/// `|S(4,1)⟩` and `|S(4,3)⟩` (`k ∈ {1, 3}`), with `w = k!(4−k)!/4! = ¼`:
/// `δ⁽⁴⁾ = 2(3+√3−3√2)w − 3(6−4√2)^{μ₃}w^{μ₃}`,
/// `π⁽⁴⁾ = 24(√2−1)w² − 3(16√2−20)^{μ₃}w^{2μ₃}`.
pub fn cf_dicke(k: usize, mu: MuConfig) -> Result<ClosedFormBreakdown> {
    require(k == 1 || k == 3, || {
        format!("closed form covers k = 1 or 3 only, got {k}")
    })?;
    let mu3 = mu.mu3();
    let n = 4usize;
    let fact = |m: usize| (1..=m).map(|v| v as f64).product::<f64>();
    let w = fact(k) * fact(n - k) / fact(n);
    let s2 = std::f64::consts::SQRT_2;
    let mut out = ClosedFormBreakdown::empty("dicke");
    out.delta4 = Some(2.0 * (3.0 + 3f64.sqrt() - 3.0 * s2) * w - 3.0 * (6.0 - 4.0 * s2).powf(mu3) * w.powf(mu3));
    out.pi4 = Some(24.0 * (s2 - 1.0) * w * w - 3.0 * (16.0 * s2 - 20.0).powf(mu3) * w.powf(2.0 * mu3));
    Ok(out)
}

/// `√s|W⟩ + √(1−s)e^{iφ}|W̃⟩`, independent of `φ`. With `q = √(1+(1−2s)²)`:
/// `δ⁽¹⁾ = ½√(3+4s−4s²)`, `δ⁽²⁾ = ½(q−1)`, `δ⁽³⁾ = 1 + ½|1−2s| − q`,
/// `π⁽¹⁾ = ¼(3+4s−4s²)`, `π⁽²⁾ = ¾ − s + s² − ½q`, `π⁽³⁾ = −5/4 + s − s² + q`,
/// and the fourth-order scores as published.
pub fn cf_wwt(s: f64, mu: MuConfig) -> Result<ClosedFormBreakdown> {
    require(s > 0.0 && s < 1.0, || format!("s must lie in (0, 1), got {s}"))?;
    let mu3 = mu.mu3();
    let q = (1.0 + (1.0 - 2.0 * s).powi(2)).sqrt();
    let poly = 3.0 + 4.0 * s - 4.0 * s * s;
    let d2 = 0.5 * (q - 1.0);
    let d3 = 1.0 + 0.5 * (1.0 - 2.0 * s).abs() - q;
    let p2 = 0.75 - s + s * s - 0.5 * q;
    let p3 = -1.25 + s - s * s + q;
    let mut out = ClosedFormBreakdown::empty("wwt");
    out.delta1 = Some(0.5 * poly.sqrt());
    out.delta2 = Some([d2; 3]);
    out.delta3 = Some([d3; 3]);
    out.pi1 = Some(0.25 * poly);
    out.pi2 = Some([p2; 3]);
    out.pi3 = Some([p3; 3]);
    out.delta4 = powered(d3, mu3)
        .ok()
        .map(|t| 0.5 * poly.sqrt() - 1.5 * (q - 1.0) - 3.0 * t);
    out.pi4 = powered(p3, mu3)
        .ok()
        .map(|t| -1.5 + 4.0 * s - 4.0 * s * s + 1.5 * q - 3.0 * t);
    Ok(out)
}

/// Branch point of the `α|W⟩ + β|1111⟩` expressions.
pub fn w_ones_branch_point() -> f64 {
    2.0 * std::f64::consts::SQRT_2 / 3.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WOnesClosedForm {
    pub x: f64,
    pub y: f64,
    /// `½(√(10|α|⁴−12|α|²+4) + |α|² − 2)`.
    pub z_corrected: f64,
    /// `½(√(10|α|⁴−12|α|²+4) + |β|² − 2)` as published.
    pub z_printed: f64,
    pub corrected: ClosedFormBreakdown,
    pub printed: ClosedFormBreakdown,
}

/// `α|W⟩ + β|1111⟩`, depending on `|α|` only.
pub fn cf_w_ones(alpha_abs: f64, mu: MuConfig) -> Result<WOnesClosedForm> {
    require((0.0..=1.0).contains(&alpha_abs), || {
        format!("|alpha| must lie in [0, 1], got {alpha_abs}")
    })?;
    let mu3 = mu.mu3();
    let a = alpha_abs;
    let a2 = a * a;
    let beta2 = 1.0 - a2;
    let x = 3f64.sqrt() / 2.0 * a * (4.0 - 3.0 * a2).sqrt();
    let y = a / 4.0 * (a + (16.0 - 15.0 * a2).sqrt());
    let root = (10.0 * a2 * a2 - 12.0 * a2 + 4.0).sqrt();
    let z_corrected = 0.5 * (root + a2 - 2.0);
    let z_printed = 0.5 * (root + beta2 - 2.0);
    let lower_branch = a <= w_ones_branch_point();

    let build = |z: f64, pi4_lead: f64| {
        let mut out = ClosedFormBreakdown::empty("w-ones");
        let (d2, d3, p2, p3) = if lower_branch {
            (0.0, y, 0.0, y * y)
        } else {
            (z, y - 2.0 * z, z * z, y * y - 2.0 * z * z)
        };
        out.delta1 = Some(x);
        out.delta2 = Some([d2; 3]);
        out.delta3 = Some([d3; 3]);
        out.pi1 = Some(x * x);
        out.pi2 = Some([p2; 3]);
        out.pi3 = Some([p3; 3]);
        out.delta4 = powered(d3, mu3).ok().map(|t| x - 3.0 * d2 - 3.0 * t);
        out.pi4 = powered(p3, mu3).ok().map(|t| {
            let lead = if lower_branch { x * x } else { pi4_lead };
            lead - 3.0 * p2 - 3.0 * t
        });
        out
    };

    Ok(WOnesClosedForm {
        x,
        y,
        z_corrected,
        z_printed,
        corrected: build(z_corrected, x * x),
        printed: build(z_printed, x),
    })
}

/// `z₁|0000⟩ + z₂|1111⟩`: `δ⁽⁴⁾ = 2|z₁z₂|`, `π⁽⁴⁾ = 4|z₁z₂|²`.
pub fn cf_gghz(z1: Complex, z2: Complex) -> Result<ClosedFormBreakdown> {
    let norm = z1.norm_sqr() + z2.norm_sqr();
    require((norm - 1.0).abs() <= tolerance::API_NORM, || {
        format!("GGHZ squared norm {norm}")
    })?;
    let m = (z1 * z2).norm();
    let mut out = ClosedFormBreakdown::empty("gghz");
    out.delta4 = Some(2.0 * m);
    out.pi4 = Some(4.0 * m * m);
    Ok(out)
}

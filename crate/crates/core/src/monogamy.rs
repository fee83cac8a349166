//! Strong-monogamy residuals built from negativity (`δ`) and squared
//! negativity (`π`).
//!
//! For a focus qubit `f` and partners `j < k`:
//!
//! * `δ⁽¹⁾ = 𝒩_{f|rest}`, `δ⁽²⁾_j = 𝒩_{f|j}`,
//!   `δ⁽³⁾_{jk} = 𝒩_{f|jk} − δ⁽²⁾_j − δ⁽²⁾_k`,
//! * `δ⁽⁴⁾ = δ⁽¹⁾ − Σ_j δ⁽²⁾_j − Σ_{j<k} [δ⁽³⁾_{jk}]^{μ₃}`,
//!
//! and the `π` hierarchy is the same with every negativity squared. A
//! fourth-order score is only defined when all third-order residuals of the
//! same kind are non-negative (up to [`tolerance::RESIDUAL_CLAMP`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::negativity::negativity;
use crate::tensor::{outer, partial_trace, DensityMatrix, QubitSubset, StateVector};
use crate::tolerance;

/// Partner pairs `(j, k)` as positions into the partner list, in report order.
pub const PARTNER_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Exponent sequence for four qubits: `μ₂ = 1` is implicit, only `μ₃` varies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MuConfig {
    mu3: f64,
}

impl MuConfig {
    pub fn new(mu3: f64) -> Result<Self> {
        if !mu3.is_finite() || mu3 <= 0.0 {
            return Err(Error::InvalidExponent(mu3));
        }
        Ok(Self { mu3 })
    }

    pub fn mu2(&self) -> f64 {
        1.0
    }

    pub fn mu3(&self) -> f64 {
        self.mu3
    }
}

impl Default for MuConfig {
    fn default() -> Self {
        Self { mu3: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreKind {
    Delta,
    Pi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotApplicableReason {
    NegativeDeltaResidual,
    NegativePiResidual,
}

impl NotApplicableReason {
    pub fn for_kind(kind: ScoreKind) -> Self {
        match kind {
            ScoreKind::Delta => Self::NegativeDeltaResidual,
            ScoreKind::Pi => Self::NegativePiResidual,
        }
    }
}

impl std::fmt::Display for NotApplicableReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::NegativeDeltaResidual => "negative delta residual",
            Self::NegativePiResidual => "negative pi residual",
        })
    }
}

/// A fourth-order score, or the reason it is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Score {
    Value(f64),
    NotApplicable(NotApplicableReason),
}

impl Score {
    pub fn value(self) -> Option<f64> {
        match self {
            Score::Value(v) => Some(v),
            Score::NotApplicable(_) => None,
        }
    }

    pub fn is_applicable(self) -> bool {
        matches!(self, Score::Value(_))
    }
}

/// `max(x, 0)^μ`, refusing residuals more negative than the clamp window.
pub fn powered(x: f64, mu: f64) -> Result<f64> {
    if x < -tolerance::RESIDUAL_CLAMP {
        return Err(Error::NegativeResidual(x));
    }
    let x = x.max(0.0);
    if x == 0.0 {
        return Ok(0.0);
    }
    if mu == 1.0 {
        return Ok(x);
    }
    Ok(x.powf(mu))
}

fn check_distinct(num_qubits: usize, qubits: &[usize]) -> Result<()> {
    QubitSubset::new(qubits.to_vec())?.validate_for(num_qubits)
}

fn check_four(psi: &StateVector) -> Result<()> {
    if psi.num_qubits() != 4 {
        return Err(Error::WrongQubitCount {
            expected: 4,
            got: psi.num_qubits(),
        });
    }
    Ok(())
}

/// Negativity of the marginal on `[focus, others…]` with `focus` transposed.
fn marginal_negativity(rho: &DensityMatrix, focus: usize, others: &[usize]) -> Result<f64> {
    let mut keep = vec![focus];
    keep.extend_from_slice(others);
    let keep = QubitSubset::new(keep)?;
    if keep.len() == rho.num_qubits() {
        return Ok(negativity(rho, &QubitSubset::single(focus))?.value);
    }
    // focus sits at position 0 of the marginal
    Ok(negativity(&partial_trace(rho, &keep)?, &QubitSubset::single(0))?.value)
}

/// `δ⁽²⁾_{f|j} = 𝒩_{f|j}` of the two-qubit marginal.
pub fn two_delta(psi: &StateVector, focus: usize, j: usize) -> Result<f64> {
    check_distinct(psi.num_qubits(), &[focus, j])?;
    marginal_negativity(&outer(psi)?, focus, &[j])
}

/// `𝒩_{f|jk}` of the three-qubit marginal.
pub fn three_split_negativity(psi: &StateVector, focus: usize, j: usize, k: usize) -> Result<f64> {
    check_distinct(psi.num_qubits(), &[focus, j, k])?;
    marginal_negativity(&outer(psi)?, focus, &[j, k])
}

/// `δ⁽³⁾_{f|j|k}`; negative values signal a non-monogamous configuration.
pub fn three_delta(psi: &StateVector, focus: usize, j: usize, k: usize) -> Result<f64> {
    check_distinct(psi.num_qubits(), &[focus, j, k])?;
    let rho = outer(psi)?;
    let split = marginal_negativity(&rho, focus, &[j, k])?;
    Ok(split - marginal_negativity(&rho, focus, &[j])? - marginal_negativity(&rho, focus, &[k])?)
}

/// `π⁽³⁾_{f|j|k} = 𝒩²_{f|jk} − 𝒩²_{f|j} − 𝒩²_{f|k}`.
pub fn three_pi(psi: &StateVector, focus: usize, j: usize, k: usize) -> Result<f64> {
    check_distinct(psi.num_qubits(), &[focus, j, k])?;
    let rho = outer(psi)?;
    let split = marginal_negativity(&rho, focus, &[j, k])?;
    let nj = marginal_negativity(&rho, focus, &[j])?;
    let nk = marginal_negativity(&rho, focus, &[k])?;
    Ok(split * split - nj * nj - nk * nk)
}

/// Every negativity the four-qubit hierarchy needs for one focus qubit.
/// Computed once; scores for any exponent are then cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusNegativities {
    pub focus: usize,
    /// The three other qubits, ascending.
    pub partners: [usize; 3],
    /// `𝒩_{f|rest}`.
    pub one_to_rest: f64,
    /// `𝒩_{f|j}` per partner.
    pub pairs: [f64; 3],
    /// `𝒩_{f|jk}` per entry of [`PARTNER_PAIRS`].
    pub triples: [f64; 3],
}

impl FocusNegativities {
    pub fn compute(psi: &StateVector, focus: usize) -> Result<Self> {
        check_four(psi)?;
        if focus >= 4 {
            return Err(Error::QubitOutOfRange {
                index: focus,
                num_qubits: 4,
            });
        }
        let mut partners = [0; 3];
        for (slot, q) in partners.iter_mut().zip((0..4).filter(|&q| q != focus)) {
            *slot = q;
        }
        let rho = outer(psi)?;
        let one_to_rest = marginal_negativity(&rho, focus, &partners)?;
        let mut pairs = [0.0; 3];
        for (n, &j) in pairs.iter_mut().zip(&partners) {
            *n = marginal_negativity(&rho, focus, &[j])?;
        }
        let mut triples = [0.0; 3];
        for (n, &(a, b)) in triples.iter_mut().zip(&PARTNER_PAIRS) {
            *n = marginal_negativity(&rho, focus, &[partners[a], partners[b]])?;
        }
        Ok(Self {
            focus,
            partners,
            one_to_rest,
            pairs,
            triples,
        })
    }

    pub fn delta1(&self) -> f64 {
        self.one_to_rest
    }

    pub fn delta2(&self) -> [f64; 3] {
        self.pairs
    }

    pub fn delta3(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (slot, (t, &(a, b))) in out.iter_mut().zip(self.triples.iter().zip(&PARTNER_PAIRS)) {
            *slot = t - self.pairs[a] - self.pairs[b];
        }
        out
    }

    pub fn pi1(&self) -> f64 {
        self.one_to_rest * self.one_to_rest
    }

    pub fn pi2(&self) -> [f64; 3] {
        self.pairs.map(|n| n * n)
    }

    pub fn pi3(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (slot, (t, &(a, b))) in out.iter_mut().zip(self.triples.iter().zip(&PARTNER_PAIRS)) {
            *slot = t * t - self.pairs[a] * self.pairs[a] - self.pairs[b] * self.pairs[b];
        }
        out
    }

    pub fn third_order(&self, kind: ScoreKind) -> [f64; 3] {
        match kind {
            ScoreKind::Delta => self.delta3(),
            ScoreKind::Pi => self.pi3(),
        }
    }

    pub fn is_applicable(&self, kind: ScoreKind) -> bool {
        self.third_order(kind).iter().all(|&r| r >= -tolerance::RESIDUAL_CLAMP)
    }

    /// Fourth-order score of the given kind at exponent `mu3`.
    pub fn score(&self, kind: ScoreKind, mu: MuConfig) -> Score {
        let (first, second): (f64, f64) = match kind {
            ScoreKind::Delta => (self.delta1(), self.delta2().iter().sum()),
            ScoreKind::Pi => (self.pi1(), self.pi2().iter().sum()),
        };
        let mut third = 0.0;
        for r in self.third_order(kind) {
            match powered(r, mu.mu3()) {
                Ok(v) => third += v,
                Err(_) => return Score::NotApplicable(NotApplicableReason::for_kind(kind)),
            }
        }
        Score::Value(first - mu.mu2() * second - third)
    }
}

/// `δ⁽⁴⁾` for a four-qubit pure state.
pub fn four_delta(psi: &StateVector, focus: usize, mu: MuConfig) -> Result<Score> {
    Ok(FocusNegativities::compute(psi, focus)?.score(ScoreKind::Delta, mu))
}

/// `π⁽⁴⁾` for a four-qubit pure state.
pub fn four_pi(psi: &StateVector, focus: usize, mu: MuConfig) -> Result<Score> {
    Ok(FocusNegativities::compute(psi, focus)?.score(ScoreKind::Pi, mu))
}

/// Squared-negativity CKW inequality for three qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CkwCheck {
    /// `𝒩²_{f|jk}`.
    pub lhs: f64,
    /// `𝒩²_{f|j} + 𝒩²_{f|k}`.
    pub rhs: f64,
    /// `lhs − rhs`, the three-π residual.
    pub residual: f64,
}

pub fn ckw_check_three_qubit(psi: &StateVector, focus: usize) -> Result<CkwCheck> {
    if psi.num_qubits() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            got: psi.num_qubits(),
        });
    }
    if focus >= 3 {
        return Err(Error::QubitOutOfRange {
            index: focus,
            num_qubits: 3,
        });
    }
    let others: Vec<usize> = (0..3).filter(|&q| q != focus).collect();
    let rho = outer(psi)?;
    let lhs = marginal_negativity(&rho, focus, &others)?.powi(2);
    let rhs = marginal_negativity(&rho, focus, &[others[0]])?.powi(2)
        + marginal_negativity(&rho, focus, &[others[1]])?.powi(2);
    Ok(CkwCheck {
        lhs,
        rhs,
        residual: lhs - rhs,
    })
}

/// Complete `δ`/`π` breakdown for one state and focus qubit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    pub focus: usize,
    pub partners: [usize; 3],
    pub delta1: f64,
    pub delta2: [f64; 3],
    pub delta3: [f64; 3],
    pub delta4: Option<f64>,
    pub pi1: f64,
    pub pi2: [f64; 3],
    pub pi3: [f64; 3],
    pub pi4: Option<f64>,
    pub mu3_delta: f64,
    pub mu3_pi: f64,
    pub applicable_delta: bool,
    pub applicable_pi: bool,
    pub delta_reason: Option<NotApplicableReason>,
    pub pi_reason: Option<NotApplicableReason>,
}

impl MonogamyReport {
    pub fn from_negativities(neg: &FocusNegativities, mu_delta: MuConfig, mu_pi: MuConfig) -> Self {
        let delta4 = neg.score(ScoreKind::Delta, mu_delta);
        let pi4 = neg.score(ScoreKind::Pi, mu_pi);
        let reason = |s: Score| match s {
            Score::NotApplicable(r) => Some(r),
            Score::Value(_) => None,
        };
        Self {
            focus: neg.focus,
            partners: neg.partners,
            delta1: neg.delta1(),
            delta2: neg.delta2(),
            delta3: neg.delta3(),
            delta4: delta4.value(),
            pi1: neg.pi1(),
            pi2: neg.pi2(),
            pi3: neg.pi3(),
            pi4: pi4.value(),
            mu3_delta: mu_delta.mu3(),
            mu3_pi: mu_pi.mu3(),
            applicable_delta: delta4.is_applicable(),
            applicable_pi: pi4.is_applicable(),
            delta_reason: reason(delta4),
            pi_reason: reason(pi4),
        }
    }

    pub fn score(&self, kind: ScoreKind) -> Option<f64> {
        match kind {
            ScoreKind::Delta => self.delta4,
            ScoreKind::Pi => self.pi4,
        }
    }

    pub fn applicable(&self, kind: ScoreKind) -> bool {
        match kind {
            ScoreKind::Delta => self.applicable_delta,
            ScoreKind::Pi => self.applicable_pi,
        }
    }
}

pub fn monogamy_report(psi: &StateVector, focus: usize, mu_delta: MuConfig, mu_pi: MuConfig) -> Result<MonogamyReport> {
    let neg = FocusNegativities::compute(psi, focus)?;
    Ok(MonogamyReport::from_negativities(&neg, mu_delta, mu_pi))
}

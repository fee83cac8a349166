//! Named four-qubit state families.
//!
//! Constructors validate normalization of their parameters (within
//! [`tolerance::API_NORM`]) rather than renormalizing.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{Complex, StateVector};
use crate::tolerance;

const ZERO: Complex = Complex::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub fn bell(kind: BellKind) -> StateVector {
    let h = Complex::new(FRAC_1_SQRT_2, 0.0);
    let amps = match kind {
        BellKind::PhiPlus => vec![h, ZERO, ZERO, h],
        BellKind::PhiMinus => vec![h, ZERO, ZERO, -h],
        BellKind::PsiPlus => vec![ZERO, h, h, ZERO],
        BellKind::PsiMinus => vec![ZERO, h, -h, ZERO],
    };
    StateVector::new(amps).expect("Bell states are normalized")
}

fn check_unit(label: &str, moduli_sqr: f64) -> Result<()> {
    if !moduli_sqr.is_finite() || (moduli_sqr - 1.0).abs() > tolerance::API_NORM {
        return Err(Error::InvalidParameter(format!(
            "{label}: squared moduli sum to {moduli_sqr}, expected 1"
        )));
    }
    Ok(())
}

fn sum_sqr(zs: &[Complex]) -> f64 {
    zs.iter().map(|z| z.norm_sqr()).sum()
}

/// Builds a 16-amplitude state from `(index, amplitude)` terms.
fn from_terms(terms: &[(usize, Complex)]) -> Result<StateVector> {
    let mut amps = vec![ZERO; 16];
    for &(i, a) in terms {
        amps[i] += a;
    }
    StateVector::new(amps)
}

/// `Σ zᵢ uᵢ` with `u = (Φ⁺Φ⁺, Φ⁻Φ⁻, Ψ⁺Ψ⁺, Ψ⁻Ψ⁻)`.
pub fn generic_a(z: [Complex; 4]) -> Result<StateVector> {
    check_unit("generic class coefficients", sum_sqr(&z))?;
    let basis = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ]
    .map(|k| {
        let b = bell(k);
        b.tensor(&b)
    });
    let mut amps = vec![ZERO; 16];
    for (zi, u) in z.iter().zip(&basis) {
        for (a, ua) in amps.iter_mut().zip(u.amplitudes()) {
            *a += zi * ua;
        }
    }
    StateVector::new(amps)
}

/// Class ℬ: `z₁ = z₂`, `z₃ = z₄`, so `2|z₁|² + 2|z₃|² = 1`.
pub fn class_b(z1: Complex, z3: Complex) -> Result<StateVector> {
    check_unit("class B coefficients", 2.0 * (z1.norm_sqr() + z3.norm_sqr()))?;
    generic_a([z1, z1, z3, z3])
}

/// Class ℬ in polar form `z₁ = r₁e^{iα}`, `z₃ = r₃e^{iβ}`, `r₁² + r₃² = ½`.
pub fn class_b_polar(r1: f64, r3: f64, alpha: f64, beta: f64) -> Result<StateVector> {
    if r1 < 0.0 || r3 < 0.0 {
        return Err(Error::InvalidParameter("class B radii must be non-negative".into()));
    }
    class_b(Complex::from_polar(r1, alpha), Complex::from_polar(r3, beta))
}

/// Class 𝒞: real coefficients on the generic-class basis.
pub fn class_c(x: [f64; 4]) -> Result<StateVector> {
    generic_a(x.map(|v| Complex::new(v, 0.0)))
}

/// `a|0000⟩ + b|0011⟩ + c|1100⟩ − d|1111⟩`.
pub fn cluster(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<StateVector> {
    check_unit("cluster coefficients", sum_sqr(&[a, b, c, d]))?;
    from_terms(&[(0b0000, a), (0b0011, b), (0b1100, c), (0b1111, -d)])
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Dicke state `|S(n, k)⟩`: equal superposition of all weight-`k` basis states.
pub fn dicke(n: usize, k: usize) -> Result<StateVector> {
    if n == 0 || n > 8 || k > n {
        return Err(Error::InvalidParameter(format!(
            "Dicke state needs 1 <= n <= 8 and k <= n, got n={n}, k={k}"
        )));
    }
    let amp = (factorial(k) * factorial(n - k) / factorial(n)).sqrt();
    let amps = (0..1usize << n)
        .map(|i| {
            if i.count_ones() as usize == k {
                Complex::new(amp, 0.0)
            } else {
                ZERO
            }
        })
        .collect();
    StateVector::new(amps)
}

fn w4_terms() -> [usize; 4] {
    [0b0001, 0b0010, 0b0100, 0b1000]
}

fn w4_tilde_terms() -> [usize; 4] {
    [0b0111, 0b1011, 0b1101, 0b1110]
}

fn open_unit(label: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::InvalidParameter(format!("{label} must lie in (0, 1), got {v}")));
    }
    Ok(())
}

/// `√s|W⟩ + √(1−s) e^{iφ}|W̃⟩`.
pub fn w_wtilde(s: f64, phi: f64) -> Result<StateVector> {
    open_unit("s", s)?;
    if !phi.is_finite() {
        return Err(Error::NonFinite("phi"));
    }
    let w = Complex::new(s.sqrt() / 2.0, 0.0);
    let wt = Complex::from_polar((1.0 - s).sqrt() / 2.0, phi);
    let mut terms: Vec<(usize, Complex)> = w4_terms().iter().map(|&i| (i, w)).collect();
    terms.extend(w4_tilde_terms().iter().map(|&i| (i, wt)));
    from_terms(&terms)
}

/// `z₁|0000⟩ + z₂|1111⟩`.
pub fn gghz(z1: Complex, z2: Complex) -> Result<StateVector> {
    check_unit("GGHZ coefficients", sum_sqr(&[z1, z2]))?;
    from_terms(&[(0b0000, z1), (0b1111, z2)])
}

/// `√p (a₁|0001⟩ + a₂|0010⟩ + a₃|0100⟩ + a₄|1000⟩) + √(1−p)|0000⟩`.
pub fn gw_plus_ground(p: f64, a: [Complex; 4]) -> Result<StateVector> {
    open_unit("p", p)?;
    check_unit("generalized W coefficients", sum_sqr(&a))?;
    let sp = p.sqrt();
    let mut terms = vec![(0b0000, Complex::new((1.0 - p).sqrt(), 0.0))];
    terms.extend(w4_terms().iter().zip(&a).map(|(&i, &ai)| (i, ai * sp)));
    from_terms(&terms)
}

/// `α|W⟩ + β|1111⟩`.
pub fn w_plus_ones(alpha: Complex, beta: Complex) -> Result<StateVector> {
    check_unit("alpha/beta", sum_sqr(&[alpha, beta]))?;
    let mut terms: Vec<(usize, Complex)> = w4_terms().iter().map(|&i| (i, alpha * 0.5)).collect();
    terms.push((0b1111, beta));
    from_terms(&terms)
}

/// Parameters of any named family, tagged by family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyParams {
    GenericA {
        z: [Complex; 4],
    },
    ClassB {
        z1: Complex,
        z3: Complex,
    },
    ClassC {
        x: [f64; 4],
    },
    Cluster {
        a: Complex,
        b: Complex,
        c: Complex,
        d: Complex,
    },
    Dicke {
        n: usize,
        k: usize,
    },
    WWtilde {
        s: f64,
        phi: f64,
    },
    Gghz {
        z1: Complex,
        z2: Complex,
    },
    GwGround {
        p: f64,
        a: [Complex; 4],
    },
    WOnes {
        alpha: Complex,
        beta: Complex,
    },
}

impl FamilyParams {
    pub fn build(&self) -> Result<StateVector> {
        match *self {
            Self::GenericA { z } => generic_a(z),
            Self::ClassB { z1, z3 } => class_b(z1, z3),
            Self::ClassC { x } => class_c(x),
            Self::Cluster { a, b, c, d } => cluster(a, b, c, d),
            Self::Dicke { n, k } => dicke(n, k),
            Self::WWtilde { s, phi } => w_wtilde(s, phi),
            Self::Gghz { z1, z2 } => gghz(z1, z2),
            Self::GwGround { p, a } => gw_plus_ground(p, a),
            Self::WOnes { alpha, beta } => w_plus_ones(alpha, beta),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Self::GenericA { .. } => "generic-a",
            Self::ClassB { .. } => "class-b",
            Self::ClassC { .. } => "class-c",
            Self::Cluster { .. } => "cluster",
            Self::Dicke { .. } => "dicke",
            Self::WWtilde { .. } => "wwt",
            Self::Gghz { .. } => "gghz",
            Self::GwGround { .. } => "gw-ground",
            Self::WOnes { .. } => "w-ones",
        }
    }
}

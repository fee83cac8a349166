//! Random states within named families.
//!
//! The sampling laws are a choice of this crate:
//!
//! * class 𝒞: `(x₁…x₄)` uniform on the unit 3-sphere (four standard normals,
//!   normalized);
//! * `|Φ_p⟩`: `p` uniform on `(0, 1)`, `(a₁…a₄)` uniform on the unit sphere
//!   of `ℂ⁴` (eight standard normals, normalized).
//!
//! Each sample draws from its own ChaCha stream keyed by `(seed, index)`, so
//! results do not depend on evaluation order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Open01, StandardNormal};

use crate::error::Result;
use crate::families::{class_c, gw_plus_ground};
use crate::tensor::{Complex, StateVector};

/// Independent generator for sample `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn unit_vector<R: Rng + ?Sized, const N: usize>(rng: &mut R) -> [f64; N] {
    loop {
        let v: [f64; N] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        // a zero draw has probability zero but would poison the division
        if norm > 1e-300 {
            return v.map(|x| x / norm);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassCSample {
    pub x: [f64; 4],
    pub state: StateVector,
}

pub fn sample_class_c<R: Rng + ?Sized>(rng: &mut R) -> Result<ClassCSample> {
    let x = unit_vector::<R, 4>(rng);
    Ok(ClassCSample { x, state: class_c(x)? })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GwGroundSample {
    pub p: f64,
    pub a: [Complex; 4],
    pub state: StateVector,
}

pub fn sample_gw_ground<R: Rng + ?Sized>(rng: &mut R) -> Result<GwGroundSample> {
    let p: f64 = rng.sample(Open01);
    let v = unit_vector::<R, 8>(rng);
    let a = std::array::from_fn(|i| Complex::new(v[2 * i], v[2 * i + 1]));
    Ok(GwGroundSample {
        p,
        a,
        state: gw_plus_ground(p, a)?,
    })
}

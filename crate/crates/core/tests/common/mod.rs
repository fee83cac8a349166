#![allow(dead_code)]

use negmono::experiments::substream;
use negmono::monogamy::MonogamyReport;
use negmono::tensor::{CMatrix, Complex, StateVector};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn normal_complex<R: Rng>(rng: &mut R) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly random pure state on `n` qubits, reproducible from `(seed, index)`.
pub fn random_state(n: usize, seed: u64, index: u64) -> StateVector {
    let mut rng = substream(seed, index);
    let amps = (0..1usize << n).map(|_| normal_complex(&mut rng)).collect();
    StateVector::normalized(amps).unwrap()
}

/// Random 2×2 unitary `e^{iγ}[[e^{iα}c, e^{iβ}s], [−e^{−iβ}s, e^{−iα}c]]`.
pub fn random_unitary<R: Rng>(rng: &mut R) -> CMatrix {
    let tau = std::f64::consts::TAU;
    let (a, b, g) = (
        rng.random::<f64>() * tau,
        rng.random::<f64>() * tau,
        rng.random::<f64>() * tau,
    );
    let t: f64 = rng.random::<f64>() * tau;
    let (c, s) = (t.cos(), t.sin());
    let phase = Complex::from_polar(1.0, g);
    let e = |x: f64| Complex::from_polar(1.0, x);
    CMatrix::from_vec(
        2,
        2,
        vec![
            phase * e(a) * c,
            phase * e(b) * s,
            -phase * e(-b) * s,
            phase * e(-a) * c,
        ],
    )
    .unwrap()
}

pub fn apply_local_unitaries<R: Rng>(psi: &StateVector, rng: &mut R) -> StateVector {
    let mut out = psi.clone();
    for q in 0..psi.num_qubits() {
        out = out.apply_single_qubit(q, &random_unitary(rng)).unwrap();
    }
    out
}

/// Every numeric field of a report, not-applicable scores as NaN.
pub fn report_fields(r: &MonogamyReport) -> Vec<f64> {
    let mut v = vec![r.delta1, r.pi1, r.delta4.unwrap_or(f64::NAN), r.pi4.unwrap_or(f64::NAN)];
    v.extend(r.delta2);
    v.extend(r.delta3);
    v.extend(r.pi2);
    v.extend(r.pi3);
    v
}

pub fn max_field_diff(a: &MonogamyReport, b: &MonogamyReport) -> f64 {
    report_fields(a)
        .iter()
        .zip(report_fields(b))
        .map(|(x, y)| if x.is_nan() && y.is_nan() { 0.0 } else { (x - y).abs() })
        .fold(0.0, |m, d| if d.is_nan() { f64::INFINITY } else { m.max(d) })
}

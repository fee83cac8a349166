mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;

use negmono::experiments::substream;
use negmono::monogamy::{
    ckw_check_three_qubit, monogamy_report, three_delta, three_pi, three_split_negativity, two_delta,
    FocusNegativities, MuConfig, ScoreKind,
};
use negmono::negativity::{negativity, pure_state_negativity};
use negmono::tensor::{
    hermitian_eigen, hermitian_eigenvalues, outer, partial_trace, partial_transpose, trace_norm_hermitian, CMatrix,
    Complex, QubitSubset,
};

fn hermitian(n: usize, raw: &[f64]) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let k = 2 * (i * n + j);
            if i == j {
                m[(i, i)] = Complex::new(raw[k], 0.0);
            } else {
                let z = Complex::new(raw[k], raw[k + 1]);
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
    }
    m
}

fn hermitian_strategy() -> impl Strategy<Value = CMatrix> {
    (1usize..=16)
        .prop_flat_map(|n| prop::collection::vec(-1.0f64..1.0, 2 * n * n).prop_map(move |raw| hermitian(n, &raw)))
}

/// Eigenvalues via the real symmetric embedding `[[A, −B], [B, A]]`, whose
/// spectrum is that of `A + iB` with every value doubled.
fn oracle_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.rows();
    let big = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = m[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut vals: Vec<f64> = big.symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals.into_iter().step_by(2).collect()
}

fn mu(v: f64) -> MuConfig {
    MuConfig::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_match_independent_solver(m in hermitian_strategy()) {
        let ours = hermitian_eigenvalues(&m).unwrap();
        let theirs = oracle_eigenvalues(&m);
        for (a, b) in ours.iter().zip(&theirs) {
            prop_assert!((a - b).abs() < 1e-10, "{ours:?} vs {theirs:?}");
        }
        let trace: f64 = m.trace().re;
        prop_assert!((ours.iter().sum::<f64>() - trace).abs() < 1e-10);
    }

    #[test]
    fn eigenvectors_are_orthonormal_with_small_residuals(m in hermitian_strategy()) {
        let e = hermitian_eigen(&m).unwrap();
        let n = m.rows();
        let v = &e.vectors;
        let gram = v.adjoint().matmul(v).unwrap();
        prop_assert!(gram.max_abs_diff(&CMatrix::identity(n)) < 1e-10);
        let av = m.matmul(v).unwrap();
        let vl = v.matmul(&CMatrix::diagonal(&e.values.iter().map(|&l| Complex::new(l, 0.0)).collect::<Vec<_>>())).unwrap();
        prop_assert!(av.max_abs_diff(&vl) < 1e-10 * (1.0 + m.frobenius_norm()));
    }

    #[test]
    fn report_is_local_unitary_invariant(seed in any::<u64>(), focus in 0usize..4) {
        let psi = common::random_state(4, seed, 0);
        let rotated = common::apply_local_unitaries(&psi, &mut substream(seed, 1));
        let a = monogamy_report(&psi, focus, mu(1.3), mu(0.8)).unwrap();
        let b = monogamy_report(&rotated, focus, mu(1.3), mu(0.8)).unwrap();
        prop_assert!(common::max_field_diff(&a, &b) < 1e-9);
        prop_assert_eq!(a.applicable_delta, b.applicable_delta);
    }

    #[test]
    fn scores_are_monotone_in_mu3(seed in any::<u64>(), lo in 0.2f64..3.0, step in 0.0f64..3.0) {
        let neg = FocusNegativities::compute(&common::random_state(4, seed, 0), 0).unwrap();
        for kind in [ScoreKind::Delta, ScoreKind::Pi] {
            if neg.third_order(kind).iter().all(|r| (0.0..=1.0).contains(r)) {
                let a = neg.score(kind, mu(lo)).value().unwrap();
                let b = neg.score(kind, mu(lo + step)).value().unwrap();
                prop_assert!(b >= a - 1e-12);
            }
        }
    }

    #[test]
    fn three_qubit_reduction(seed in any::<u64>(), focus in 0usize..3) {
        let psi = common::random_state(3, seed, 0);
        let others: Vec<usize> = (0..3).filter(|&q| q != focus).collect();
        let (j, k) = (others[0], others[1]);
        let split = three_split_negativity(&psi, focus, j, k).unwrap();
        let d = three_delta(&psi, focus, j, k).unwrap();
        let expect = split - two_delta(&psi, focus, j).unwrap() - two_delta(&psi, focus, k).unwrap();
        prop_assert!((d - expect).abs() < 1e-12);
        // one-to-rest of a pure state is the pure-state negativity
        let pure = pure_state_negativity(&psi, &QubitSubset::single(focus)).unwrap().value;
        prop_assert!((split - pure).abs() < 1e-9);
        // squared negativity is monogamous on three-qubit pure states
        let ckw = ckw_check_three_qubit(&psi, focus).unwrap();
        prop_assert!(ckw.residual >= -1e-9);
        prop_assert!((three_pi(&psi, focus, j, k).unwrap() - ckw.residual).abs() < 1e-12);
    }

    #[test]
    fn pure_shortcut_matches_partial_transpose(seed in any::<u64>(), q in 0usize..4) {
        let psi = common::random_state(4, seed, 0);
        let focus = QubitSubset::single(q);
        let a = pure_state_negativity(&psi, &focus).unwrap().value;
        let b = negativity(&outer(&psi).unwrap(), &focus).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn bipartite_negativity_is_symmetric_for_pure_states(seed in any::<u64>(), q in 0usize..4) {
        let rho = outer(&common::random_state(4, seed, 0)).unwrap();
        let rest: Vec<usize> = (0..4).filter(|&x| x != q).collect();
        let a = negativity(&rho, &QubitSubset::single(q)).unwrap();
        let b = negativity(&rho, &QubitSubset::new(rest).unwrap()).unwrap();
        // same trace norm, different normalization d − 1
        let ta = a.value * (a.focus_dim - 1) as f64;
        let tb = b.value * (b.focus_dim - 1) as f64;
        prop_assert!((ta - tb).abs() < 1e-9);
    }

    #[test]
    fn partial_transpose_trace_norm_at_least_one(seed in any::<u64>(), mask in 1usize..15) {
        let rho = outer(&common::random_state(4, seed, 0)).unwrap();
        let subset = QubitSubset::new((0..4).filter(|q| mask & (1 << q) != 0).collect::<Vec<_>>()).unwrap();
        let pt = partial_transpose(&rho, &subset).unwrap();
        prop_assert!(trace_norm_hermitian(&pt).unwrap() >= 1.0 - 1e-12);
        prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn marginal_of_product_factorizes(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = common::random_state(2, s1, 0);
        let b = common::random_state(2, s2, 0);
        let rho = outer(&a.tensor(&b)).unwrap();
        let left = partial_trace(&rho, &QubitSubset::new([0, 1]).unwrap()).unwrap();
        let right = partial_trace(&rho, &QubitSubset::new([2, 3]).unwrap()).unwrap();
        prop_assert!(left.matrix().max_abs_diff(outer(&a).unwrap().matrix()) < 1e-12);
        prop_assert!(right.matrix().max_abs_diff(outer(&b).unwrap().matrix()) < 1e-12);
        // no entanglement across the cut
        let n = negativity(&rho, &QubitSubset::new([0, 1]).unwrap()).unwrap().value;
        prop_assert!(n < 1e-12);
    }
}

#[test]
fn three_pi_depends_on_focus() {
    let mut witness = None;
    for i in 0..200 {
        let psi = common::random_state(3, 99, i);
        let a = three_pi(&psi, 0, 1, 2).unwrap();
        let b = three_pi(&psi, 1, 0, 2).unwrap();
        if (a - b).abs() > 1e-3 {
            witness = Some((a, b));
            break;
        }
    }
    assert!(witness.is_some());
}

//! Entanglement quantifiers: negativity, pure-state entanglement entropy
//! and the coherent-information (hashing) lower bound on distillable
//! entanglement. The relative-entropy upper-bound optimizer lives in
//! [`crate::ree`].

use crate::density::{BipartiteDensity, Side};
use crate::matrix::{trace_norm, vn_entropy};
use crate::states::PureState;

/// Negativity `N(rho) = ||rho^TB|| - 1`.
///
/// Zero on PPT states, positive exactly when the partial transpose has a
/// negative eigenvalue. Nonincreasing under LOCC, which is what turns it
/// into a cloning obstruction.
pub fn negativity(rho: &BipartiteDensity) -> f64 {
    let pt = rho.partial_transpose();
    trace_norm(&pt).expect("partial transpose of a density matrix is Hermitian") - 1.0
}

/// Entanglement entropy of a pure state in ebits: the von Neumann entropy
/// of either reduced state.
pub fn entanglement_entropy(psi: &PureState) -> f64 {
    let reduced = psi.density().partial_trace(Side::A);
    vn_entropy(&reduced).expect("reduced state of a pure state is a density matrix")
}

/// Binary entropy `H(p) = -p log2 p - (1-p) log2 (1-p)`.
///
/// For a two-qubit pure state with Schmidt coefficients (a, b) this is the
/// entanglement entropy evaluated at `p = a^2`.
pub fn binary_entropy(p: f64) -> f64 {
    let mut s = 0.0;
    for q in [p, 1.0 - p] {
        if q > 0.0 {
            s -= q * q.log2();
        }
    }
    s
}

/// Coherent-information lower bound on distillable entanglement,
/// `S(rho_B) - S(rho)`, in bits. May be negative; negative values are
/// reported raw since the bound is then merely vacuous.
pub fn hashing_lower_bound(rho: &BipartiteDensity) -> f64 {
    let s_b = vn_entropy(&rho.partial_trace(Side::B))
        .expect("reduced state of a density matrix is a density matrix");
    let s = vn_entropy(rho.mat()).expect("input was validated as a density matrix");
    s_b - s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{Complex64, ComplexMatrix};
    use crate::random::random_density;
    use crate::states::{bell, build_three_bell_pair, schmidt_state, PureState, SchmidtKind};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bell_negativity_is_one() {
        for (m, n) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!((negativity(&bell(m, n).density()) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn separable_diagonal_has_zero_negativity() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, Complex64::new(0.5, 0.0));
        m.set(3, 3, Complex64::new(0.5, 0.0));
        let rho = BipartiteDensity::new(m, 2, 2).unwrap();
        assert!(negativity(&rho).abs() < 1e-12);
    }

    #[test]
    fn schmidt_negativity_closed_form() {
        for kind in [
            SchmidtKind::Psi1,
            SchmidtKind::Psi2,
            SchmidtKind::Psi3,
            SchmidtKind::Phi,
        ] {
            for a in [0.1, 0.25, 0.5, 0.7071067811865476, 0.9] {
                let n = negativity(&schmidt_state(kind, a).unwrap().density());
                let expect = 2.0 * a * (1.0 - a * a).sqrt();
                assert!((n - expect).abs() < 1e-10, "{kind:?} a={a}: {n} vs {expect}");
            }
        }
    }

    #[test]
    fn negativity_product_law() {
        // N(rho (x) sigma) = N N' + N + N' on the grouped split
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5 {
            let rho = random_density(2, 2, &mut rng);
            let sigma = random_density(2, 2, &mut rng);
            let joint = rho.grouped_tensor(&sigma);
            let (n1, n2) = (negativity(&rho), negativity(&sigma));
            let expect = n1 * n2 + n1 + n2;
            assert!((negativity(&joint) - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn entanglement_entropy_values() {
        for (m, n) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!((entanglement_entropy(&bell(m, n)) - 1.0).abs() < 1e-12);
        }
        let psi = schmidt_state(SchmidtKind::Psi1, 0.3f64.sqrt()).unwrap();
        assert!((entanglement_entropy(&psi) - 0.8813).abs() < 5e-4);
        // |00> is a product state
        let zero = PureState::new(
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
            2,
            2,
        )
        .unwrap();
        assert!(entanglement_entropy(&zero).abs() < 1e-12);
    }

    #[test]
    fn binary_entropy_endpoints() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
        assert!((binary_entropy(0.42) - 0.981454).abs() < 1e-5);
    }

    #[test]
    fn hashing_bound_values() {
        assert!((hashing_lower_bound(&bell(0, 0).density()) - 1.0).abs() < 1e-12);

        let io = build_three_bell_pair(&bell(0, 0)).unwrap();
        let expect = 3.0 - 3.0f64.log2();
        assert!((hashing_lower_bound(&io.rho_out) - expect).abs() < 1e-9);

        let max_mixed = BipartiteDensity::new(
            ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0)),
            2,
            2,
        )
        .unwrap();
        assert!((hashing_lower_bound(&max_mixed) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn input_negativity_matches_blank_for_random_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..5 {
            let a = 0.05 + 0.9 * rng.random::<f64>();
            let c = 0.05 + 0.9 * rng.random::<f64>();
            for case in [crate::states::CloneCase::I, crate::states::CloneCase::II] {
                let io = crate::states::build_cloning_pair(case, a, c).unwrap();
                let expect = 2.0 * c * (1.0 - c * c).sqrt();
                assert!((negativity(&io.rho_in) - expect).abs() < 1e-10);
            }
        }
    }
}

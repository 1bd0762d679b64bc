//! Seeded random states for property tests and the verification suite.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::BipartiteDensity;
use crate::matrix::{hermitian_eigs, Complex64, ComplexMatrix};
use crate::states::PureState;

fn gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Full-rank random density matrix: G G† / tr(G G†) with Gaussian G.
pub fn random_density(dim_a: usize, dim_b: usize, rng: &mut impl Rng) -> BipartiteDensity {
    let d = dim_a * dim_b;
    let mut g = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            g.set(i, j, gaussian_complex(rng));
        }
    }
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    let rho = gg.scale(Complex64::new(1.0 / tr, 0.0));
    BipartiteDensity::new(rho, dim_a, dim_b).expect("Gaussian construction is a density matrix")
}

/// Haar-ish random pure state from a normalized Gaussian vector.
pub fn random_pure(dim_a: usize, dim_b: usize, rng: &mut impl Rng) -> PureState {
    let d = dim_a * dim_b;
    let mut amp: Vec<Complex64> = (0..d).map(|_| gaussian_complex(rng)).collect();
    let norm = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in amp.iter_mut() {
        *z /= norm;
    }
    PureState::new(amp, dim_a, dim_b).expect("normalized Gaussian vector")
}

/// Random unitary: the eigenbasis of a random Hermitian matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(i, j, gaussian_complex(rng));
        }
    }
    let h = g.add(&g.adjoint()).scale(Complex64::new(0.5, 0.0));
    hermitian_eigs(&h)
        .expect("symmetrized matrix is Hermitian")
        .vectors
}

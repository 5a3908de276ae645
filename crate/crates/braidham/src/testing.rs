//! Seeded random matrices and an eigenbasis exponential oracle.
//!
//! These exist for the test suites (unit, property, and acceptance), which
//! need generic unitaries and Hermitian involutions with *known*
//! eigenstructure: the oracle exponential below is computed from the stored
//! eigenbasis, so it shares no code path with the Euler closed form it is
//! used to cross-check.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::ComplexMatrix;

fn random_entries(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// A generic unitary: random complex entries orthonormalized column by
/// column (modified Gram-Schmidt, two passes for the last digits).
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = random_entries(dim, &mut rng);

    let mut columns: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..dim).map(|i| entries[i * dim + j]).collect())
        .collect();
    for j in 0..dim {
        for _pass in 0..2 {
            for k in 0..j {
                let (settled, rest) = columns.split_at_mut(j);
                let basis = &settled[k];
                let target = &mut rest[0];
                let proj: Complex64 = basis
                    .iter()
                    .zip(target.iter())
                    .map(|(b, t)| b.conj() * t)
                    .sum();
                for (t, b) in target.iter_mut().zip(basis) {
                    *t -= proj * b;
                }
            }
        }
        let norm: f64 = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for entry in &mut columns[j] {
            *entry /= norm;
        }
    }

    let flat: Vec<Complex64> = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .map(|(i, j)| columns[j][i])
        .collect();
    ComplexMatrix::new(dim, flat).expect("orthonormalized entries are finite")
}

/// A Hermitian involution H = U·diag(±1)·U† carrying its eigenbasis, so
/// functions of H can be evaluated exactly from the spectrum.
pub struct InvolutionWithBasis {
    pub h: ComplexMatrix,
    pub basis: ComplexMatrix,
    pub signs: Vec<f64>,
}

impl InvolutionWithBasis {
    /// exp(iθH/2) via the eigenbasis: U·diag(e^{iθs_j/2})·U†.
    pub fn oracle_exp(&self, theta: f64) -> ComplexMatrix {
        let dim = self.h.dim();
        let mut phases = ComplexMatrix::zeros(dim);
        for (j, sign) in self.signs.iter().enumerate() {
            phases.set(j, j, Complex64::from_polar(1.0, theta * sign / 2.0));
        }
        &self.basis * phases * self.basis.adjoint()
    }
}

/// Builds a random Hermitian involution from a random unitary and random
/// eigenvalue signs.
pub fn random_involution(dim: usize, seed: u64) -> InvolutionWithBasis {
    let basis = random_unitary(dim, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let signs: Vec<f64> = (0..dim)
        .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect();

    let mut diagonal = ComplexMatrix::zeros(dim);
    for (j, sign) in signs.iter().enumerate() {
        diagonal.set(j, j, Complex64::new(*sign, 0.0));
    }
    let h_raw = &basis * diagonal * basis.adjoint();
    // symmetrize away the last rounding so downstream precondition checks
    // see an exactly Hermitian matrix
    let h = (&h_raw + h_raw.adjoint()).scale(Complex64::new(0.5, 0.0));
    InvolutionWithBasis { h, basis, signs }
}

//! Braid generators, relation checks, and word evaluation.
//!
//! Two unitaries a, b represent adjacent strand exchanges. The braid
//! relation aba = bab always holds for the pair used here; the stricter
//! rule abba = 1 (the spin-1/2 belt trick, which forces a⁴ = b⁴ = 1) fails
//! quantitatively: the anyon pair instead satisfies a⁴ = b⁴ = −1 and needs
//! a⁸ = b⁸ = 1, an 8π exchange period.
//!
//! The concrete generators are a(θ) = diag(e^{iθ/2}, e^{−iθ/2}), the block
//! phase picked up by a q-deformed Hamiltonian in its eigenbasis, and the
//! fixed partner b = (1/√2)[[1, i], [i, 1]]. For other a the partner is
//! found numerically by [`solve_b_given_a`].

mod solver;

pub use solver::{solve_b_given_a, BraidPartner, SolverConfig, TRIVIAL_DISTANCE};

use num_complex::Complex64;
use thiserror::Error;

use crate::hamiltonians::NormalizedHamiltonian;
use crate::matrix::{
    exp_involutory, frobenius_distance, ComplexMatrix, MatrixError, Tolerance, DEFAULT_ABS_TOL,
};

/// Errors from pair construction, word parsing, and the partner solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error("generator {which} is not unitary: residual {residual:.3e}")]
    NotUnitary { which: &'static str, residual: f64 },
    #[error("generators have mismatched dimensions {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid braid letter '{found}' at position {position}: expected a, b, A, or B")]
    InvalidLetter { found: char, position: usize },
    #[error("solver requires a 2x2 generator, got {0}x{0}")]
    SolverDimension(usize),
    #[error("invalid solver config: {0}")]
    InvalidConfig(&'static str),
}

/// An ordered pair of same-dimension unitary generators.
#[derive(Debug, Clone, PartialEq)]
pub struct BraidPair {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

impl BraidPair {
    /// Validates dimensions and unitarity of both generators.
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self, BraidError> {
        if a.dim() != b.dim() {
            return Err(BraidError::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        for (which, m) in [("a", &a), ("b", &b)] {
            let residual = m.unitarity_residual();
            if residual >= DEFAULT_ABS_TOL {
                return Err(BraidError::NotUnitary { which, residual });
            }
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }
}

/// One letter of a braid word: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidLetter {
    A,
    AInverse,
    B,
    BInverse,
}

impl BraidLetter {
    fn inverse(self) -> Self {
        match self {
            Self::A => Self::AInverse,
            Self::AInverse => Self::A,
            Self::B => Self::BInverse,
            Self::BInverse => Self::B,
        }
    }
}

/// A finite word over {a, b, a⁻¹, b⁻¹}. Text syntax: lowercase for a
/// generator, uppercase for its inverse, whitespace ignored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraidWord {
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        Self { letters }
    }

    /// Parses a string over {a, b, A, B}; the error reports the offending
    /// character and its zero-based position.
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        let mut letters = Vec::new();
        for (position, found) in text.chars().enumerate() {
            let letter = match found {
                'a' => BraidLetter::A,
                'b' => BraidLetter::B,
                'A' => BraidLetter::AInverse,
                'B' => BraidLetter::BInverse,
                c if c.is_whitespace() => continue,
                _ => return Err(BraidError::InvalidLetter { found, position }),
            };
            letters.push(letter);
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The group inverse: letters reversed with each letter inverted.
    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

/// Residual and verdict of a single relation check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationCheck {
    pub residual: f64,
    pub pass: bool,
}

/// The diagonal generator a(θ) = diag(e^{iθ/2}, e^{−iθ/2}).
pub fn anyon_a(theta: f64) -> ComplexMatrix {
    let zero = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_rows([
        [Complex64::from_polar(1.0, theta / 2.0), zero],
        [zero, Complex64::from_polar(1.0, -theta / 2.0)],
    ])
    .expect("finite entries")
}

/// The fixed partner b = (1/√2)[[1, i], [i, 1]], of order 8 with b⁴ = −1.
pub fn anyon_b() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_rows([
        [Complex64::new(h, 0.0), Complex64::new(0.0, h)],
        [Complex64::new(0.0, h), Complex64::new(h, 0.0)],
    ])
    .expect("finite entries")
}

/// The pair (a(θ), b) used by the braid-word evaluator.
pub fn anyon_pair(theta: f64) -> BraidPair {
    BraidPair::new(anyon_a(theta), anyon_b()).expect("anyon generators are unitary")
}

/// R(θ) = exp(iθH/2) for a normalized Hamiltonian.
pub fn q_deform(h: &NormalizedHamiltonian, theta: f64) -> Result<ComplexMatrix, MatrixError> {
    exp_involutory(h.matrix(), theta)
}

/// ‖aba − bab‖_F against the tolerance.
pub fn check_braid_relation(pair: &BraidPair, tol: &Tolerance) -> RelationCheck {
    let aba = pair.a() * pair.b() * pair.a();
    let bab = pair.b() * pair.a() * pair.b();
    let residual = frobenius_distance(&aba, &bab).expect("equal dimensions");
    RelationCheck {
        residual,
        pass: residual < tol.abs_tol(),
    }
}

/// ‖abba − 1‖_F against the tolerance.
pub fn check_dirac_game_rule(pair: &BraidPair, tol: &Tolerance) -> RelationCheck {
    let abba = pair.a() * pair.b() * pair.b() * pair.a();
    let residual =
        frobenius_distance(&abba, &ComplexMatrix::identity(abba.dim())).expect("equal dimensions");
    RelationCheck {
        residual,
        pass: residual < tol.abs_tol(),
    }
}

/// Left-to-right product of the word's letters; inverses are conjugate
/// transposes (generators are unitary by construction). The empty word
/// evaluates to the identity.
pub fn evaluate_word(pair: &BraidPair, word: &BraidWord) -> ComplexMatrix {
    let mut product = ComplexMatrix::identity(pair.a().dim());
    for letter in word.letters() {
        let factor = match letter {
            BraidLetter::A => pair.a().clone(),
            BraidLetter::AInverse => pair.a().adjoint(),
            BraidLetter::B => pair.b().clone(),
            BraidLetter::BInverse => pair.b().adjoint(),
        };
        product = product * factor;
    }
    product
}

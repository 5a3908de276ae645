//! Dense complex-matrix kernel for 2×2 and 4×4 operators.
//!
//! Everything downstream (Hamiltonians, braid generators, conjugation
//! pipelines) is carried by [`ComplexMatrix`]. The kernel deliberately stays
//! small: products, adjoints, Frobenius norms, structural classification,
//! the closed-form unitary exponential of an involution, group-order
//! detection, and Kronecker-factor projections. No general decompositions.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Default absolute tolerance applied to Frobenius-norm residuals.
///
/// All matrices in play have entries of magnitude ≤ 1, so an absolute
/// threshold doubles as a relative one up to a small constant.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;

/// Default power cutoff for [`matrix_order`]; generous headroom above the
/// order-8 generators this library actually meets.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Errors for kernel operations: invalid construction, dimension mismatches,
/// and violated operation preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("unsupported dimension {0}: only 2 and 4 are supported")]
    UnsupportedDimension(usize),
    #[error("entry count {found} does not match dimension {dim} (expected {})", dim * dim)]
    EntryCount { dim: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not {property}: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotA {
        property: &'static str,
        residual: f64,
        tol: f64,
    },
    #[error("invalid tolerance {0}: must be positive and finite")]
    InvalidTolerance(f64),
    #[error("max_order must be at least 1")]
    InvalidMaxOrder,
}

/// Absolute tolerance on Frobenius-norm residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    abs_tol: f64,
}

impl Tolerance {
    pub fn new(abs_tol: f64) -> Result<Self, MatrixError> {
        if abs_tol <= 0.0 || !abs_tol.is_finite() {
            return Err(MatrixError::InvalidTolerance(abs_tol));
        }
        Ok(Self { abs_tol })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: DEFAULT_ABS_TOL,
        }
    }
}

/// Dense square complex matrix of dimension 2 or 4, row-major.
///
/// Invariants: `dim ∈ {2, 4}` and every entry finite. Enforced by the
/// fallible constructors; the named builders produce valid matrices by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<(), MatrixError> {
    match dim {
        2 | 4 => Ok(()),
        other => Err(MatrixError::UnsupportedDimension(other)),
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, validating the invariants.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, MatrixError> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(MatrixError::EntryCount {
                dim,
                found: entries.len(),
            });
        }
        for (idx, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MatrixError::NonFiniteEntry {
                    row: idx / dim,
                    col: idx % dim,
                });
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds from nested row arrays; `N` must be 2 or 4.
    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Result<Self, MatrixError> {
        Self::new(N, rows.iter().flatten().copied().collect())
    }

    /// Zero matrix. Panics on a dimension other than 2 or 4.
    pub fn zeros(dim: usize) -> Self {
        check_dim(dim).expect("dimension must be 2 or 4");
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix. Panics on a dimension other than 2 or 4.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Pauli σ₁.
    pub fn pauli_x() -> Self {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        Self {
            dim: 2,
            entries: vec![o, l, l, o],
        }
    }

    /// Pauli σ₂.
    pub fn pauli_y() -> Self {
        let o = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        Self {
            dim: 2,
            entries: vec![o, -i, i, o],
        }
    }

    /// Pauli σ₃.
    pub fn pauli_z() -> Self {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        Self {
            dim: 2,
            entries: vec![l, o, o, -l],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        let dim = self.dim;
        self.entries[row * dim + col] = value;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        Self { dim: d, entries }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Frobenius norm: √(Σ |entry|²).
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Multiplies by a complex scalar.
    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// ‖M − M†‖_F.
    pub fn hermiticity_residual(&self) -> f64 {
        frobenius_distance(self, &self.adjoint()).expect("same dimension")
    }

    /// ‖M·M† − I‖_F.
    pub fn unitarity_residual(&self) -> f64 {
        frobenius_distance(&(self * &self.adjoint()), &Self::identity(self.dim))
            .expect("same dimension")
    }

    /// ‖M² − I‖_F.
    pub fn involution_residual(&self) -> f64 {
        frobenius_distance(&(self * self), &Self::identity(self.dim)).expect("same dimension")
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let d = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                for j in 0..d {
                    entries[i * d + j] += a * rhs.entries[k * d + j];
                }
            }
        }
        Self { dim: d, entries }
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn sub_impl(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.entries[row * self.dim + col]
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            write!(f, "[")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Serializes as nested rows of `[re, im]` pairs.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(self.dim))?;
        for i in 0..self.dim {
            let row: Vec<[f64; 2]> = (0..self.dim)
                .map(|j| {
                    let z = self.get(i, j);
                    [z.re, z.im]
                })
                .collect();
            rows.serialize_element(&row)?;
        }
        rows.end()
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl $trait for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                self.$impl_fn(rhs)
            }
        }
        impl $trait for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                self.$impl_fn(&rhs)
            }
        }
        impl $trait<&ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                self.$impl_fn(&rhs)
            }
        }
    };
}

impl_binop!(Mul, mul, mul_impl);
impl_binop!(Add, add, add_impl);
impl_binop!(Sub, sub, sub_impl);

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        -&self
    }
}

/// Structural flags from [`classify`]; each is a thresholded residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub hermitian: bool,
    pub unitary: bool,
    pub involutory: bool,
    pub traceless: bool,
}

/// Result of [`matrix_order`]: the smallest power reaching the identity (if
/// any within the cutoff) and every scanned power that lands on −I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixOrder {
    pub order: Option<usize>,
    pub minus_identity_powers: Vec<usize>,
}

/// Distances from the two fixed Kronecker patterns, see
/// [`kron_factor_residuals`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KronFactorResiduals {
    /// min over 2×2 X of ‖M − X⊗I₂‖_F
    pub left_residual: f64,
    /// min over 2×2 X of ‖M − I₂⊗X‖_F
    pub right_residual: f64,
}

/// ‖A − B‖_F. Symmetric, zero iff the matrices are entrywise equal.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, MatrixError> {
    if a.dim != b.dim {
        return Err(MatrixError::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Classifies a matrix by thresholding the four structural residuals
/// ‖M − M†‖_F, ‖MM† − I‖_F, ‖M² − I‖_F, and |tr M| against `tol`.
pub fn classify(m: &ComplexMatrix, tol: &Tolerance) -> Classification {
    Classification {
        hermitian: m.hermiticity_residual() < tol.abs_tol,
        unitary: m.unitarity_residual() < tol.abs_tol,
        involutory: m.involution_residual() < tol.abs_tol,
        traceless: m.trace().norm() < tol.abs_tol,
    }
}

/// Unitary exponential exp(iθH/2) of a Hermitian involution H.
///
/// Since H² = I the series collapses to cos(θ/2)·I + i·sin(θ/2)·H. The
/// preconditions are checked against the default tolerance and reported by
/// name on failure.
pub fn exp_involutory(h: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix, MatrixError> {
    let tol = Tolerance::default();
    let herm = h.hermiticity_residual();
    if herm >= tol.abs_tol {
        return Err(MatrixError::NotA {
            property: "Hermitian",
            residual: herm,
            tol: tol.abs_tol,
        });
    }
    let invol = h.involution_residual();
    if invol >= tol.abs_tol {
        return Err(MatrixError::NotA {
            property: "involutory",
            residual: invol,
            tol: tol.abs_tol,
        });
    }
    let half = theta / 2.0;
    let cos_term = ComplexMatrix::identity(h.dim).scale(Complex64::new(half.cos(), 0.0));
    let sin_term = h.scale(Complex64::new(0.0, half.sin()));
    Ok(cos_term + sin_term)
}

/// Finds the smallest n ≤ `max_order` with ‖Mⁿ − I‖_F < tol, along with
/// every scanned power where Mⁿ = −I. Requires a unitary input, otherwise
/// powers drift and "order" is meaningless.
pub fn matrix_order(
    m: &ComplexMatrix,
    max_order: usize,
    tol: &Tolerance,
) -> Result<MatrixOrder, MatrixError> {
    if max_order < 1 {
        return Err(MatrixError::InvalidMaxOrder);
    }
    let unit = m.unitarity_residual();
    if unit >= tol.abs_tol {
        return Err(MatrixError::NotA {
            property: "unitary",
            residual: unit,
            tol: tol.abs_tol,
        });
    }
    let identity = ComplexMatrix::identity(m.dim);
    let minus_identity = -&identity;
    let mut power = m.clone();
    let mut minus_identity_powers = Vec::new();
    let mut order = None;
    for n in 1..=max_order {
        if frobenius_distance(&power, &minus_identity).expect("same dimension") < tol.abs_tol {
            minus_identity_powers.push(n);
        }
        if frobenius_distance(&power, &identity).expect("same dimension") < tol.abs_tol {
            order = Some(n);
            break;
        }
        power = &power * m;
    }
    Ok(MatrixOrder {
        order,
        minus_identity_powers,
    })
}

/// Kronecker product of two 2×2 matrices: block (i,j) of the 4×4 result is
/// A\[i,j\]·B.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    if a.dim != 2 {
        return Err(MatrixError::UnsupportedDimension(a.dim));
    }
    if b.dim != 2 {
        return Err(MatrixError::UnsupportedDimension(b.dim));
    }
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            let factor = a.get(i, j);
            for k in 0..2 {
                for l in 0..2 {
                    out.set(2 * i + k, 2 * j + l, factor * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Distance of a 4×4 matrix from the nearest X⊗I₂ (left) and I₂⊗X (right).
///
/// Both pattern spaces are linear, so the minimizer is an orthogonal
/// projection with a closed form: for X⊗I₂ the optimal X\[i,j\] averages the
/// diagonal of block (i,j); for I₂⊗X it averages the two diagonal blocks.
/// A residual is zero exactly when the matrix has that factor form.
pub fn kron_factor_residuals(m: &ComplexMatrix) -> Result<KronFactorResiduals, MatrixError> {
    if m.dim != 4 {
        return Err(MatrixError::UnsupportedDimension(m.dim));
    }

    let mut left_factor = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            let avg = (m.get(2 * i, 2 * j) + m.get(2 * i + 1, 2 * j + 1)) * 0.5;
            left_factor.set(i, j, avg);
        }
    }
    let left = kron(&left_factor, &ComplexMatrix::identity(2)).expect("2x2 factors");

    let mut right_factor = ComplexMatrix::zeros(2);
    for k in 0..2 {
        for l in 0..2 {
            let avg = (m.get(k, l) + m.get(2 + k, 2 + l)) * 0.5;
            right_factor.set(k, l, avg);
        }
    }
    let right = kron(&ComplexMatrix::identity(2), &right_factor).expect("2x2 factors");

    Ok(KronFactorResiduals {
        left_residual: frobenius_distance(m, &left).expect("same dimension"),
        right_residual: frobenius_distance(m, &right).expect("same dimension"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The order-8 diagonal generator e^{-iπ/4}·diag(1, i).
    fn diag_generator() -> ComplexMatrix {
        exp_involutory(&ComplexMatrix::pauli_z(), -FRAC_PI_2).unwrap()
    }

    #[test]
    fn constructor_rejects_bad_dims_and_entries() {
        assert!(matches!(
            ComplexMatrix::new(3, vec![c(0.0, 0.0); 9]),
            Err(MatrixError::UnsupportedDimension(3))
        ));
        assert!(matches!(
            ComplexMatrix::new(2, vec![c(0.0, 0.0); 3]),
            Err(MatrixError::EntryCount { dim: 2, found: 3 })
        ));
        let nan = ComplexMatrix::new(
            2,
            vec![c(0.0, 0.0), c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        assert!(matches!(
            nan,
            Err(MatrixError::NonFiniteEntry { row: 0, col: 1 })
        ));
    }

    #[test]
    fn frobenius_distance_identity_is_zero() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(frobenius_distance(&i2, &i2).unwrap(), 0.0);
    }

    #[test]
    fn frobenius_distance_of_opposite_pauli() {
        // ‖σ₁ − (−σ₁)‖_F = ‖2σ₁‖_F = 2√2, two entries of magnitude 2
        let s1 = ComplexMatrix::pauli_x();
        let d = frobenius_distance(&s1, &-&s1).unwrap();
        assert!((d - 8.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn frobenius_distance_i_sigma1_from_identity() {
        // entries: two of |i|² plus two of |-1|² sum to 4
        let is1 = ComplexMatrix::pauli_x().scale(c(0.0, 1.0));
        let d = frobenius_distance(&is1, &ComplexMatrix::identity(2)).unwrap();
        assert!((d - 2.0).abs() < 1e-15);
    }

    #[test]
    fn frobenius_distance_dimension_mismatch() {
        let err = frobenius_distance(&ComplexMatrix::identity(2), &ComplexMatrix::identity(4));
        assert!(matches!(
            err,
            Err(MatrixError::DimensionMismatch { left: 2, right: 4 })
        ));
    }

    #[test]
    fn classify_identity() {
        let flags = classify(&ComplexMatrix::identity(4), &Tolerance::default());
        assert!(flags.hermitian && flags.unitary && flags.involutory);
        assert!(!flags.traceless);
    }

    #[test]
    fn classify_pauli() {
        let flags = classify(&ComplexMatrix::pauli_x(), &Tolerance::default());
        assert!(flags.hermitian && flags.unitary && flags.involutory && flags.traceless);
    }

    #[test]
    fn classify_diag_generator() {
        // unitary but neither Hermitian nor involutory, trace √2
        let flags = classify(&diag_generator(), &Tolerance::default());
        assert!(!flags.hermitian);
        assert!(flags.unitary);
        assert!(!flags.involutory);
        assert!(!flags.traceless);
    }

    #[test]
    fn exp_involutory_at_zero_is_identity() {
        let r = exp_involutory(&ComplexMatrix::pauli_y(), 0.0).unwrap();
        assert!(frobenius_distance(&r, &ComplexMatrix::identity(2)).unwrap() < 1e-15);
    }

    #[test]
    fn exp_involutory_of_sigma3_quarter_turn() {
        // e^{-iπ/4}·diag(1, i)
        let phase = c(FRAC_PI_4.cos(), -FRAC_PI_4.sin());
        let expected =
            ComplexMatrix::from_rows([[phase, c(0.0, 0.0)], [c(0.0, 0.0), phase * c(0.0, 1.0)]])
                .unwrap();
        let got = exp_involutory(&ComplexMatrix::pauli_z(), -FRAC_PI_2).unwrap();
        assert!(frobenius_distance(&got, &expected).unwrap() < 1e-15);
    }

    #[test]
    fn exp_involutory_of_sigma1_matches_eigenbasis_route() {
        // σ₁ = U·diag(1,-1)·U† with U the Hadamard-like basis change, so the
        // exponential is U·diag(e^{iθ/2}, e^{-iθ/2})·U†.
        let theta = -FRAC_PI_2;
        let h = FRAC_1_SQRT_2;
        let u =
            ComplexMatrix::from_rows([[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]).unwrap();
        let phases = ComplexMatrix::from_rows([
            [Complex64::from_polar(1.0, theta / 2.0), c(0.0, 0.0)],
            [c(0.0, 0.0), Complex64::from_polar(1.0, -theta / 2.0)],
        ])
        .unwrap();
        let oracle = &u * &phases * u.adjoint();
        let got = exp_involutory(&ComplexMatrix::pauli_x(), theta).unwrap();
        assert!(frobenius_distance(&got, &oracle).unwrap() < 1e-15);

        // and equals (1/√2)(I - iσ₁) entrywise
        let expected =
            ComplexMatrix::from_rows([[c(h, 0.0), c(0.0, -h)], [c(0.0, -h), c(h, 0.0)]]).unwrap();
        assert!(frobenius_distance(&got, &expected).unwrap() < 1e-15);
    }

    #[test]
    fn exp_involutory_rejects_non_involution() {
        let err = exp_involutory(&ComplexMatrix::pauli_x().scale(c(2.0, 0.0)), 1.0);
        match err {
            Err(MatrixError::NotA { property, .. }) => assert_eq!(property, "involutory"),
            other => panic!("expected involution failure, got {other:?}"),
        }
    }

    #[test]
    fn exp_involutory_rejects_non_hermitian() {
        // [[1, 1], [0, -1]] squares to I but is not Hermitian
        let m = ComplexMatrix::from_rows([[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
            .unwrap();
        match exp_involutory(&m, 1.0) {
            Err(MatrixError::NotA { property, .. }) => assert_eq!(property, "Hermitian"),
            other => panic!("expected Hermitian failure, got {other:?}"),
        }
    }

    #[test]
    fn order_of_identity() {
        let res = matrix_order(
            &ComplexMatrix::identity(2),
            DEFAULT_MAX_ORDER,
            &Tolerance::default(),
        )
        .unwrap();
        assert_eq!(res.order, Some(1));
        assert!(res.minus_identity_powers.is_empty());
    }

    #[test]
    fn order_of_diag_generator_is_eight() {
        let res =
            matrix_order(&diag_generator(), DEFAULT_MAX_ORDER, &Tolerance::default()).unwrap();
        assert_eq!(res.order, Some(8));
        assert_eq!(res.minus_identity_powers, vec![4]);
    }

    #[test]
    fn order_of_i_sigma3_is_four() {
        let m = ComplexMatrix::pauli_z().scale(c(0.0, 1.0));
        let res = matrix_order(&m, DEFAULT_MAX_ORDER, &Tolerance::default()).unwrap();
        assert_eq!(res.order, Some(4));
        assert_eq!(res.minus_identity_powers, vec![2]);
    }

    #[test]
    fn order_cutoff_returns_none() {
        let res = matrix_order(&diag_generator(), 5, &Tolerance::default()).unwrap();
        assert_eq!(res.order, None);
        assert_eq!(res.minus_identity_powers, vec![4]);
    }

    #[test]
    fn order_rejects_non_unitary() {
        let m = ComplexMatrix::pauli_x().scale(c(2.0, 0.0));
        assert!(matches!(
            matrix_order(&m, 8, &Tolerance::default()),
            Err(MatrixError::NotA {
                property: "unitary",
                ..
            })
        ));
    }

    #[test]
    fn order_rejects_zero_cutoff() {
        assert!(matches!(
            matrix_order(&ComplexMatrix::identity(2), 0, &Tolerance::default()),
            Err(MatrixError::InvalidMaxOrder)
        ));
    }

    #[test]
    fn kron_of_identities() {
        let i2 = ComplexMatrix::identity(2);
        let k = kron(&i2, &i2).unwrap();
        assert!(frobenius_distance(&k, &ComplexMatrix::identity(4)).unwrap() < 1e-15);
    }

    #[test]
    fn kron_identity_with_generator_is_block_diagonal() {
        let a = diag_generator();
        let k = kron(&ComplexMatrix::identity(2), &a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(k.get(i, j), a.get(i, j));
                assert_eq!(k.get(2 + i, 2 + j), a.get(i, j));
                assert_eq!(k.get(i, 2 + j), c(0.0, 0.0));
                assert_eq!(k.get(2 + i, j), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn kron_sigma1_identity_swaps_blocks() {
        let k = kron(&ComplexMatrix::pauli_x(), &ComplexMatrix::identity(2)).unwrap();
        let one = c(1.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { one } else { c(0.0, 0.0) };
                assert_eq!(k.get(i, 2 + j), expect);
                assert_eq!(k.get(2 + i, j), expect);
                assert_eq!(k.get(i, j), c(0.0, 0.0));
                assert_eq!(k.get(2 + i, 2 + j), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn kron_rejects_4x4_input() {
        let i4 = ComplexMatrix::identity(4);
        assert!(kron(&i4, &ComplexMatrix::identity(2)).is_err());
        assert!(kron(&ComplexMatrix::identity(2), &i4).is_err());
    }

    #[test]
    fn factor_residuals_detect_exact_patterns() {
        let a = diag_generator();
        let i2 = ComplexMatrix::identity(2);

        let right_form = kron(&i2, &a).unwrap();
        let res = kron_factor_residuals(&right_form).unwrap();
        assert!(res.right_residual < 1e-15);
        assert!(res.left_residual > 0.1);

        let left_form = kron(&a, &i2).unwrap();
        let res = kron_factor_residuals(&left_form).unwrap();
        assert!(res.left_residual < 1e-15);
        assert!(res.right_residual > 0.1);
    }

    #[test]
    fn factor_residuals_match_projection_identity() {
        // For an orthogonal projection, ‖M − P(M)‖² = ‖M‖² − ‖P(M)‖²; check
        // the closed-form residuals against this independent route.
        let a = diag_generator();
        let b = exp_involutory(&ComplexMatrix::pauli_x(), FRAC_PI_2).unwrap();
        let m = kron(&a, &b).unwrap();
        let res = kron_factor_residuals(&m).unwrap();

        let i2 = ComplexMatrix::identity(2);
        let mut left_factor = ComplexMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                left_factor.set(
                    i,
                    j,
                    (m.get(2 * i, 2 * j) + m.get(2 * i + 1, 2 * j + 1)) * 0.5,
                );
            }
        }
        let proj = kron(&left_factor, &i2).unwrap();
        let via_pythagoras = (m.frobenius_norm().powi(2) - proj.frobenius_norm().powi(2))
            .max(0.0)
            .sqrt();
        assert!((res.left_residual - via_pythagoras).abs() < 1e-12);
    }

    #[test]
    fn tolerance_rejects_non_positive() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(-1e-9).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        assert_eq!(Tolerance::default().abs_tol(), 1e-12);
    }
}

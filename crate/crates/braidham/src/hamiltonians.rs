//! Dirac and Bogoliubov Hamiltonian builders, natural units (ħ = c = 1).
//!
//! The normalized Dirac Hamiltonian is H_D = (m·β + p·α)/E with
//! E = √(p² + m²), a Hermitian involution. Conjugating its q-deformation
//! through the diagonalizing frame produces a second involution
//!
//!   𝓗 = (1/(E·p))·(p²·β − m·p·α)
//!
//! with energy scale 𝓔 = p·E/m. [`bogoliubov_match`] checks that 𝓔·𝓗 is a
//! Bogoliubov quasiparticle Hamiltonian m(k)·β + p_eff·α with
//! m(k) = k²/(2·m_qp) − μ, at k = p, quasiparticle mass m/2, μ = 0, and
//! reversed momentum p_eff = −p.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::{frobenius_distance, kron, ComplexMatrix, Tolerance};

/// Smallest accepted mass. Below this the energy scale 𝓔 = pE/m blows up.
pub const MASS_FLOOR: f64 = 1e-8;

/// Smallest accepted momentum magnitude. At p = 0 the diagonalizing unitary
/// is singular (u₋⁻¹ diverges) and 𝓔 vanishes.
pub const MOMENTUM_FLOOR: f64 = 1e-8;

/// Rejected parameter inputs. The zero-mass and zero-momentum limits are
/// genuinely singular for this construction, so they are errors rather than
/// special cases.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("non-finite momentum component {component}: {value}")]
    NonFiniteMomentum { component: &'static str, value: f64 },
    #[error("non-finite parameter {name}: {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },
    #[error("mass {0} below floor {MASS_FLOOR:e}")]
    MassBelowFloor(f64),
    #[error("momentum magnitude {0} below floor {MOMENTUM_FLOOR:e}")]
    MomentumBelowFloor(f64),
    #[error("{name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
}

/// A 3-momentum with finite components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Momentum {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl Momentum {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self, DomainError> {
        for (component, value) in [("p1", p1), ("p2", p2), ("p3", p3)] {
            if !value.is_finite() {
                return Err(DomainError::NonFiniteMomentum { component, value });
            }
        }
        Ok(Self { p1, p2, p3 })
    }

    /// |p| = √(p₁² + p₂² + p₃²).
    pub fn magnitude(&self) -> f64 {
        (self.p1 * self.p1 + self.p2 * self.p2 + self.p3 * self.p3).sqrt()
    }

    /// p₊ = p₁ + i·p₂.
    pub fn p_plus(&self) -> Complex64 {
        Complex64::new(self.p1, self.p2)
    }

    /// p₋ = p₁ − i·p₂.
    pub fn p_minus(&self) -> Complex64 {
        Complex64::new(self.p1, -self.p2)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            p1: factor * self.p1,
            p2: factor * self.p2,
            p3: factor * self.p3,
        }
    }
}

/// Mass and momentum for the Dirac construction, with both above the domain
/// floors. Derived quantities: E = √(p² + m²) and u± = √(E ± m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiracParams {
    mass: f64,
    momentum: Momentum,
}

impl DiracParams {
    pub fn new(mass: f64, momentum: Momentum) -> Result<Self, DomainError> {
        if !mass.is_finite() {
            return Err(DomainError::NonFiniteParameter {
                name: "mass",
                value: mass,
            });
        }
        if mass < MASS_FLOOR {
            return Err(DomainError::MassBelowFloor(mass));
        }
        let p = momentum.magnitude();
        if p < MOMENTUM_FLOOR {
            return Err(DomainError::MomentumBelowFloor(p));
        }
        Ok(Self { mass, momentum })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn momentum(&self) -> Momentum {
        self.momentum
    }

    /// E = √(p² + m²).
    pub fn energy(&self) -> f64 {
        let p = self.momentum.magnitude();
        (p * p + self.mass * self.mass).sqrt()
    }

    /// u₊ = √(E + m).
    pub fn u_plus(&self) -> f64 {
        (self.energy() + self.mass).sqrt()
    }

    /// u₋ = √(E − m), evaluated as p/u₊ to dodge the cancellation in
    /// E − m when the mass dominates. Positive whenever the momentum floor
    /// holds.
    pub fn u_minus(&self) -> f64 {
        self.momentum.magnitude() / self.u_plus()
    }
}

/// Parameters of the Bogoliubov quasiparticle Hamiltonian
/// H_B = m(k)·β + p_eff·α with m(k) = k²/(2·m_qp) − μ and
/// p_eff = k·Δ_B/k_F. The gap Δ_B and Fermi momentum k_F enter only through
/// their ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BogoliubovParams {
    pub k: Momentum,
    pub m_qp: f64,
    pub mu: f64,
    pub delta_b: f64,
    pub k_f: f64,
}

impl BogoliubovParams {
    pub fn new(
        k: Momentum,
        m_qp: f64,
        mu: f64,
        delta_b: f64,
        k_f: f64,
    ) -> Result<Self, DomainError> {
        for (name, value) in [
            ("m_qp", m_qp),
            ("mu", mu),
            ("delta_b", delta_b),
            ("k_f", k_f),
        ] {
            if !value.is_finite() {
                return Err(DomainError::NonFiniteParameter { name, value });
            }
        }
        if m_qp <= 0.0 {
            return Err(DomainError::NonPositiveParameter {
                name: "m_qp",
                value: m_qp,
            });
        }
        if k_f <= 0.0 {
            return Err(DomainError::NonPositiveParameter {
                name: "k_f",
                value: k_f,
            });
        }
        Ok(Self {
            k,
            m_qp,
            mu,
            delta_b,
            k_f,
        })
    }

    /// The kinetic mass term m(k) = k²/(2·m_qp) − μ.
    pub fn mass_term(&self) -> f64 {
        let k = self.k.magnitude();
        k * k / (2.0 * self.m_qp) - self.mu
    }

    /// The effective momentum k·Δ_B/k_F entering the α-term.
    pub fn effective_momentum(&self) -> Momentum {
        self.k.scaled(self.delta_b / self.k_f)
    }
}

/// A Hermitian involution together with the energy scale stripped off during
/// normalization (E for the Dirac case, 𝓔 = p·E/m for the derived one).
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedHamiltonian {
    matrix: ComplexMatrix,
    energy_scale: f64,
}

impl NormalizedHamiltonian {
    fn new(matrix: ComplexMatrix, energy_scale: f64) -> Self {
        debug_assert!(matrix.hermiticity_residual() < 1e-10);
        debug_assert!(matrix.involution_residual() < 1e-10);
        Self {
            matrix,
            energy_scale,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn energy_scale(&self) -> f64 {
        self.energy_scale
    }
}

/// The four standard-representation Dirac matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracMatrices {
    pub beta: ComplexMatrix,
    pub alpha1: ComplexMatrix,
    pub alpha2: ComplexMatrix,
    pub alpha3: ComplexMatrix,
}

impl DiracMatrices {
    /// m·β + v₁·α₁ + v₂·α₂ + v₃·α₃ for real coefficients.
    pub fn linear_combination(&self, m: f64, v: Momentum) -> ComplexMatrix {
        let re = |x: f64| Complex64::new(x, 0.0);
        self.beta.scale(re(m))
            + self.alpha1.scale(re(v.p1))
            + self.alpha2.scale(re(v.p2))
            + self.alpha3.scale(re(v.p3))
    }
}

/// β = σ₃⊗I₂ and αᵢ = σ₁⊗σᵢ: Hermitian involutions that pairwise
/// anticommute.
pub fn dirac_matrices() -> DiracMatrices {
    let i2 = ComplexMatrix::identity(2);
    let sx = ComplexMatrix::pauli_x();
    DiracMatrices {
        beta: kron(&ComplexMatrix::pauli_z(), &i2).expect("2x2 factors"),
        alpha1: kron(&sx, &sx).expect("2x2 factors"),
        alpha2: kron(&sx, &ComplexMatrix::pauli_y()).expect("2x2 factors"),
        alpha3: kron(&sx, &ComplexMatrix::pauli_z()).expect("2x2 factors"),
    }
}

/// H_D = (m·β + p·α)/E with energy scale E.
pub fn dirac_hamiltonian(params: &DiracParams) -> NormalizedHamiltonian {
    let energy = params.energy();
    let unnormalized = dirac_matrices().linear_combination(params.mass(), params.momentum());
    NormalizedHamiltonian::new(
        unnormalized.scale(Complex64::new(1.0 / energy, 0.0)),
        energy,
    )
}

/// H_B = m(k)·β + p_eff·α, unnormalized and Hermitian.
pub fn bogoliubov_hamiltonian(params: &BogoliubovParams) -> ComplexMatrix {
    dirac_matrices().linear_combination(params.mass_term(), params.effective_momentum())
}

/// 𝓗 = (1/(E·p))·(p²·β − m·p·α) with energy scale 𝓔 = p·E/m.
///
/// This is the braid partner of H_D extracted from the conjugation chain.
/// The prefactor is grouped to avoid dividing by the mass anywhere but in
/// the scale itself.
pub fn derived_hamiltonian(params: &DiracParams) -> NormalizedHamiltonian {
    let p = params.momentum().magnitude();
    let energy = params.energy();
    let unnormalized =
        dirac_matrices().linear_combination(p * p, params.momentum().scaled(-params.mass()));
    NormalizedHamiltonian::new(
        unnormalized.scale(Complex64::new(1.0 / (energy * p), 0.0)),
        p * energy / params.mass(),
    )
}

/// Outcome of matching 𝓔·𝓗 against a Bogoliubov Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BogoliubovMatch {
    /// ‖𝓔·𝓗 − H_B(matched_params)‖_F
    pub residual: f64,
    /// |𝓔 − √(m(k)² + p_eff²)|
    pub energy_residual: f64,
    pub matched_params: BogoliubovParams,
    pub pass: bool,
}

/// Checks that the derived Hamiltonian is the Bogoliubov Hamiltonian with
/// k = p, quasiparticle mass m/2, μ = 0, and Δ_B/k_F = −1 (momentum −p).
///
/// The sign convention k = p, Δ_B/k_F = −1 is one of two equivalent ways to
/// realize the reversed momentum; m(k) is even in k, so k = −p with ratio +1
/// gives the same matrix.
pub fn bogoliubov_match(params: &DiracParams, tol: &Tolerance) -> BogoliubovMatch {
    let matched_params =
        BogoliubovParams::new(params.momentum(), params.mass() / 2.0, 0.0, -1.0, 1.0)
            .expect("mass floor keeps m_qp positive");

    let derived = derived_hamiltonian(params);
    let rescaled = derived
        .matrix()
        .scale(Complex64::new(derived.energy_scale(), 0.0));
    let h_b = bogoliubov_hamiltonian(&matched_params);
    let residual = frobenius_distance(&rescaled, &h_b).expect("same dimension");

    let mass_term = matched_params.mass_term();
    let p_eff = matched_params.effective_momentum().magnitude();
    let quasiparticle_energy = (mass_term * mass_term + p_eff * p_eff).sqrt();
    let energy_residual = (derived.energy_scale() - quasiparticle_energy).abs();

    BogoliubovMatch {
        residual,
        energy_residual,
        matched_params,
        pass: residual < tol.abs_tol() && energy_residual < tol.abs_tol(),
    }
}

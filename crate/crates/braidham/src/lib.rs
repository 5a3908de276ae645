//! Braid-group representations from q-deformed Dirac Hamiltonians.
//!
//! The library builds the normalized Dirac Hamiltonian H_D, exponentiates it
//! into a braid generator R₁ = exp(iθ H_D/2), conjugates into the
//! diagonalizing frame to find the partner generator, and pulls the partner
//! back to position space. At θ = −π/2 the partner is itself i·(√2 R₂ − I)
//! for a Hermitian involution 𝓗, which matches a Bogoliubov-de Gennes
//! Hamiltonian with quasiparticle mass m/2 and zero chemical potential.
//! Every identity in that chain is exposed as a numeric check.
//!
//! Layout:
//! - [`matrix`]: dense 2×2/4×4 complex kernel (products, classification,
//!   involution exponential, group orders, Kronecker projections)
//! - [`hamiltonians`]: Dirac and Bogoliubov operator builders and the
//!   parameter matching between them
//! - [`braid`]: braid generators, relation checks, word evaluation, and a
//!   numeric solver for partner generators
//! - [`pipeline`]: the full derivation chain with named residuals, plus
//!   randomized sweeps
//! - [`report`]: JSON rendering with reproducible float formatting
//! - [`testing`]: seeded random unitaries and involutions with known
//!   eigenstructure, the independent oracles of the test suites

pub mod braid;
pub mod hamiltonians;
pub mod matrix;
pub mod pipeline;
pub mod report;
pub mod testing;

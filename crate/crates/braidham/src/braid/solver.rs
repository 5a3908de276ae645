//! Numeric search for a braid partner: given a unitary a, find a unitary b
//! with aba = bab.
//!
//! The candidate b is parametrized by a global phase and three angles,
//!
//!   b(φ₀, φ₁, φ₂, ψ) = e^{iφ₀}·[[e^{iφ₁}cos ψ, e^{iφ₂}sin ψ],
//!                               [−e^{−iφ₂}sin ψ, e^{−iφ₁}cos ψ]],
//!
//! which covers U(2) and is unitary for every parameter value, so the
//! optimizer roams an unconstrained R⁴. The objective ‖aba − bab‖_F² is
//! minimized by Nelder-Mead descent followed by a coordinate pattern-search
//! polish; both are derivative-free. Restarts draw starting points from
//! per-restart RNG streams, so results are reproducible from the seed alone.
//!
//! b = a satisfies the relation for any a; by default such candidates are
//! rejected and the search continues, since the trivial partner carries no
//! information.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::braid::BraidError;
use crate::matrix::{frobenius_distance, ComplexMatrix, DEFAULT_ABS_TOL};

/// Candidates closer than this to a (Frobenius) count as the trivial
/// partner b = a.
pub const TRIVIAL_DISTANCE: f64 = 1e-6;

/// Multi-start search configuration. Deterministic given `rng_seed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub max_restarts: usize,
    pub residual_target: f64,
    pub exclude_trivial: bool,
    pub rng_seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_restarts: 32,
            residual_target: 1e-10,
            exclude_trivial: true,
            rng_seed: 0,
        }
    }
}

/// A found partner and its relation residual ‖aba − bab‖_F, recomputed
/// directly from the matrices rather than taken from the optimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct BraidPartner {
    pub b: ComplexMatrix,
    pub residual: f64,
}

type Chart = [f64; 4];

fn unitary_from_chart(x: &Chart) -> ComplexMatrix {
    let [phi0, phi1, phi2, psi] = *x;
    let global = Complex64::from_polar(1.0, phi0);
    let (sin, cos) = psi.sin_cos();
    let e1 = Complex64::from_polar(cos, phi1);
    let e2 = Complex64::from_polar(sin, phi2);
    ComplexMatrix::from_rows([
        [global * e1, global * e2],
        [global * -e2.conj(), global * e1.conj()],
    ])
    .expect("finite entries for finite parameters")
}

fn relation_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let aba = a * b * a;
    let bab = b * a * b;
    frobenius_distance(&aba, &bab).expect("equal dimensions")
}

/// Nelder-Mead downhill simplex on R⁴, stopping at `f_target`, a collapsed
/// simplex, or the iteration cap.
fn nelder_mead(
    f: &mut impl FnMut(&Chart) -> f64,
    x0: Chart,
    max_iter: usize,
    f_target: f64,
) -> (Chart, f64) {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;
    const INITIAL_STEP: f64 = 0.35;

    let mut simplex: Vec<(Chart, f64)> = Vec::with_capacity(5);
    simplex.push((x0, f(&x0)));
    for i in 0..4 {
        let mut x = x0;
        x[i] += INITIAL_STEP;
        simplex.push((x, f(&x)));
    }

    for _ in 0..max_iter {
        simplex.sort_by(|l, r| l.1.total_cmp(&r.1));
        let best = simplex[0].1;
        if best < f_target {
            break;
        }
        let spread: f64 = (0..4)
            .map(|i| {
                let coords: Vec<f64> = simplex.iter().map(|(x, _)| x[i]).collect();
                let max = coords.iter().cloned().fold(f64::MIN, f64::max);
                let min = coords.iter().cloned().fold(f64::MAX, f64::min);
                max - min
            })
            .fold(0.0, f64::max);
        if spread < 1e-12 {
            break;
        }

        let worst = simplex[4];
        let mut centroid = [0.0; 4];
        for (x, _) in &simplex[..4] {
            for i in 0..4 {
                centroid[i] += x[i] / 4.0;
            }
        }
        let blend = |t: f64| {
            let mut x = [0.0; 4];
            for i in 0..4 {
                x[i] = centroid[i] + t * (worst.0[i] - centroid[i]);
            }
            x
        };

        let reflected = blend(-REFLECT);
        let f_reflected = f(&reflected);
        if f_reflected < simplex[0].1 {
            let expanded = blend(-EXPAND);
            let f_expanded = f(&expanded);
            simplex[4] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < simplex[3].1 {
            simplex[4] = (reflected, f_reflected);
            continue;
        }
        let contracted = if f_reflected < worst.1 {
            blend(-CONTRACT)
        } else {
            blend(CONTRACT)
        };
        let f_contracted = f(&contracted);
        if f_contracted < worst.1.min(f_reflected) {
            simplex[4] = (contracted, f_contracted);
            continue;
        }
        let anchor = simplex[0].0;
        for entry in simplex.iter_mut().skip(1) {
            for (coord, base) in entry.0.iter_mut().zip(anchor) {
                *coord = base + SHRINK * (*coord - base);
            }
            entry.1 = f(&entry.0);
        }
    }

    simplex.sort_by(|l, r| l.1.total_cmp(&r.1));
    simplex[0]
}

/// Coordinate pattern search: sweep ±h along each axis, halving h whenever
/// a full sweep fails to improve. Converges linearly but reliably, which is
/// what the final digits need after Nelder-Mead stalls.
fn compass_polish(
    f: &mut impl FnMut(&Chart) -> f64,
    mut x: Chart,
    mut fx: f64,
    f_target: f64,
) -> (Chart, f64) {
    let mut h = 0.125;
    while h > 1e-14 && fx > f_target {
        let mut improved = false;
        for i in 0..4 {
            for sign in [1.0, -1.0] {
                let mut candidate = x;
                candidate[i] += sign * h;
                let fc = f(&candidate);
                if fc < fx {
                    x = candidate;
                    fx = fc;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (x, fx)
}

/// Searches for a nontrivial unitary b with ‖aba − bab‖_F below the target.
///
/// Returns `Ok(None)` when all restarts are exhausted without an acceptable
/// candidate; that outcome is meaningful (for a(θ) with cos θ > 1/2 the
/// trivial partner is the only solution) and not an error. Deterministic:
/// restart k draws from stream k of a counter-based RNG seeded with
/// `rng_seed`.
pub fn solve_b_given_a(
    a: &ComplexMatrix,
    cfg: &SolverConfig,
) -> Result<Option<BraidPartner>, BraidError> {
    if cfg.max_restarts < 1 {
        return Err(BraidError::InvalidConfig("max_restarts must be at least 1"));
    }
    if cfg.residual_target <= 0.0 || !cfg.residual_target.is_finite() {
        return Err(BraidError::InvalidConfig(
            "residual_target must be positive and finite",
        ));
    }
    if a.dim() != 2 {
        return Err(BraidError::SolverDimension(a.dim()));
    }
    let unitarity = a.unitarity_residual();
    if unitarity >= DEFAULT_ABS_TOL {
        return Err(BraidError::NotUnitary {
            which: "a",
            residual: unitarity,
        });
    }

    let mut objective = |x: &Chart| {
        let b = unitary_from_chart(x);
        let r = relation_residual(a, &b);
        r * r
    };
    // margin below target² so rounding in the final sqrt cannot flip the
    // verdict
    let f_target = (0.5 * cfg.residual_target).powi(2);

    for restart in 0..cfg.max_restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        rng.set_stream(restart as u64);
        let mut x0 = [0.0; 4];
        for slot in &mut x0 {
            *slot = rng.gen_range(-PI..PI);
        }

        let (x1, f1) = nelder_mead(&mut objective, x0, 400, f_target);
        let (x2, _) = compass_polish(&mut objective, x1, f1, f_target);

        let b = unitary_from_chart(&x2);
        let residual = relation_residual(a, &b);
        if residual >= cfg.residual_target {
            continue;
        }
        if cfg.exclude_trivial {
            let distance_from_a = frobenius_distance(&b, a).expect("equal dimensions");
            if distance_from_a < TRIVIAL_DISTANCE {
                continue;
            }
        }
        return Ok(Some(BraidPartner { b, residual }));
    }
    Ok(None)
}

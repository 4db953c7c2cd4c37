//! Seeded random generation of states, unitaries, and dichotomous
//! observables for randomized theorem sweeps.
//!
//! Sampling choices: states have independent complex Gaussian entries and
//! are normalized; unitaries come from the QR orthonormalization of complex
//! Gaussian matrices with the diagonal phases fixed (Haar distributed);
//! commuting dichotomous pairs share one random eigenbasis with independent
//! ±1 eigenvalue assignments, which naturally produces degenerate eigenspaces
//! and empty joint cells in dimensions above four.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::hilbert::{Operator, StateVector, ToleranceConfig};
use crate::spectral::Observable;

/// Deterministic generator for a given seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random pure state with complex Gaussian amplitudes.
pub fn random_state<R: Rng>(dim: usize, rng: &mut R, tol: &ToleranceConfig) -> StateVector {
    loop {
        let raw = DVector::from_fn(dim, |_, _| gaussian_complex(rng));
        if let Ok(state) = StateVector::normalize(raw, tol) {
            return state;
        }
    }
}

/// Haar-distributed random unitary via QR with phase correction.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> Operator {
    let gaussian = DMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let qr = gaussian.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let diag = r[(j, j)];
        if diag.norm() > 0.0 {
            let phase = diag / Complex64::new(diag.norm(), 0.0);
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
    }
    Operator::new(q).expect("QR factor is square and finite")
}

/// Random Hermitian matrix (G + G†)/2 with Gaussian entries.
pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> Operator {
    let gaussian = DMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let hermitian = (&gaussian + gaussian.adjoint()) * Complex64::new(0.5, 0.0);
    Operator::new(hermitian).expect("square and finite")
}

/// ±1 signs with both values present.
pub fn random_sign_assignment<R: Rng>(dim: usize, rng: &mut R) -> Vec<bool> {
    assert!(dim >= 2, "a dichotomous assignment needs dim >= 2");
    loop {
        let signs: Vec<bool> = (0..dim).map(|_| rng.random()).collect();
        if signs.iter().any(|&s| s) && signs.iter().any(|&s| !s) {
            return signs;
        }
    }
}

/// Observable with eigenvalues ±1 whose eigenvectors are the columns of
/// `basis`; `signs[i]` assigns column `i` to the +1 eigenspace.
pub fn dichotomous_in_basis(
    basis: &Operator,
    signs: &[bool],
    tol: &ToleranceConfig,
) -> Result<Observable> {
    let dim = basis.dim();
    let mut plus = DMatrix::<Complex64>::zeros(dim, dim);
    let mut minus = DMatrix::<Complex64>::zeros(dim, dim);
    for (j, &sign) in signs.iter().enumerate() {
        let column = basis.as_matrix().column(j);
        let outer = &column * column.adjoint();
        if sign {
            plus += outer;
        } else {
            minus += outer;
        }
    }
    Observable::from_parts(
        &[1.0, -1.0],
        vec![Operator::new(plus)?, Operator::new(minus)?],
        tol,
    )
}

/// A commuting pair of ±1 observables sharing one random eigenbasis with
/// independent eigenvalue assignments.
pub fn random_commuting_dichotomous_pair<R: Rng>(
    dim: usize,
    rng: &mut R,
    tol: &ToleranceConfig,
) -> (Observable, Observable) {
    let basis = random_unitary(dim, rng);
    let a = dichotomous_in_basis(&basis, &random_sign_assignment(dim, rng), tol)
        .expect("projectors from an orthonormal basis are valid");
    let b = dichotomous_in_basis(&basis, &random_sign_assignment(dim, rng), tol)
        .expect("projectors from an orthonormal basis are valid");
    (a, b)
}

/// A ±1 observable in its own random eigenbasis.
pub fn random_dichotomous<R: Rng>(
    dim: usize,
    rng: &mut R,
    tol: &ToleranceConfig,
) -> Observable {
    let basis = random_unitary(dim, rng);
    dichotomous_in_basis(&basis, &random_sign_assignment(dim, rng), tol)
        .expect("projectors from an orthonormal basis are valid")
}

/// Product state φ₁ ⊗ φ₂ of independent random factors.
pub fn random_product_state<R: Rng>(
    dim_first: usize,
    dim_second: usize,
    rng: &mut R,
    tol: &ToleranceConfig,
) -> StateVector {
    random_state(dim_first, rng, tol).tensor(&random_state(dim_second, rng, tol))
}

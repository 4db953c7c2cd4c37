//! Dense complex vectors and operators, Kronecker products, and the
//! numerical tolerance policy shared by the whole crate.
//!
//! Everything is immutable after construction and all operations are pure
//! functions, so values can be shared freely across threads. Dimensions are
//! expected to stay small (tens, not thousands); no sparse structure is used.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances used by every comparison in the crate.
///
/// The defaults reflect a double-precision spectral error budget with a
/// safety margin; every field can be overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// State normalization tolerance.
    pub eps_norm: f64,
    /// Hermiticity and projector-algebra tolerance (relative to matrix norm
    /// where the compared quantity scales with it).
    pub eps_herm: f64,
    /// Eigenvalue clustering gap: eigenvalues closer than this are merged.
    pub eps_eig: f64,
    /// Probability comparison tolerance.
    pub eps_p: f64,
    /// Threshold below which a probability counts as exactly zero.
    pub eps_zero: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_norm: 1e-10,
            eps_herm: 1e-10,
            eps_eig: 1e-8,
            eps_p: 1e-9,
            eps_zero: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eps_norm", self.eps_norm),
            ("eps_herm", self.eps_herm),
            ("eps_eig", self.eps_eig),
            ("eps_p", self.eps_p),
            ("eps_zero", self.eps_zero),
        ];
        for (name, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        if self.eps_zero >= self.eps_p {
            return Err(Error::InvalidTolerance(format!(
                "eps_zero ({}) must be smaller than eps_p ({})",
                self.eps_zero, self.eps_p
            )));
        }
        Ok(())
    }

    /// True when a decision quantity `d` sits too close to the `eps_p`
    /// boundary (within a decade on either side) for its verdict to be
    /// trusted. Callers flag such verdicts as marginal instead of failing.
    pub fn in_marginal_zone(&self, d: f64) -> bool {
        let d = d.abs();
        d > self.eps_p * 0.1 && d < self.eps_p * 10.0
    }
}

fn all_finite<'a, I: IntoIterator<Item = &'a Complex64>>(entries: I) -> bool {
    entries
        .into_iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
}

/// A normalized pure state over a finite basis.
#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Scale a raw vector to unit norm.
    ///
    /// If the input is already normalized within `eps_norm` it is returned
    /// unchanged, which makes normalization bit-for-bit idempotent.
    pub fn normalize(raw: DVector<Complex64>, tol: &ToleranceConfig) -> Result<Self> {
        if raw.is_empty() || !all_finite(raw.iter()) {
            return Err(Error::NonFinite);
        }
        let norm = raw.norm();
        if norm <= tol.eps_zero {
            return Err(Error::ZeroVector);
        }
        let amplitudes = if (norm - 1.0).abs() <= tol.eps_norm {
            raw
        } else {
            raw / Complex64::new(norm, 0.0)
        };
        Ok(Self { amplitudes })
    }

    /// Wrap a vector that is already normalized within `eps_norm`.
    pub fn try_new(v: DVector<Complex64>, tol: &ToleranceConfig) -> Result<Self> {
        if v.is_empty() || !all_finite(v.iter()) {
            return Err(Error::NonFinite);
        }
        if (v.norm() - 1.0).abs() > tol.eps_norm {
            return Err(Error::InternalConsistency(format!(
                "state norm {} departs from 1 beyond eps_norm",
                v.norm()
            )));
        }
        Ok(Self { amplitudes: v })
    }

    /// Computational basis vector `e_index` of the given dimension.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut v = DVector::zeros(dim);
        v[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes: v }
    }

    /// Build a state from real amplitudes, normalizing.
    pub fn from_reals(entries: &[f64], tol: &ToleranceConfig) -> Result<Self> {
        let v = DVector::from_iterator(
            entries.len(),
            entries.iter().map(|&x| Complex64::new(x, 0.0)),
        );
        Self::normalize(v, tol)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Kronecker product with row-major index convention: the component of
    /// the result at `i * other.dim() + j` is `self[i] * other[j]`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    /// Inner product ⟨self|other⟩ (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Overlap magnitude |⟨self|other⟩|, i.e. equality up to global phase
    /// when it reaches 1.
    pub fn overlap(&self, other: &Self) -> f64 {
        self.inner(other).norm()
    }
}

/// A dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    entries: DMatrix<Complex64>,
}

impl Operator {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch(entries.nrows(), entries.ncols()));
        }
        if entries.is_empty() || !all_finite(entries.iter()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: DMatrix::identity(dim, dim),
        }
    }

    /// Build from a row-major list of real entries.
    pub fn from_reals(dim: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != dim * dim {
            return Err(Error::DimensionMismatch(rows.len(), dim * dim));
        }
        let entries =
            DMatrix::from_row_iterator(dim, dim, rows.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// Apply to a raw vector.
    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.entries * v
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(Self {
            entries: &self.entries * &other.entries,
        })
    }

    /// Kronecker product, row-major convention: block `(i, j)` of the result
    /// is `self[(i, j)] * other`.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            entries: self.entries.kronecker(&other.entries),
        }
    }

    pub fn is_hermitian(&self, tol: &ToleranceConfig) -> bool {
        let diff = &self.entries - self.entries.adjoint();
        diff.norm() <= tol.eps_herm * (1.0 + self.entries.norm())
    }

    pub fn is_unitary(&self, tol: &ToleranceConfig) -> bool {
        let product = &self.entries * self.entries.adjoint();
        let identity = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        (product - identity).norm() <= tol.eps_herm * (1.0 + self.entries.norm())
    }

    /// Expectation value ⟨ψ|M|ψ⟩ as a complex number.
    pub fn quadratic_form(&self, psi: &StateVector) -> Result<Complex64> {
        if self.dim() != psi.dim() {
            return Err(Error::DimensionMismatch(self.dim(), psi.dim()));
        }
        Ok(psi.as_vector().dotc(&self.apply(psi.as_vector())))
    }
}

/// Commutation test: ‖AB − BA‖_F ≤ eps_herm · (1 + ‖A‖_F·‖B‖_F).
pub fn commutes(a: &Operator, b: &Operator, tol: &ToleranceConfig) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let ab = a.as_matrix() * b.as_matrix();
    let ba = b.as_matrix() * a.as_matrix();
    let bound = tol.eps_herm * (1.0 + a.frobenius_norm() * b.frobenius_norm());
    Ok((ab - ba).norm() <= bound)
}

pub fn pauli_x() -> Operator {
    Operator::from_reals(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

pub fn pauli_y() -> Operator {
    let i = Complex64::new(0.0, 1.0);
    let entries = DMatrix::from_row_slice(
        2,
        2,
        &[Complex64::new(0.0, 0.0), -i, i, Complex64::new(0.0, 0.0)],
    );
    Operator::new(entries).unwrap()
}

pub fn pauli_z() -> Operator {
    Operator::from_reals(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
}

pub fn hadamard() -> Operator {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Operator::from_reals(2, &[s, s, s, -s]).unwrap()
}

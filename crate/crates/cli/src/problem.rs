//! JSON problem ingestion: complex numbers as `[re, im]` pairs, vectors as
//! arrays of those, matrices as row-major arrays of rows. Observables come
//! in either as a raw Hermitian matrix or as explicit
//! `{values, projectors}` lists; both are validated.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use obsent::hilbert::{Operator, StateVector, ToleranceConfig};
use obsent::qprob::Direction;
use obsent::spectral::Observable;

use crate::CliError;

pub type WireComplex = [f64; 2];
pub type WireVector = Vec<WireComplex>;
pub type WireMatrix = Vec<Vec<WireComplex>>;

/// An observable on the wire: a Hermitian matrix (decomposed internally) or
/// explicit eigenvalues with projectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireObservable {
    Matrix(WireMatrix),
    Parts {
        values: Vec<f64>,
        projectors: Vec<WireMatrix>,
    },
}

/// Partial tolerance overrides; unset fields keep their defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_herm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_eig: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_zero: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: ToleranceConfig) -> ToleranceConfig {
        ToleranceConfig {
            eps_norm: self.eps_norm.unwrap_or(base.eps_norm),
            eps_herm: self.eps_herm.unwrap_or(base.eps_herm),
            eps_eig: self.eps_eig.unwrap_or(base.eps_eig),
            eps_p: self.eps_p.unwrap_or(base.eps_p),
            eps_zero: self.eps_zero.unwrap_or(base.eps_zero),
        }
    }
}

/// One analysis problem: a raw state, two observables, optional tolerance
/// overrides, and the conditioning direction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub state: WireVector,
    pub observable_a: WireObservable,
    pub observable_b: WireObservable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
    #[serde(default = "default_direction")]
    pub direction: Direction,
}

fn default_direction() -> Direction {
    Direction::Ab
}

/// The fully validated problem, ready for analysis.
pub struct ResolvedProblem {
    pub observable_a: Observable,
    pub observable_b: Observable,
    pub state: StateVector,
    pub direction: Direction,
    pub tolerances: ToleranceConfig,
}

pub fn wire_to_vector(wire: &[WireComplex]) -> DVector<Complex64> {
    DVector::from_iterator(wire.len(), wire.iter().map(|[re, im]| Complex64::new(*re, *im)))
}

pub fn wire_to_matrix(wire: &WireMatrix) -> Result<DMatrix<Complex64>, CliError> {
    let rows = wire.len();
    if rows == 0 {
        return Err(CliError::Validation("empty matrix".into()));
    }
    let cols = wire[0].len();
    if wire.iter().any(|row| row.len() != cols) {
        return Err(CliError::Validation("ragged matrix rows".into()));
    }
    Ok(DMatrix::from_row_iterator(
        rows,
        cols,
        wire.iter()
            .flatten()
            .map(|[re, im]| Complex64::new(*re, *im)),
    ))
}

pub fn vector_to_wire(v: &DVector<Complex64>) -> WireVector {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn matrix_to_wire(m: &DMatrix<Complex64>) -> WireMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn resolve_observable(
    wire: &WireObservable,
    tol: &ToleranceConfig,
) -> Result<Observable, CliError> {
    match wire {
        WireObservable::Matrix(matrix) => {
            let op = Operator::new(wire_to_matrix(matrix)?)?;
            Ok(Observable::from_matrix(&op, tol)?)
        }
        WireObservable::Parts { values, projectors } => {
            let projectors = projectors
                .iter()
                .map(|p| Ok(Operator::new(wire_to_matrix(p)?)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Observable::from_parts(values, projectors, tol)?)
        }
    }
}

impl ProblemSpec {
    /// Validate the spec against the module invariants, normalizing the
    /// state and decomposing the observables.
    pub fn resolve(&self, base_tol: ToleranceConfig) -> Result<ResolvedProblem, CliError> {
        let tolerances = match &self.tolerances {
            Some(overrides) => overrides.apply(base_tol),
            None => base_tol,
        };
        tolerances.validate()?;
        let state = StateVector::normalize(wire_to_vector(&self.state), &tolerances)?;
        let observable_a = resolve_observable(&self.observable_a, &tolerances)?;
        let observable_b = resolve_observable(&self.observable_b, &tolerances)?;
        if observable_a.dim() != state.dim() || observable_b.dim() != state.dim() {
            return Err(CliError::Validation(format!(
                "dimension mismatch: state {} vs observables {} / {}",
                state.dim(),
                observable_a.dim(),
                observable_b.dim()
            )));
        }
        Ok(ResolvedProblem {
            observable_a,
            observable_b,
            state,
            direction: self.direction,
            tolerances,
        })
    }
}

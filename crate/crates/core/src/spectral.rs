//! Spectral decomposition of Hermitian observables and joint-eigenspace
//! decomposition of commuting pairs.
//!
//! An [`Observable`] is a Hermitian operator together with its eigenvalues
//! and eigenprojectors. Eigenvalues returned by the dense eigensolver are
//! clustered: sorted values whose gap is at most `eps_eig` are merged into a
//! single spectral line represented by the cluster mean, and the projector
//! for that line sums the outer products of the cluster's orthonormal
//! eigenvectors.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{commutes, Operator, StateVector, ToleranceConfig};

/// One eigenvalue with its eigenprojector.
#[derive(Debug, Clone)]
pub struct SpectralLine {
    pub value: f64,
    pub projector: Operator,
}

/// A Hermitian operator with its spectral decomposition.
///
/// Spectral lines are stored in descending eigenvalue order, so for a
/// dichotomous observable index 0 is the "+" outcome and index 1 the "−"
/// outcome.
#[derive(Debug, Clone)]
pub struct Observable {
    op: Operator,
    spectrum: Vec<SpectralLine>,
}

impl Observable {
    /// Decompose a Hermitian matrix into eigenvalue clusters and projectors.
    pub fn from_matrix(h: &Operator, tol: &ToleranceConfig) -> Result<Self> {
        if !h.is_hermitian(tol) {
            return Err(Error::NotHermitian);
        }
        let eigen = SymmetricEigen::try_new(h.as_matrix().clone(), f64::EPSILON, 0)
            .ok_or(Error::EigensolverFailure)?;
        let dim = h.dim();

        // Sort eigenpairs by eigenvalue, then merge neighbors within eps_eig.
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&i, &j| {
            eigen.eigenvalues[i]
                .partial_cmp(&eigen.eigenvalues[j])
                .expect("eigenvalues are finite")
        });

        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for &idx in &order {
            match clusters.last_mut() {
                Some(cluster)
                    if eigen.eigenvalues[idx]
                        - eigen.eigenvalues[*cluster.last().expect("nonempty")]
                        <= tol.eps_eig =>
                {
                    cluster.push(idx)
                }
                _ => clusters.push(vec![idx]),
            }
        }

        let mut spectrum: Vec<SpectralLine> = clusters
            .into_iter()
            .map(|cluster| {
                let value =
                    cluster.iter().map(|&i| eigen.eigenvalues[i]).sum::<f64>() / cluster.len() as f64;
                let mut projector = DMatrix::<Complex64>::zeros(dim, dim);
                for &i in &cluster {
                    let v = eigen.eigenvectors.column(i);
                    projector += v * v.adjoint();
                }
                Ok(SpectralLine {
                    value,
                    projector: Operator::new(projector)?,
                })
            })
            .collect::<Result<_>>()?;
        spectrum.sort_by(|a, b| b.value.partial_cmp(&a.value).expect("finite"));

        let observable = Self {
            op: h.clone(),
            spectrum,
        };
        observable
            .validate(tol)
            .map_err(|_| Error::EigensolverFailure)?;
        Ok(observable)
    }

    /// Build from explicit eigenvalues and projectors, validating the full
    /// set of spectral invariants. The operator is reconstructed as
    /// Σ_α α·E(α).
    pub fn from_parts(values: &[f64], projectors: Vec<Operator>, tol: &ToleranceConfig) -> Result<Self> {
        if values.len() != projectors.len() {
            return Err(Error::InvalidObservable(format!(
                "{} eigenvalues but {} projectors",
                values.len(),
                projectors.len()
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidObservable("empty spectrum".into()));
        }
        let dim = projectors[0].dim();
        let mut op = DMatrix::<Complex64>::zeros(dim, dim);
        for (&value, projector) in values.iter().zip(&projectors) {
            if projector.dim() != dim {
                return Err(Error::DimensionMismatch(projector.dim(), dim));
            }
            if !value.is_finite() {
                return Err(Error::NonFinite);
            }
            op += projector.as_matrix() * Complex64::new(value, 0.0);
        }
        let mut spectrum: Vec<SpectralLine> = values
            .iter()
            .zip(projectors)
            .map(|(&value, projector)| SpectralLine { value, projector })
            .collect();
        spectrum.sort_by(|a, b| b.value.partial_cmp(&a.value).expect("finite"));
        let observable = Self {
            op: Operator::new(op)?,
            spectrum,
        };
        observable.validate(tol)?;
        Ok(observable)
    }

    fn validate(&self, tol: &ToleranceConfig) -> Result<()> {
        let dim = self.op.dim();
        if !self.op.is_hermitian(tol) {
            return Err(Error::NotHermitian);
        }
        for window in self.spectrum.windows(2) {
            if (window[0].value - window[1].value).abs() <= tol.eps_eig {
                return Err(Error::InvalidObservable(format!(
                    "eigenvalues {} and {} are closer than eps_eig",
                    window[0].value, window[1].value
                )));
            }
        }
        let mut completeness = DMatrix::<Complex64>::zeros(dim, dim);
        let mut reconstruction = DMatrix::<Complex64>::zeros(dim, dim);
        for line in &self.spectrum {
            let e = line.projector.as_matrix();
            if (e - e.adjoint()).norm() > tol.eps_herm {
                return Err(Error::InvalidObservable(format!(
                    "projector for {} is not Hermitian",
                    line.value
                )));
            }
            if (e * e - e).norm() > tol.eps_herm {
                return Err(Error::InvalidObservable(format!(
                    "projector for {} is not idempotent",
                    line.value
                )));
            }
            completeness += e;
            reconstruction += e * Complex64::new(line.value, 0.0);
        }
        for (i, first) in self.spectrum.iter().enumerate() {
            for second in &self.spectrum[i + 1..] {
                let cross = first.projector.as_matrix() * second.projector.as_matrix();
                if cross.norm() > tol.eps_herm {
                    return Err(Error::InvalidObservable(format!(
                        "projectors for {} and {} are not orthogonal",
                        first.value, second.value
                    )));
                }
            }
        }
        let identity = DMatrix::<Complex64>::identity(dim, dim);
        if (completeness - identity).norm() > tol.eps_herm {
            return Err(Error::InvalidObservable("projectors do not sum to identity".into()));
        }
        if (reconstruction - self.op.as_matrix()).norm()
            > tol.eps_herm * (1.0 + self.op.frobenius_norm())
        {
            return Err(Error::InvalidObservable(
                "spectral reconstruction departs from the operator".into(),
            ));
        }
        Ok(())
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    /// Spectral lines in descending eigenvalue order.
    pub fn spectrum(&self) -> &[SpectralLine] {
        &self.spectrum
    }

    pub fn values(&self) -> Vec<f64> {
        self.spectrum.iter().map(|line| line.value).collect()
    }

    pub fn outcomes(&self) -> usize {
        self.spectrum.len()
    }

    pub fn is_dichotomous(&self) -> bool {
        self.spectrum.len() == 2
    }

    /// Index of the spectral line matching `value` within `eps_eig`.
    pub fn line_index(&self, value: f64, tol: &ToleranceConfig) -> Result<usize> {
        self.spectrum
            .iter()
            .position(|line| (line.value - value).abs() <= tol.eps_eig)
            .ok_or(Error::SpectrumMismatch(value))
    }

    pub fn projector_for(&self, value: f64, tol: &ToleranceConfig) -> Result<&Operator> {
        Ok(&self.spectrum[self.line_index(value, tol)?].projector)
    }
}

/// One cell of a joint decomposition: the joint projector Π = E_A(α)E_B(β),
/// the (unnormalized) component ψ_{αβ} = E_B(β)E_A(α)ψ, and its norm.
#[derive(Debug, Clone)]
pub struct JointCell {
    pub a_value: f64,
    pub b_value: f64,
    pub projector: Operator,
    pub component: DVector<Complex64>,
    pub amplitude: f64,
}

/// Decomposition of a state over the joint eigenspaces of a commuting pair.
///
/// Cells are stored A-major in spectrum order (descending eigenvalues), and
/// empty cells (zero projector, zero amplitude) are retained so that
/// factorization tests can quantify over the full spectrum product.
#[derive(Debug, Clone)]
pub struct JointDecomposition {
    a_values: Vec<f64>,
    b_values: Vec<f64>,
    cells: Vec<JointCell>,
}

impl JointDecomposition {
    pub fn a_values(&self) -> &[f64] {
        &self.a_values
    }

    pub fn b_values(&self) -> &[f64] {
        &self.b_values
    }

    pub fn cells(&self) -> &[JointCell] {
        &self.cells
    }

    pub fn cell(&self, a_index: usize, b_index: usize) -> &JointCell {
        &self.cells[a_index * self.b_values.len() + b_index]
    }

    pub fn amplitude(&self, a_index: usize, b_index: usize) -> f64 {
        self.cell(a_index, b_index).amplitude
    }

    /// Amplitudes `[c_{++}, c_{+-}, c_{-+}, c_{--}]` for a dichotomous pair.
    pub fn dichotomous_amplitudes(&self) -> Result<[f64; 4]> {
        if self.a_values.len() != 2 || self.b_values.len() != 2 {
            return Err(Error::NotDichotomous);
        }
        Ok([
            self.amplitude(0, 0),
            self.amplitude(0, 1),
            self.amplitude(1, 0),
            self.amplitude(1, 1),
        ])
    }
}

/// Split `psi` over the joint eigenspaces of the commuting pair `(a, b)`.
///
/// Component ψ_{αβ} = E_B(β)E_A(α)ψ and amplitude c_{αβ} = ‖ψ_{αβ}‖; the
/// components sum back to ψ and their squared amplitudes sum to 1, both of
/// which are verified before returning.
pub fn joint_decompose(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<JointDecomposition> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if a.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(a.dim(), psi.dim()));
    }
    if !commutes(a.op(), b.op(), tol)? {
        return Err(Error::NonCommuting);
    }

    let mut cells = Vec::with_capacity(a.outcomes() * b.outcomes());
    let mut component_sum = DVector::<Complex64>::zeros(psi.dim());
    let mut weight_sum = 0.0;
    for a_line in a.spectrum() {
        let projected = a_line.projector.apply(psi.as_vector());
        for b_line in b.spectrum() {
            let component = b_line.projector.apply(&projected);
            let amplitude = component.norm();
            let projector = a_line.projector.matmul(&b_line.projector)?;
            component_sum += &component;
            weight_sum += amplitude * amplitude;
            cells.push(JointCell {
                a_value: a_line.value,
                b_value: b_line.value,
                projector,
                component,
                amplitude,
            });
        }
    }

    if (&component_sum - psi.as_vector()).norm() > tol.eps_norm * (1.0 + psi.dim() as f64) {
        return Err(Error::InternalConsistency(
            "joint components do not sum back to the state".into(),
        ));
    }
    if (weight_sum - 1.0).abs() > tol.eps_norm * (1.0 + psi.dim() as f64) {
        return Err(Error::InternalConsistency(format!(
            "joint squared amplitudes sum to {weight_sum}, not 1"
        )));
    }

    Ok(JointDecomposition {
        a_values: a.values(),
        b_values: b.values(),
        cells,
    })
}

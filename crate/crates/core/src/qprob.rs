//! Quantum probability calculus on pure states: Born rule, projective state
//! update, conditional probabilities, sequential joint distributions, the
//! total-probability decomposition with its interference term, expectations
//! and covariance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{Operator, StateVector, ToleranceConfig};
use crate::spectral::Observable;

/// Measurement order for a sequential joint distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Ab,
    Ba,
}

/// Clamp a computed probability into [0, 1]. Negative residue beyond eps_p
/// points at a bug rather than rounding and is reported as such.
fn clamp_probability(x: f64, tol: &ToleranceConfig) -> Result<f64> {
    if x < -tol.eps_p {
        return Err(Error::InternalConsistency(format!(
            "probability computed as {x}, below -eps_p"
        )));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Norms ‖E_A(α)ψ‖ and ‖E_B(β)E_A(α)ψ‖ for every outcome combination,
/// shared by the conditional-probability and entanglement machinery.
pub(crate) struct SequentialNorms {
    /// ‖E_A(α)ψ‖ per A-spectrum index.
    pub a_norms: Vec<f64>,
    /// `cross[α][β]` = ‖E_B(β)E_A(α)ψ‖.
    pub cross: Vec<Vec<f64>>,
}

pub(crate) fn sequential_norms(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
) -> SequentialNorms {
    let mut a_norms = Vec::with_capacity(a.outcomes());
    let mut cross = Vec::with_capacity(a.outcomes());
    for a_line in a.spectrum() {
        let projected = a_line.projector.apply(psi.as_vector());
        a_norms.push(projected.norm());
        cross.push(
            b.spectrum()
                .iter()
                .map(|b_line| b_line.projector.apply(&projected).norm())
                .collect(),
        );
    }
    SequentialNorms { a_norms, cross }
}

/// Born rule: probability of the outcome projected by `e`, i.e. ‖Eψ‖².
pub fn born_probability(e: &Operator, psi: &StateVector, tol: &ToleranceConfig) -> Result<f64> {
    if e.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(e.dim(), psi.dim()));
    }
    clamp_probability(e.apply(psi.as_vector()).norm_squared(), tol)
}

/// Projective state update: ψ → Eψ/‖Eψ‖.
pub fn luders_update(e: &Operator, psi: &StateVector, tol: &ToleranceConfig) -> Result<StateVector> {
    if e.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(e.dim(), psi.dim()));
    }
    let projected = e.apply(psi.as_vector());
    if projected.norm_squared() <= tol.eps_zero {
        return Err(Error::ZeroProbabilityOutcome);
    }
    StateVector::normalize(projected, tol)
}

/// P(B=β | A=α, ψ) = ‖E_B(β)E_A(α)ψ‖² / ‖E_A(α)ψ‖².
pub fn conditional_probability(
    b: &Observable,
    beta: f64,
    a: &Observable,
    alpha: f64,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<f64> {
    if a.dim() != psi.dim() || b.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(a.dim().max(b.dim()), psi.dim()));
    }
    let e_a = a.projector_for(alpha, tol)?;
    let e_b = b.projector_for(beta, tol)?;
    let projected = e_a.apply(psi.as_vector());
    let marginal = projected.norm_squared();
    if marginal <= tol.eps_zero {
        return Err(Error::ConditioningUndefined(alpha));
    }
    clamp_probability(e_b.apply(&projected).norm_squared() / marginal, tol)
}

/// One cell of a conditional-probability table.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConditionalCell {
    pub probability: f64,
    /// False exactly when the conditioning outcome has zero probability.
    pub defined: bool,
}

/// Table of P(B=β | A=α) over the full spectrum product, with the A-marginals.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionalTable {
    pub a_values: Vec<f64>,
    pub b_values: Vec<f64>,
    /// Rows indexed by β, columns by α (both in spectrum order).
    pub entries: Vec<Vec<ConditionalCell>>,
    /// P(A=α) per column.
    pub marginals: Vec<f64>,
}

impl ConditionalTable {
    pub fn cell(&self, b_index: usize, a_index: usize) -> ConditionalCell {
        self.entries[b_index][a_index]
    }

    pub fn column_defined(&self, a_index: usize) -> bool {
        self.entries.iter().all(|row| row[a_index].defined)
    }
}

/// Fill the whole conditional table, flagging zero-probability columns as
/// undefined instead of failing.
pub fn conditional_table(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<ConditionalTable> {
    if a.dim() != psi.dim() || b.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(a.dim().max(b.dim()), psi.dim()));
    }
    let norms = sequential_norms(a, b, psi);
    let marginals: Vec<f64> = norms.a_norms.iter().map(|n| n * n).collect();
    let mut entries = vec![Vec::with_capacity(a.outcomes()); b.outcomes()];
    for (a_idx, marginal) in marginals.iter().enumerate() {
        let defined = *marginal > tol.eps_zero;
        for (b_idx, row) in entries.iter_mut().enumerate() {
            let probability = if defined {
                let q = norms.cross[a_idx][b_idx];
                clamp_probability(q * q / marginal, tol)?
            } else {
                0.0
            };
            row.push(ConditionalCell {
                probability,
                defined,
            });
        }
    }
    let table = ConditionalTable {
        a_values: a.values(),
        b_values: b.values(),
        entries,
        marginals,
    };
    for (a_idx, marginal) in table.marginals.iter().enumerate() {
        if *marginal > tol.eps_zero {
            let column_sum: f64 = table.entries.iter().map(|row| row[a_idx].probability).sum();
            if (column_sum - 1.0).abs() > tol.eps_p {
                return Err(Error::InternalConsistency(format!(
                    "conditional column for alpha={} sums to {column_sum}",
                    table.a_values[a_idx]
                )));
            }
        }
    }
    Ok(table)
}

/// Sequential joint probability distribution for a fixed measurement order.
#[derive(Debug, Clone, Serialize)]
pub struct JpdTable {
    pub direction: Direction,
    pub first_values: Vec<f64>,
    pub second_values: Vec<f64>,
    /// `entries[i][j]` = P(first = first_values[i], second = second_values[j]).
    pub entries: Vec<Vec<f64>>,
}

impl JpdTable {
    pub fn entry(&self, first_index: usize, second_index: usize) -> f64 {
        self.entries[first_index][second_index]
    }

    /// Marginal of the first observable by summing out the second.
    pub fn first_marginal(&self, first_index: usize) -> f64 {
        self.entries[first_index].iter().sum()
    }
}

/// P(first=α then second=β) = ‖E_second(β) E_first(α) ψ‖².
pub fn sequential_jpd(
    first: &Observable,
    second: &Observable,
    psi: &StateVector,
    direction: Direction,
    tol: &ToleranceConfig,
) -> Result<JpdTable> {
    if first.dim() != psi.dim() || second.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(
            first.dim().max(second.dim()),
            psi.dim(),
        ));
    }
    let norms = sequential_norms(first, second, psi);
    let mut entries = Vec::with_capacity(first.outcomes());
    let mut total = 0.0;
    for (first_idx, row) in norms.cross.iter().enumerate() {
        let marginal = norms.a_norms[first_idx].powi(2);
        let mut out = Vec::with_capacity(second.outcomes());
        for q in row {
            let p = clamp_probability(q * q, tol)?;
            if p > marginal + tol.eps_p {
                return Err(Error::InternalConsistency(format!(
                    "joint entry {p} exceeds its first marginal {marginal}"
                )));
            }
            total += p;
            out.push(p);
        }
        entries.push(out);
    }
    if (total - 1.0).abs() > tol.eps_p {
        return Err(Error::InternalConsistency(format!(
            "sequential JPD sums to {total}"
        )));
    }
    Ok(JpdTable {
        direction,
        first_values: first.values(),
        second_values: second.values(),
        entries,
    })
}

/// Decomposition of P(B=β) into the classical total-probability sum and the
/// interference term.
#[derive(Debug, Clone, Serialize)]
pub struct FtpReport {
    pub beta: f64,
    pub total: f64,
    pub classical_sum: f64,
    pub interference: f64,
}

/// Split P(B=β) = Σ_α P(B=β|A=α)P(A=α) + δ_AB(β).
///
/// The interference term is computed as the difference and cross-checked
/// against the direct double sum Σ_{α≠α′} ⟨ψ|E_A(α)E_B(β)E_A(α′)|ψ⟩, which
/// must be real and agree within 10·eps_p.
pub fn ftp_decomposition(
    a: &Observable,
    b: &Observable,
    beta: f64,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<FtpReport> {
    if a.dim() != psi.dim() || b.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(a.dim().max(b.dim()), psi.dim()));
    }
    let e_b = b.projector_for(beta, tol)?;
    let total = born_probability(e_b, psi, tol)?;

    let projections: Vec<_> = a
        .spectrum()
        .iter()
        .map(|line| line.projector.apply(psi.as_vector()))
        .collect();
    let mut classical_sum = 0.0;
    for projected in &projections {
        if projected.norm_squared() > tol.eps_zero {
            classical_sum += e_b.apply(projected).norm_squared();
        }
    }
    let interference = total - classical_sum;

    // Direct evaluation of the interference double sum.
    let filtered: Vec<_> = projections.iter().map(|p| e_b.apply(p)).collect();
    let mut direct = Complex64::new(0.0, 0.0);
    for (i, projected) in projections.iter().enumerate() {
        for (j, filtered_j) in filtered.iter().enumerate() {
            if i != j {
                direct += projected.dotc(filtered_j);
            }
        }
    }
    if direct.im.abs() > tol.eps_p {
        return Err(Error::InternalConsistency(format!(
            "interference term has imaginary part {}",
            direct.im
        )));
    }
    if (direct.re - interference).abs() > 10.0 * tol.eps_p {
        return Err(Error::InternalConsistency(format!(
            "interference mismatch: difference form {interference} vs double sum {}",
            direct.re
        )));
    }

    Ok(FtpReport {
        beta,
        total,
        classical_sum,
        interference,
    })
}

/// ⟨A⟩_ψ = ⟨ψ|A|ψ⟩, which is real for Hermitian operators.
pub fn expectation(a: &Observable, psi: &StateVector, tol: &ToleranceConfig) -> Result<f64> {
    let value = a.op().quadratic_form(psi)?;
    if value.im.abs() > tol.eps_p {
        return Err(Error::InternalConsistency(format!(
            "expectation has imaginary part {}",
            value.im
        )));
    }
    Ok(value.re)
}

/// cov(A, B; ψ) = ⟨AB⟩_ψ − ⟨A⟩_ψ⟨B⟩_ψ, evaluated via the matrix product AB.
///
/// For non-commuting pairs AB is not Hermitian and ⟨AB⟩_ψ may carry an
/// imaginary part; the real part is returned. Reports built on top of this
/// carry a commutation flag so that consumers can tell the cases apart.
pub fn covariance(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let product = a.op().matmul(b.op())?;
    let joint = product.quadratic_form(psi)?;
    Ok(joint.re - expectation(a, psi, tol)? * expectation(b, psi, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{pauli_x, pauli_z};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn obs(op: &Operator) -> Observable {
        Observable::from_matrix(op, &tol()).unwrap()
    }

    fn sigma_z() -> Observable {
        obs(&pauli_z())
    }

    fn sigma_x() -> Observable {
        obs(&pauli_x())
    }

    fn a_first() -> Observable {
        obs(&pauli_z().tensor(&Operator::identity(2)))
    }

    fn b_second() -> Observable {
        obs(&Operator::identity(2).tensor(&pauli_z()))
    }

    fn singlet() -> StateVector {
        StateVector::from_reals(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0], &tol()).unwrap()
    }

    fn plus() -> StateVector {
        StateVector::from_reals(&[1.0, 1.0], &tol()).unwrap()
    }

    #[test]
    fn born_on_eigenstate() {
        let e = sigma_z().projector_for(1.0, &tol()).unwrap().clone();
        let p = born_probability(&e, &StateVector::basis(2, 0), &tol()).unwrap();
        assert!((p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn born_on_superposition() {
        let e = sigma_z().projector_for(1.0, &tol()).unwrap().clone();
        let p = born_probability(&e, &plus(), &tol()).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn born_on_singlet_marginal() {
        let a = a_first();
        let e = a.projector_for(1.0, &tol()).unwrap();
        let p = born_probability(e, &singlet(), &tol()).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn luders_collapses_superposition() {
        let e = sigma_z().projector_for(1.0, &tol()).unwrap().clone();
        let updated = luders_update(&e, &plus(), &tol()).unwrap();
        assert!((updated.overlap(&StateVector::basis(2, 0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn luders_on_singlet_projects_to_product() {
        let a = a_first();
        let e = a.projector_for(1.0, &tol()).unwrap();
        let updated = luders_update(e, &singlet(), &tol()).unwrap();
        // |0> tensor |1> up to phase.
        assert!((updated.overlap(&StateVector::basis(4, 1)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn luders_with_identity_is_identity() {
        let psi = plus();
        let updated = luders_update(&Operator::identity(2), &psi, &tol()).unwrap();
        assert_eq!(updated.as_vector(), psi.as_vector());
    }

    #[test]
    fn luders_rejects_zero_probability_outcome() {
        let e = sigma_z().projector_for(-1.0, &tol()).unwrap().clone();
        assert_eq!(
            luders_update(&e, &StateVector::basis(2, 0), &tol()).unwrap_err(),
            Error::ZeroProbabilityOutcome
        );
    }

    #[test]
    fn singlet_conditionals_are_deterministic() {
        let p = conditional_probability(&b_second(), -1.0, &a_first(), 1.0, &singlet(), &tol())
            .unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_conditionals_stay_uniform() {
        let psi = StateVector::from_reals(&[1.0, 1.0, 0.0, 0.0], &tol()).unwrap();
        let p =
            conditional_probability(&b_second(), 1.0, &a_first(), 1.0, &psi, &tol()).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn repeated_measurement_is_certain() {
        let p = conditional_probability(&sigma_z(), 1.0, &sigma_z(), 1.0, &plus(), &tol()).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditioning_on_impossible_outcome_fails() {
        let err = conditional_probability(
            &b_second(),
            1.0,
            &a_first(),
            -1.0,
            &StateVector::basis(4, 0),
            &tol(),
        )
        .unwrap_err();
        assert_eq!(err, Error::ConditioningUndefined(-1.0));
    }

    #[test]
    fn conditional_table_of_singlet() {
        let table = conditional_table(&a_first(), &b_second(), &singlet(), &tol()).unwrap();
        // Columns: alpha=+ gives (P(+|+), P(-|+)) = (0, 1); alpha=- gives (1, 0).
        assert!((table.cell(0, 0).probability - 0.0).abs() < 1e-12);
        assert!((table.cell(1, 0).probability - 1.0).abs() < 1e-12);
        assert!((table.cell(0, 1).probability - 1.0).abs() < 1e-12);
        assert!((table.cell(1, 1).probability - 0.0).abs() < 1e-12);
        assert!(table.column_defined(0) && table.column_defined(1));
    }

    #[test]
    fn conditional_table_flags_undefined_column() {
        let table = conditional_table(
            &a_first(),
            &b_second(),
            &StateVector::basis(4, 0),
            &tol(),
        )
        .unwrap();
        assert!(table.column_defined(0));
        assert!(!table.column_defined(1));
        assert!(table.marginals[1].abs() < 1e-15);
    }

    #[test]
    fn conditional_table_of_uniform_product() {
        let psi = StateVector::from_reals(&[0.5, 0.5, 0.5, 0.5], &tol()).unwrap();
        let table = conditional_table(&a_first(), &b_second(), &psi, &tol()).unwrap();
        for b_idx in 0..2 {
            for a_idx in 0..2 {
                assert!((table.cell(b_idx, a_idx).probability - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sequential_jpd_away_from_commuting() {
        let jpd = sequential_jpd(&sigma_z(), &sigma_x(), &plus(), Direction::Ab, &tol()).unwrap();
        assert!((jpd.entry(0, 0) - 0.25).abs() < 1e-12);
        let reversed =
            sequential_jpd(&sigma_x(), &sigma_z(), &plus(), Direction::Ba, &tol()).unwrap();
        assert!((reversed.entry(0, 0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sequential_jpd_symmetric_for_commuting() {
        let ab = sequential_jpd(&a_first(), &b_second(), &singlet(), Direction::Ab, &tol()).unwrap();
        let ba = sequential_jpd(&b_second(), &a_first(), &singlet(), Direction::Ba, &tol()).unwrap();
        assert!((ab.entry(0, 1) - 0.5).abs() < 1e-12);
        assert!((ba.entry(1, 0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ftp_interference_vanishes_for_commuting() {
        let report =
            ftp_decomposition(&a_first(), &b_second(), 1.0, &singlet(), &tol()).unwrap();
        assert!(report.interference.abs() < 1e-12);
        assert!((report.total - report.classical_sum).abs() < 1e-12);
    }

    #[test]
    fn ftp_interference_for_incompatible_pair() {
        let report = ftp_decomposition(&sigma_z(), &sigma_x(), 1.0, &plus(), &tol()).unwrap();
        assert!((report.total - 1.0).abs() < 1e-12);
        assert!((report.classical_sum - 0.5).abs() < 1e-12);
        assert!((report.interference - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ftp_interference_vanishes_on_eigenstate() {
        let report =
            ftp_decomposition(&sigma_z(), &sigma_x(), 1.0, &StateVector::basis(2, 0), &tol())
                .unwrap();
        assert!(report.interference.abs() < 1e-12);
    }

    #[test]
    fn expectation_examples() {
        assert!((expectation(&sigma_z(), &StateVector::basis(2, 0), &tol()).unwrap() - 1.0).abs()
            < 1e-15);
        assert!(expectation(&sigma_z(), &plus(), &tol()).unwrap().abs() < 1e-15);
        assert!(expectation(&a_first(), &singlet(), &tol()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn covariance_of_correlated_bell_state() {
        let phi_plus =
            StateVector::from_reals(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2], &tol()).unwrap();
        let cov = covariance(&a_first(), &b_second(), &phi_plus, &tol()).unwrap();
        assert!((cov - 1.0).abs() < 1e-12);
    }

    #[test]
    fn covariance_factorizes_on_product_state() {
        let psi = StateVector::from_reals(&[1.0, 1.0, 0.0, 0.0], &tol()).unwrap();
        let cov = covariance(&a_first(), &b_second(), &psi, &tol()).unwrap();
        assert!(cov.abs() < 1e-12);
    }

    #[test]
    fn covariance_vanishes_for_amplitude_factorizable_state() {
        let psi = StateVector::from_reals(&[0.5, 0.5, 0.5, -0.5], &tol()).unwrap();
        let cov = covariance(&a_first(), &b_second(), &psi, &tol()).unwrap();
        assert!(cov.abs() < 1e-12);
    }
}

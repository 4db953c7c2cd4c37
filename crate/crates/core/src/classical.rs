//! Finite Kolmogorov probability spaces and discrete random variables,
//! used as the classical oracle for commuting observables: a commuting pair
//! measured on a pure state induces a genuine joint distribution, and the
//! classical notions of independence, covariance and total probability must
//! agree with their quantum counterparts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{StateVector, ToleranceConfig};
use crate::qprob::{sequential_jpd, Direction};
use crate::spectral::Observable;

/// A finite probability space: labelled sample points with nonnegative
/// weights summing to one. The event algebra is the full power set.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteProbabilitySpace {
    pub points: Vec<String>,
    pub weights: Vec<f64>,
}

impl FiniteProbabilitySpace {
    pub fn new(points: Vec<String>, weights: Vec<f64>, tol: &ToleranceConfig) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::DimensionMismatch(points.len(), weights.len()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::NonFinite);
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > tol.eps_p {
            return Err(Error::InternalConsistency(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Self { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A real-valued random variable, total on the sample points.
#[derive(Debug, Clone, Serialize)]
pub struct RandomVariable {
    pub values: Vec<f64>,
}

impl RandomVariable {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    /// Distinct values in first-appearance order.
    pub fn range(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for &v in &self.values {
            if !out.iter().any(|&seen| seen == v) {
                out.push(v);
            }
        }
        out
    }

    /// P(X = x) under the given space.
    pub fn probability_of(&self, x: f64, space: &FiniteProbabilitySpace) -> f64 {
        self.values
            .iter()
            .zip(&space.weights)
            .filter(|(&v, _)| v == x)
            .map(|(_, &w)| w)
            .sum()
    }

    pub fn expectation(&self, space: &FiniteProbabilitySpace) -> f64 {
        self.values
            .iter()
            .zip(&space.weights)
            .map(|(&v, &w)| v * w)
            .sum()
    }
}

/// Represent a commuting pair measured on `psi` as a classical probability
/// space: sample points are spectrum pairs (α, β), the weight of a point is
/// ‖E_B(β)E_A(α)ψ‖², and the random variables read off the two coordinates.
pub fn from_commuting_pair(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<(FiniteProbabilitySpace, RandomVariable, RandomVariable)> {
    if !crate::hilbert::commutes(a.op(), b.op(), tol)? {
        return Err(Error::NonCommuting);
    }
    let jpd = sequential_jpd(a, b, psi, Direction::Ab, tol)?;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut xi_a = Vec::new();
    let mut xi_b = Vec::new();
    for (a_idx, &alpha) in jpd.first_values.iter().enumerate() {
        for (b_idx, &beta) in jpd.second_values.iter().enumerate() {
            points.push(format!("({alpha}, {beta})"));
            weights.push(jpd.entry(a_idx, b_idx));
            xi_a.push(alpha);
            xi_b.push(beta);
        }
    }
    Ok((
        FiniteProbabilitySpace::new(points, weights, tol)?,
        RandomVariable::new(xi_a),
        RandomVariable::new(xi_b),
    ))
}

/// Classical independence: P(A=α, B=β) = P(A=α)·P(B=β) for every value pair.
pub fn are_independent(
    xi_a: &RandomVariable,
    xi_b: &RandomVariable,
    space: &FiniteProbabilitySpace,
    tol: &ToleranceConfig,
) -> bool {
    for &x in &xi_a.range() {
        for &y in &xi_b.range() {
            let joint: f64 = xi_a
                .values
                .iter()
                .zip(&xi_b.values)
                .zip(&space.weights)
                .filter(|((&va, &vb), _)| va == x && vb == y)
                .map(|(_, &w)| w)
                .sum();
            let product = xi_a.probability_of(x, space) * xi_b.probability_of(y, space);
            if (joint - product).abs() > tol.eps_p {
                return false;
            }
        }
    }
    true
}

/// E[AB] − E[A]·E[B] under the space's weights.
pub fn covariance_classical(
    xi_a: &RandomVariable,
    xi_b: &RandomVariable,
    space: &FiniteProbabilitySpace,
) -> f64 {
    let product: f64 = xi_a
        .values
        .iter()
        .zip(&xi_b.values)
        .zip(&space.weights)
        .map(|((&va, &vb), &w)| va * vb * w)
        .sum();
    product - xi_a.expectation(space) * xi_b.expectation(space)
}

/// Both sides of the classical total-probability identity for the outcome
/// B=β: the direct probability and the sum over conditioning columns with
/// nonzero probability. The two always agree within `eps_p`.
pub fn classical_ftp_check(
    xi_a: &RandomVariable,
    xi_b: &RandomVariable,
    space: &FiniteProbabilitySpace,
    beta: f64,
    tol: &ToleranceConfig,
) -> Result<(f64, f64)> {
    let lhs = xi_b.probability_of(beta, space);
    let mut rhs = 0.0;
    for &alpha in &xi_a.range() {
        let p_alpha = xi_a.probability_of(alpha, space);
        if p_alpha <= tol.eps_zero {
            continue;
        }
        let joint: f64 = xi_a
            .values
            .iter()
            .zip(&xi_b.values)
            .zip(&space.weights)
            .filter(|((&va, &vb), _)| va == alpha && vb == beta)
            .map(|(_, &w)| w)
            .sum();
        rhs += (joint / p_alpha) * p_alpha;
    }
    if (lhs - rhs).abs() > tol.eps_p {
        return Err(Error::InternalConsistency(format!(
            "classical total probability violated: {lhs} vs {rhs}"
        )));
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{pauli_z, Operator};
    use crate::spectral::Observable;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn z_pair() -> (Observable, Observable) {
        let a = Observable::from_matrix(&pauli_z().tensor(&Operator::identity(2)), &tol()).unwrap();
        let b = Observable::from_matrix(&Operator::identity(2).tensor(&pauli_z()), &tol()).unwrap();
        (a, b)
    }

    fn singlet() -> StateVector {
        StateVector::from_reals(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0], &tol()).unwrap()
    }

    #[test]
    fn singlet_induces_anticorrelated_space() {
        let (a, b) = z_pair();
        let (space, _, _) = from_commuting_pair(&a, &b, &singlet(), &tol()).unwrap();
        let expected = [0.0, 0.5, 0.5, 0.0];
        for (w, e) in space.weights.iter().zip(expected) {
            assert!((w - e).abs() < 1e-12);
        }
        assert_eq!(space.points[1], "(1, -1)");
    }

    #[test]
    fn eigenstate_induces_point_mass() {
        let (a, b) = z_pair();
        let (space, _, _) =
            from_commuting_pair(&a, &b, &StateVector::basis(4, 0), &tol()).unwrap();
        assert!((space.weights[0] - 1.0).abs() < 1e-12);
        assert!(space.weights[1..].iter().all(|w| w.abs() < 1e-12));
    }

    #[test]
    fn dimension_three_weights() {
        let a = Observable::from_matrix(
            &Operator::from_reals(3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0]).unwrap(),
            &tol(),
        )
        .unwrap();
        let b = Observable::from_matrix(
            &Operator::from_reals(3, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0]).unwrap(),
            &tol(),
        )
        .unwrap();
        let psi = StateVector::from_reals(&[1.0, 1.0, 1.0], &tol()).unwrap();
        let (space, _, _) = from_commuting_pair(&a, &b, &psi, &tol()).unwrap();
        let third = 1.0 / 3.0;
        let expected = [third, third, 0.0, third];
        for (w, e) in space.weights.iter().zip(expected) {
            assert!((w - e).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_commuting_pair() {
        let a = Observable::from_matrix(&pauli_z(), &tol()).unwrap();
        let b = Observable::from_matrix(&crate::hilbert::pauli_x(), &tol()).unwrap();
        let psi = StateVector::basis(2, 0);
        assert_eq!(
            from_commuting_pair(&a, &b, &psi, &tol()).unwrap_err(),
            Error::NonCommuting
        );
    }

    #[test]
    fn product_state_space_is_independent() {
        let (a, b) = z_pair();
        let psi = StateVector::from_reals(&[1.0, 1.0, 0.0, 0.0], &tol()).unwrap();
        let (space, xi_a, xi_b) = from_commuting_pair(&a, &b, &psi, &tol()).unwrap();
        assert!(are_independent(&xi_a, &xi_b, &space, &tol()));
    }

    #[test]
    fn singlet_space_is_dependent() {
        let (a, b) = z_pair();
        let (space, xi_a, xi_b) = from_commuting_pair(&a, &b, &singlet(), &tol()).unwrap();
        assert!(!are_independent(&xi_a, &xi_b, &space, &tol()));
    }

    #[test]
    fn constant_variable_is_independent_of_anything() {
        let space = FiniteProbabilitySpace::new(
            vec!["a".into(), "b".into()],
            vec![0.3, 0.7],
            &tol(),
        )
        .unwrap();
        let xi_a = RandomVariable::new(vec![1.0, -1.0]);
        let xi_b = RandomVariable::new(vec![2.0, 2.0]);
        assert!(are_independent(&xi_a, &xi_b, &space, &tol()));
    }

    #[test]
    fn covariance_of_singlet_space() {
        let (a, b) = z_pair();
        let (space, xi_a, xi_b) = from_commuting_pair(&a, &b, &singlet(), &tol()).unwrap();
        assert!((covariance_classical(&xi_a, &xi_b, &space) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn covariance_of_independent_dichotomous_variables() {
        let space = FiniteProbabilitySpace::new(
            vec!["pp".into(), "pm".into(), "mp".into(), "mm".into()],
            vec![0.12, 0.28, 0.18, 0.42],
            &tol(),
        )
        .unwrap();
        let xi_a = RandomVariable::new(vec![1.0, 1.0, -1.0, -1.0]);
        let xi_b = RandomVariable::new(vec![1.0, -1.0, 1.0, -1.0]);
        assert!(are_independent(&xi_a, &xi_b, &space, &tol()));
        assert!(covariance_classical(&xi_a, &xi_b, &space).abs() < 1e-12);
    }

    #[test]
    fn perfectly_correlated_variable_has_unit_covariance() {
        let space = FiniteProbabilitySpace::new(
            vec!["p".into(), "m".into()],
            vec![0.5, 0.5],
            &tol(),
        )
        .unwrap();
        let xi = RandomVariable::new(vec![1.0, -1.0]);
        assert!((covariance_classical(&xi, &xi, &space) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn total_probability_identity_holds() {
        let (a, b) = z_pair();
        let (space, xi_a, xi_b) = from_commuting_pair(&a, &b, &singlet(), &tol()).unwrap();
        let (lhs, rhs) = classical_ftp_check(&xi_a, &xi_b, &space, 1.0, &tol()).unwrap();
        assert!((lhs - 0.5).abs() < 1e-12);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn total_probability_on_point_mass() {
        let space =
            FiniteProbabilitySpace::new(vec!["only".into()], vec![1.0], &tol()).unwrap();
        let xi = RandomVariable::new(vec![1.0]);
        let (lhs, rhs) = classical_ftp_check(&xi, &xi, &space, 1.0, &tol()).unwrap();
        assert_eq!((lhs, rhs), (1.0, 1.0));
    }
}

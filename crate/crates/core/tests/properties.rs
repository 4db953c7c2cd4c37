//! Property tests for the linear-algebra core and the probability calculus.

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;

use obsent::entanglement::conjugate_observable;
use obsent::hilbert::{commutes, Operator, StateVector, ToleranceConfig};
use obsent::qprob::{
    conditional_table, expectation, ftp_decomposition, sequential_jpd, Direction,
};
use obsent::random::{
    random_commuting_dichotomous_pair, random_dichotomous, random_state, random_unitary,
    seeded_rng,
};
use obsent::spectral::{joint_decompose, Observable};

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// Complex entries on a dyadic grid, so products of two or three of them are
/// exact in f64 and bit-for-bit comparisons make sense.
fn dyadic_complex() -> impl Strategy<Value = Complex64> {
    (-4i32..=4, -4i32..=4).prop_map(|(re, im)| Complex64::new(re as f64 / 4.0, im as f64 / 4.0))
}

fn dyadic_vector(dim: usize) -> impl Strategy<Value = DVector<Complex64>> {
    prop::collection::vec(dyadic_complex(), dim).prop_map(DVector::from_vec)
}

fn gaussian_like_vector(dim: usize) -> impl Strategy<Value = DVector<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_map(|entries| {
            DVector::from_iterator(
                entries.len(),
                entries.into_iter().map(|(re, im)| Complex64::new(re, im)),
            )
        })
        .prop_filter("norm not tiny", |v| v.norm() > 0.1)
}

proptest! {
    #[test]
    fn tensor_is_associative(
        a in dyadic_vector(2),
        b in dyadic_vector(3),
        c in dyadic_vector(2),
    ) {
        let left = a.kronecker(&b).kronecker(&c);
        let right = a.kronecker(&b.kronecker(&c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tensor_norm_is_multiplicative(
        x in gaussian_like_vector(3),
        y in gaussian_like_vector(4),
    ) {
        let product = x.kronecker(&y);
        let expected = x.norm() * y.norm();
        prop_assert!((product.norm() - expected).abs() <= 1e-12 * (1.0 + expected));
    }

    #[test]
    fn normalize_is_idempotent(v in gaussian_like_vector(5)) {
        let once = StateVector::normalize(v, &tol()).unwrap();
        let twice = StateVector::normalize(once.as_vector().clone(), &tol()).unwrap();
        prop_assert_eq!(once.as_vector(), twice.as_vector());
    }
}

#[test]
fn spectral_reconstruction_of_random_hermitian() {
    let tol = tol();
    let mut rng = seeded_rng(101);
    for trial in 0..60 {
        let dim = 2 + (trial % 7);
        let h = obsent::random::random_hermitian(dim, &mut rng);
        let obs = Observable::from_matrix(&h, &tol).unwrap();
        let mut reconstruction = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
        let mut completeness = nalgebra::DMatrix::<Complex64>::zeros(dim, dim);
        for line in obs.spectrum() {
            reconstruction += line.projector.as_matrix() * Complex64::new(line.value, 0.0);
            completeness += line.projector.as_matrix();
        }
        let identity = nalgebra::DMatrix::<Complex64>::identity(dim, dim);
        assert!(
            (reconstruction - h.as_matrix()).norm()
                <= tol.eps_herm * (1.0 + h.frobenius_norm()),
            "reconstruction failed at dim {dim}"
        );
        assert!((completeness - identity).norm() <= tol.eps_herm);
    }
}

#[test]
fn joint_decomposition_of_polynomial_pairs() {
    let tol = tol();
    let mut rng = seeded_rng(102);
    for trial in 0..40 {
        let dim = 2 + (trial % 7);
        let h = obsent::random::random_hermitian(dim, &mut rng);
        let hm = h.as_matrix();
        let identity = nalgebra::DMatrix::<Complex64>::identity(dim, dim);
        // Low-degree real polynomials of one Hermitian matrix commute.
        let coeffs: Vec<f64> = (0..6).map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0)).collect();
        let a_matrix = &identity * Complex64::new(coeffs[0], 0.0)
            + hm * Complex64::new(coeffs[1], 0.0)
            + hm * hm * Complex64::new(coeffs[2], 0.0);
        let b_matrix = &identity * Complex64::new(coeffs[3], 0.0)
            + hm * Complex64::new(coeffs[4], 0.0)
            + hm * hm * Complex64::new(coeffs[5], 0.0);
        let a = Observable::from_matrix(&Operator::new(a_matrix).unwrap(), &tol).unwrap();
        let b = Observable::from_matrix(&Operator::new(b_matrix).unwrap(), &tol).unwrap();
        assert!(commutes(a.op(), b.op(), &tol).unwrap());

        let psi = random_state(dim, &mut rng, &tol);
        let joint = joint_decompose(&a, &b, &psi, &tol).unwrap();

        // Components sum back to the state (verified inside) and are
        // mutually orthogonal.
        let cells = joint.cells();
        for (i, first) in cells.iter().enumerate() {
            for second in &cells[i + 1..] {
                let overlap = first.component.dotc(&second.component).norm();
                assert!(overlap <= tol.eps_norm, "components overlap by {overlap}");
            }
        }

        // Marginal consistency: sum over beta of c^2 equals the A-marginal.
        for (a_idx, line) in a.spectrum().iter().enumerate() {
            let marginal = line.projector.apply(psi.as_vector()).norm_squared();
            let summed: f64 = (0..b.outcomes())
                .map(|b_idx| joint.amplitude(a_idx, b_idx).powi(2))
                .collect::<Vec<_>>()
                .iter()
                .sum();
            assert!((summed - marginal).abs() <= tol.eps_p);
        }
    }
}

#[test]
fn conditional_columns_and_sequential_marginals() {
    let tol = tol();
    let mut rng = seeded_rng(103);
    for trial in 0..60 {
        let dim = 2 + (trial % 5);
        let (a, b) = if trial % 2 == 0 {
            random_commuting_dichotomous_pair(dim, &mut rng, &tol)
        } else {
            (
                random_dichotomous(dim, &mut rng, &tol),
                random_dichotomous(dim, &mut rng, &tol),
            )
        };
        let psi = random_state(dim, &mut rng, &tol);

        let table = conditional_table(&a, &b, &psi, &tol).unwrap();
        for a_idx in 0..a.outcomes() {
            if table.marginals[a_idx] > tol.eps_zero {
                let column: f64 = (0..b.outcomes())
                    .map(|b_idx| table.cell(b_idx, a_idx).probability)
                    .sum();
                assert!((column - 1.0).abs() <= tol.eps_p);
            }
        }

        let jpd = sequential_jpd(&a, &b, &psi, Direction::Ab, &tol).unwrap();
        for a_idx in 0..a.outcomes() {
            // Marginalization over the second outcome.
            assert!((jpd.first_marginal(a_idx) - table.marginals[a_idx]).abs() <= tol.eps_p);
            // Chain identity on defined columns.
            if table.marginals[a_idx] > tol.eps_zero {
                for b_idx in 0..b.outcomes() {
                    let chained = table.marginals[a_idx] * table.cell(b_idx, a_idx).probability;
                    assert!((jpd.entry(a_idx, b_idx) - chained).abs() <= tol.eps_p);
                }
            }
        }
    }
}

#[test]
fn sequential_jpd_is_symmetric_for_commuting_pairs() {
    let tol = tol();
    let mut rng = seeded_rng(104);
    for trial in 0..40 {
        let dim = 2 + (trial % 5);
        let (a, b) = random_commuting_dichotomous_pair(dim, &mut rng, &tol);
        let psi = random_state(dim, &mut rng, &tol);
        let ab = sequential_jpd(&a, &b, &psi, Direction::Ab, &tol).unwrap();
        let ba = sequential_jpd(&b, &a, &psi, Direction::Ba, &tol).unwrap();
        for i in 0..a.outcomes() {
            for j in 0..b.outcomes() {
                assert!((ab.entry(i, j) - ba.entry(j, i)).abs() <= tol.eps_p);
            }
        }
    }
}

#[test]
fn ftp_identity_holds_and_interference_vanishes_when_commuting() {
    let tol = tol();
    let mut rng = seeded_rng(105);
    for trial in 0..60 {
        let dim = 2 + (trial % 5);
        let commuting = trial % 2 == 0;
        let (a, b) = if commuting {
            random_commuting_dichotomous_pair(dim, &mut rng, &tol)
        } else {
            (
                random_dichotomous(dim, &mut rng, &tol),
                random_dichotomous(dim, &mut rng, &tol),
            )
        };
        let psi = random_state(dim, &mut rng, &tol);
        for &beta in &b.values() {
            let report = ftp_decomposition(&a, &b, beta, &psi, &tol).unwrap();
            assert!(
                (report.total - report.classical_sum - report.interference).abs() <= tol.eps_p
            );
            if commuting {
                assert!(report.interference.abs() <= tol.eps_p);
            }
        }
    }
}

#[test]
fn conditional_tables_are_invariant_under_unitary_conjugation() {
    let tol = tol();
    let mut rng = seeded_rng(106);
    for trial in 0..30 {
        let dim = 2 + (trial % 5);
        let a = random_dichotomous(dim, &mut rng, &tol);
        let b = random_dichotomous(dim, &mut rng, &tol);
        let psi = random_state(dim, &mut rng, &tol);
        let u = random_unitary(dim, &mut rng);

        let a_u = conjugate_observable(&a, &u, &tol).unwrap();
        let b_u = conjugate_observable(&b, &u, &tol).unwrap();
        let psi_u = StateVector::normalize(u.apply(psi.as_vector()), &tol).unwrap();

        let before = conditional_table(&a, &b, &psi, &tol).unwrap();
        let after = conditional_table(&a_u, &b_u, &psi_u, &tol).unwrap();
        for b_idx in 0..b.outcomes() {
            for a_idx in 0..a.outcomes() {
                let x = before.cell(b_idx, a_idx);
                let y = after.cell(b_idx, a_idx);
                assert_eq!(x.defined, y.defined);
                if x.defined {
                    assert!((x.probability - y.probability).abs() <= tol.eps_p);
                }
            }
        }

        // Expectations are invariant as well.
        let e_before = expectation(&a, &psi, &tol).unwrap();
        let e_after = expectation(&a_u, &psi_u, &tol).unwrap();
        assert!((e_before - e_after).abs() <= tol.eps_p);
    }
}

//! Randomized equivalence sweeps: sample commuting dichotomous pairs with
//! random states and verify the equivalence theorems on every draw,
//! counting marginal-zone samples separately and recording counterexample
//! inputs verbatim.

use rand::Rng;
use serde::Serialize;

use obsent::classical::{
    are_independent, classical_ftp_check, covariance_classical, from_commuting_pair,
};
use obsent::entanglement::{
    amplitude_factorization, concurrence_c, concurrence_m, conjugate_observable, detect_epr,
    embed_local, is_ab_entangled, is_ab_independent, two_qubit_standard_concurrence,
};
use obsent::hilbert::{Operator, StateVector, ToleranceConfig};
use obsent::qprob::{covariance, ftp_decomposition};
use obsent::random::{
    dichotomous_in_basis, random_dichotomous, random_product_state, random_sign_assignment,
    random_state, random_unitary, seeded_rng,
};
use obsent::spectral::{joint_decompose, Observable};

use crate::problem::{matrix_to_wire, vector_to_wire, WireMatrix, WireVector};
use crate::CliError;

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub count: usize,
    pub dim: usize,
    pub seed: u64,
    pub tolerances: ToleranceConfig,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckCounts {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped_marginal: usize,
}

/// The exact inputs of a failed check, reproducible from the summary alone.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub check: &'static str,
    pub iteration: usize,
    pub state: WireVector,
    pub eigenbasis: WireMatrix,
    pub signs_a: Vec<bool>,
    pub signs_b: Vec<bool>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SweepSummary {
    pub count: usize,
    pub dim: usize,
    pub seed: u64,
    pub checks: Vec<CheckCounts>,
    pub counterexamples: Vec<Counterexample>,
    pub all_passed: bool,
}

const CHECK_NAMES: [&str; 11] = [
    "theorem1_product_states",
    "theorem1_concurrence",
    "theorem2a_factorization",
    "theorem3_covariance",
    "theorem3_proof_identity",
    "prop2_unitary_invariance",
    "prop3_outcome_symmetry",
    "prop4_maximal_epr",
    "prop5_independence",
    "prop6_classical_oracle",
    "ftp_interference",
];

struct Tally {
    counts: Vec<CheckCounts>,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn new() -> Self {
        Self {
            counts: CHECK_NAMES
                .iter()
                .map(|name| CheckCounts {
                    name,
                    passed: 0,
                    failed: 0,
                    skipped_marginal: 0,
                })
                .collect(),
            counterexamples: Vec::new(),
        }
    }

    fn index(name: &'static str) -> usize {
        CHECK_NAMES.iter().position(|&n| n == name).expect("known check")
    }

    fn pass(&mut self, name: &'static str) {
        self.counts[Self::index(name)].passed += 1;
    }

    fn skip(&mut self, name: &'static str) {
        self.counts[Self::index(name)].skipped_marginal += 1;
    }

    fn fail(&mut self, name: &'static str, sample: &Sample, iteration: usize, detail: String) {
        self.counts[Self::index(name)].failed += 1;
        self.counterexamples.push(Counterexample {
            check: name,
            iteration,
            state: vector_to_wire(sample.state.as_vector()),
            eigenbasis: matrix_to_wire(sample.basis.as_matrix()),
            signs_a: sample.signs_a.clone(),
            signs_b: sample.signs_b.clone(),
            detail,
        });
    }
}

struct Sample {
    basis: Operator,
    signs_a: Vec<bool>,
    signs_b: Vec<bool>,
    a: Observable,
    b: Observable,
    state: StateVector,
}

fn draw_sample<R: Rng>(dim: usize, rng: &mut R, tol: &ToleranceConfig) -> Sample {
    let basis = random_unitary(dim, rng);
    let signs_a = random_sign_assignment(dim, rng);
    let signs_b = random_sign_assignment(dim, rng);
    let a = dichotomous_in_basis(&basis, &signs_a, tol).expect("orthonormal basis");
    let b = dichotomous_in_basis(&basis, &signs_b, tol).expect("orthonormal basis");
    let state = random_state(dim, rng, tol);
    Sample {
        basis,
        signs_a,
        signs_b,
        a,
        b,
        state,
    }
}

/// Run the sweep. Deterministic for a given seed; the summary lists
/// pass/fail/marginal counts per check and every counterexample verbatim.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary, CliError> {
    if config.count < 1 {
        return Err(CliError::Validation("count must be at least 1".into()));
    }
    if !(2..=16).contains(&config.dim) {
        return Err(CliError::Validation("dim must lie in [2, 16]".into()));
    }
    config.tolerances.validate()?;

    let tol = config.tolerances;
    let mut rng = seeded_rng(config.seed);
    let mut tally = Tally::new();

    for iteration in 0..config.count {
        let sample = draw_sample(config.dim, &mut rng, &tol);
        check_equivalences(&sample, iteration, &tol, &mut tally)?;
        check_unitary_invariance(&sample, iteration, &mut rng, &tol, &mut tally)?;
        check_product_states(config.dim, iteration, &mut rng, &tol, &mut tally)?;
        check_ftp(config.dim, iteration, &mut rng, &tol, &mut tally)?;
    }

    let all_passed = tally.counterexamples.is_empty();
    Ok(SweepSummary {
        count: config.count,
        dim: config.dim,
        seed: config.seed,
        checks: tally.counts,
        counterexamples: tally.counterexamples,
        all_passed,
    })
}

fn check_equivalences(
    sample: &Sample,
    iteration: usize,
    tol: &ToleranceConfig,
    tally: &mut Tally,
) -> Result<(), CliError> {
    let (a, b, psi) = (&sample.a, &sample.b, &sample.state);
    let joint = joint_decompose(a, b, psi, tol)?;
    let [cpp, cpm, cmp, cmm] = joint.dichotomous_amplitudes()?;
    let e577 = cpm * cpm * cmp * cmp - cmm * cmm * cpp * cpp;
    let cov = covariance(a, b, psi, tol)?;
    let (entangled, witnesses) = is_ab_entangled(a, b, psi, tol)?;
    let clear = !tol.in_marginal_zone(e577) && !tol.in_marginal_zone(cov);

    // Theorem 2a: entangled iff amplitude non-factorizable.
    if clear {
        let witness = amplitude_factorization(a, b, psi, tol)?;
        if entangled == witness.is_none() {
            tally.pass("theorem2a_factorization");
        } else {
            tally.fail(
                "theorem2a_factorization",
                sample,
                iteration,
                format!("entangled={entangled} but factorization witness present={}", witness.is_some()),
            );
        }
    } else {
        tally.skip("theorem2a_factorization");
    }

    // Theorem 3: entangled iff correlated.
    if clear {
        if entangled == (cov.abs() > tol.eps_p) {
            tally.pass("theorem3_covariance");
        } else {
            tally.fail(
                "theorem3_covariance",
                sample,
                iteration,
                format!("entangled={entangled} but covariance={cov}"),
            );
        }
    } else {
        tally.skip("theorem3_covariance");
    }

    // Proof identity cov = 4(ab - cd) on every draw.
    let identity = 4.0 * (cpp * cpp * cmm * cmm - cpm * cpm * cmp * cmp);
    if (cov - identity).abs() <= 1e-8 {
        tally.pass("theorem3_proof_identity");
    } else {
        tally.fail(
            "theorem3_proof_identity",
            sample,
            iteration,
            format!("cov={cov} vs 4(ab-cd)={identity}"),
        );
    }

    // Entangled four-dimensional samples with four one-dimensional joint
    // cells must have nonzero standard concurrence.
    if psi.dim() == 4 {
        let degenerate = joint
            .cells()
            .iter()
            .any(|cell| (cell.projector.as_matrix().trace().re - 1.0).abs() > 0.5);
        if !degenerate && entangled && clear {
            let concurrence = two_qubit_standard_concurrence(a, b, psi, tol)?;
            if concurrence > tol.eps_p {
                tally.pass("theorem1_concurrence");
            } else {
                tally.fail(
                    "theorem1_concurrence",
                    sample,
                    iteration,
                    format!("entangled state with standard concurrence {concurrence}"),
                );
            }
        }
    }

    // Proposition 3: for dichotomous B both outcomes depend or neither.
    let diffs_clear = witnesses
        .iter()
        .all(|w| !tol.in_marginal_zone(w.lhs - w.rhs));
    if clear && diffs_clear {
        let has_plus = witnesses.iter().any(|w| w.beta > 0.0);
        let has_minus = witnesses.iter().any(|w| w.beta < 0.0);
        if has_plus == has_minus {
            tally.pass("prop3_outcome_symmetry");
        } else {
            tally.fail(
                "prop3_outcome_symmetry",
                sample,
                iteration,
                format!("witness for + present={has_plus}, for - present={has_minus}"),
            );
        }
    } else {
        tally.skip("prop3_outcome_symmetry");
    }

    // Proposition 4: maximal concurrence iff a complete EPR pattern exists.
    match concurrence_m(a, b, psi, tol) {
        Ok(m) if !tol.in_marginal_zone(2.0 - m) => {
            let maximal = m >= 2.0 - tol.eps_p;
            let pattern = detect_epr(a, b, psi, tol)?;
            if maximal == pattern.is_some() {
                tally.pass("prop4_maximal_epr");
            } else {
                tally.fail(
                    "prop4_maximal_epr",
                    sample,
                    iteration,
                    format!("concurrence {m} vs EPR pattern present={}", pattern.is_some()),
                );
            }
        }
        _ => tally.skip("prop4_maximal_epr"),
    }

    // Proposition 5: independence iff disentanglement.
    if clear {
        let independent = is_ab_independent(a, b, psi, tol)?;
        if independent == !entangled {
            tally.pass("prop5_independence");
        } else {
            tally.fail(
                "prop5_independence",
                sample,
                iteration,
                format!("independent={independent}, entangled={entangled}"),
            );
        }
    } else {
        tally.skip("prop5_independence");
    }

    // Proposition 6: the induced classical space tells the same story.
    let (space, xi_a, xi_b) = from_commuting_pair(a, b, psi, tol)?;
    let classical_cov = covariance_classical(&xi_a, &xi_b, &space);
    let mut classical_ok = (classical_cov - cov).abs() <= 1e-8;
    for &beta in &[1.0, -1.0] {
        let (lhs, rhs) = classical_ftp_check(&xi_a, &xi_b, &space, beta, tol)?;
        classical_ok &= (lhs - rhs).abs() <= tol.eps_p;
    }
    if clear {
        let independent_classical = are_independent(&xi_a, &xi_b, &space, tol);
        classical_ok &= independent_classical == !entangled;
    }
    if classical_ok {
        tally.pass("prop6_classical_oracle");
    } else {
        tally.fail(
            "prop6_classical_oracle",
            sample,
            iteration,
            format!("classical covariance {classical_cov} vs quantum {cov}"),
        );
    }

    Ok(())
}

fn check_unitary_invariance<R: Rng>(
    sample: &Sample,
    iteration: usize,
    rng: &mut R,
    tol: &ToleranceConfig,
    tally: &mut Tally,
) -> Result<(), CliError> {
    let u = random_unitary(sample.a.dim(), rng);
    let a_u = conjugate_observable(&sample.a, &u, tol)?;
    let b_u = conjugate_observable(&sample.b, &u, tol)?;
    let psi_u = StateVector::normalize(u.apply(sample.state.as_vector()), tol)?;

    let (before, _) = is_ab_entangled(&sample.a, &sample.b, &sample.state, tol)?;
    let (after, _) = is_ab_entangled(&a_u, &b_u, &psi_u, tol)?;
    let c_before = concurrence_c(&sample.a, &sample.b, &sample.state)?;
    let c_after = concurrence_c(&a_u, &b_u, &psi_u)?;
    let m_match = match (
        concurrence_m(&sample.a, &sample.b, &sample.state, tol),
        concurrence_m(&a_u, &b_u, &psi_u, tol),
    ) {
        (Ok(x), Ok(y)) => (x - y).abs() <= 1e-8,
        (Err(_), Err(_)) => true,
        _ => false,
    };

    if before == after && (c_before - c_after).abs() <= 1e-8 && m_match {
        tally.pass("prop2_unitary_invariance");
    } else {
        tally.fail(
            "prop2_unitary_invariance",
            sample,
            iteration,
            format!("verdict {before}->{after}, concurrence {c_before}->{c_after}"),
        );
    }
    Ok(())
}

fn check_product_states<R: Rng>(
    dim: usize,
    iteration: usize,
    rng: &mut R,
    tol: &ToleranceConfig,
    tally: &mut Tally,
) -> Result<(), CliError> {
    if dim % 2 != 0 || dim < 4 {
        return Ok(());
    }
    let (da, db) = (2, dim / 2);
    let psi = random_product_state(da, db, rng, tol);
    let local_a = random_dichotomous(da, rng, tol);
    let local_b = random_dichotomous(db, rng, tol);
    let (a, b) = embed_local(&local_a, &local_b, tol)?;
    let (entangled, _) = is_ab_entangled(&a, &b, &psi, tol)?;
    if !entangled {
        tally.pass("theorem1_product_states");
    } else {
        let sample = Sample {
            basis: Operator::identity(dim),
            signs_a: vec![],
            signs_b: vec![],
            a,
            b,
            state: psi,
        };
        tally.fail(
            "theorem1_product_states",
            &sample,
            iteration,
            "product state reported entangled".into(),
        );
    }
    Ok(())
}

fn check_ftp<R: Rng>(
    dim: usize,
    iteration: usize,
    rng: &mut R,
    tol: &ToleranceConfig,
    tally: &mut Tally,
) -> Result<(), CliError> {
    // Independent eigenbases make the pair generically non-commuting.
    let a = random_dichotomous(dim, rng, tol);
    let b = random_dichotomous(dim, rng, tol);
    let psi = random_state(dim, rng, tol);
    let commuting = obsent::hilbert::commutes(a.op(), b.op(), tol)?;
    let mut ok = true;
    let mut detail = String::new();
    for &beta in &[1.0, -1.0] {
        let report = ftp_decomposition(&a, &b, beta, &psi, tol)?;
        let residual = (report.total - report.classical_sum - report.interference).abs();
        if residual > tol.eps_p {
            ok = false;
            detail = format!("identity residual {residual} at beta {beta}");
        }
        if commuting && report.interference.abs() > tol.eps_p {
            ok = false;
            detail = format!("commuting interference {} at beta {beta}", report.interference);
        }
    }
    if ok {
        tally.pass("ftp_interference");
    } else {
        let sample = Sample {
            basis: Operator::identity(dim),
            signs_a: vec![],
            signs_b: vec![],
            a,
            b,
            state: psi,
        };
        tally.fail("ftp_interference", &sample, iteration, detail);
    }
    Ok(())
}


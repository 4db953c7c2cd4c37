//! Observable-pair entanglement: dependence witnesses, concurrence measures,
//! perfect conditional correlation, amplitude-factorization witnesses, the
//! covariance equivalence for commuting dichotomous pairs, tensor-product
//! embeddings, and unitary-family constructions.
//!
//! Entanglement decisions use the norm-product form of the dependence
//! inequality, ‖E_B(β)E_A(α_i)ψ‖·‖E_A(α_j)ψ‖ ≠ ‖E_B(β)E_A(α_j)ψ‖·‖E_A(α_i)ψ‖,
//! which needs no division and is total even when a marginal vanishes.
//! Verdicts whose deciding quantity sits within a decade of the `eps_p`
//! boundary are flagged as marginal in reports.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{commutes, Operator, StateVector, ToleranceConfig};
use crate::qprob::{
    conditional_probability, covariance, sequential_jpd, sequential_norms, Direction,
    SequentialNorms,
};
use crate::spectral::{joint_decompose, Observable};

/// Evidence that the outcome B=β depends on a pair of A-outcomes: the two
/// sides of the norm-product inequality differ by more than `eps_p`.
#[derive(Debug, Clone, Serialize)]
pub struct DependenceWitness {
    pub beta: f64,
    pub alpha_i: f64,
    pub alpha_j: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// A set of (α, β) outcome pairs for perfect-conditional-correlation tests.
///
/// The set is complete when every eigenvalue of A and every eigenvalue of B
/// appears in the pairs exactly once.
#[derive(Debug, Clone, Serialize)]
pub struct EprSpec {
    pub pairs: Vec<(f64, f64)>,
    pub complete: bool,
}

impl EprSpec {
    /// Validate the pairs against the spectra and compute completeness.
    pub fn new(
        pairs: Vec<(f64, f64)>,
        a: &Observable,
        b: &Observable,
        tol: &ToleranceConfig,
    ) -> Result<Self> {
        let mut a_seen = vec![0usize; a.outcomes()];
        let mut b_seen = vec![0usize; b.outcomes()];
        for &(alpha, beta) in &pairs {
            a_seen[a.line_index(alpha, tol)?] += 1;
            b_seen[b.line_index(beta, tol)?] += 1;
        }
        let complete = a_seen.iter().all(|&n| n == 1) && b_seen.iter().all(|&n| n == 1);
        Ok(Self { pairs, complete })
    }
}

/// Nonnegative tuples (λ, μ) with Σλ² = Σμ² = 1 and λ_α·μ_β = c_{αβ},
/// witnessing that the joint amplitudes factorize.
///
/// Entries are (eigenvalue, weight) pairs in spectrum order.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationWitness {
    pub lambda: Vec<(f64, f64)>,
    pub mu: Vec<(f64, f64)>,
}

/// Aggregate verdict for one (A, B, ψ) triple.
#[derive(Debug, Clone, Serialize)]
pub struct EntanglementReport {
    pub ab_entangled: bool,
    pub witnesses: Vec<DependenceWitness>,
    /// Concurrence from conditional-probability differences; absent when a
    /// zero marginal leaves some conditional undefined.
    pub m_ab: Option<f64>,
    /// Re-normalized concurrence from norm products; total.
    pub c_ab: f64,
    pub covariance: f64,
    pub factorization: Option<FactorizationWitness>,
    pub epr: Option<EprSpec>,
    pub max_entangled: bool,
    pub commuting: bool,
    pub dichotomous: bool,
    /// True when some verdict's deciding quantity fell in the gray zone
    /// around `eps_p`.
    pub marginal: bool,
}

fn check_dims(a: &Observable, b: &Observable, psi: &StateVector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if a.dim() != psi.dim() {
        return Err(Error::DimensionMismatch(a.dim(), psi.dim()));
    }
    Ok(())
}

fn witness_at(
    norms: &SequentialNorms,
    a: &Observable,
    b: &Observable,
    b_idx: usize,
    i: usize,
    j: usize,
    tol: &ToleranceConfig,
) -> Option<DependenceWitness> {
    let lhs = norms.cross[i][b_idx] * norms.a_norms[j];
    let rhs = norms.cross[j][b_idx] * norms.a_norms[i];
    if (lhs - rhs).abs() > tol.eps_p {
        Some(DependenceWitness {
            beta: b.spectrum()[b_idx].value,
            alpha_i: a.spectrum()[i].value,
            alpha_j: a.spectrum()[j].value,
            lhs,
            rhs,
        })
    } else {
        None
    }
}

/// Per-β scan results: one witness per dependent outcome plus the largest
/// norm-product difference seen for each outcome (the deciding quantity).
struct WitnessScan {
    witnesses: Vec<Option<DependenceWitness>>,
    max_diffs: Vec<f64>,
}

fn scan_witnesses(
    norms: &SequentialNorms,
    a: &Observable,
    b: &Observable,
    tol: &ToleranceConfig,
) -> WitnessScan {
    let mut witnesses = Vec::with_capacity(b.outcomes());
    let mut max_diffs = Vec::with_capacity(b.outcomes());
    for b_idx in 0..b.outcomes() {
        let mut best: Option<DependenceWitness> = None;
        let mut max_diff = 0.0f64;
        for i in 0..a.outcomes() {
            for j in (i + 1)..a.outcomes() {
                let lhs = norms.cross[i][b_idx] * norms.a_norms[j];
                let rhs = norms.cross[j][b_idx] * norms.a_norms[i];
                max_diff = max_diff.max((lhs - rhs).abs());
                if best.is_none() {
                    best = witness_at(norms, a, b, b_idx, i, j, tol);
                }
            }
        }
        witnesses.push(best);
        max_diffs.push(max_diff);
    }
    WitnessScan {
        witnesses,
        max_diffs,
    }
}

/// Decide whether the outcome B=β depends on the A-outcomes α_i, α_j.
///
/// Returns a witness exactly when the two norm products differ by more than
/// `eps_p`. Total: a zero marginal forces both products to zero, so no
/// witness is produced instead of an error.
pub fn outcome_depends(
    a: &Observable,
    b: &Observable,
    beta: f64,
    alpha_i: f64,
    alpha_j: f64,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<Option<DependenceWitness>> {
    check_dims(a, b, psi)?;
    let i = a.line_index(alpha_i, tol)?;
    let j = a.line_index(alpha_j, tol)?;
    let b_idx = b.line_index(beta, tol)?;
    let norms = sequential_norms(a, b, psi);
    Ok(witness_at(&norms, a, b, b_idx, i, j, tol))
}

/// Decide AB-entanglement: every outcome of B must depend on some pair of
/// A-outcomes. Returns the verdict and one witness per dependent outcome.
///
/// For a dichotomous pair the verdict reduces to the single constraint on
/// (β=+, α=+, α=−); the witness list is still produced per outcome.
pub fn is_ab_entangled(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<(bool, Vec<DependenceWitness>)> {
    check_dims(a, b, psi)?;
    let norms = sequential_norms(a, b, psi);
    let scan = scan_witnesses(&norms, a, b, tol);
    let verdict = if a.is_dichotomous() && b.is_dichotomous() {
        witness_at(&norms, a, b, 0, 0, 1, tol).is_some()
    } else {
        scan.witnesses.iter().all(|w| w.is_some())
    };
    Ok((verdict, scan.witnesses.into_iter().flatten().collect()))
}

/// Entanglement in both conditioning orders: the conjunction of the two
/// directed verdicts. The orders agree for commuting pairs but can differ
/// for incompatible observables.
pub fn is_mutually_entangled(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<bool> {
    Ok(is_ab_entangled(a, b, psi, tol)?.0 && is_ab_entangled(b, a, psi, tol)?.0)
}

/// Concurrence from conditional probabilities: the sum over B-outcomes and
/// unordered A-outcome pairs of |P(B=β|A=α) − P(B=β|A=α′)|.
///
/// Requires every A-marginal to be nonzero; reaches 2 in the dichotomous
/// case exactly for the perfectly conditionally correlated states.
pub fn concurrence_m(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<f64> {
    check_dims(a, b, psi)?;
    let norms = sequential_norms(a, b, psi);
    let marginals: Vec<f64> = norms.a_norms.iter().map(|n| n * n).collect();
    for (idx, &p) in marginals.iter().enumerate() {
        if p <= tol.eps_zero {
            return Err(Error::ConditioningUndefined(a.spectrum()[idx].value));
        }
    }
    let mut total = 0.0;
    for b_idx in 0..b.outcomes() {
        for i in 0..a.outcomes() {
            for j in (i + 1)..a.outcomes() {
                let p_i = norms.cross[i][b_idx].powi(2) / marginals[i];
                let p_j = norms.cross[j][b_idx].powi(2) / marginals[j];
                total += (p_i - p_j).abs();
            }
        }
    }
    Ok(total)
}

/// Re-normalized concurrence from norm products: the sum over B-outcomes and
/// unordered A-outcome pairs of |‖E_B(β)E_A(α)ψ‖·‖E_A(α′)ψ‖ −
/// ‖E_B(β)E_A(α′)ψ‖·‖E_A(α)ψ‖|. Total even with zero marginals.
pub fn concurrence_c(a: &Observable, b: &Observable, psi: &StateVector) -> Result<f64> {
    check_dims(a, b, psi)?;
    let norms = sequential_norms(a, b, psi);
    let mut total = 0.0;
    for b_idx in 0..b.outcomes() {
        for i in 0..a.outcomes() {
            for j in (i + 1)..a.outcomes() {
                let lhs = norms.cross[i][b_idx] * norms.a_norms[j];
                let rhs = norms.cross[j][b_idx] * norms.a_norms[i];
                total += (lhs - rhs).abs();
            }
        }
    }
    Ok(total)
}

/// True when P(B=β | A=α) ≥ 1 − eps_p (perfect conditional correlation).
pub fn is_pcc(
    a: &Observable,
    alpha: f64,
    b: &Observable,
    beta: f64,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<bool> {
    Ok(conditional_probability(b, beta, a, alpha, psi, tol)? >= 1.0 - tol.eps_p)
}

/// True when the state is perfectly conditionally correlated for every pair
/// in `gamma`.
pub fn is_epr_entangled(
    a: &Observable,
    b: &Observable,
    gamma: &EprSpec,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<bool> {
    for &(alpha, beta) in &gamma.pairs {
        if !is_pcc(a, alpha, b, beta, psi, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Search for a complete EPR pattern: a bijection α ↦ β with unit
/// conditional probability for every pair. Returns `None` when the spectra
/// have different sizes, some marginal vanishes, or no bijection exists.
pub fn detect_epr(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<Option<EprSpec>> {
    check_dims(a, b, psi)?;
    if a.outcomes() != b.outcomes() {
        return Ok(None);
    }
    let norms = sequential_norms(a, b, psi);
    let mut pairs = Vec::with_capacity(a.outcomes());
    let mut used = vec![false; b.outcomes()];
    for (a_idx, a_line) in a.spectrum().iter().enumerate() {
        let marginal = norms.a_norms[a_idx].powi(2);
        if marginal <= tol.eps_zero {
            return Ok(None);
        }
        let mut matched = None;
        for (b_idx, b_line) in b.spectrum().iter().enumerate() {
            if norms.cross[a_idx][b_idx].powi(2) / marginal >= 1.0 - tol.eps_p {
                matched = Some((b_idx, b_line.value));
                break;
            }
        }
        match matched {
            Some((b_idx, beta)) if !used[b_idx] => {
                used[b_idx] = true;
                pairs.push((a_line.value, beta));
            }
            _ => return Ok(None),
        }
    }
    EprSpec::new(pairs, a, b, tol).map(Some)
}

/// True when the concurrence reaches its dichotomous maximum of 2, which is
/// equivalent to the existence of a complete EPR pattern. The equivalence is
/// cross-checked away from the marginal zone.
pub fn is_max_entangled(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<bool> {
    if !a.is_dichotomous() || !b.is_dichotomous() {
        return Err(Error::NotDichotomous);
    }
    let m = concurrence_m(a, b, psi, tol)?;
    let verdict = m >= 2.0 - tol.eps_p;
    let epr = detect_epr(a, b, psi, tol)?;
    if verdict != epr.is_some() && !tol.in_marginal_zone(2.0 - m) {
        return Err(Error::InternalConsistency(format!(
            "concurrence {m} and EPR detection disagree on maximal entanglement"
        )));
    }
    Ok(verdict)
}

/// Amplitudes `[c_{++}, c_{+-}, c_{-+}, c_{--}]` of a commuting dichotomous
/// pair, with the eigenvalue labels of the cells.
fn dichotomous_cells(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<([f64; 4], [f64; 2], [f64; 2])> {
    if !a.is_dichotomous() || !b.is_dichotomous() {
        return Err(Error::NotDichotomous);
    }
    let joint = joint_decompose(a, b, psi, tol)?;
    let c = joint.dichotomous_amplitudes()?;
    Ok((
        c,
        [joint.a_values()[0], joint.a_values()[1]],
        [joint.b_values()[0], joint.b_values()[1]],
    ))
}

/// Test amplitude factorizability of a commuting dichotomous pair and build
/// the witness tuples when it holds.
///
/// The state factorizes exactly when c_{+-}²·c_{-+}² = c_{--}²·c_{++}².
/// When the equality holds within `eps_p`, the witness is built from the
/// constructive ratios λ_± = c_{±+}/√(c_{++}² + c_{-+}²) and
/// μ_± = c_{+±}/√(c_{++}² + c_{+-}²), falling back to direct assignment when
/// a denominator vanishes. Returns `None` for amplitude non-factorizable
/// states, i.e. exactly the AB-entangled ones.
pub fn amplitude_factorization(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<Option<FactorizationWitness>> {
    let ([cpp, cpm, cmp, cmm], a_values, b_values) = dichotomous_cells(a, b, psi, tol)?;
    let diff = cpm * cpm * cmp * cmp - cmm * cmm * cpp * cpp;
    if diff.abs() > tol.eps_p {
        return Ok(None);
    }

    let d_lambda_sq = cpp * cpp + cmp * cmp;
    let d_mu_sq = cpp * cpp + cpm * cpm;
    let (lambda, mu) = if d_lambda_sq <= tol.eps_zero {
        // No weight on the B=+ column: assign it directly.
        ([cpm, cmm], [0.0, 1.0])
    } else if d_mu_sq <= tol.eps_zero {
        // No weight on the A=+ row.
        ([0.0, 1.0], [cmp, cmm])
    } else {
        let d_lambda = d_lambda_sq.sqrt();
        let d_mu = d_mu_sq.sqrt();
        ([cpp / d_lambda, cmp / d_lambda], [cpp / d_mu, cpm / d_mu])
    };

    let witness = FactorizationWitness {
        lambda: vec![(a_values[0], lambda[0]), (a_values[1], lambda[1])],
        mu: vec![(b_values[0], mu[0]), (b_values[1], mu[1])],
    };
    validate_factorization(&witness, [cpp, cpm, cmp, cmm], tol)?;
    Ok(Some(witness))
}

fn validate_factorization(
    witness: &FactorizationWitness,
    cells: [f64; 4],
    tol: &ToleranceConfig,
) -> Result<()> {
    let lambda_norm: f64 = witness.lambda.iter().map(|(_, l)| l * l).sum();
    let mu_norm: f64 = witness.mu.iter().map(|(_, m)| m * m).sum();
    if (lambda_norm - 1.0).abs() > tol.eps_norm * 10.0 || (mu_norm - 1.0).abs() > tol.eps_norm * 10.0
    {
        return Err(Error::InternalConsistency(format!(
            "factorization tuples are not normalized: {lambda_norm}, {mu_norm}"
        )));
    }
    let products = [
        witness.lambda[0].1 * witness.mu[0].1,
        witness.lambda[0].1 * witness.mu[1].1,
        witness.lambda[1].1 * witness.mu[0].1,
        witness.lambda[1].1 * witness.mu[1].1,
    ];
    for (product, cell) in products.iter().zip(cells) {
        if (product - cell).abs() > 10.0 * tol.eps_p {
            return Err(Error::InternalConsistency(format!(
                "factorization product {product} does not reproduce amplitude {cell}"
            )));
        }
    }
    Ok(())
}

/// Dichotomous reduction of the re-normalized concurrence on joint
/// amplitudes: |c_{+-}·c_{-+} − c_{--}·c_{++}|.
///
/// This companion diagnostic vanishes exactly on amplitude-factorizable
/// states. Note that it does not coincide numerically with the general sum
/// form ([`concurrence_c`]): on the singlet the sum form gives 1 while this
/// reduction gives 1/2.
pub fn amplitude_concurrence(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let ([cpp, cpm, cmp, cmm], _, _) = dichotomous_cells(a, b, psi, tol)?;
    Ok((cpm * cmp - cmm * cpp).abs())
}

/// Evaluate both sides of the covariance equivalence for a commuting
/// dichotomous pair: the entanglement verdict and |cov(A,B;ψ)| > eps_p.
/// The two booleans agree outside the marginal zone.
pub fn theorem3_check(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<(bool, bool)> {
    if !a.is_dichotomous() || !b.is_dichotomous() {
        return Err(Error::NotDichotomous);
    }
    if !commutes(a.op(), b.op(), tol)? {
        return Err(Error::NonCommuting);
    }
    let (entangled, _) = is_ab_entangled(a, b, psi, tol)?;
    let cov = covariance(a, b, psi, tol)?;
    Ok((entangled, cov.abs() > tol.eps_p))
}

/// True when the sequential joint distribution factorizes into the product
/// of marginals on every cell.
pub fn is_ab_independent(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<bool> {
    check_dims(a, b, psi)?;
    let jpd = sequential_jpd(a, b, psi, Direction::Ab, tol)?;
    let b_marginals: Vec<f64> = b
        .spectrum()
        .iter()
        .map(|line| line.projector.apply(psi.as_vector()).norm_squared())
        .collect();
    let mut max_violation = 0.0f64;
    for (a_idx, row) in jpd.entries.iter().enumerate() {
        let a_marginal = jpd.first_marginal(a_idx);
        for (b_idx, &p) in row.iter().enumerate() {
            max_violation = max_violation.max((p - a_marginal * b_marginals[b_idx]).abs());
        }
    }
    Ok(max_violation <= tol.eps_p)
}

/// Lift local observables to the composite space: (a ⊗ I, I ⊗ b).
pub fn embed_local(
    a: &Observable,
    b: &Observable,
    tol: &ToleranceConfig,
) -> Result<(Observable, Observable)> {
    let id_a = Operator::identity(a.dim());
    let id_b = Operator::identity(b.dim());
    let lifted_a = Observable::from_parts(
        &a.values(),
        a.spectrum()
            .iter()
            .map(|line| line.projector.tensor(&id_b))
            .collect(),
        tol,
    )?;
    let lifted_b = Observable::from_parts(
        &b.values(),
        b.spectrum()
            .iter()
            .map(|line| id_a.tensor(&line.projector))
            .collect(),
        tol,
    )?;
    Ok((lifted_a, lifted_b))
}

/// Conjugate an observable by a unitary: spectrum unchanged, projectors
/// mapped to u·E(α)·u†.
pub fn conjugate_observable(
    a: &Observable,
    u: &Operator,
    tol: &ToleranceConfig,
) -> Result<Observable> {
    if u.dim() != a.dim() {
        return Err(Error::DimensionMismatch(u.dim(), a.dim()));
    }
    if !u.is_unitary(tol) {
        return Err(Error::NotUnitary);
    }
    let u_dagger = u.adjoint();
    Observable::from_parts(
        &a.values(),
        a.spectrum()
            .iter()
            .map(|line| {
                u.matmul(&line.projector)
                    .and_then(|p| p.matmul(&u_dagger))
            })
            .collect::<Result<_>>()?,
        tol,
    )
}

/// The antisymmetric two-qubit state (|f₊f₋⟩ − |f₋f₊⟩)/√2 built over an
/// orthonormal basis of the single-qubit space. Its coefficients keep the
/// same antisymmetric form in any rotated basis (u ⊗ u only changes the
/// global phase).
pub fn singlet(
    f_plus: &StateVector,
    f_minus: &StateVector,
    tol: &ToleranceConfig,
) -> Result<StateVector> {
    if f_plus.dim() != 2 || f_minus.dim() != 2 {
        return Err(Error::DimensionMismatch(f_plus.dim().max(f_minus.dim()), 2));
    }
    if f_plus.inner(f_minus).norm() > tol.eps_norm {
        return Err(Error::NotOrthonormal);
    }
    let raw = (f_plus.tensor(f_minus).as_vector() - f_minus.tensor(f_plus).as_vector())
        / Complex64::new(2.0_f64.sqrt(), 0.0);
    StateVector::normalize(raw, tol)
}

/// Standard two-qubit concurrence |c_{+-}c_{-+} − c_{--}c_{++}| extracted in
/// the joint eigenbasis of a commuting dichotomous pair whose four joint
/// eigenspaces are all one-dimensional.
///
/// Cell eigenvectors are phase-fixed so their largest-magnitude entry is
/// real and positive; for cells spanned by computational basis vectors this
/// reproduces the textbook coefficients.
pub fn two_qubit_standard_concurrence(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<f64> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch(psi.dim(), 4));
    }
    if !a.is_dichotomous() || !b.is_dichotomous() {
        return Err(Error::NotDichotomous);
    }
    let joint = joint_decompose(a, b, psi, tol)?;
    let mut coefficients = Vec::with_capacity(4);
    for cell in joint.cells() {
        let rank = cell.projector.as_matrix().trace().re;
        if (rank - 1.0).abs() > 0.5 {
            return Err(Error::DegenerateJointBasis);
        }
        let basis_vector = rank_one_eigenvector(&cell.projector)?;
        coefficients.push(basis_vector.dotc(psi.as_vector()));
    }
    let [cpp, cpm, cmp, cmm] = [
        coefficients[0],
        coefficients[1],
        coefficients[2],
        coefficients[3],
    ];
    Ok((cpm * cmp - cmm * cpp).norm())
}

/// Unit vector spanning a rank-one Hermitian projector, phase-fixed so the
/// largest-magnitude entry is real and positive.
fn rank_one_eigenvector(projector: &Operator) -> Result<nalgebra::DVector<Complex64>> {
    let m = projector.as_matrix();
    let (best_col, _) = (0..m.ncols())
        .map(|j| (j, m.column(j).norm()))
        .max_by(|x, y| x.1.partial_cmp(&y.1).expect("finite"))
        .expect("nonempty");
    let mut v = m.column(best_col).clone_owned();
    let norm = v.norm();
    if norm <= f64::EPSILON.sqrt() {
        return Err(Error::DegenerateJointBasis);
    }
    v /= Complex64::new(norm, 0.0);
    let (anchor, _) = v
        .iter()
        .enumerate()
        .map(|(k, z)| (k, z.norm()))
        .max_by(|x, y| x.1.partial_cmp(&y.1).expect("finite"))
        .expect("nonempty");
    let phase = v[anchor] / Complex64::new(v[anchor].norm(), 0.0);
    v /= phase;
    Ok(v)
}

/// Build the full entanglement report for one (A, B, ψ) triple, with the
/// equivalence cross-checks for commuting dichotomous pairs.
pub fn analyze(
    a: &Observable,
    b: &Observable,
    psi: &StateVector,
    tol: &ToleranceConfig,
) -> Result<EntanglementReport> {
    check_dims(a, b, psi)?;
    let commuting = commutes(a.op(), b.op(), tol)?;
    let dichotomous = a.is_dichotomous() && b.is_dichotomous();

    let norms = sequential_norms(a, b, psi);
    let scan = scan_witnesses(&norms, a, b, tol);
    let ab_entangled = if dichotomous {
        witness_at(&norms, a, b, 0, 0, 1, tol).is_some()
    } else {
        scan.witnesses.iter().all(|w| w.is_some())
    };
    let witnesses: Vec<DependenceWitness> = scan.witnesses.into_iter().flatten().collect();

    let m_ab = match concurrence_m(a, b, psi, tol) {
        Ok(m) => Some(m),
        Err(Error::ConditioningUndefined(_)) => None,
        Err(e) => return Err(e),
    };
    let c_ab = concurrence_c(a, b, psi)?;
    let cov = covariance(a, b, psi, tol)?;
    let factorization = if commuting && dichotomous {
        amplitude_factorization(a, b, psi, tol)?
    } else {
        None
    };
    let epr = detect_epr(a, b, psi, tol)?;
    let max_entangled = match (dichotomous, m_ab) {
        (true, Some(m)) => m >= 2.0 - tol.eps_p,
        _ => false,
    };

    let mut marginal = scan.max_diffs.iter().any(|&d| tol.in_marginal_zone(d));
    if commuting && dichotomous {
        let joint = joint_decompose(a, b, psi, tol)?;
        let [cpp, cpm, cmp, cmm] = joint.dichotomous_amplitudes()?;
        let e577 = cpm * cpm * cmp * cmp - cmm * cmm * cpp * cpp;
        marginal = marginal || tol.in_marginal_zone(e577) || tol.in_marginal_zone(cov);
    }
    if let Some(m) = m_ab {
        if dichotomous {
            marginal = marginal || tol.in_marginal_zone(2.0 - m);
        }
    }

    if commuting && dichotomous && !marginal {
        let by_factorization = factorization.is_none();
        let by_covariance = cov.abs() > tol.eps_p;
        if ab_entangled != by_factorization || ab_entangled != by_covariance {
            return Err(Error::InternalConsistency(format!(
                "equivalence violated: entangled={ab_entangled}, non-factorizable={by_factorization}, correlated={by_covariance}"
            )));
        }
    }

    Ok(EntanglementReport {
        ab_entangled,
        witnesses,
        m_ab,
        c_ab,
        covariance: cov,
        factorization,
        epr,
        max_entangled,
        commuting,
        dichotomous,
        marginal,
    })
}

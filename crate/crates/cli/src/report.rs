//! Full analysis output: the entanglement report plus the conditional
//! table, both sequential joint distributions, the total-probability
//! decomposition per outcome, joint amplitudes for commuting pairs, and the
//! standard two-qubit concurrence where it applies.

use serde::Serialize;

use obsent::entanglement::{analyze, two_qubit_standard_concurrence, EntanglementReport};
use obsent::error::Error;
use obsent::qprob::{
    conditional_table, ftp_decomposition, sequential_jpd, ConditionalTable, Direction, FtpReport,
    JpdTable,
};
use obsent::spectral::joint_decompose;

use crate::problem::ResolvedProblem;
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct JointAmplitude {
    pub a_value: f64,
    pub b_value: f64,
    pub amplitude: f64,
}

/// Everything `analyze` emits for one problem.
#[derive(Debug, Serialize)]
pub struct AnalyzeOutput {
    /// Which observable conditioned the analysis ("ab" conditions on A).
    pub direction: Direction,
    pub report: EntanglementReport,
    /// P(second = β | first = α) for the chosen direction.
    pub conditional_table: ConditionalTable,
    /// Sequential distribution measuring observable A first.
    pub jpd_ab: JpdTable,
    /// Sequential distribution measuring observable B first.
    pub jpd_ba: JpdTable,
    /// Total-probability decomposition per outcome of the second observable.
    pub ftp: Vec<FtpReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joint_amplitudes: Option<Vec<JointAmplitude>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_concurrence: Option<f64>,
}

pub fn run_analysis(problem: &ResolvedProblem) -> Result<AnalyzeOutput, CliError> {
    let tol = &problem.tolerances;
    let (first, second) = match problem.direction {
        Direction::Ab => (&problem.observable_a, &problem.observable_b),
        Direction::Ba => (&problem.observable_b, &problem.observable_a),
    };
    let psi = &problem.state;

    let report = analyze(first, second, psi, tol)?;
    let table = conditional_table(first, second, psi, tol)?;
    let jpd_ab = sequential_jpd(
        &problem.observable_a,
        &problem.observable_b,
        psi,
        Direction::Ab,
        tol,
    )?;
    let jpd_ba = sequential_jpd(
        &problem.observable_b,
        &problem.observable_a,
        psi,
        Direction::Ba,
        tol,
    )?;
    let ftp = second
        .values()
        .iter()
        .map(|&beta| ftp_decomposition(first, second, beta, psi, tol))
        .collect::<Result<Vec<_>, _>>()?;

    let joint_amplitudes = if report.commuting {
        let joint = joint_decompose(first, second, psi, tol)?;
        Some(
            joint
                .cells()
                .iter()
                .map(|cell| JointAmplitude {
                    a_value: cell.a_value,
                    b_value: cell.b_value,
                    amplitude: cell.amplitude,
                })
                .collect(),
        )
    } else {
        None
    };

    let standard_concurrence = if psi.dim() == 4 && report.commuting && report.dichotomous {
        match two_qubit_standard_concurrence(first, second, psi, tol) {
            Ok(value) => Some(value),
            Err(Error::DegenerateJointBasis) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    Ok(AnalyzeOutput {
        direction: problem.direction,
        report,
        conditional_table: table,
        jpd_ab,
        jpd_ba,
        ftp,
        joint_amplitudes,
        standard_concurrence,
    })
}


//! Named example problems. Each scenario reproduces a documented report:
//! `singlet` and `bell-phi-plus` are the maximally correlated two-qubit
//! pairs, `rotated-singlet` measures the second qubit in the reflected
//! basis that makes the singlet amplitude factorizable, `phase-entangled`
//! carries standard entanglement without observable-pair entanglement, and
//! `dim3-degenerate` exercises a non-tensor dimension with an empty joint
//! cell.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::problem::{ProblemSpec, WireMatrix, WireObservable, WireVector};
use crate::CliError;

pub const SCENARIO_NAMES: [&str; 5] = [
    "singlet",
    "bell-phi-plus",
    "rotated-singlet",
    "phase-entangled",
    "dim3-degenerate",
];

fn real_vector(entries: &[f64]) -> WireVector {
    entries.iter().map(|&x| [x, 0.0]).collect()
}

fn real_matrix(dim: usize, entries: &[f64]) -> WireMatrix {
    entries
        .chunks(dim)
        .map(|row| row.iter().map(|&x| [x, 0.0]).collect())
        .collect()
}

fn diag(entries: &[f64]) -> WireObservable {
    let dim = entries.len();
    let mut rows = vec![0.0; dim * dim];
    for (i, &x) in entries.iter().enumerate() {
        rows[i * dim + i] = x;
    }
    WireObservable::Matrix(real_matrix(dim, &rows))
}

fn z_first() -> WireObservable {
    diag(&[1.0, 1.0, -1.0, -1.0])
}

fn z_second() -> WireObservable {
    diag(&[1.0, -1.0, 1.0, -1.0])
}

/// Emit the problem for a scenario name.
pub fn scenario(name: &str) -> Result<ProblemSpec, CliError> {
    let spec = match name {
        "singlet" => ProblemSpec {
            state: real_vector(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0]),
            observable_a: z_first(),
            observable_b: z_second(),
            tolerances: None,
            direction: obsent::qprob::Direction::Ab,
        },
        "bell-phi-plus" => ProblemSpec {
            state: real_vector(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]),
            observable_a: z_first(),
            observable_b: z_second(),
            tolerances: None,
            direction: obsent::qprob::Direction::Ab,
        },
        "rotated-singlet" => {
            // Second-qubit observable conjugated by the reflection
            // u = [[-1, 1], [1, 1]]/sqrt(2); u sigma_z u* = -sigma_x.
            let b = WireObservable::Matrix(real_matrix(
                4,
                &[
                    0.0, -1.0, 0.0, 0.0, //
                    -1.0, 0.0, 0.0, 0.0, //
                    0.0, 0.0, 0.0, -1.0, //
                    0.0, 0.0, -1.0, 0.0,
                ],
            ));
            ProblemSpec {
                state: real_vector(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0]),
                observable_a: z_first(),
                observable_b: b,
                tolerances: None,
                direction: obsent::qprob::Direction::Ab,
            }
        }
        "phase-entangled" => ProblemSpec {
            state: real_vector(&[0.5, 0.5, -0.5, 0.5]),
            observable_a: z_first(),
            observable_b: z_second(),
            tolerances: None,
            direction: obsent::qprob::Direction::Ab,
        },
        "dim3-degenerate" => ProblemSpec {
            state: real_vector(&[1.0, 1.0, 1.0]),
            observable_a: diag(&[1.0, 1.0, -1.0]),
            observable_b: diag(&[1.0, -1.0, -1.0]),
            tolerances: None,
            direction: obsent::qprob::Direction::Ab,
        },
        other => return Err(CliError::UnknownScenario(other.to_string())),
    };
    Ok(spec)
}

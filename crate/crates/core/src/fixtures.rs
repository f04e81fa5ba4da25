//! Canonical small games used by the tests, the CLI fixtures and the docs.

use alloc::vec;

use crate::game::ConstrainedGame;
use crate::kkt::EquilibriumCertificate;
use crate::linalg::Matrix;

fn m(rows: &[&[f64]]) -> Matrix {
    Matrix::from_fn(rows.len(), rows[0].len(), |i, k| rows[i][k])
}

/// Matching pennies with unit weights and unit caps (unconstrained).
pub fn matching_pennies() -> ConstrainedGame {
    let a = m(&[&[1.0, -1.0], &[-1.0, 1.0]]);
    ConstrainedGame::new(a.clone(), a.neg(), vec![1.0; 2], vec![1.0; 2], 1.0, 1.0).unwrap()
}

/// Prisoner's dilemma with unit weights and unit caps.
pub fn prisoners_dilemma() -> ConstrainedGame {
    let a = m(&[&[3.0, 0.0], &[5.0, 1.0]]);
    let b = m(&[&[3.0, 5.0], &[0.0, 1.0]]);
    ConstrainedGame::new(a, b, vec![1.0; 2], vec![1.0; 2], 1.0, 1.0).unwrap()
}

/// Battle of the sexes with unit weights and unit caps.
pub fn battle_of_the_sexes() -> ConstrainedGame {
    let a = m(&[&[2.0, 0.0], &[0.0, 1.0]]);
    let b = m(&[&[1.0, 0.0], &[0.0, 2.0]]);
    ConstrainedGame::new(a, b, vec![1.0; 2], vec![1.0; 2], 1.0, 1.0).unwrap()
}

/// Rates of the hand-checkable jamming instance, in nats per transmission.
pub const JX_RATES: [f64; 3] = [4.0, 2.0, 1.0];
/// Jammer power levels of the hand-checkable jamming instance.
pub const JX_POWERS: [f64; 4] = [0.0, 1.0, 2.0, 4.0];
/// Jammer budget at which the instance sits on its last breakpoint.
pub const JX_BUDGET: f64 = 1.25;

/// The 3-rate jamming game at budget 1.25: throughput matrix for the
/// transmitter, destruction indicator for the jammer, non-binding row cap.
pub fn jx_game() -> ConstrainedGame {
    let c = m(&[
        &[4.0, 0.0, 0.0, 0.0],
        &[2.0, 2.0, 0.0, 0.0],
        &[1.0, 1.0, 1.0, 0.0],
    ]);
    let d = m(&[
        &[0.0, 1.0, 1.0, 1.0],
        &[0.0, 0.0, 1.0, 1.0],
        &[0.0, 0.0, 0.0, 1.0],
    ]);
    ConstrainedGame::new(c, d, JX_RATES.to_vec(), JX_POWERS.to_vec(), 5.0, JX_BUDGET).unwrap()
}

/// Equilibrium certificate of [`jx_game`].
pub fn jx_certificate() -> EquilibriumCertificate {
    EquilibriumCertificate {
        x: vec![0.5, 0.5, 0.0],
        y: vec![0.25, 0.25, 0.5, 0.0],
        u: 0.0,
        v: 0.5,
        alpha: 1.0,
        beta: 0.0,
    }
}

/// Equilibrium certificate of [`matching_pennies`].
pub fn mp_certificate() -> EquilibriumCertificate {
    EquilibriumCertificate {
        x: vec![0.5, 0.5],
        y: vec![0.5, 0.5],
        u: 0.0,
        v: 0.0,
        alpha: 0.0,
        beta: 0.0,
    }
}

//! Equilibrium certificates and the fourteen optimality conditions.
//!
//! A pair `(x, y)` is an equilibrium of a constrained bimatrix game exactly
//! when there are scalars `u, v ≥ 0` and `α, β` such that, for player I,
//!
//! | label | condition                    |
//! |-------|------------------------------|
//! | I.1   | `1ᵀx − 1 = 0`                |
//! | I.2   | `rᵀx − r_ave ≤ 0`            |
//! | I.3   | `−x ≤ 0`                     |
//! | I.4   | `A y − u r − α 1 ≤ 0`        |
//! | I.5   | `xᵀA y − u r_ave − α = 0`    |
//! | I.6   | `u (rᵀx − r_ave) = 0`        |
//! | I.7   | `u ≥ 0`                      |
//!
//! and the mirrored II.1–II.7 for player II with `B`, `j`, `v`, `β`. Each
//! player's problem is a linear program, so these are necessary and
//! sufficient.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::game::{check_len, ConstrainedGame};
use crate::linalg::{dot, max_of};
use crate::lp::{lp_solve, LpProblem, LpStatus};

/// Default absolute tolerance on each residual.
pub const DEFAULT_KKT_TOL: f64 = 1e-8;

/// Strategies plus the four scalar multipliers.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumCertificate {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub u: f64,
    pub v: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Player {
    Row,
    Col,
}

/// Which of the seven per-player conditions a record refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConditionKind {
    Simplex,
    Cap,
    Nonnegative,
    DualBound,
    Value,
    Complementarity,
    MultiplierSign,
}

impl ConditionKind {
    pub const ALL: [ConditionKind; 7] = [
        ConditionKind::Simplex,
        ConditionKind::Cap,
        ConditionKind::Nonnegative,
        ConditionKind::DualBound,
        ConditionKind::Value,
        ConditionKind::Complementarity,
        ConditionKind::MultiplierSign,
    ];

    fn number(self) -> usize {
        self as usize + 1
    }

    /// Equality conditions pass on `|residual| ≤ tol`, the rest on `residual ≤ tol`.
    pub fn is_equality(self) -> bool {
        matches!(
            self,
            ConditionKind::Simplex | ConditionKind::Value | ConditionKind::Complementarity
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Condition {
    pub player: Player,
    pub kind: ConditionKind,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.player {
            Player::Row => "I",
            Player::Col => "II",
        };
        write!(f, "{}.{}", p, self.kind.number())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionRecord {
    pub condition: Condition,
    /// Signed residual; for vector conditions, the largest component.
    pub residual: f64,
    pub pass: bool,
}

impl ConditionRecord {
    /// Amount by which the condition is violated (zero when slack).
    pub fn violation(&self) -> f64 {
        if self.condition.kind.is_equality() {
            self.residual.abs()
        } else {
            self.residual.max(0.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KktReport {
    /// I.1 … I.7 then II.1 … II.7.
    pub records: Vec<ConditionRecord>,
    pub pass: bool,
    /// Largest violation over all fourteen conditions.
    pub max_residual: f64,
    pub tol: f64,
}

impl KktReport {
    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, player: Player, kind: ConditionKind) -> &ConditionRecord {
        let idx = match player {
            Player::Row => 0,
            Player::Col => 7,
        } + kind as usize;
        &self.records[idx]
    }
}

struct Side<'a> {
    own: &'a [f64],
    weights: &'a [f64],
    cap: f64,
    /// Payoff vector against the opponent's strategy (`A y` or `xᵀB`).
    payoff: Vec<f64>,
    value: f64,
    mult: f64,
    offset: f64,
}

fn side_residuals(s: &Side<'_>) -> [f64; 7] {
    let sum: f64 = s.own.iter().sum();
    let cost = dot(s.weights, s.own);
    let neg = s.own.iter().fold(f64::NEG_INFINITY, |m, &p| m.max(-p));
    let bound: Vec<f64> = s
        .payoff
        .iter()
        .zip(s.weights)
        .map(|(&p, &w)| p - s.mult * w - s.offset)
        .collect();
    [
        sum - 1.0,
        cost - s.cap,
        neg,
        max_of(&bound),
        s.value - s.mult * s.cap - s.offset,
        s.mult * (cost - s.cap),
        -s.mult,
    ]
}

fn check_dims(game: &ConstrainedGame, x: &[f64], y: &[f64]) -> Result<()> {
    check_len("x", game.rows(), x.len())?;
    check_len("y", game.cols(), y.len())
}

/// Evaluates all fourteen conditions literally with absolute tolerance `tol`.
///
/// Failed conditions are data, not errors: only dimension mismatches fail.
pub fn kkt_check(game: &ConstrainedGame, cert: &EquilibriumCertificate, tol: f64) -> Result<KktReport> {
    check_dims(game, &cert.x, &cert.y)?;
    let ay = game.a().mul_vec(&cert.y);
    let xb = game.b().vec_mul(&cert.x);
    let row = Side {
        own: &cert.x,
        weights: game.r(),
        cap: game.r_ave(),
        value: dot(&cert.x, &ay),
        payoff: ay,
        mult: cert.u,
        offset: cert.alpha,
    };
    let col = Side {
        own: &cert.y,
        weights: game.j(),
        cap: game.j_ave(),
        value: dot(&xb, &cert.y),
        payoff: xb,
        mult: cert.v,
        offset: cert.beta,
    };

    let mut records = Vec::with_capacity(14);
    for (player, side) in [(Player::Row, &row), (Player::Col, &col)] {
        for (kind, residual) in ConditionKind::ALL.into_iter().zip(side_residuals(side)) {
            let mut rec = ConditionRecord {
                condition: Condition { player, kind },
                residual,
                pass: false,
            };
            rec.pass = residual.is_finite() && rec.violation() <= tol;
            records.push(rec);
        }
    }
    let pass = records.iter().all(|r| r.pass);
    let max_residual = records.iter().map(ConditionRecord::violation).fold(0.0, f64::max);
    Ok(KktReport {
        records,
        pass,
        max_residual,
        tol,
    })
}

/// [`kkt_check`] with the tolerance scaled by `max(1, ‖A‖max, ‖B‖max, max weight, caps)`.
pub fn kkt_check_scaled(game: &ConstrainedGame, cert: &EquilibriumCertificate, rel_tol: f64) -> Result<KktReport> {
    let scale = [
        1.0,
        game.a().max_abs(),
        game.b().max_abs(),
        max_of(game.r()),
        max_of(game.j()),
        game.r_ave(),
        game.j_ave(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    kkt_check(game, cert, rel_tol * scale)
}

/// Finds multipliers `(u, v, α, β)` certifying `(x, y)`, or reports
/// [`Error::NotAnEquilibrium`].
///
/// Posed as the LP `minimize u + v` over the linear conditions I.4–I.7 and
/// II.4–II.7 with `(x, y)` fixed. When a cap is slack by more than `tol` its
/// multiplier is pinned to zero; otherwise complementarity holds for any
/// value and the objective picks the smallest. The dual bounds are relaxed by
/// `tol / 2` so that round-off in `(x, y)` does not turn an equilibrium into
/// an infeasible system; the returned certificate is re-checked at `tol`.
pub fn recover_multipliers(
    game: &ConstrainedGame,
    x: &[f64],
    y: &[f64],
    tol: f64,
) -> Result<EquilibriumCertificate> {
    check_dims(game, x, y)?;
    let ay = game.a().mul_vec(y);
    let xb = game.b().vec_mul(x);
    let row_value = dot(x, &ay);
    let col_value = dot(&xb, y);

    // variables: u, v, alpha, beta
    let slack = 0.5 * tol;
    let mut lp = LpProblem::maximize(vec![-1.0, -1.0, 0.0, 0.0]).free(2).free(3);
    for (i, &p) in ay.iter().enumerate() {
        lp = lp.le(vec![-game.r()[i], 0.0, -1.0, 0.0], slack - p);
    }
    for (k, &p) in xb.iter().enumerate() {
        lp = lp.le(vec![0.0, -game.j()[k], 0.0, -1.0], slack - p);
    }
    lp = lp.eq(vec![game.r_ave(), 0.0, 1.0, 0.0], row_value);
    lp = lp.eq(vec![0.0, game.j_ave(), 0.0, 1.0], col_value);
    if dot(game.r(), x) < game.r_ave() - tol {
        lp = lp.eq(vec![1.0, 0.0, 0.0, 0.0], 0.0);
    }
    if dot(game.j(), y) < game.j_ave() - tol {
        lp = lp.eq(vec![0.0, 1.0, 0.0, 0.0], 0.0);
    }

    let sol = lp_solve(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::NotAnEquilibrium);
    }
    let cert = EquilibriumCertificate {
        x: x.to_vec(),
        y: y.to_vec(),
        u: sol.z[0],
        v: sol.z[1],
        alpha: sol.z[2],
        beta: sol.z[3],
    };
    if kkt_check(game, &cert, tol)?.pass {
        Ok(cert)
    } else {
        Err(Error::NotAnEquilibrium)
    }
}

/// Equilibrium payoffs read off the multipliers: `(u·r_ave + α, v·j_ave + β)`.
pub fn equilibrium_payoffs_from_multipliers(game: &ConstrainedGame, cert: &EquilibriumCertificate) -> (f64, f64) {
    (
        cert.u * game.r_ave() + cert.alpha,
        cert.v * game.j_ave() + cert.beta,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::expected_payoffs;

    #[test]
    fn matching_pennies_certificate_passes_exactly() {
        let r = kkt_check(&fixtures::matching_pennies(), &fixtures::mp_certificate(), 1e-8).unwrap();
        assert!(r.pass);
        assert_eq!(r.max_residual, 0.0);
        assert_eq!(r.passed(), 14);
    }

    #[test]
    fn jx_certificate_passes() {
        let r = kkt_check(&fixtures::jx_game(), &fixtures::jx_certificate(), 1e-12).unwrap();
        assert!(r.pass, "{:?}", r);
        assert!(r.max_residual <= 1e-12);
        // (II.4) is tight: xᵀD − v j − β = (0, 0, 0, −1).
        assert_eq!(r.get(Player::Col, ConditionKind::DualBound).residual, 0.0);
    }

    #[test]
    fn perturbed_row_strategy_fails_dual_bound() {
        let mut cert = fixtures::mp_certificate();
        cert.x = vec![0.6, 0.4];
        let r = kkt_check(&fixtures::matching_pennies(), &cert, 1e-8).unwrap();
        assert!(!r.pass);
        let failed: Vec<_> = r.failures().map(|f| f.condition).collect();
        assert_eq!(
            failed,
            vec![Condition {
                player: Player::Col,
                kind: ConditionKind::DualBound
            }]
        );
        assert!((r.get(Player::Col, ConditionKind::DualBound).residual - 0.2).abs() < 1e-12);
    }

    #[test]
    fn labels() {
        let c = Condition {
            player: Player::Col,
            kind: ConditionKind::MultiplierSign,
        };
        assert_eq!(alloc::format!("{}", c), "II.7");
    }

    #[test]
    fn recovery_examples() {
        let mp = fixtures::matching_pennies();
        let c = recover_multipliers(&mp, &[0.5, 0.5], &[0.5, 0.5], 1e-9).unwrap();
        assert_eq!((c.u, c.v, c.alpha, c.beta), (0.0, 0.0, 0.0, 0.0));

        let jx = fixtures::jx_game();
        let c = recover_multipliers(&jx, &[0.5, 0.5, 0.0], &[0.25, 0.25, 0.5, 0.0], 1e-9).unwrap();
        // The dual bounds are relaxed by the tolerance, so v may sit just below 1/2.
        assert!(c.u.abs() < 1e-8);
        assert!((c.v - 0.5).abs() < 1e-8);
        assert!((c.alpha - 1.0).abs() < 1e-8);
        assert!(c.beta.abs() < 1e-8);

        assert_eq!(
            recover_multipliers(&mp, &[1.0, 0.0], &[1.0, 0.0], 1e-9),
            Err(Error::NotAnEquilibrium)
        );
    }

    #[test]
    fn payoffs_from_multipliers() {
        let mp = fixtures::matching_pennies();
        assert_eq!(equilibrium_payoffs_from_multipliers(&mp, &fixtures::mp_certificate()), (0.0, 0.0));
        let jx = fixtures::jx_game();
        let cert = fixtures::jx_certificate();
        let (a, b) = equilibrium_payoffs_from_multipliers(&jx, &cert);
        assert_eq!((a, b), (1.0, 0.625));
        assert_eq!((a, b), expected_payoffs(&jx, &cert.x, &cert.y).unwrap());

        let mut spec = mp.to_spec();
        spec.r = vec![3.0, 3.0];
        spec.r_ave = 3.0;
        let g = crate::game::validate_game(&spec).unwrap();
        let cert = EquilibriumCertificate {
            u: 2.0,
            alpha: -1.0,
            ..fixtures::mp_certificate()
        };
        assert_eq!(equilibrium_payoffs_from_multipliers(&g, &cert).0, 5.0);
    }
}

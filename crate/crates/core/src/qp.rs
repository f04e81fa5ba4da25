//! The bilinear program whose global maximizers are the equilibria.
//!
//! Over the stacked vector `(x, y, u, v, α, β)` the objective
//! `xᵀ(A+B)y − u·r_ave − v·j_ave − α − β` is nonpositive on the feasible set
//! and equals zero exactly at equilibria, so a feasible point with zero
//! objective is a certificate of global optimality and of equilibrium.

use alloc::vec::Vec;
use core::fmt;

use crate::game::ConstrainedGame;
use crate::kkt::EquilibriumCertificate;
use crate::linalg::{dot, max_of};

/// The decision vector has the same fields as a certificate.
pub type QpPoint = EquilibriumCertificate;

/// Objective value at `p`. Dimensions must match the game.
pub fn qp_objective(game: &ConstrainedGame, p: &QpPoint) -> f64 {
    let sum = game.a().add(game.b());
    sum.bilinear(&p.x, &p.y) - p.u * game.r_ave() - p.v * game.j_ave() - p.alpha - p.beta
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpConstraint {
    /// `A y − u r − α 1 ≤ 0`
    RowDualBound,
    /// `xᵀB − v j − β 1 ≤ 0`
    ColDualBound,
    /// `rᵀx ≤ r_ave`
    RowCap,
    /// `jᵀy ≤ j_ave`
    ColCap,
    /// `1ᵀx = 1`
    RowSimplex,
    /// `1ᵀy = 1`
    ColSimplex,
    /// `x, y, u, v ≥ 0`
    Nonnegativity,
}

impl fmt::Display for QpConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QpConstraint::RowDualBound => "A y - u r - alpha <= 0",
            QpConstraint::ColDualBound => "x^T B - v j - beta <= 0",
            QpConstraint::RowCap => "r^T x <= r_ave",
            QpConstraint::ColCap => "j^T y <= j_ave",
            QpConstraint::RowSimplex => "1^T x = 1",
            QpConstraint::ColSimplex => "1^T y = 1",
            QpConstraint::Nonnegativity => "x, y, u, v >= 0",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QpViolation {
    pub constraint: QpConstraint,
    /// Which variable broke a sign constraint (`"x"`, `"y"`, `"u"`, `"v"`);
    /// empty for the other groups.
    pub variable: &'static str,
    pub residual: f64,
}

/// Lists every constraint group violated by more than `tol`; empty means feasible.
pub fn qp_feasible(game: &ConstrainedGame, p: &QpPoint, tol: f64) -> Vec<QpViolation> {
    let mut out = Vec::new();
    if p.x.len() != game.rows() || p.y.len() != game.cols() {
        out.push(QpViolation {
            constraint: if p.x.len() != game.rows() {
                QpConstraint::RowSimplex
            } else {
                QpConstraint::ColSimplex
            },
            variable: "",
            residual: f64::INFINITY,
        });
        return out;
    }
    let mut check = |constraint, variable, residual: f64, equality: bool| {
        let bad = if equality { residual.abs() > tol } else { residual > tol };
        if bad || residual.is_nan() {
            out.push(QpViolation {
                constraint,
                variable,
                residual,
            });
        }
    };
    let ay = game.a().mul_vec(&p.y);
    let row_bound = ay
        .iter()
        .zip(game.r())
        .map(|(&v, &w)| v - p.u * w - p.alpha)
        .fold(f64::NEG_INFINITY, f64::max);
    check(QpConstraint::RowDualBound, "", row_bound, false);
    let xb = game.b().vec_mul(&p.x);
    let col_bound = xb
        .iter()
        .zip(game.j())
        .map(|(&v, &w)| v - p.v * w - p.beta)
        .fold(f64::NEG_INFINITY, f64::max);
    check(QpConstraint::ColDualBound, "", col_bound, false);
    check(QpConstraint::RowCap, "", dot(game.r(), &p.x) - game.r_ave(), false);
    check(QpConstraint::ColCap, "", dot(game.j(), &p.y) - game.j_ave(), false);
    check(QpConstraint::RowSimplex, "", p.x.iter().sum::<f64>() - 1.0, true);
    check(QpConstraint::ColSimplex, "", p.y.iter().sum::<f64>() - 1.0, true);
    let neg_x = max_of(&p.x.iter().map(|v| -v).collect::<Vec<_>>());
    let neg_y = max_of(&p.y.iter().map(|v| -v).collect::<Vec<_>>());
    check(QpConstraint::Nonnegativity, "x", neg_x, false);
    check(QpConstraint::Nonnegativity, "y", neg_y, false);
    check(QpConstraint::Nonnegativity, "u", -p.u, false);
    check(QpConstraint::Nonnegativity, "v", -p.v, false);
    out
}

/// True iff `p` is feasible and its objective is zero, both within `tol`.
/// Such a point is a global maximizer, and its `(x, y)` is an equilibrium.
pub fn certify_global(game: &ConstrainedGame, p: &QpPoint, tol: f64) -> bool {
    qp_feasible(game, p, tol).is_empty() && qp_objective(game, p).abs() <= tol
}

//! Constrained bimatrix games.
//!
//! A constrained bimatrix game pairs two payoff matrices with a linear
//! average-cost cap on each player's mixed strategy. This crate verifies
//! candidate equilibria against the first-order optimality conditions of the
//! two best-response linear programs, computes equilibria through the
//! equivalent bilinear program whose global optimum value is zero, and models
//! a packetized AWGN link attacked by a power-limited jammer.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line driver live in the companion `cbgame` crate.
#![no_std]

extern crate alloc;

pub mod error;
pub mod fixtures;
pub mod game;
pub mod jamming;
pub mod kkt;
pub mod linalg;
pub mod lp;
pub mod qp;
pub mod response;
pub mod solver;

pub use error::{Error, Result};
pub use game::{
    existence_condition, expected_payoffs, feasible_strategy, is_properly_constrained,
    validate_game, ConstrainedGame, GameSpec, MixedStrategy, StrategyProfile, DEFAULT_FEAS_TOL,
};
pub use kkt::{
    equilibrium_payoffs_from_multipliers, kkt_check, kkt_check_scaled, recover_multipliers,
    Condition, ConditionRecord, EquilibriumCertificate, KktReport, DEFAULT_KKT_TOL,
};
pub use linalg::Matrix;
pub use lp::{lp_solve, Bound, LpProblem, LpSolution, LpStatus};
pub use qp::{certify_global, qp_feasible, qp_objective, QpConstraint, QpPoint, QpViolation};
pub use response::{best_response_col, best_response_row, nash_gap, security_level_col, security_level_row};
pub use solver::{
    solve, solve_iterative, solve_support_enumeration, CertifiedEquilibrium, Diagnostics, Method,
    Mode, SolveOptions, SolveResult,
};

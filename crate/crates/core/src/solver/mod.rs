//! Equilibrium computation.
//!
//! The underlying bilinear program is nonconvex, so instead of a general
//! nonconvex solver every candidate is checked against the zero-objective
//! certificate. Support enumeration is exact for nondegenerate small games;
//! the iterative path is a seeded heuristic whose answers are certified the
//! same way and which may come back empty.

mod enumerate;
mod iterative;
pub mod sampling;

use alloc::vec::Vec;
use core::cmp::Ordering;

pub use enumerate::solve_support_enumeration;
pub use iterative::solve_iterative;

use crate::error::{Error, Result};
use crate::game::{existence_condition, ConstrainedGame};
use crate::kkt::{kkt_check, EquilibriumCertificate, KktReport};
use crate::linalg::{max_norm_dist, max_of};
use crate::qp::{certify_global, qp_objective};

/// Two certificates closer than this (max-norm on `(x, y)`) are the same equilibrium.
pub const DEDUP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Auto,
    Enumerate,
    Iterative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Enumerate,
    Iterative,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Enumerate => "enumerate",
            Method::Iterative => "iterative",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub mode: Mode,
    /// Tolerance for strategy feasibility and multiplier recovery.
    pub tol_feas: f64,
    /// Tolerance every returned certificate is verified at.
    pub tol_cert: f64,
    /// `Auto` enumerates when `m ≤ max_support` and `n ≤ max_support + 1`.
    pub max_support: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Fix `u = 0` when `r_ave > max r` (the row cap can never bind).
    pub reduced_row_unconstrained: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: Mode::Auto,
            tol_feas: 1e-9,
            tol_cert: 1e-7,
            max_support: 6,
            restarts: 64,
            seed: 42,
            reduced_row_unconstrained: false,
        }
    }
}

impl SolveOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tol_feas > 0.0 && self.tol_cert > 0.0) {
            return Err(Error::InvalidOptions("tolerances must be positive"));
        }
        if self.max_support == 0 {
            return Err(Error::InvalidOptions("max_support must be at least 1"));
        }
        Ok(())
    }

    /// Whether the row multiplier is pinned to zero for `game`.
    fn fixes_u(&self, game: &ConstrainedGame) -> bool {
        self.reduced_row_unconstrained && game.r_ave() > max_of(game.r())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedEquilibrium {
    pub certificate: EquilibriumCertificate,
    pub report: KktReport,
    pub qp_objective: f64,
    pub method: Method,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Support pairs visited (enumeration and support polishing).
    pub supports_tried: usize,
    /// Linear systems solved, one per support pair and binding pattern.
    pub systems_solved: usize,
    /// Systems that were singular and went through least squares.
    pub singular_systems: usize,
    /// Singular systems rejected because the least-squares residual was too large.
    pub lsq_rejected: usize,
    /// Smallest residual among rejected least-squares solves.
    pub min_rejected_lsq_residual: Option<f64>,
    pub restarts_used: usize,
    pub best_response_iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// Certified equilibria, sorted lexicographically by `(x, y)`.
    pub equilibria: Vec<CertifiedEquilibrium>,
    pub method: Method,
    pub diagnostics: Diagnostics,
}

impl SolveResult {
    /// `false` is the "no certified solution" outcome.
    pub fn is_certified(&self) -> bool {
        !self.equilibria.is_empty()
    }
}

/// Dispatches on size (`Auto`) or the requested mode. Every returned
/// certificate passes [`kkt_check`] and [`certify_global`] at `tol_cert`.
pub fn solve(game: &ConstrainedGame, opts: &SolveOptions) -> Result<SolveResult> {
    opts.validate()?;
    match opts.mode {
        Mode::Enumerate => solve_support_enumeration(game, opts),
        Mode::Iterative => solve_iterative(game, opts),
        Mode::Auto => {
            if game.rows() <= opts.max_support && game.cols() <= opts.max_support + 1 {
                solve_support_enumeration(game, opts)
            } else {
                solve_iterative(game, opts)
            }
        }
    }
}

fn precheck(game: &ConstrainedGame, opts: &SolveOptions) -> Result<()> {
    opts.validate()?;
    if !existence_condition(game) {
        return Err(Error::EmptyFeasibleSet);
    }
    Ok(())
}

/// Accumulates certified equilibria without duplicates.
struct Collector<'a> {
    game: &'a ConstrainedGame,
    tol_cert: f64,
    method: Method,
    found: Vec<CertifiedEquilibrium>,
}

impl<'a> Collector<'a> {
    fn new(game: &'a ConstrainedGame, opts: &SolveOptions, method: Method) -> Self {
        Collector {
            game,
            tol_cert: opts.tol_cert,
            method,
            found: Vec::new(),
        }
    }

    fn contains(&self, cert: &EquilibriumCertificate) -> bool {
        self.found.iter().any(|e| {
            max_norm_dist(&e.certificate.x, &cert.x) < DEDUP_TOL && max_norm_dist(&e.certificate.y, &cert.y) < DEDUP_TOL
        })
    }

    /// Verifies `cert`; returns whether it is a certified equilibrium.
    fn offer(&mut self, mut cert: EquilibriumCertificate) -> bool {
        snap(&mut cert);
        let Ok(report) = kkt_check(self.game, &cert, self.tol_cert) else {
            return false;
        };
        if !report.pass || !certify_global(self.game, &cert, self.tol_cert) {
            return false;
        }
        if !self.contains(&cert) {
            let qp_objective = qp_objective(self.game, &cert);
            self.found.push(CertifiedEquilibrium {
                certificate: cert,
                report,
                qp_objective,
                method: self.method,
            });
        }
        true
    }

    fn finish(mut self, diagnostics: Diagnostics) -> SolveResult {
        self.found.sort_by(|a, b| lex(&a.certificate, &b.certificate));
        SolveResult {
            equilibria: self.found,
            method: self.method,
            diagnostics,
        }
    }
}

/// Flushes round-off dust (`|v| < 1e-14`) to zero.
fn snap(cert: &mut EquilibriumCertificate) {
    let dust = |v: &mut f64| {
        if v.abs() < 1e-14 {
            *v = 0.0;
        }
    };
    cert.x.iter_mut().for_each(dust);
    cert.y.iter_mut().for_each(dust);
    dust(&mut cert.u);
    dust(&mut cert.v);
    dust(&mut cert.alpha);
    dust(&mut cert.beta);
}

fn lex(a: &EquilibriumCertificate, b: &EquilibriumCertificate) -> Ordering {
    a.x.iter()
        .chain(&a.y)
        .zip(b.x.iter().chain(&b.y))
        .map(|(p, q)| p.total_cmp(q))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

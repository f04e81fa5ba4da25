//! Constrained bimatrix games, mixed strategies and the feasibility checks on
//! the capped strategy sets.
//!
//! Player one (the row player) chooses `x` from the probability simplex
//! intersected with `rᵀx ≤ r_ave`; player two chooses `y` from the simplex
//! intersected with `jᵀy ≤ j_ave`. Weights are not required to be sorted.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, max_of, min_of, Matrix};

/// Absolute tolerance used for probability-vector and cap checks.
pub const DEFAULT_FEAS_TOL: f64 = 1e-9;

/// Unvalidated game description, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
    pub r: Vec<f64>,
    pub j: Vec<f64>,
    pub r_ave: f64,
    pub j_ave: f64,
}

/// A validated game `(A, B, r, j, r_ave, j_ave)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedGame {
    a: Matrix,
    b: Matrix,
    r: Vec<f64>,
    j: Vec<f64>,
    r_ave: f64,
    j_ave: f64,
}

impl ConstrainedGame {
    pub fn new(a: Matrix, b: Matrix, r: Vec<f64>, j: Vec<f64>, r_ave: f64, j_ave: f64) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::Empty { field: "A" });
        }
        if b.rows() != a.rows() {
            return Err(Error::DimensionMismatch {
                field: "B",
                expected: a.rows(),
                found: b.rows(),
            });
        }
        if b.cols() != a.cols() {
            return Err(Error::DimensionMismatch {
                field: "B",
                expected: a.cols(),
                found: b.cols(),
            });
        }
        if r.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                field: "r",
                expected: a.rows(),
                found: r.len(),
            });
        }
        if j.len() != a.cols() {
            return Err(Error::DimensionMismatch {
                field: "j",
                expected: a.cols(),
                found: j.len(),
            });
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry { field: "A" });
        }
        if b.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry { field: "B" });
        }
        check_weights("r", &r)?;
        check_weights("j", &j)?;
        check_cap("r_ave", r_ave)?;
        check_cap("j_ave", j_ave)?;
        Ok(ConstrainedGame { a, b, r, j, r_ave, j_ave })
    }

    /// Game with caps equal to the largest weights, i.e. a standard bimatrix game.
    pub fn unconstrained(a: Matrix, b: Matrix) -> Result<Self> {
        let (m, n) = (a.rows(), a.cols());
        Self::new(a, b, alloc::vec![1.0; m], alloc::vec![1.0; n], 1.0, 1.0)
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn j(&self) -> &[f64] {
        &self.j
    }

    pub fn r_ave(&self) -> f64 {
        self.r_ave
    }

    pub fn j_ave(&self) -> f64 {
        self.j_ave
    }

    /// Number of row-player actions.
    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    /// Number of column-player actions.
    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// Same game with a different column cap.
    pub fn with_j_ave(&self, j_ave: f64) -> Result<Self> {
        check_cap("j_ave", j_ave)?;
        Ok(ConstrainedGame { j_ave, ..self.clone() })
    }

    pub fn to_spec(&self) -> GameSpec {
        GameSpec {
            a: self.a.to_rows(),
            b: self.b.to_rows(),
            r: self.r.clone(),
            j: self.j.clone(),
            r_ave: self.r_ave,
            j_ave: self.j_ave,
        }
    }
}

fn check_weights(field: &'static str, w: &[f64]) -> Result<()> {
    for (index, &v) in w.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteEntry { field });
        }
        if v < 0.0 {
            return Err(Error::NegativeWeight { field, index });
        }
    }
    Ok(())
}

fn check_cap(field: &'static str, cap: f64) -> Result<()> {
    if !cap.is_finite() {
        return Err(Error::NonFiniteEntry { field });
    }
    if cap < 0.0 {
        return Err(Error::NegativeWeight { field, index: 0 });
    }
    Ok(())
}

/// Validates a raw description into a [`ConstrainedGame`].
pub fn validate_game(spec: &GameSpec) -> Result<ConstrainedGame> {
    let a = matrix_field("A", &spec.a)?;
    let b = matrix_field("B", &spec.b)?;
    ConstrainedGame::new(a, b, spec.r.clone(), spec.j.clone(), spec.r_ave, spec.j_ave)
}

fn matrix_field(field: &'static str, rows: &[Vec<f64>]) -> Result<Matrix> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::Empty { field });
    }
    for row in rows {
        if row.len() != rows[0].len() {
            return Err(Error::DimensionMismatch {
                field,
                expected: rows[0].len(),
                found: row.len(),
            });
        }
    }
    Ok(Matrix::from_rows(rows).expect("rows checked for equal length"))
}

/// A probability vector over one player's actions.
///
/// Construction validates and never renormalizes.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy(Vec<f64>);

impl MixedStrategy {
    pub fn new(p: Vec<f64>, tol: f64) -> Result<Self> {
        check_probability(&p, tol)?;
        Ok(MixedStrategy(p))
    }

    /// Wraps a vector without validation. Solver internals use this for
    /// intermediate points that are verified later.
    pub fn from_vec_unchecked(p: Vec<f64>) -> Self {
        MixedStrategy(p)
    }

    /// The pure strategy `e_index` over `len` actions.
    pub fn pure(len: usize, index: usize) -> Self {
        let mut p = alloc::vec![0.0; len];
        p[index] = 1.0;
        MixedStrategy(p)
    }

    pub fn uniform(len: usize) -> Self {
        MixedStrategy(alloc::vec![1.0 / len as f64; len])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Indices with probability above `tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &p)| p > tol).map(|(i, _)| i).collect()
    }
}

impl core::ops::Deref for MixedStrategy {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn check_probability(p: &[f64], tol: f64) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidStrategy { reason: "empty vector" });
    }
    if p.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidStrategy {
            reason: "non-finite entry",
        });
    }
    if p.iter().any(|&v| v < -tol || v > 1.0 + tol) {
        return Err(Error::InvalidStrategy {
            reason: "entry outside [0, 1]",
        });
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(Error::InvalidStrategy {
            reason: "entries do not sum to 1",
        });
    }
    Ok(())
}

/// A strategy pair checked against a game's dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile {
    pub x: MixedStrategy,
    pub y: MixedStrategy,
}

impl StrategyProfile {
    pub fn new(game: &ConstrainedGame, x: MixedStrategy, y: MixedStrategy) -> Result<Self> {
        check_len("x", game.rows(), x.len())?;
        check_len("y", game.cols(), y.len())?;
        Ok(StrategyProfile { x, y })
    }
}

pub(crate) fn check_len(field: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { field, expected, found });
    }
    Ok(())
}

/// True iff `p` is a probability vector and `wᵀp ≤ cap` (both within `tol`).
pub fn feasible_strategy(w: &[f64], cap: f64, p: &[f64], tol: f64) -> Result<bool> {
    check_len("p", w.len(), p.len())?;
    Ok(check_probability(p, tol).is_ok() && dot(w, p) <= cap + tol)
}

/// `(xᵀA y, xᵀB y)`.
pub fn expected_payoffs(game: &ConstrainedGame, x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    check_len("x", game.rows(), x.len())?;
    check_len("y", game.cols(), y.len())?;
    Ok((game.a.bilinear(x, y), game.b.bilinear(x, y)))
}

/// True iff at least one cap actually removes strategies.
pub fn is_properly_constrained(game: &ConstrainedGame) -> bool {
    game.r_ave < max_of(&game.r) || game.j_ave < max_of(&game.j)
}

/// Sufficient condition for an equilibrium to exist: each cap admits at least
/// the cheapest action.
pub fn existence_condition(game: &ConstrainedGame) -> bool {
    game.r_ave >= min_of(&game.r) && game.j_ave >= min_of(&game.j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    #[test]
    fn matching_pennies_is_valid() {
        let g = fixtures::matching_pennies();
        assert_eq!((g.rows(), g.cols()), (2, 2));
        assert!(!is_properly_constrained(&g));
        assert!(existence_condition(&g));
    }

    #[test]
    fn r_length_mismatch() {
        let mut spec = fixtures::matching_pennies().to_spec();
        spec.r = vec![1.0, 1.0, 1.0];
        assert_eq!(
            validate_game(&spec),
            Err(Error::DimensionMismatch {
                field: "r",
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn negative_weight() {
        let mut spec = fixtures::matching_pennies().to_spec();
        spec.r = vec![1.0, -1.0];
        assert_eq!(
            validate_game(&spec),
            Err(Error::NegativeWeight { field: "r", index: 1 })
        );
    }

    #[test]
    fn non_finite_and_ragged() {
        let mut spec = fixtures::matching_pennies().to_spec();
        spec.b[0][1] = f64::NAN;
        assert_eq!(validate_game(&spec), Err(Error::NonFiniteEntry { field: "B" }));
        let mut spec = fixtures::matching_pennies().to_spec();
        spec.a[1].push(0.0);
        assert!(matches!(
            validate_game(&spec),
            Err(Error::DimensionMismatch { field: "A", .. })
        ));
        let mut spec = fixtures::matching_pennies().to_spec();
        spec.j_ave = f64::INFINITY;
        assert_eq!(validate_game(&spec), Err(Error::NonFiniteEntry { field: "j_ave" }));
    }

    #[test]
    fn feasibility_examples() {
        assert!(feasible_strategy(&[1.0, 2.0], 1.5, &[0.5, 0.5], 1e-9).unwrap());
        assert!(!feasible_strategy(&[1.0, 2.0], 1.4, &[0.5, 0.5], 1e-9).unwrap());
        assert!(feasible_strategy(&[0.0, 1.0, 2.0, 4.0], 1.25, &[0.25, 0.25, 0.5, 0.0], 1e-9).unwrap());
        assert!(!feasible_strategy(&[1.0, 2.0], 5.0, &[0.5, 0.4], 1e-9).unwrap());
        assert!(feasible_strategy(&[1.0], 1.0, &[1.0, 0.0], 1e-9).is_err());
    }

    #[test]
    fn payoff_examples() {
        let mp = fixtures::matching_pennies();
        assert_eq!(expected_payoffs(&mp, &[1.0, 0.0], &[0.0, 1.0]).unwrap(), (-1.0, 1.0));
        assert_eq!(expected_payoffs(&mp, &[0.5, 0.5], &[0.5, 0.5]).unwrap(), (0.0, 0.0));
        let jx = fixtures::jx_game();
        let (a, b) = expected_payoffs(&jx, &[0.5, 0.5, 0.0], &[0.25, 0.25, 0.5, 0.0]).unwrap();
        assert!((a - 1.0).abs() < 1e-15 && (b - 0.625).abs() < 1e-15);
    }

    #[test]
    fn constrained_and_existence() {
        assert!(is_properly_constrained(&fixtures::jx_game()));
        assert!(existence_condition(&fixtures::jx_game()));
        let mut spec = fixtures::matching_pennies().to_spec();
        spec.r_ave = 1.0 - 1e-3;
        assert!(is_properly_constrained(&validate_game(&spec).unwrap()));
        spec.r = vec![2.0, 3.0];
        spec.r_ave = 1.0;
        assert!(!existence_condition(&validate_game(&spec).unwrap()));
    }

    #[test]
    fn mixed_strategy_rejects_rather_than_renormalizes() {
        assert!(MixedStrategy::new(vec![0.5, 0.4], 1e-9).is_err());
        assert!(MixedStrategy::new(vec![1.2, -0.2], 1e-9).is_err());
        assert_eq!(MixedStrategy::new(vec![0.5, 0.5], 1e-9).unwrap().support(0.0), vec![0, 1]);
    }
}

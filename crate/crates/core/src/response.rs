//! Best-response linear programs, the Nash gap and security levels under the
//! average caps.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::game::{check_len, check_probability, ConstrainedGame, MixedStrategy, DEFAULT_FEAS_TOL};
use crate::linalg::{dot, min_of};
use crate::lp::{lp_solve, LpProblem};

/// Maximizes `pᵀ payoff` over `{p ≥ 0, 1ᵀp = 1, wᵀp ≤ cap}`.
fn capped_simplex_max(payoff: &[f64], w: &[f64], cap: f64) -> Result<(MixedStrategy, f64)> {
    if cap < min_of(w) {
        return Err(Error::Infeasible);
    }
    let n = payoff.len();
    let lp = LpProblem::maximize(payoff.to_vec())
        .eq(vec![1.0; n], 1.0)
        .le(w.to_vec(), cap);
    let sol = lp_solve(&lp)?.into_optimal()?;
    let value = dot(payoff, &sol.z);
    Ok((MixedStrategy::from_vec_unchecked(sol.z), value))
}

fn check_opponent(w: &[f64], cap: f64, p: &[f64], field: &'static str) -> Result<()> {
    check_len(field, w.len(), p.len())?;
    check_probability(p, DEFAULT_FEAS_TOL)?;
    let cost = dot(w, p);
    if cost > cap + DEFAULT_FEAS_TOL {
        return Err(Error::CapExceeded { value: cost, cap });
    }
    Ok(())
}

/// Row player's best response to `y`: maximizes `xᵀ(A y)` over the capped simplex.
pub fn best_response_row(game: &ConstrainedGame, y: &[f64]) -> Result<(MixedStrategy, f64)> {
    check_opponent(game.j(), game.j_ave(), y, "y")?;
    capped_simplex_max(&game.a().mul_vec(y), game.r(), game.r_ave())
}

/// Column player's best response to `x`: maximizes `(xᵀB) y` over the capped simplex.
pub fn best_response_col(game: &ConstrainedGame, x: &[f64]) -> Result<(MixedStrategy, f64)> {
    check_opponent(game.r(), game.r_ave(), x, "x")?;
    capped_simplex_max(&game.b().vec_mul(x), game.j(), game.j_ave())
}

/// Gain available to each player from a unilateral deviation.
///
/// Both gaps are nonnegative up to round-off and vanish exactly at
/// equilibria.
pub fn nash_gap(game: &ConstrainedGame, x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let (_, best_row) = best_response_row(game, y)?;
    let (_, best_col) = best_response_col(game, x)?;
    Ok((best_row - game.a().bilinear(x, y), best_col - game.b().bilinear(x, y)))
}

/// `max_x min_y pᵀ M q` with `p` over a capped simplex (weights `wp`, cap
/// `cp`) and `q` over another (`wq`, `cq`). Returns the maximizer and value.
///
/// The inner minimum is replaced by its LP dual `max t − s·cq` subject to
/// `t − s·wq_k ≤ (pᵀM)_k`, `s ≥ 0`, `t` free.
fn maxmin(m_cols: &[Vec<f64>], wp: &[f64], cp: f64, wq: &[f64], cq: f64) -> Result<(MixedStrategy, f64)> {
    if cp < min_of(wp) || cq < min_of(wq) {
        return Err(Error::Infeasible);
    }
    let np = wp.len();
    // variables: p (np), s, t
    let mut obj = vec![0.0; np + 2];
    obj[np] = -cq;
    obj[np + 1] = 1.0;
    let mut lp = LpProblem::maximize(obj).free(np + 1);
    let mut simplex = vec![1.0; np];
    simplex.extend([0.0, 0.0]);
    lp = lp.eq(simplex, 1.0);
    let mut cap = wp.to_vec();
    cap.extend([0.0, 0.0]);
    lp = lp.le(cap, cp);
    for (k, col) in m_cols.iter().enumerate() {
        let mut row: Vec<f64> = col.iter().map(|v| -v).collect();
        row.push(-wq[k]);
        row.push(1.0);
        lp = lp.le(row, 0.0);
    }
    let sol = lp_solve(&lp)?.into_optimal()?;
    let p = sol.z[..np].to_vec();
    Ok((MixedStrategy::from_vec_unchecked(p), sol.value))
}

/// Row player's security level: `max_{x} min_{y} xᵀA y` under both caps.
pub fn security_level_row(game: &ConstrainedGame) -> Result<(MixedStrategy, f64)> {
    let a = game.a();
    let cols: Vec<Vec<f64>> = (0..a.cols()).map(|k| (0..a.rows()).map(|i| a.get(i, k)).collect()).collect();
    maxmin(&cols, game.r(), game.r_ave(), game.j(), game.j_ave())
}

/// Column player's security level: `max_{y} min_{x} xᵀB y` under both caps.
pub fn security_level_col(game: &ConstrainedGame) -> Result<(MixedStrategy, f64)> {
    let b = game.b();
    let rows: Vec<Vec<f64>> = (0..b.rows()).map(|i| b.row(i).to_vec()).collect();
    maxmin(&rows, game.j(), game.j_ave(), game.r(), game.r_ave())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::Matrix;

    #[test]
    fn two_variable_vertex() {
        // A y = (2, 1) with y = (1): use a 2x1 game.
        let a = Matrix::from_rows(&[vec![2.0], vec![1.0]]).unwrap();
        let g = ConstrainedGame::new(a.clone(), a, vec![2.0, 1.0], vec![0.0], 1.5, 0.0).unwrap();
        let (x, v) = best_response_row(&g, &[1.0]).unwrap();
        assert!((v - 1.5).abs() < 1e-12);
        assert!((x[0] - 0.5).abs() < 1e-12 && (x[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn jx_best_responses() {
        let g = fixtures::jx_game();
        let (_, v) = best_response_row(&g, &[0.25, 0.25, 0.5, 0.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let (_, v) = best_response_col(&g, &[0.5, 0.5, 0.0]).unwrap();
        assert!((v - 0.625).abs() < 1e-12);
        let (y, v) = best_response_col(&g, &[0.0, 0.0, 1.0]).unwrap();
        assert!((v - 0.3125).abs() < 1e-12);
        assert!(dot(&y, g.j()) <= 1.25 + 1e-12);
    }

    #[test]
    fn matching_pennies_gaps() {
        let g = fixtures::matching_pennies();
        let (_, v) = best_response_row(&g, &[0.5, 0.5]).unwrap();
        assert!(v.abs() < 1e-15);
        let (_, v) = best_response_col(&g, &[0.5, 0.5]).unwrap();
        assert!(v.abs() < 1e-15);
        let (gr, gc) = nash_gap(&g, &[0.5, 0.5], &[0.5, 0.5]).unwrap();
        assert!(gr.abs() < 1e-15 && gc.abs() < 1e-15);
        let (gr, gc) = nash_gap(&g, &[1.0, 0.0], &[1.0, 0.0]).unwrap();
        assert!(gr.abs() < 1e-15);
        assert!((gc - 2.0).abs() < 1e-15);
    }

    #[test]
    fn infeasible_opponent_rejected() {
        let g = fixtures::jx_game();
        assert!(matches!(
            best_response_row(&g, &[0.0, 0.0, 0.0, 1.0]),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            best_response_row(&g, &[0.25, 0.25, 0.4, 0.0]),
            Err(Error::InvalidStrategy { .. })
        ));
    }

    #[test]
    fn empty_feasible_set() {
        let a = Matrix::from_rows(&[vec![1.0], vec![0.0]]).unwrap();
        let g = ConstrainedGame::new(a.clone(), a, vec![2.0, 3.0], vec![0.0], 1.0, 0.0).unwrap();
        assert_eq!(best_response_row(&g, &[1.0]).unwrap_err(), Error::Infeasible);
    }

    #[test]
    fn security_levels_of_jx() {
        // Jammer alone: the top power destroys every packet; budget allows 1.25/4 of it.
        let g = fixtures::jx_game();
        let (_, v) = security_level_col(&g).unwrap();
        assert!((v - 0.3125).abs() < 1e-12);
        // Matching pennies value is zero for both players.
        let mp = fixtures::matching_pennies();
        assert!(security_level_row(&mp).unwrap().1.abs() < 1e-12);
        assert!(security_level_col(&mp).unwrap().1.abs() < 1e-12);
    }
}

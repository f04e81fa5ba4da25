//! Support and binding-pattern enumeration.
//!
//! For supports `S_x`, `S_y` and a choice, per player, of "multiplier is zero"
//! or "cap is tight", the equilibrium conditions restricted to the supports
//! form a square linear system in `(x_S, y_S, u, v, α, β)`:
//!
//! * `(A y)_i − u r_i − α = 0` for `i ∈ S_x`
//! * `(xᵀB)_k − v j_k − β = 0` for `k ∈ S_y`
//! * `1ᵀx = 1`, `1ᵀy = 1`
//! * `u = 0` or `rᵀx = r_ave`; `v = 0` or `jᵀy = j_ave`
//!
//! Every solution is then run through the full fourteen-condition check.

use alloc::vec;
use alloc::vec::Vec;

use super::{precheck, Collector, Diagnostics, Method, SolveOptions, SolveResult};
use crate::error::Result;
use crate::game::ConstrainedGame;
use crate::kkt::EquilibriumCertificate;
use crate::linalg::solve_square;

/// Least-squares solutions of singular systems are kept only below this residual.
pub(crate) const LSQ_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pattern {
    pub row_tight: bool,
    pub col_tight: bool,
}

pub(crate) fn patterns(fix_u: bool) -> Vec<Pattern> {
    let mut out = Vec::with_capacity(4);
    for row_tight in [false, true] {
        if row_tight && fix_u {
            continue;
        }
        for col_tight in [false, true] {
            out.push(Pattern { row_tight, col_tight });
        }
    }
    out
}

/// Solves the support system; `None` when singular beyond least-squares repair.
pub(crate) fn solve_support_system(
    game: &ConstrainedGame,
    sx: &[usize],
    sy: &[usize],
    pattern: Pattern,
    diag: &mut Diagnostics,
) -> Option<EquilibriumCertificate> {
    let (a, b) = (game.a(), game.b());
    let (px, py) = (sx.len(), sy.len());
    let n = px + py + 4;
    let (iu, iv, ialpha, ibeta) = (px + py, px + py + 1, px + py + 2, px + py + 3);
    let mut m = vec![0.0; n * n];
    let mut rhs = vec![0.0; n];
    let mut row = 0;
    for &i in sx {
        for (c, &k) in sy.iter().enumerate() {
            m[row * n + px + c] = a.get(i, k);
        }
        m[row * n + iu] = -game.r()[i];
        m[row * n + ialpha] = -1.0;
        row += 1;
    }
    for &k in sy {
        for (c, &i) in sx.iter().enumerate() {
            m[row * n + c] = b.get(i, k);
        }
        m[row * n + iv] = -game.j()[k];
        m[row * n + ibeta] = -1.0;
        row += 1;
    }
    for c in 0..px {
        m[row * n + c] = 1.0;
    }
    rhs[row] = 1.0;
    row += 1;
    for c in 0..py {
        m[row * n + px + c] = 1.0;
    }
    rhs[row] = 1.0;
    row += 1;
    if pattern.row_tight {
        for (c, &i) in sx.iter().enumerate() {
            m[row * n + c] = game.r()[i];
        }
        rhs[row] = game.r_ave();
    } else {
        m[row * n + iu] = 1.0;
    }
    row += 1;
    if pattern.col_tight {
        for (c, &k) in sy.iter().enumerate() {
            m[row * n + px + c] = game.j()[k];
        }
        rhs[row] = game.j_ave();
    } else {
        m[row * n + iv] = 1.0;
    }

    diag.systems_solved += 1;
    let sol = solve_square(n, &m, &rhs);
    if sol.least_squares {
        diag.singular_systems += 1;
        if sol.residual >= LSQ_RESIDUAL_TOL {
            diag.lsq_rejected += 1;
            diag.min_rejected_lsq_residual = Some(
                diag.min_rejected_lsq_residual
                    .map_or(sol.residual, |r| r.min(sol.residual)),
            );
            return None;
        }
    }
    let z = sol.solution;
    let mut x = vec![0.0; game.rows()];
    let mut y = vec![0.0; game.cols()];
    for (c, &i) in sx.iter().enumerate() {
        x[i] = z[c];
    }
    for (c, &k) in sy.iter().enumerate() {
        y[k] = z[px + c];
    }
    Some(EquilibriumCertificate {
        x,
        y,
        u: z[iu],
        v: z[iv],
        alpha: z[ialpha],
        beta: z[ibeta],
    })
}

/// All `size`-element subsets of `0..len` in lexicographic order.
fn combinations(len: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 || size > len {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.clone());
        let Some(p) = (0..size).rev().find(|&p| idx[p] < len - size + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..size {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Enumerates every support pair and binding pattern; returns all certified
/// equilibria. Complete for nondegenerate games. Visiting order is by total
/// support size, then row-support size, then lexicographic; the output is
/// sorted lexicographically by `(x, y)`.
pub fn solve_support_enumeration(game: &ConstrainedGame, opts: &SolveOptions) -> Result<SolveResult> {
    precheck(game, opts)?;
    let (m, n) = (game.rows(), game.cols());
    let pats = patterns(opts.fixes_u(game));
    let mut diag = Diagnostics::default();
    let mut found = Collector::new(game, opts, Method::Enumerate);
    let row_sets: Vec<Vec<Vec<usize>>> = (0..=m).map(|s| combinations(m, s)).collect();
    let col_sets: Vec<Vec<Vec<usize>>> = (0..=n).map(|s| combinations(n, s)).collect();

    for total in 2..=m + n {
        for px in 1..=m.min(total - 1) {
            let py = total - px;
            if py > n {
                continue;
            }
            for sx in &row_sets[px] {
                for sy in &col_sets[py] {
                    diag.supports_tried += 1;
                    for &pat in &pats {
                        if let Some(cert) = solve_support_system(game, sx, sy, pat, &mut diag) {
                            if cert.x.iter().chain(&cert.y).all(|&p| p >= -opts.tol_feas) {
                                found.offer(cert);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(found.finish(diag))
}

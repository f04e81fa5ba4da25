//! Multi-start best-response dynamics with certified polishing.
//!
//! Each restart samples a feasible profile, alternates the two best-response
//! LPs until a fixed point or a cycle (or the iteration cap), and then tries
//! to certify (a) the final profile and (b) the average over the detected
//! cycle. If neither certifies, the supports of the cycle average seed a short
//! walk over support systems that drops negative entries and adds the most
//! profitable missing action. Only certified points are returned, so the
//! result may be empty.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::enumerate::{patterns, solve_support_system, Pattern};
use super::sampling::sample_feasible;
use super::{precheck, Collector, Diagnostics, Method, SolveOptions, SolveResult};
use crate::error::Result;
use crate::game::ConstrainedGame;
use crate::kkt::{kkt_check, recover_multipliers};
use crate::linalg::max_norm_dist;
use crate::response::{best_response_col, best_response_row};

pub const MAX_BR_ITERATIONS: usize = 200;
const SAME_POINT: f64 = 1e-12;

pub fn solve_iterative(game: &ConstrainedGame, opts: &SolveOptions) -> Result<SolveResult> {
    precheck(game, opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut diag = Diagnostics::default();
    let mut found = Collector::new(game, opts, Method::Iterative);
    let pats = patterns(opts.fixes_u(game));

    for _ in 0..opts.restarts {
        diag.restarts_used += 1;
        let x0 = sample_feasible(&mut rng, game.r(), game.r_ave());
        let y0 = sample_feasible(&mut rng, game.j(), game.j_ave());
        let (last, average) = dynamics(game, x0, y0, &mut diag)?;

        let mut certified = false;
        for (x, y) in [&last, &average] {
            if let Ok(cert) = recover_multipliers(game, x, y, opts.tol_feas) {
                certified |= found.offer(cert);
            }
        }
        if !certified {
            let sx = support(&average.0);
            let sy = support(&average.1);
            if let Some(cert) = support_walk(game, opts, &pats, sx, sy, &mut diag) {
                found.offer(cert);
            }
        }
    }
    Ok(found.finish(diag))
}

type Profile = (Vec<f64>, Vec<f64>);

/// Alternating best responses. Returns the final profile and the average over
/// the terminal cycle (the fixed point itself when the dynamics settle).
fn dynamics(game: &ConstrainedGame, x0: Vec<f64>, y0: Vec<f64>, diag: &mut Diagnostics) -> Result<(Profile, Profile)> {
    let mut history: Vec<Profile> = vec![(x0, y0)];
    for _ in 0..MAX_BR_ITERATIONS {
        diag.best_response_iterations += 1;
        let y_prev = &history[history.len() - 1].1;
        let (x, _) = best_response_row(game, y_prev)?;
        let (y, _) = best_response_col(game, &x)?;
        let (x, y) = (x.into_vec(), y.into_vec());
        let repeat = history
            .iter()
            .rposition(|(hx, hy)| max_norm_dist(hx, &x) <= SAME_POINT && max_norm_dist(hy, &y) <= SAME_POINT);
        if let Some(start) = repeat {
            let cycle = &history[start..];
            return Ok(((x, y), average(cycle)));
        }
        history.push((x, y));
    }
    let tail = &history[history.len() / 2..];
    let last = history.last().cloned().expect("history is never empty");
    Ok((last, average(tail)))
}

fn average(profiles: &[Profile]) -> Profile {
    let k = profiles.len() as f64;
    let mut ax = vec![0.0; profiles[0].0.len()];
    let mut ay = vec![0.0; profiles[0].1.len()];
    for (x, y) in profiles {
        ax.iter_mut().zip(x).for_each(|(a, v)| *a += v / k);
        ay.iter_mut().zip(y).for_each(|(a, v)| *a += v / k);
    }
    (ax, ay)
}

fn support(p: &[f64]) -> Vec<usize> {
    let s: Vec<usize> = (0..p.len()).filter(|&i| p[i] > 1e-9).collect();
    if s.is_empty() {
        vec![0]
    } else {
        s
    }
}

/// Local search over support pairs starting from `(sx, sy)`.
fn support_walk(
    game: &ConstrainedGame,
    opts: &SolveOptions,
    pats: &[Pattern],
    mut sx: Vec<usize>,
    mut sy: Vec<usize>,
    diag: &mut Diagnostics,
) -> Option<crate::kkt::EquilibriumCertificate> {
    let max_steps = 2 * (game.rows() + game.cols());
    let mut visited: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for _ in 0..max_steps {
        if visited.iter().any(|(a, b)| *a == sx && *b == sy) {
            return None;
        }
        visited.push((sx.clone(), sy.clone()));
        diag.supports_tried += 1;

        let mut best: Option<(f64, crate::kkt::EquilibriumCertificate)> = None;
        for &pat in pats {
            let Some(cert) = solve_support_system(game, &sx, &sy, pat, diag) else {
                continue;
            };
            let Ok(report) = kkt_check(game, &cert, opts.tol_cert) else {
                continue;
            };
            if report.pass && crate::qp::certify_global(game, &cert, opts.tol_cert) {
                return Some(cert);
            }
            if best.as_ref().is_none_or(|(r, _)| report.max_residual < *r) {
                best = Some((report.max_residual, cert));
            }
        }
        let (_, cert) = best?;
        let tol = opts.tol_cert;
        let (nx, ny) = (
            adjust(&sx, &cert.x, &row_slack(game, &cert), tol),
            adjust(&sy, &cert.y, &col_slack(game, &cert), tol),
        );
        if nx == sx && ny == sy {
            return None;
        }
        sx = nx;
        sy = ny;
    }
    None
}

/// `(A y)_i − u r_i − α` for every row.
fn row_slack(game: &ConstrainedGame, c: &crate::kkt::EquilibriumCertificate) -> Vec<f64> {
    game.a()
        .mul_vec(&c.y)
        .iter()
        .zip(game.r())
        .map(|(p, w)| p - c.u * w - c.alpha)
        .collect()
}

/// `(xᵀB)_k − v j_k − β` for every column.
fn col_slack(game: &ConstrainedGame, c: &crate::kkt::EquilibriumCertificate) -> Vec<f64> {
    game.b()
        .vec_mul(&c.x)
        .iter()
        .zip(game.j())
        .map(|(p, w)| p - c.v * w - c.beta)
        .collect()
}

/// Drops support entries with negative mass and adds the most violated
/// outside action; keeps at least one action.
fn adjust(s: &[usize], p: &[f64], slack: &[f64], tol: f64) -> Vec<usize> {
    let mut out: Vec<usize> = s.iter().copied().filter(|&i| p[i] >= -tol).collect();
    let entering = (0..slack.len())
        .filter(|i| !s.contains(i) && slack[*i] > tol)
        .fold(None, |best: Option<usize>, i| match best {
            Some(b) if slack[b] >= slack[i] => Some(b),
            _ => Some(i),
        });
    if let Some(i) = entering {
        out.push(i);
        out.sort_unstable();
    }
    if out.is_empty() {
        out.push(s[0]);
    }
    out
}

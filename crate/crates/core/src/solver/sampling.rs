//! Seeded sampling of feasible strategies and feasible bilinear-program points.

use alloc::vec::Vec;

use rand::Rng;

use crate::game::ConstrainedGame;
use crate::linalg::{dot, max_of, min_of, Matrix};
use crate::qp::QpPoint;

/// Uniform point on the probability simplex of dimension `len`.
pub fn sample_simplex<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    // Normalized unit exponentials are Dirichlet(1, …, 1).
    let mut p: Vec<f64> = (0..len).map(|_| -libm::log(1.0 - rng.gen::<f64>())).collect();
    let sum: f64 = p.iter().sum();
    if sum > 0.0 {
        p.iter_mut().for_each(|v| *v /= sum);
    } else {
        p.iter_mut().for_each(|v| *v = 1.0 / len as f64);
    }
    p
}

/// Uniform simplex point pulled toward the cheapest action just far enough to
/// satisfy `wᵀp ≤ cap`. Requires `cap ≥ min(w)`.
pub fn sample_feasible<R: Rng + ?Sized>(rng: &mut R, w: &[f64], cap: f64) -> Vec<f64> {
    let mut p = sample_simplex(rng, w.len());
    let cost = dot(w, &p);
    if cost > cap {
        let cheapest = w
            .iter()
            .enumerate()
            .fold(0, |best, (i, &v)| if v < w[best] { i } else { best });
        let wmin = w[cheapest];
        let t = ((cost - cap) / (cost - wmin)).clamp(0.0, 1.0);
        p.iter_mut().for_each(|v| *v *= 1.0 - t);
        p[cheapest] += t;
    }
    p
}

/// A random point satisfying every constraint of the bilinear program.
///
/// `x` and `y` come from [`sample_feasible`]; `u, v` are drawn in `[0, 2)`;
/// `α` and `β` sit at their smallest feasible values plus a random slack in
/// `[0, slack)` (zero slack yields the largest objective for the strategies).
pub fn sample_feasible_point<R: Rng + ?Sized>(rng: &mut R, game: &ConstrainedGame, slack: f64) -> QpPoint {
    let x = sample_feasible(rng, game.r(), game.r_ave());
    let y = sample_feasible(rng, game.j(), game.j_ave());
    let u = 2.0 * rng.gen::<f64>();
    let v = 2.0 * rng.gen::<f64>();
    let ay = game.a().mul_vec(&y);
    let xb = game.b().vec_mul(&x);
    let alpha_min = max_of(&ay.iter().zip(game.r()).map(|(p, w)| p - u * w).collect::<Vec<_>>());
    let beta_min = max_of(&xb.iter().zip(game.j()).map(|(p, w)| p - v * w).collect::<Vec<_>>());
    QpPoint {
        x,
        y,
        u,
        v,
        alpha: alpha_min + slack * rng.gen::<f64>(),
        beta: beta_min + slack * rng.gen::<f64>(),
    }
}

/// A random properly constrained game: payoffs uniform in `[0, 10)`, weights
/// uniform in `[0.5, 2)`, each cap uniform between the smallest and largest
/// weight of its player.
pub fn random_game<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ConstrainedGame {
    let a = Matrix::from_fn(rows, cols, |_, _| 10.0 * rng.gen::<f64>());
    let b = Matrix::from_fn(rows, cols, |_, _| 10.0 * rng.gen::<f64>());
    let r: Vec<f64> = (0..rows).map(|_| 0.5 + 1.5 * rng.gen::<f64>()).collect();
    let j: Vec<f64> = (0..cols).map(|_| 0.5 + 1.5 * rng.gen::<f64>()).collect();
    let r_ave = min_of(&r) + (max_of(&r) - min_of(&r)) * rng.gen::<f64>();
    let j_ave = min_of(&j) + (max_of(&j) - min_of(&j)) * rng.gen::<f64>();
    ConstrainedGame::new(a, b, r, j, r_ave, j_ave).expect("generated game is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn feasible_samples_respect_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w = [0.0, 1.0, 2.0, 4.0];
        for _ in 0..1000 {
            let p = sample_feasible(&mut rng, &w, 0.3);
            assert!(dot(&w, &p) <= 0.3 + 1e-15);
            assert!(p.iter().all(|&v| v >= 0.0));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = sample_simplex(&mut ChaCha8Rng::seed_from_u64(3), 5);
        let b = sample_simplex(&mut ChaCha8Rng::seed_from_u64(3), 5);
        assert_eq!(a, b);
    }
}

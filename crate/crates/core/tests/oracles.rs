//! Solver output against independently computed references.

use cbgame_core::linalg::max_norm_dist;
use cbgame_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Gaussian elimination with partial pivoting; `None` when (near) singular.
fn gauss(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut z = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r][c] * z[c]).sum();
        z[r] = (rhs[r] - s) / m[r][r];
    }
    Some(z)
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// Classical equal-support enumeration for an unconstrained nondegenerate game.
fn classical_equilibria(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<(Vec<f64>, Vec<f64>)> {
    let (m, n) = (a.len(), a[0].len());
    let mut out = Vec::new();
    for sx in subsets(m) {
        for sy in subsets(n).into_iter().filter(|s| s.len() == sx.len()) {
            let k = sx.len();
            // y on sy makes the row player indifferent over sx: unknowns (y_sy, value).
            let mut my = Vec::new();
            let mut ry = Vec::new();
            for &i in &sx {
                let mut row: Vec<f64> = sy.iter().map(|&c| a[i][c]).collect();
                row.push(-1.0);
                my.push(row);
                ry.push(0.0);
            }
            let mut ones = vec![1.0; k];
            ones.push(0.0);
            my.push(ones.clone());
            ry.push(1.0);
            let mut mx = Vec::new();
            let mut rx = Vec::new();
            for &c in &sy {
                let mut row: Vec<f64> = sx.iter().map(|&i| b[i][c]).collect();
                row.push(-1.0);
                mx.push(row);
                rx.push(0.0);
            }
            mx.push(ones);
            rx.push(1.0);
            let (Some(zy), Some(zx)) = (gauss(my, ry), gauss(mx, rx)) else {
                continue;
            };
            if zy[..k].iter().chain(&zx[..k]).any(|&p| p < -1e-12) {
                continue;
            }
            let mut x = vec![0.0; m];
            let mut y = vec![0.0; n];
            for (t, &i) in sx.iter().enumerate() {
                x[i] = zx[t];
            }
            for (t, &c) in sy.iter().enumerate() {
                y[c] = zy[t];
            }
            let (va, vb) = (zy[k], zx[k]);
            let row_ok = (0..m).all(|i| (0..n).map(|c| a[i][c] * y[c]).sum::<f64>() <= va + 1e-10);
            let col_ok = (0..n).all(|c| (0..m).map(|i| b[i][c] * x[i]).sum::<f64>() <= vb + 1e-10);
            if row_ok && col_ok {
                out.push((x, y));
            }
        }
    }
    out
}

#[test]
fn unconstrained_games_match_classical_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let a: Vec<Vec<f64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0.0..10.0)).collect()).collect();
        let b: Vec<Vec<f64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0.0..10.0)).collect()).collect();
        let expected = classical_equilibria(&a, &b);
        let game = ConstrainedGame::unconstrained(
            Matrix::from_rows(&a).unwrap(),
            Matrix::from_rows(&b).unwrap(),
        )
        .unwrap();
        let got = solve(&game, &SolveOptions::default()).unwrap();
        assert_eq!(got.equilibria.len(), expected.len(), "{a:?} {b:?}");
        for (x, y) in &expected {
            assert!(
                got.equilibria.iter().any(|e| max_norm_dist(&e.certificate.x, x) < 1e-9
                    && max_norm_dist(&e.certificate.y, y) < 1e-9),
                "missing {x:?} {y:?}"
            );
        }
    }
}

/// Value of the unconstrained zero-sum game on `a`: `max t` s.t. `(xᵀA)_k ≥ t`.
fn von_neumann_value(a: &[Vec<f64>]) -> f64 {
    let (m, n) = (a.len(), a[0].len());
    let mut obj = vec![0.0; m + 1];
    obj[m] = 1.0;
    let mut lp = LpProblem::maximize(obj).free(m);
    let mut simplex = vec![1.0; m];
    simplex.push(0.0);
    lp = lp.eq(simplex, 1.0);
    for k in 0..n {
        let mut row: Vec<f64> = (0..m).map(|i| a[i][k]).collect();
        row.push(-1.0);
        lp = lp.ge(row, 0.0);
    }
    lp_solve(&lp).unwrap().into_optimal().unwrap().value
}

#[test]
fn zero_sum_equilibria_attain_the_game_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..60 {
        let (m, n) = (2 + trial % 3, 2 + trial % 4);
        let a: Vec<Vec<f64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect()).collect();
        let am = Matrix::from_rows(&a).unwrap();
        let game = ConstrainedGame::unconstrained(am.clone(), am.neg()).unwrap();
        let value = von_neumann_value(&a);
        let result = solve(&game, &SolveOptions::default()).unwrap();
        assert!(result.is_certified());
        for e in &result.equilibria {
            let c = &e.certificate;
            assert!((am.bilinear(&c.x, &c.y) - value).abs() < 1e-8);
            assert!((security_level_row(&game).unwrap().1 - value).abs() < 1e-8);
        }
    }
}

#[test]
fn classical_games() {
    let opts = SolveOptions::default();
    let mp = solve(&fixtures::matching_pennies(), &opts).unwrap();
    assert_eq!(mp.equilibria.len(), 1);
    assert!(max_norm_dist(&mp.equilibria[0].certificate.x, &[0.5, 0.5]) < 1e-9);

    let pd = solve(&fixtures::prisoners_dilemma(), &opts).unwrap();
    assert_eq!(pd.equilibria.len(), 1);
    assert_eq!(pd.equilibria[0].certificate.x, vec![0.0, 1.0]);

    let bos = solve(&fixtures::battle_of_the_sexes(), &opts).unwrap();
    let expected = [
        (vec![0.0, 1.0], vec![0.0, 1.0]),
        (vec![2.0 / 3.0, 1.0 / 3.0], vec![1.0 / 3.0, 2.0 / 3.0]),
        (vec![1.0, 0.0], vec![1.0, 0.0]),
    ];
    assert_eq!(bos.equilibria.len(), 3);
    for (e, (x, y)) in bos.equilibria.iter().zip(&expected) {
        assert!(max_norm_dist(&e.certificate.x, x) < 1e-9);
        assert!(max_norm_dist(&e.certificate.y, y) < 1e-9);
    }
}

#[test]
fn iterative_agrees_with_enumeration_on_small_games() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let game = cbgame_core::solver::sampling::random_game(&mut rng, 3, 3);
        let all = solve_support_enumeration(&game, &SolveOptions::default()).unwrap();
        let some = solve_iterative(&game, &SolveOptions::default()).unwrap();
        for e in &some.equilibria {
            assert!(all.equilibria.iter().any(|f| {
                max_norm_dist(&e.certificate.x, &f.certificate.x) < 1e-6
                    && max_norm_dist(&e.certificate.y, &f.certificate.y) < 1e-6
            }));
        }
    }
}

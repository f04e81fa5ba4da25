//! Dense two-phase primal simplex.
//!
//! Problems here are tiny (a few dozen variables), so the kernel works on a
//! full tableau, uses Bland's rule throughout and never reorders anything
//! based on data-dependent hashing: identical input bits give identical output
//! bits. When several vertices are optimal, the one reached by Bland's rule
//! from the phase-one basis is returned; it is one representative of the
//! optimal face.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::dot;

/// Smallest admissible pivot magnitude.
pub const PIVOT_TOL: f64 = 1e-12;
/// Entries at or below this magnitude are treated as structural zeros.
const ZERO_TOL: f64 = 1e-15;
/// A reduced cost must exceed this to enter the basis.
const OPTIMALITY_TOL: f64 = 1e-11;
/// Phase-one objective below `-FEASIBILITY_TOL` means infeasible.
const FEASIBILITY_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// `z ≥ lower`
    Lower(f64),
    Free,
}

/// `maximize cᵀz` subject to `A_eq z = b_eq`, `A_le z ≤ b_le` and per-variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub eq_rows: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
    pub le_rows: Vec<Vec<f64>>,
    pub le_rhs: Vec<f64>,
    pub bounds: Vec<Bound>,
}

impl LpProblem {
    /// New problem maximizing `objective` with every variable `≥ 0`.
    pub fn maximize(objective: Vec<f64>) -> Self {
        let n = objective.len();
        LpProblem {
            objective,
            eq_rows: Vec::new(),
            eq_rhs: Vec::new(),
            le_rows: Vec::new(),
            le_rhs: Vec::new(),
            bounds: vec![Bound::Lower(0.0); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn eq(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.eq_rows.push(row);
        self.eq_rhs.push(rhs);
        self
    }

    pub fn le(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.le_rows.push(row);
        self.le_rhs.push(rhs);
        self
    }

    pub fn ge(self, row: Vec<f64>, rhs: f64) -> Self {
        let neg = row.into_iter().map(|v| -v).collect();
        self.le(neg, -rhs)
    }

    pub fn free(mut self, var: usize) -> Self {
        self.bounds[var] = Bound::Free;
        self
    }

    pub fn lower(mut self, var: usize, lower: f64) -> Self {
        self.bounds[var] = Bound::Lower(lower);
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::InvalidLp("bounds length differs from objective"));
        }
        if self.eq_rows.len() != self.eq_rhs.len() || self.le_rows.len() != self.le_rhs.len() {
            return Err(Error::InvalidLp("row and right-hand-side counts differ"));
        }
        if self.eq_rows.iter().chain(&self.le_rows).any(|r| r.len() != n) {
            return Err(Error::InvalidLp("constraint row length differs from objective"));
        }
        let finite = self
            .objective
            .iter()
            .chain(self.eq_rows.iter().flatten())
            .chain(self.le_rows.iter().flatten())
            .chain(&self.eq_rhs)
            .chain(&self.le_rhs)
            .all(|v| v.is_finite());
        let bounds_finite = self.bounds.iter().all(|b| match b {
            Bound::Lower(l) => l.is_finite(),
            Bound::Free => true,
        });
        if !finite || !bounds_finite {
            return Err(Error::InvalidLp("non-finite coefficient"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point in the original variables (empty unless optimal).
    pub z: Vec<f64>,
    /// `cᵀz` (zero unless optimal).
    pub value: f64,
    /// Basic columns of the internal standard form, by constraint row.
    pub basis: Vec<usize>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Converts non-optimal outcomes into errors.
    pub fn into_optimal(self) -> Result<LpSolution> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            LpStatus::Infeasible => Err(Error::Infeasible),
            LpStatus::Unbounded => Err(Error::Unbounded),
        }
    }
}

/// How an original variable maps onto standard-form columns.
#[derive(Clone, Copy)]
enum Column {
    Shifted { col: usize, lower: f64 },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// Row-major `rows × (cols + 1)`; the last entry of each row is the rhs.
    t: Vec<f64>,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * (self.cols + 1) + c]
    }

    #[inline]
    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, pr: usize, pc: usize, reduced: &mut [f64]) {
        let w = self.cols + 1;
        let p = self.t[pr * w + pc];
        for c in 0..w {
            self.t[pr * w + c] /= p;
        }
        self.t[pr * w + pc] = 1.0;
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.t[r * w + pc];
            if f != 0.0 {
                for c in 0..w {
                    self.t[r * w + c] -= f * self.t[pr * w + c];
                }
                self.t[r * w + pc] = 0.0;
            }
        }
        let f = reduced[pc];
        if f != 0.0 {
            for c in 0..w {
                reduced[c] -= f * self.t[pr * w + c];
            }
            reduced[pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Reduced costs `c_j − c_Bᵀ B⁻¹ a_j`, plus `−c_Bᵀ B⁻¹ b` in the last slot.
    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d: Vec<f64> = cost.iter().copied().chain(core::iter::once(0.0)).collect();
        for r in 0..self.rows {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for (c, dc) in d.iter_mut().enumerate() {
                    *dc -= cb * self.at(r, c);
                }
            }
        }
        d
    }

    /// Runs Bland's-rule simplex iterations on `reduced` until optimal.
    fn optimize(&mut self, reduced: &mut [f64], allowed: &[bool], pivots: &mut usize) -> Result<LpStatus> {
        loop {
            let entering = (0..self.cols).find(|&c| allowed[c] && reduced[c] > OPTIMALITY_TOL);
            let Some(pc) = entering else {
                return Ok(LpStatus::Optimal);
            };
            let mut leaving: Option<(usize, f64)> = None;
            let mut tiny = false;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(r).max(0.0) / a;
                    leaving = match leaving {
                        None => Some((r, ratio)),
                        Some((br, best)) => {
                            let tie = (ratio - best).abs() <= 1e-12 * (1.0 + best.abs());
                            if ratio < best && !tie || tie && self.basis[r] < self.basis[br] {
                                Some((r, ratio))
                            } else {
                                Some((br, best))
                            }
                        }
                    };
                } else if a > ZERO_TOL {
                    tiny = true;
                }
            }
            let Some((pr, _)) = leaving else {
                if tiny {
                    return Err(Error::NumericalFailure("only sub-threshold pivots available"));
                }
                return Ok(LpStatus::Unbounded);
            };
            *pivots += 1;
            if *pivots > MAX_PIVOTS {
                return Err(Error::NumericalFailure("pivot limit reached"));
            }
            self.pivot(pr, pc, reduced);
        }
    }
}

/// Solves `p` to optimality, or reports infeasibility/unboundedness.
///
/// `Err` is returned only for malformed input or a numerical breakdown of the
/// pivoting; it never stands in for a wrong answer.
pub fn lp_solve(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars();

    // Standard-form columns for the structural variables.
    let mut map = Vec::with_capacity(n);
    let mut ncols = 0;
    for b in &p.bounds {
        match *b {
            Bound::Lower(lower) => {
                map.push(Column::Shifted { col: ncols, lower });
                ncols += 1;
            }
            Bound::Free => {
                map.push(Column::Split {
                    pos: ncols,
                    neg: ncols + 1,
                });
                ncols += 2;
            }
        }
    }
    let structural = ncols;

    // Each row: coefficients over structural columns, rhs after shifting.
    let mut rows: Vec<(Vec<f64>, f64, bool)> = Vec::new();
    let expand = |row: &[f64], rhs: f64| {
        let mut out = vec![0.0; structural];
        let mut rhs = rhs;
        for (k, &a) in row.iter().enumerate() {
            match map[k] {
                Column::Shifted { col, lower } => {
                    out[col] = a;
                    rhs -= a * lower;
                }
                Column::Split { pos, neg } => {
                    out[pos] = a;
                    out[neg] = -a;
                }
            }
        }
        (out, rhs)
    };
    for (row, &rhs) in p.eq_rows.iter().zip(&p.eq_rhs) {
        let (r, b) = expand(row, rhs);
        rows.push((r, b, false));
    }
    for (row, &rhs) in p.le_rows.iter().zip(&p.le_rhs) {
        let (r, b) = expand(row, rhs);
        rows.push((r, b, true));
    }

    let m = rows.len();
    let n_slack = p.le_rows.len();
    let slack0 = structural;
    // One artificial per row that cannot start with its slack in the basis.
    let needs_art: Vec<bool> = rows.iter().map(|(_, b, is_le)| !is_le || *b < 0.0).collect();
    let n_art = needs_art.iter().filter(|&&a| a).count();
    let art0 = slack0 + n_slack;
    let cols = art0 + n_art;

    let w = cols + 1;
    let mut t = vec![0.0; m * w];
    let mut basis = vec![0; m];
    let mut slack = slack0;
    let mut art = art0;
    for (r, (coef, rhs, is_le)) in rows.iter().enumerate() {
        let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
        for (c, &a) in coef.iter().enumerate() {
            t[r * w + c] = sign * a;
        }
        t[r * w + cols] = sign * rhs;
        if *is_le {
            t[r * w + slack] = sign;
            if !needs_art[r] {
                basis[r] = slack;
            }
            slack += 1;
        }
        if needs_art[r] {
            t[r * w + art] = 1.0;
            basis[r] = art;
            art += 1;
        }
    }
    let mut tab = Tableau { t, rows: m, cols, basis };
    let mut pivots = 0;

    // Phase one: maximize −Σ artificials.
    if n_art > 0 {
        let mut cost = vec![0.0; cols];
        for c in cost.iter_mut().skip(art0) {
            *c = -1.0;
        }
        let mut reduced = tab.reduced_costs(&cost);
        let allowed = vec![true; cols];
        tab.optimize(&mut reduced, &allowed, &mut pivots)?;
        let infeasibility: f64 = (0..m).filter(|&r| tab.basis[r] >= art0).map(|r| tab.rhs(r)).sum();
        if infeasibility > FEASIBILITY_TOL {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                z: Vec::new(),
                value: 0.0,
                basis: tab.basis,
            });
        }
        // Drive zero-level artificials out; rows with no replacement are redundant.
        for r in 0..m {
            if tab.basis[r] >= art0 {
                if let Some(c) = (0..art0).find(|&c| tab.at(r, c).abs() > 1e-9) {
                    tab.pivot(r, c, &mut reduced);
                }
            }
        }
    }

    // Phase two on the real objective; artificials may not re-enter.
    let mut cost = vec![0.0; cols];
    for (k, col) in map.iter().enumerate() {
        match *col {
            Column::Shifted { col, .. } => cost[col] = p.objective[k],
            Column::Split { pos, neg } => {
                cost[pos] = p.objective[k];
                cost[neg] = -p.objective[k];
            }
        }
    }
    let mut reduced = tab.reduced_costs(&cost);
    let allowed: Vec<bool> = (0..cols).map(|c| c < art0).collect();
    let status = tab.optimize(&mut reduced, &allowed, &mut pivots)?;
    if status == LpStatus::Unbounded {
        return Ok(LpSolution {
            status,
            z: Vec::new(),
            value: 0.0,
            basis: tab.basis,
        });
    }

    let mut values = vec![0.0; cols];
    for r in 0..m {
        values[tab.basis[r]] = tab.rhs(r).max(0.0);
    }
    let z: Vec<f64> = map
        .iter()
        .map(|col| match *col {
            Column::Shifted { col, lower } => values[col] + lower,
            Column::Split { pos, neg } => values[pos] - values[neg],
        })
        .collect();
    let value = dot(&p.objective, &z);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        z,
        value,
        basis: tab.basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bound() {
        let s = lp_solve(&LpProblem::maximize(vec![1.0]).le(vec![1.0], 1.0)).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.z, vec![1.0]);
        assert_eq!(s.value, 1.0);
    }

    #[test]
    fn contradictory_bounds() {
        let s = lp_solve(&LpProblem::maximize(vec![1.0]).le(vec![1.0], -1.0)).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn open_ray() {
        let s = lp_solve(&LpProblem::maximize(vec![1.0])).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn free_and_shifted_variables() {
        // maximize −|z0 − 3| style: min t s.t. t ≥ z0 − 3, t ≥ 3 − z0, z0 free, z1 ≥ 2.
        // maximize −t − z1
        let p = LpProblem::maximize(vec![0.0, -1.0, -1.0])
            .free(0)
            .lower(2, 2.0)
            .le(vec![1.0, -1.0, 0.0], 3.0)
            .le(vec![-1.0, -1.0, 0.0], -3.0);
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value + 2.0).abs() < 1e-12);
        assert!((s.z[0] - 3.0).abs() < 1e-12);
        assert!((s.z[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn equality_with_redundant_row() {
        let p = LpProblem::maximize(vec![1.0, 2.0])
            .eq(vec![1.0, 1.0], 1.0)
            .eq(vec![2.0, 2.0], 2.0);
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example; cycles under the textbook largest-coefficient rule.
        let p = LpProblem::maximize(vec![0.75, -150.0, 0.02, -6.0])
            .le(vec![0.25, -60.0, -0.04, 9.0], 0.0)
            .le(vec![0.5, -90.0, -0.02, 3.0], 0.0)
            .le(vec![0.0, 0.0, 1.0, 0.0], 1.0);
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 0.05).abs() < 1e-12);
    }

    #[test]
    fn malformed_input() {
        let mut p = LpProblem::maximize(vec![1.0, 1.0]);
        p.le_rows.push(vec![1.0]);
        p.le_rhs.push(1.0);
        assert!(matches!(lp_solve(&p), Err(Error::InvalidLp(_))));
        let p = LpProblem::maximize(vec![f64::NAN]);
        assert!(matches!(lp_solve(&p), Err(Error::InvalidLp(_))));
    }

    #[test]
    fn deterministic_bits() {
        let p = LpProblem::maximize(vec![0.3, 0.7, 0.1])
            .eq(vec![1.0, 1.0, 1.0], 1.0)
            .le(vec![0.2, 1.3, 0.0], 0.9);
        let a = lp_solve(&p).unwrap();
        let b = lp_solve(&p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}

//! Packetized AWGN link under a power-limited jammer.
//!
//! The transmitter picks one of `n` rates `R_0 > … > R_{n−1}` (nats per
//! transmission). A packet sent at `R_i` survives jamming power `J` iff
//! `R_i ≤ ½ ln(1 + P_T/(N + J))`. The jammer's levels are `J_0 = 0` and
//! `J_k = Ĵ_{k−1} + δN` for `k = 1..n`, where `Ĵ_i` is the largest power rate
//! `R_i` tolerates; power `J_k` therefore destroys exactly the packets sent at
//! rates `R_0 … R_{k−1}`.
//!
//! Payoffs, with the transmitter as row player (`n × (n+1)`):
//! `C[i][k] = R_i` for `k ≤ i` (delivered), `D[i][k] = 1` for `k > i`
//! (destroyed).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::game::ConstrainedGame;
use crate::kkt::{kkt_check, EquilibriumCertificate};
use crate::linalg::Matrix;
use crate::qp::{certify_global, qp_objective};
use crate::response::security_level_row;
use crate::solver::{solve, SolveOptions};

/// Default padding factor δ, in units of the noise variance.
pub const DEFAULT_DELTA: f64 = 0.01;

/// Physical parameters the jammer levels were derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkPhysics {
    pub p_t: f64,
    pub noise: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JammingLink {
    rates: Vec<f64>,
    powers: Vec<f64>,
    physics: Option<LinkPhysics>,
}

impl JammingLink {
    /// Link with power levels given directly. Rates must be positive and
    /// strictly decreasing; powers must start at zero, be strictly increasing
    /// and have one more entry than the rates.
    pub fn from_powers(rates: Vec<f64>, powers: Vec<f64>) -> Result<Self> {
        validate_rates(&rates)?;
        if powers.len() != rates.len() + 1 {
            return Err(Error::DimensionMismatch {
                field: "powers",
                expected: rates.len() + 1,
                found: powers.len(),
            });
        }
        if powers.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteEntry { field: "powers" });
        }
        if powers[0] != 0.0 {
            return Err(Error::InvalidLink("the first power level must be 0"));
        }
        if powers.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidLink("power levels must be strictly increasing"));
        }
        Ok(JammingLink {
            rates,
            powers,
            physics: None,
        })
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    /// `J_0 … J_n`.
    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    pub fn physics(&self) -> Option<LinkPhysics> {
        self.physics
    }

    /// Number of rates `n`.
    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    /// Largest power level `J_n`.
    pub fn max_power(&self) -> f64 {
        self.powers[self.rates.len()]
    }
}

fn validate_rates(rates: &[f64]) -> Result<()> {
    if rates.is_empty() {
        return Err(Error::Empty { field: "rates" });
    }
    if rates.iter().any(|r| !r.is_finite()) {
        return Err(Error::NonFiniteEntry { field: "rates" });
    }
    if rates.iter().any(|&r| r <= 0.0) {
        return Err(Error::InvalidLink("rates must be positive"));
    }
    if rates.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidLink("rates must be strictly decreasing"));
    }
    Ok(())
}

/// `N (e^{2 R_max} − 1)`: the power needed for every rate to be decodable
/// without jamming.
pub fn min_transmit_power(noise: f64, r_max: f64) -> f64 {
    noise * libm::expm1(2.0 * r_max)
}

/// `Ĵ_i = P_T/(e^{2R_i} − 1) − N`, the largest jamming power rate `R_i` survives.
pub fn threshold_powers(rates: &[f64], p_t: f64, noise: f64) -> Result<Vec<f64>> {
    rates
        .iter()
        .enumerate()
        .map(|(index, &r)| {
            let j = p_t / libm::expm1(2.0 * r) - noise;
            // Exactly at the minimum power the top threshold is zero up to round-off.
            if j < -1e-12 * noise.max(1.0) {
                Err(Error::NegativeThreshold { index })
            } else {
                Ok(j.max(0.0))
            }
        })
        .collect()
}

/// Assembles the jammer's levels `J_0 = 0`, `J_k = Ĵ_{k−1} + δN`.
pub fn jammer_action_set(rates: &[f64], p_t: f64, noise: f64, delta: f64) -> Result<JammingLink> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidLink("delta must be positive"));
    }
    if !(noise >= 0.0 && noise.is_finite() && p_t.is_finite()) {
        return Err(Error::InvalidLink("noise and transmit power must be finite, noise nonnegative"));
    }
    validate_rates(rates)?;
    let thresholds = threshold_powers(rates, p_t, noise)?;
    let mut powers = Vec::with_capacity(rates.len() + 1);
    powers.push(0.0);
    powers.extend(thresholds.iter().map(|j| j + delta * noise));
    let mut link = JammingLink::from_powers(rates.to_vec(), powers)?;
    link.physics = Some(LinkPhysics { p_t, noise, delta });
    Ok(link)
}

/// Delivered-rate matrix, `n × (n+1)`: row `i` holds `R_i` in columns `0..=i`.
pub fn transmitter_matrix(rates: &[f64]) -> Matrix {
    let n = rates.len();
    Matrix::from_fn(n, n + 1, |i, k| if k <= i { rates[i] } else { 0.0 })
}

/// Destroyed-packet indicator, `n × (n+1)`: row `i` holds 1 in columns `i+1..=n`.
pub fn jammer_matrix(n: usize) -> Matrix {
    Matrix::from_fn(n, n + 1, |i, k| if k > i { 1.0 } else { 0.0 })
}

/// `J_ave,m = R_m Σ_{k=1..m} (1/R_k − 1/R_{k−1}) J_k` for `m = 1 .. n−1`.
pub fn critical_budgets(link: &JammingLink) -> Vec<f64> {
    (1..link.len()).map(|m| critical_budget(link, m)).collect()
}

fn critical_budget(link: &JammingLink, m: usize) -> f64 {
    let (r, j) = (&link.rates, &link.powers);
    r[m] * (1..=m).map(|k| (1.0 / r[k] - 1.0 / r[k - 1]) * j[k]).sum::<f64>()
}

/// Minimum average jamming power that forces the lowest rate; equals the
/// last critical budget. Requires at least two rates.
pub fn jamming_threshold(link: &JammingLink) -> Result<f64> {
    if link.len() < 2 {
        return Err(Error::InvalidLink("the jamming threshold needs at least two rates"));
    }
    Ok(critical_budget(link, link.len() - 1))
}

fn check_budget(link: &JammingLink, j_ave: f64) -> Result<()> {
    if !(0.0..=link.max_power()).contains(&j_ave) {
        return Err(Error::BudgetOutOfRange {
            budget: j_ave,
            max: link.max_power(),
        });
    }
    Ok(())
}

/// Equilibrium throughput of the zero-sum game on `C` under jammer budget `j_ave`.
///
/// On `[J_ave,m, J_ave,m+1)` the value is `(J_{m+1} − j_ave)/(J_{m+1} − J_ave,m) · R_m`,
/// with breakpoints extended by `J_ave,0 = 0` and `J_ave,n = J_n`.
pub fn zero_sum_throughput(link: &JammingLink, j_ave: f64) -> Result<f64> {
    check_budget(link, j_ave)?;
    let n = link.len();
    let mut breakpoints = Vec::with_capacity(n);
    breakpoints.push(0.0);
    breakpoints.extend(critical_budgets(link));
    let m = (0..n).rev().find(|&m| breakpoints[m] <= j_ave).unwrap_or(0);
    let next = link.powers[m + 1];
    Ok((next - j_ave) / (next - breakpoints[m]) * link.rates[m])
}

/// The same zero-sum value from the transmitter's max-min linear program.
pub fn zero_sum_throughput_lp(link: &JammingLink, j_ave: f64) -> Result<f64> {
    let game = build_bimatrix_jamming_game(link, j_ave)?;
    Ok(security_level_row(&game)?.1)
}

/// Jammer payoff of the zero-sum game on its own matrix: `j_ave / J_n`.
pub fn zero_sum_jammer_payoff(j_ave: f64, max_power: f64) -> Result<f64> {
    if !(max_power > 0.0) || !(0.0..=max_power).contains(&j_ave) {
        return Err(Error::BudgetOutOfRange {
            budget: j_ave,
            max: max_power,
        });
    }
    Ok(j_ave / max_power)
}

/// The bimatrix game `(C, D)` with a non-binding rate cap `max R + 1` and jammer budget `j_ave`.
pub fn build_bimatrix_jamming_game(link: &JammingLink, j_ave: f64) -> Result<ConstrainedGame> {
    check_budget(link, j_ave)?;
    let n = link.len();
    ConstrainedGame::new(
        transmitter_matrix(&link.rates),
        jammer_matrix(n),
        link.rates.clone(),
        link.powers.clone(),
        link.rates[0] + 1.0,
        j_ave,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormEquilibrium {
    /// The game at budget `J_ave,m`.
    pub game: ConstrainedGame,
    pub certificate: EquilibriumCertificate,
    /// `(R_m, J_ave,m / J_m)`.
    pub payoffs: (f64, f64),
}

/// Equilibrium at the breakpoint budget `J_ave,m`, `1 ≤ m ≤ n−1`.
///
/// `y_i = R_m (1/R_i − 1/R_{i−1})` for `i ≤ m`, `x_i = (J_{i+1} − J_i)/J_m`
/// for `i < m`, with `u = 0`, `α = R_m`, `v = 1/J_m`, `β = 0`. The
/// certificate is checked before it is returned.
pub fn closed_form_equilibrium(link: &JammingLink, m: usize) -> Result<ClosedFormEquilibrium> {
    let n = link.len();
    if m == 0 || m >= n {
        return Err(Error::InvalidLink("breakpoint index must satisfy 1 <= m <= n-1"));
    }
    let (r, j) = (&link.rates, &link.powers);
    let budget = critical_budget(link, m);
    let game = build_bimatrix_jamming_game(link, budget)?;

    let mut x = vec![0.0; n];
    for (i, xi) in x.iter_mut().enumerate().take(m) {
        *xi = (j[i + 1] - j[i]) / j[m];
    }
    let mut y = vec![0.0; n + 1];
    let mut prev_inv = 0.0;
    for (i, yi) in y.iter_mut().enumerate().take(m + 1) {
        let inv = 1.0 / r[i];
        *yi = r[m] * (inv - prev_inv);
        prev_inv = inv;
    }
    let certificate = EquilibriumCertificate {
        x,
        y,
        u: 0.0,
        v: 1.0 / j[m],
        alpha: r[m],
        beta: 0.0,
    };
    let report = kkt_check(&game, &certificate, 1e-9)?;
    if !report.pass || !certify_global(&game, &certificate, 1e-9) {
        return Err(Error::VerificationFailed {
            max_residual: report.max_residual.max(qp_objective(&game, &certificate).abs()),
        });
    }
    Ok(ClosedFormEquilibrium {
        game,
        certificate,
        payoffs: (r[m], budget / j[m]),
    })
}

/// Converts a bit rate over a bandwidth into nats per channel use, counting
/// two real channel uses per hertz: `rate · ln 2 / (2 · bandwidth)`.
pub fn rate_conversion(rate_bps: f64, bandwidth_hz: f64) -> Result<f64> {
    if !(rate_bps > 0.0 && bandwidth_hz > 0.0) || !rate_bps.is_finite() || !bandwidth_hz.is_finite() {
        return Err(Error::InvalidLink("rate and bandwidth must be positive"));
    }
    Ok(rate_bps * core::f64::consts::LN_2 / (2.0 * bandwidth_hz))
}

/// `count` rates spaced geometrically from `r_max` down to `r_min`.
pub fn log_spaced_rates(r_max: f64, r_min: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![r_max];
    }
    let (hi, lo) = (libm::log(r_max), libm::log(r_min));
    (0..count)
        .map(|k| match k {
            0 => r_max,
            k if k == count - 1 => r_min,
            k => libm::exp(hi + (lo - hi) * k as f64 / (count - 1) as f64),
        })
        .collect()
}

/// The 802.11-scale link: eight rates between 1 and 54 Mbit/s over 22 MHz,
/// unit noise, transmit power 0.1% above the minimum, default δ.
pub fn wifi_default_link() -> JammingLink {
    let r_max = rate_conversion(54e6, 22e6).unwrap();
    let r_min = rate_conversion(1e6, 22e6).unwrap();
    let rates = log_spaced_rates(r_max, r_min, 8);
    let p_t = min_transmit_power(1.0, r_max) * 1.001;
    jammer_action_set(&rates, p_t, 1.0, DEFAULT_DELTA).unwrap()
}

/// `count ≥ 2` evenly spaced budgets from `lo` to `hi` inclusive.
pub fn budget_grid(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| {
                if i == count - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub j_ave: f64,
    pub throughput_closed: f64,
    pub throughput_lp: f64,
    pub jammer_zero_sum: f64,
    /// Largest jammer payoff over the certified bimatrix equilibria; `None`
    /// when the solver produced no certificate.
    pub jammer_bimatrix: Option<f64>,
    /// `|objective|` of the certificate behind `jammer_bimatrix`.
    pub cert_gap: Option<f64>,
}

/// Evaluates both games at each budget.
///
/// The bimatrix column comes from [`solve`] with the row multiplier fixed at
/// zero (the rate cap never binds); other options are taken from `opts`.
pub fn sweep(link: &JammingLink, budgets: &[f64], opts: &SolveOptions) -> Result<Vec<SweepRow>> {
    let opts = SolveOptions {
        reduced_row_unconstrained: true,
        ..opts.clone()
    };
    budgets
        .iter()
        .map(|&j_ave| {
            let game = build_bimatrix_jamming_game(link, j_ave)?;
            let result = solve(&game, &opts)?;
            let best = result.equilibria.iter().max_by(|a, b| {
                let pa = game.b().bilinear(&a.certificate.x, &a.certificate.y);
                let pb = game.b().bilinear(&b.certificate.x, &b.certificate.y);
                pa.total_cmp(&pb)
            });
            Ok(SweepRow {
                j_ave,
                throughput_closed: zero_sum_throughput(link, j_ave)?,
                throughput_lp: security_level_row(&game)?.1,
                jammer_zero_sum: zero_sum_jammer_payoff(j_ave, link.max_power())?,
                jammer_bimatrix: best.map(|e| game.b().bilinear(&e.certificate.x, &e.certificate.y)),
                cert_gap: best.map(|e| e.qp_objective.abs()),
            })
        })
        .collect()
}

/// Smallest positive budget from which the bimatrix and zero-sum jammer
/// payoffs agree within `tol` on every remaining row. Rows are taken in
/// order; a row without a certificate counts as disagreement.
pub fn first_convergence(rows: &[SweepRow], tol: f64) -> Option<f64> {
    let agrees = |r: &SweepRow| r.jammer_bimatrix.is_some_and(|b| (b - r.jammer_zero_sum).abs() <= tol);
    let tail = rows.iter().rev().take_while(|r| agrees(r)).count();
    rows[rows.len() - tail..]
        .iter()
        .find(|r| r.j_ave > 0.0)
        .map(|r| r.j_ave)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn jx() -> JammingLink {
        JammingLink::from_powers(fixtures::JX_RATES.to_vec(), fixtures::JX_POWERS.to_vec()).unwrap()
    }

    #[test]
    fn minimum_power() {
        assert!((min_transmit_power(1.0, 1.0) - 6.38905609893065).abs() < 1e-12);
        assert_eq!(min_transmit_power(1.0, 0.0), 0.0);
        assert!((min_transmit_power(2.0, core::f64::consts::LN_2) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn thresholds() {
        let t = threshold_powers(&[libm::log(3.0), libm::log(2.0)], 8.0, 1.0).unwrap();
        assert!(t[0].abs() < 1e-12);
        assert!((t[1] - 5.0 / 3.0).abs() < 1e-12);
        let t = threshold_powers(&[1.0], libm::expm1(2.0), 1.0).unwrap();
        assert!(t[0].abs() < 1e-12);
        assert_eq!(
            threshold_powers(&[1.0], 5.0, 1.0),
            Err(Error::NegativeThreshold { index: 0 })
        );
    }

    #[test]
    fn action_set() {
        let rates = [libm::log(3.0), libm::log(2.0)];
        let link = jammer_action_set(&rates, 8.0, 1.0, 0.5).unwrap();
        let p = link.powers();
        assert_eq!(p.len(), 3);
        assert_eq!(p[0], 0.0);
        assert!((p[1] - 0.5).abs() < 1e-12);
        assert!((p[2] - 13.0 / 6.0).abs() < 1e-12);
        assert!(jammer_action_set(&rates, 8.0, 1.0, 0.0).is_err());
        let single = jammer_action_set(&[1.0], 10.0, 1.0, 0.5).unwrap();
        assert_eq!(single.powers().len(), 2);
    }

    #[test]
    fn link_validation() {
        assert!(JammingLink::from_powers(vec![1.0, 2.0], vec![0.0, 1.0, 2.0]).is_err());
        assert!(JammingLink::from_powers(vec![2.0, 1.0], vec![0.5, 1.0, 2.0]).is_err());
        assert!(JammingLink::from_powers(vec![2.0, 1.0], vec![0.0, 2.0, 1.0]).is_err());
        assert!(JammingLink::from_powers(vec![2.0, 1.0], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(
            transmitter_matrix(&[4.0, 2.0, 1.0]).to_rows(),
            vec![
                vec![4.0, 0.0, 0.0, 0.0],
                vec![2.0, 2.0, 0.0, 0.0],
                vec![1.0, 1.0, 1.0, 0.0]
            ]
        );
        assert_eq!(transmitter_matrix(&[1.0]).to_rows(), vec![vec![1.0, 0.0]]);
        assert_eq!(
            jammer_matrix(3).to_rows(),
            vec![
                vec![0.0, 1.0, 1.0, 1.0],
                vec![0.0, 0.0, 1.0, 1.0],
                vec![0.0, 0.0, 0.0, 1.0]
            ]
        );
        assert_eq!(jammer_matrix(1).to_rows(), vec![vec![0.0, 1.0]]);
        let c = transmitter_matrix(&[5.0, 3.0, 2.0, 1.0]);
        let d = jammer_matrix(4);
        for i in 0..4 {
            let row_sum: f64 = c.row(i).iter().sum();
            assert_eq!(row_sum, (i + 1) as f64 * c.get(i, 0));
            for k in 0..5 {
                assert_eq!(c.get(i, k) * d.get(i, k), 0.0);
                assert!(c.get(i, k) + d.get(i, k) > 0.0);
            }
        }
    }

    #[test]
    fn budgets_and_threshold() {
        let link = jx();
        assert_eq!(critical_budgets(&link), vec![0.5, 1.25]);
        assert_eq!(jamming_threshold(&link).unwrap(), 1.25);
        let single = JammingLink::from_powers(vec![1.0], vec![0.0, 1.0]).unwrap();
        assert!(critical_budgets(&single).is_empty());
        let two = JammingLink::from_powers(vec![2.0, 1.0], vec![0.0, 1.0, 2.0]).unwrap();
        assert_eq!(jamming_threshold(&two).unwrap(), 0.5);
        let two_big = JammingLink::from_powers(vec![2.0, 1.0], vec![0.0, 1.0, 50.0]).unwrap();
        assert_eq!(jamming_threshold(&two_big).unwrap(), 0.5);
        let scaled = JammingLink::from_powers(vec![4.0, 2.0, 1.0], vec![0.0, 3.0, 6.0, 12.0]).unwrap();
        assert_eq!(critical_budgets(&scaled), vec![1.5, 3.75]);
    }

    #[test]
    fn zero_sum_closed_forms() {
        let link = jx();
        assert_eq!(zero_sum_throughput(&link, 0.5).unwrap(), 2.0);
        assert!((zero_sum_throughput(&link, 0.875).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(zero_sum_throughput(&link, 0.0).unwrap(), 4.0);
        assert_eq!(zero_sum_throughput(&link, 1.25).unwrap(), 1.0);
        assert_eq!(zero_sum_throughput(&link, 4.0).unwrap(), 0.0);
        assert!(matches!(
            zero_sum_throughput(&link, 4.5),
            Err(Error::BudgetOutOfRange { .. })
        ));
        assert_eq!(zero_sum_jammer_payoff(2.0, 4.0).unwrap(), 0.5);
        assert_eq!(zero_sum_jammer_payoff(0.0, 4.0).unwrap(), 0.0);
        assert_eq!(zero_sum_jammer_payoff(1.25, 4.0).unwrap(), 0.3125);
        assert!(zero_sum_jammer_payoff(5.0, 4.0).is_err());
    }

    #[test]
    fn closed_form_on_jx() {
        let link = jx();
        let eq = closed_form_equilibrium(&link, 2).unwrap();
        assert_eq!(eq.certificate, fixtures::jx_certificate());
        assert_eq!(eq.payoffs, (1.0, 0.625));
        assert_eq!(eq.game, fixtures::jx_game());

        let eq = closed_form_equilibrium(&link, 1).unwrap();
        assert_eq!(eq.certificate.x, vec![1.0, 0.0, 0.0]);
        assert_eq!(eq.certificate.y, vec![0.5, 0.5, 0.0, 0.0]);
        assert_eq!(eq.payoffs, (2.0, 0.5));
        assert!(closed_form_equilibrium(&link, 0).is_err());
        assert!(closed_form_equilibrium(&link, 3).is_err());
    }

    #[test]
    fn rate_conversion_convention() {
        assert!((rate_conversion(54e6, 22e6).unwrap() - 54.0 * core::f64::consts::LN_2 / 44.0).abs() < 1e-15);
        assert!((rate_conversion(1e6, 22e6).unwrap() - 0.015753).abs() < 1e-6);
        assert_eq!(rate_conversion(44e6, 22e6).unwrap(), core::f64::consts::LN_2);
        assert!(rate_conversion(0.0, 22e6).is_err());
        assert!(rate_conversion(1e6, -1.0).is_err());
    }

    #[test]
    fn jx_game_assembly() {
        let link = jx();
        let g = build_bimatrix_jamming_game(&link, 1.25).unwrap();
        assert_eq!(g, fixtures::jx_game());
        assert!(crate::game::is_properly_constrained(&g));
        assert!(crate::game::existence_condition(&g));
    }

    #[test]
    fn grid() {
        assert_eq!(budget_grid(3, 0.5, 1.25), vec![0.5, 0.875, 1.25]);
        assert_eq!(budget_grid(2, 0.0, 1.0), vec![0.0, 1.0]);
    }

    #[test]
    fn convergence_point() {
        let row = |j_ave: f64, zs: f64, bm: Option<f64>| SweepRow {
            j_ave,
            throughput_closed: 0.0,
            throughput_lp: 0.0,
            jammer_zero_sum: zs,
            jammer_bimatrix: bm,
            cert_gap: bm.map(|_| 0.0),
        };
        let rows = [
            row(0.0, 0.0, Some(0.0)),
            row(1.0, 0.25, Some(0.5)),
            row(2.0, 0.5, Some(0.5)),
            row(3.0, 0.75, Some(0.75)),
        ];
        assert_eq!(first_convergence(&rows, 1e-9), Some(2.0));
        assert_eq!(first_convergence(&rows[..2], 1e-9), None);
        let gap = [row(0.0, 0.0, Some(0.0)), row(1.0, 0.25, None), row(2.0, 0.5, Some(0.5))];
        assert_eq!(first_convergence(&gap, 1e-9), Some(2.0));
    }

    #[test]
    fn wifi_link_shape() {
        let link = wifi_default_link();
        assert_eq!(link.len(), 8);
        assert_eq!(link.powers().len(), 9);
        let b = critical_budgets(&link);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert!(*b.last().unwrap() < link.max_power());
    }
}

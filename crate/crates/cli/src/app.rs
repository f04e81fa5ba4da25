//! Command-line surface. [`run`] is the whole program minus process exit.

use std::io::Write;

use cbgame_core::jamming::{
    build_bimatrix_jamming_game, budget_grid, first_convergence, jammer_action_set, jamming_threshold,
    sweep, wifi_default_link, JammingLink, DEFAULT_DELTA,
};
use cbgame_core::kkt::{ConditionKind, Player};
use cbgame_core::{
    best_response_col, best_response_row, kkt_check, qp_objective, solve, ConstrainedGame, KktReport, Mode,
    SolveOptions, DEFAULT_KKT_TOL,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::CliError;
use crate::format::{
    fmt_num, parse_vector, read_certificates, read_game, read_vector_file, round_sig, to_json,
    write_sweep_csv, EquilibriumEntry, GameFile,
};

#[derive(Debug, Parser)]
#[command(name = "cbgame", version, about = "Equilibria of constrained bimatrix games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute certified equilibria of a game file.
    Solve {
        game: String,
        #[command(flatten)]
        solver: SolverArgs,
        /// Output path for the result JSON (stdout when omitted).
        #[arg(long)]
        out: Option<String>,
    },
    /// Check a certificate (or every entry of a solve result) against the fourteen conditions.
    Verify {
        game: String,
        cert: String,
        #[arg(long, default_value_t = DEFAULT_KKT_TOL)]
        tol: f64,
    },
    /// Best response of one player to the other's strategy.
    BestResponse {
        game: String,
        /// Row player's response to this column strategy, e.g. "[0.5,0.5]".
        #[arg(long)]
        row: Option<String>,
        /// Column player's response to this row strategy.
        #[arg(long)]
        col: Option<String>,
        /// Like --row, reading the column strategy from a JSON file.
        #[arg(long)]
        row_file: Option<String>,
        /// Like --col, reading the row strategy from a JSON file.
        #[arg(long)]
        col_file: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sweep the jammer budget and write throughput and jammer payoffs as CSV.
    JamSweep {
        #[command(flatten)]
        link: LinkArgs,
        /// COUNT:FROM:TO; TO may be `auto` for the largest jamming power.
        #[arg(long, default_value = "200:0:auto")]
        grid: String,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Write the bimatrix jamming game of a link as a game file.
    JamGen {
        #[command(flatten)]
        link: LinkArgs,
        /// Jammer budget (defaults to the jamming threshold).
        #[arg(long)]
        j_ave: Option<f64>,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Auto,
    Enumerate,
    Iterative,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 1e-9)]
    tol_feas: f64,
    #[arg(long, default_value_t = 1e-7)]
    tol_cert: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    /// Restarts of the iterative method.
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Largest row count `auto` still enumerates.
    #[arg(long, default_value_t = 6)]
    max_support: usize,
}

impl SolverArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            mode: match self.mode {
                ModeArg::Auto => Mode::Auto,
                ModeArg::Enumerate => Mode::Enumerate,
                ModeArg::Iterative => Mode::Iterative,
            },
            tol_feas: self.tol_feas,
            tol_cert: self.tol_cert,
            max_support: self.max_support,
            restarts: self.restarts,
            seed: self.seed,
            reduced_row_unconstrained: false,
        }
    }
}

#[derive(Debug, Args)]
pub struct LinkArgs {
    /// Rates in nats per transmission, strictly decreasing, e.g. "4,2,1".
    #[arg(long)]
    rates: Option<String>,
    /// Jammer power levels J_0 = 0 < … < J_n, one more than the rates.
    #[arg(long, conflicts_with_all = ["pt", "wifi_default"])]
    powers: Option<String>,
    /// Transmit power; power levels are then derived from the rates.
    #[arg(long)]
    pt: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    noise: f64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Eight rates from 1 to 54 Mbit/s over 22 MHz at 0.1% above the minimum power.
    #[arg(long, conflicts_with_all = ["rates", "pt"])]
    wifi_default: bool,
}

impl LinkArgs {
    fn link(&self) -> Result<JammingLink, CliError> {
        if self.wifi_default {
            return Ok(wifi_default_link());
        }
        let rates = self
            .rates
            .as_deref()
            .ok_or_else(|| CliError::Input("give --rates (with --powers or --pt) or --wifi-default".into()))?;
        let rates = parse_vector(rates).map_err(|e| CliError::Input(format!("--rates: {e}")))?;
        let link = match (&self.powers, self.pt) {
            (Some(p), _) => {
                let powers = parse_vector(p).map_err(|e| CliError::Input(format!("--powers: {e}")))?;
                JammingLink::from_powers(rates, powers)
            }
            (None, Some(pt)) => jammer_action_set(&rates, pt, self.noise, self.delta),
            (None, None) => return Err(CliError::Input("--rates needs --powers or --pt".into())),
        };
        link.map_err(CliError::from)
    }
}

/// Parses `COUNT:FROM:TO`.
pub fn parse_grid(s: &str, max_power: f64) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Input(format!("--grid `{s}`: {why}"));
    let parts: Vec<&str> = s.split(':').collect();
    let [count, from, to] = parts[..] else {
        return Err(bad("expected COUNT:FROM:TO"));
    };
    let count: usize = count.trim().parse().map_err(|_| bad("COUNT is not an integer"))?;
    if count < 2 {
        return Err(bad("COUNT must be at least 2"));
    }
    let number = |t: &str| -> Result<f64, CliError> {
        match t.trim() {
            "auto" => Ok(max_power),
            t => t
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad("bounds must be numbers or `auto`")),
        }
    };
    let (lo, hi) = (number(from)?, number(to)?);
    if lo > hi {
        return Err(bad("FROM exceeds TO"));
    }
    Ok(budget_grid(count, lo, hi))
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Solve { game, solver, out } => cmd_solve(&game, &solver.options(), out.as_deref(), stdout, stderr),
        Command::Verify { game, cert, tol } => cmd_verify(&game, &cert, tol, stdout),
        Command::BestResponse {
            game,
            row,
            col,
            row_file,
            col_file,
            out,
        } => {
            let given = [&row, &col, &row_file, &col_file].iter().filter(|o| o.is_some()).count();
            if given != 1 {
                return Err(CliError::Input(
                    "give exactly one of --row, --col, --row-file, --col-file".into(),
                ));
            }
            let game = read_game(&game)?;
            let (player, strategy) = match (row, col, row_file, col_file) {
                (Some(s), ..) => (Player::Row, parse_vector(&s).map_err(|e| CliError::Input(format!("--row: {e}")))?),
                (_, Some(s), ..) => (Player::Col, parse_vector(&s).map_err(|e| CliError::Input(format!("--col: {e}")))?),
                (_, _, Some(p), _) => (Player::Row, read_vector_file(&p)?),
                (_, _, _, Some(p)) => (Player::Col, read_vector_file(&p)?),
                _ => unreachable!("exactly one source checked above"),
            };
            cmd_best_response(&game, player, &strategy, out.as_deref(), stdout)
        }
        Command::JamSweep { link, grid, solver, out } => {
            let link = link.link()?;
            let budgets = parse_grid(&grid, link.max_power())?;
            cmd_jam_sweep(&link, &budgets, &solver.options(), out.as_deref(), stdout, stderr)
        }
        Command::JamGen { link, j_ave, out } => {
            let link = link.link()?;
            let j_ave = match j_ave {
                Some(b) => b,
                None => jamming_threshold(&link)?,
            };
            let game = build_bimatrix_jamming_game(&link, j_ave)?;
            emit(out.as_deref(), to_json(&GameFile::from_game(&game)).as_bytes(), stdout)
        }
    }
}

fn emit(path: Option<&str>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Input(format!("{p}: {e}"))),
        None => stdout
            .write_all(bytes)
            .map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

pub fn cmd_solve(
    path: &str,
    opts: &SolveOptions,
    out: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let game = read_game(path)?;
    let result = solve(&game, opts)?;
    let entries: Vec<EquilibriumEntry> = result.equilibria.iter().map(EquilibriumEntry::new).collect();
    emit(out, to_json(&entries).as_bytes(), stdout)?;
    let d = &result.diagnostics;
    let _ = writeln!(
        stderr,
        "{}: {} certified equilibria ({} supports, {} systems, {} singular, {} restarts)",
        result.method.as_str(),
        entries.len(),
        d.supports_tried,
        d.systems_solved,
        d.singular_systems,
        d.restarts_used
    );
    if !result.is_certified() {
        if d.lsq_rejected > 0 {
            let _ = writeln!(
                stderr,
                "degenerate: {} singular systems rejected, smallest least-squares residual {}",
                d.lsq_rejected,
                fmt_num(d.min_rejected_lsq_residual.unwrap_or(f64::NAN))
            );
        }
        return Err(CliError::NoCertifiedSolution);
    }
    Ok(())
}

fn describe(player: Player, kind: ConditionKind) -> &'static str {
    match (player, kind) {
        (Player::Row, ConditionKind::Simplex) => "sum x = 1",
        (Player::Row, ConditionKind::Cap) => "r.x <= r_ave",
        (Player::Row, ConditionKind::Nonnegative) => "x >= 0",
        (Player::Row, ConditionKind::DualBound) => "A y - u r - alpha <= 0",
        (Player::Row, ConditionKind::Value) => "x'A y = u r_ave + alpha",
        (Player::Row, ConditionKind::Complementarity) => "u (r.x - r_ave) = 0",
        (Player::Row, ConditionKind::MultiplierSign) => "u >= 0",
        (Player::Col, ConditionKind::Simplex) => "sum y = 1",
        (Player::Col, ConditionKind::Cap) => "j.y <= j_ave",
        (Player::Col, ConditionKind::Nonnegative) => "y >= 0",
        (Player::Col, ConditionKind::DualBound) => "x'B - v j - beta <= 0",
        (Player::Col, ConditionKind::Value) => "x'B y = v j_ave + beta",
        (Player::Col, ConditionKind::Complementarity) => "v (j.y - j_ave) = 0",
        (Player::Col, ConditionKind::MultiplierSign) => "v >= 0",
    }
}

fn write_report(w: &mut dyn Write, report: &KktReport) -> std::io::Result<()> {
    for r in &report.records {
        let c = r.condition;
        writeln!(
            w,
            "{:<6} {:<26} {:>20}  {}",
            c.to_string(),
            describe(c.player, c.kind),
            fmt_num(r.residual),
            if r.pass { "ok" } else { "FAIL" }
        )?;
    }
    Ok(())
}

pub fn cmd_verify(game_path: &str, cert_path: &str, tol: f64, stdout: &mut dyn Write) -> Result<(), CliError> {
    if !(tol > 0.0) {
        return Err(CliError::Input("--tol must be positive".into()));
    }
    let game = read_game(game_path)?;
    let certs = read_certificates(cert_path)?;
    let mut all_pass = true;
    let io = |e: std::io::Error| CliError::Input(format!("stdout: {e}"));
    for (k, cert) in certs.iter().enumerate() {
        let report = kkt_check(&game, cert, tol)?;
        if certs.len() > 1 {
            writeln!(stdout, "certificate {} of {}", k + 1, certs.len()).map_err(io)?;
        }
        write_report(stdout, &report).map_err(io)?;
        writeln!(stdout, "objective {}", fmt_num(qp_objective(&game, cert))).map_err(io)?;
        if report.pass {
            writeln!(stdout, "PASS {}/14", report.passed()).map_err(io)?;
        } else {
            writeln!(
                stdout,
                "FAIL {}/14 (max residual {}, tol {})",
                report.passed(),
                fmt_num(report.max_residual),
                fmt_num(tol)
            )
            .map_err(io)?;
        }
        all_pass &= report.pass;
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

#[derive(Serialize)]
struct BestResponseOutput {
    player: &'static str,
    strategy: Vec<f64>,
    value: f64,
}

pub fn cmd_best_response(
    game: &ConstrainedGame,
    player: Player,
    opponent: &[f64],
    out: Option<&str>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let (name, (strategy, value)) = match player {
        Player::Row => ("row", best_response_row(game, opponent)?),
        Player::Col => ("col", best_response_col(game, opponent)?),
    };
    let output = BestResponseOutput {
        player: name,
        strategy: strategy.iter().copied().map(round_sig).collect(),
        value: round_sig(value),
    };
    emit(out, to_json(&output).as_bytes(), stdout)
}

/// Per-row cert_gap lines are printed above this; smaller gaps are round-off.
const GAP_REPORT: f64 = 1e-12;

pub fn cmd_jam_sweep(
    link: &JammingLink,
    budgets: &[f64],
    opts: &SolveOptions,
    out: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let rows = sweep(link, budgets, opts)?;
    let mut csv = Vec::new();
    write_sweep_csv(&mut csv, &rows)?;
    emit(out, &csv, stdout)?;
    let mut nonzero = 0;
    let mut largest: f64 = 0.0;
    for r in &rows {
        match r.cert_gap {
            None => {
                let _ = writeln!(stderr, "j_ave={}: no certified bimatrix equilibrium", fmt_num(r.j_ave));
            }
            Some(gap) => {
                if gap > 0.0 {
                    nonzero += 1;
                    largest = largest.max(gap);
                }
                if gap > GAP_REPORT {
                    let _ = writeln!(stderr, "j_ave={}: cert_gap {}", fmt_num(r.j_ave), fmt_num(gap));
                }
            }
        }
    }
    if nonzero > 0 {
        let _ = writeln!(
            stderr,
            "{nonzero} of {} rows have a nonzero cert_gap (largest {})",
            rows.len(),
            fmt_num(largest)
        );
    }
    if let Ok(jth) = jamming_threshold(link) {
        let _ = writeln!(stderr, "jamming threshold {}", fmt_num(jth));
    }
    match first_convergence(&rows, 1e-9) {
        Some(b) => {
            let _ = writeln!(stderr, "bimatrix and zero-sum jammer payoffs coincide from j_ave={}", fmt_num(b));
        }
        None => {
            let _ = writeln!(stderr, "bimatrix and zero-sum jammer payoffs do not coincide at the end of this grid");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("3:0.5:1.25", 4.0).unwrap(), vec![0.5, 0.875, 1.25]);
        assert_eq!(parse_grid("2:0:auto", 4.0).unwrap(), vec![0.0, 4.0]);
        assert!(parse_grid("1:0:1", 4.0).is_err());
        assert!(parse_grid("3:0", 4.0).is_err());
        assert!(parse_grid("3:2:1", 4.0).is_err());
    }

    #[test]
    fn every_condition_is_described() {
        for p in [Player::Row, Player::Col] {
            for k in ConditionKind::ALL {
                assert!(!describe(p, k).is_empty());
            }
        }
    }
}

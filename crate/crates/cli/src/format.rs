//! On-disk formats: game, certificate and solve-result JSON, sweep CSV.

use std::io::Write;

use cbgame_core::jamming::SweepRow;
use cbgame_core::{
    validate_game, CertifiedEquilibrium, ConstrainedGame, EquilibriumCertificate, GameSpec,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Significant digits of every number written by the tool.
pub const SIG_DIGITS: usize = 12;

/// Rounds to [`SIG_DIGITS`] significant digits. Non-finite values pass through.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        // Also normalizes -0.0.
        return if v == 0.0 { 0.0 } else { v };
    }
    let s = format!("{:.*e}", SIG_DIGITS - 1, v);
    let r: f64 = s.parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_all(v: &[f64]) -> Vec<f64> {
    v.iter().copied().map(round_sig).collect()
}

/// Number as written to CSV and reports: rounded, shortest round-trip form,
/// scientific notation outside `[1e-4, 1e15)`.
pub fn fmt_num(v: f64) -> String {
    let r = round_sig(v);
    if r.is_nan() {
        "NaN".to_string()
    } else if r == 0.0 || (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameFile {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<f64>>,
    pub r: Vec<f64>,
    pub j: Vec<f64>,
    pub r_ave: f64,
    pub j_ave: f64,
}

impl GameFile {
    pub fn from_game(game: &ConstrainedGame) -> Self {
        let spec = game.to_spec();
        GameFile {
            a: spec.a.iter().map(|r| round_all(r)).collect(),
            b: spec.b.iter().map(|r| round_all(r)).collect(),
            r: round_all(&spec.r),
            j: round_all(&spec.j),
            r_ave: round_sig(spec.r_ave),
            j_ave: round_sig(spec.j_ave),
        }
    }

    pub fn into_game(self) -> Result<ConstrainedGame, CliError> {
        let spec = GameSpec {
            a: self.a,
            b: self.b,
            r: self.r,
            j: self.j,
            r_ave: self.r_ave,
            j_ave: self.j_ave,
        };
        validate_game(&spec).map_err(|e| CliError::Input(format!("invalid game: {e}")))
    }
}

/// `{x, y, u, v, alpha, beta}`; any other fields are ignored, so solve
/// results can be read back as certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub u: f64,
    pub v: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl From<CertificateFile> for EquilibriumCertificate {
    fn from(c: CertificateFile) -> Self {
        EquilibriumCertificate {
            x: c.x,
            y: c.y,
            u: c.u,
            v: c.v,
            alpha: c.alpha,
            beta: c.beta,
        }
    }
}

/// One entry of the solve output array.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumEntry {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub u: f64,
    pub v: f64,
    pub alpha: f64,
    pub beta: f64,
    pub qp_objective: f64,
    pub method: &'static str,
}

impl EquilibriumEntry {
    pub fn new(e: &CertifiedEquilibrium) -> Self {
        let c = &e.certificate;
        EquilibriumEntry {
            x: round_all(&c.x),
            y: round_all(&c.y),
            u: round_sig(c.u),
            v: round_sig(c.v),
            alpha: round_sig(c.alpha),
            beta: round_sig(c.beta),
            qp_objective: round_sig(e.qp_objective),
            method: e.method.as_str(),
        }
    }
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn read_game(path: &str) -> Result<ConstrainedGame, CliError> {
    let file: GameFile = serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    file.into_game().map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{path}: {msg}")),
        other => other,
    })
}

/// Reads a single certificate object or an array of them (a solve result).
pub fn read_certificates(path: &str) -> Result<Vec<EquilibriumCertificate>, CliError> {
    let text = read_text(path)?;
    let parsed = if text.trim_start().starts_with('[') {
        serde_json::from_str::<Vec<CertificateFile>>(&text)
    } else {
        serde_json::from_str::<CertificateFile>(&text).map(|c| vec![c])
    };
    let certs: Vec<EquilibriumCertificate> = parsed
        .map_err(|e| CliError::Input(format!("{path}: {e}")))?
        .into_iter()
        .map(Into::into)
        .collect();
    if certs.is_empty() {
        return Err(CliError::Input(format!("{path}: no certificate in file")));
    }
    Ok(certs)
}

/// Strategy vector file: a JSON array of numbers.
pub fn read_vector_file(path: &str) -> Result<Vec<f64>, CliError> {
    serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// Parses `[a,b,c]` or `a,b,c`.
pub fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    let inner = s.trim();
    let inner = inner
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(inner);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("`{t}` is not a finite number"))
        })
        .collect()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub const SWEEP_HEADER: [&str; 6] = [
    "j_ave",
    "throughput_closed",
    "throughput_lp",
    "jammer_zero_sum",
    "jammer_bimatrix",
    "cert_gap",
];

/// Sweep rows as CSV. Budgets without a certified bimatrix equilibrium get
/// `NaN` in the last two columns.
pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| CliError::Input(format!("writing CSV: {e}"));
    w.write_record(SWEEP_HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            fmt_num(r.j_ave),
            fmt_num(r.throughput_closed),
            fmt_num(r.throughput_lp),
            fmt_num(r.jammer_zero_sum),
            fmt_num(r.jammer_bimatrix.unwrap_or(f64::NAN)),
            fmt_num(r.cert_gap.unwrap_or(f64::NAN)),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Input(format!("writing CSV: {e}")))?;
    Ok(())
}

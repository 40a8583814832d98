//! The three output files — Log, English, Picture — and the English parser.
//!
//! English file grammar (one gate per line, temporal order, LF newlines, no
//! trailing whitespace):
//!
//! ```text
//! QUANFORGE-ENG 1
//! NBITS <nb>
//! HAD AT <q>[ IF <q><T|F> ...]
//! PHAS <deg> AT <q>[ IF ...]        likewise ROTX, ROTZ
//! SIGX AT <q>[ IF ...]
//! SWAP <q1> <q2>[ IF ...]           with q1 > q2
//! ```
//!
//! Angles are serialized in degrees with 17 significant digits, which
//! round-trips every double; controls appear in decreasing qubit order.
//!
//! Picture files hold one line per gate, time flowing down, with one
//! single-character cell per qubit (leftmost = qubit nb-1) joined by two
//! spaces. Log files are fixed-order `key: value` lines.

use std::fmt;
use std::fmt::Write as _;

use crate::circuit::{Circuit, Control, Gate, GateCounts, GateKind};

/// Degrees per radian; emission multiplies by this and parsing divides by
/// it, keeping a serialize/parse round trip within 1 ulp.
const DEG_PER_RAD: f64 = 180.0 / std::f64::consts::PI;

/// Which compiler produced a circuit; names the Log file's application line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Application {
    Fourier,
    Shift,
    Glue,
    Oracle,
}

impl Application {
    pub fn name(self) -> &'static str {
        match self {
            Application::Fourier => "fourier",
            Application::Shift => "shift",
            Application::Glue => "glue",
            Application::Oracle => "oracle",
        }
    }
}

/// Verification outcome recorded in the Log file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerifyOutcome {
    Skipped,
    MaxAbsDiff(f64),
}

/// Everything the Log file reports.
#[derive(Debug, Clone, PartialEq)]
pub struct LogSummary {
    pub application: Application,
    pub nb: usize,
    /// Subcommand parameters in fixed order (t | r1, r2, g | g, bands).
    pub params: Vec<(String, String)>,
    pub counts: GateCounts,
    pub verify: VerifyOutcome,
}

/// Format a real with 17 significant digits in plain decimal notation.
pub fn format_real_17(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.16}", x);
    }
    let a = x.abs();
    let mut digits = a.log10().floor() as i32 + 1;
    // log10 can land on the wrong side of a decade boundary.
    if 10f64.powi(digits - 1) > a {
        digits -= 1;
    } else if 10f64.powi(digits) <= a {
        digits += 1;
    }
    let decimals = (17 - digits).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Distance between two doubles in representable steps.
pub fn ulp_distance(a: f64, b: f64) -> u64 {
    fn key(x: f64) -> u64 {
        let bits = x.to_bits();
        if bits >> 63 == 1 {
            !bits
        } else {
            bits | (1 << 63)
        }
    }
    key(a).abs_diff(key(b))
}

fn push_controls(out: &mut String, controls: &[Control]) {
    if controls.is_empty() {
        return;
    }
    let mut sorted = controls.to_vec();
    sorted.sort_by_key(|c| std::cmp::Reverse(c.qubit));
    out.push_str(" IF");
    for c in &sorted {
        let _ = write!(out, " {}{}", c.qubit, if c.polarity { 'T' } else { 'F' });
    }
}

/// Serialize a circuit as an English file.
pub fn emit_english(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("QUANFORGE-ENG 1\n");
    let _ = writeln!(out, "NBITS {}", c.nb);
    for g in &c.gates {
        match g.kind {
            GateKind::Had | GateKind::Sigx => {
                let _ = write!(out, "{} AT {}", g.kind.name(), g.targets[0]);
            }
            GateKind::Phas | GateKind::Rotx | GateKind::Rotz => {
                let deg = g.angle.expect("valid circuit") * DEG_PER_RAD;
                let _ = write!(
                    out,
                    "{} {} AT {}",
                    g.kind.name(),
                    format_real_17(deg),
                    g.targets[0]
                );
            }
            GateKind::Swap => {
                let hi = g.targets[0].max(g.targets[1]);
                let lo = g.targets[0].min(g.targets[1]);
                let _ = write!(out, "SWAP {hi} {lo}");
            }
        }
        push_controls(&mut out, &g.controls);
        out.push('\n');
    }
    out
}

/// English-file parse failures, each carrying the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    BadHeader { line: usize },
    UnknownGate { line: usize, token: String },
    BadAngle { line: usize, token: String },
    BadTarget { line: usize },
    BadControl { line: usize, token: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::BadHeader { line } => write!(f, "BadHeader: line {line}"),
            ParseError::UnknownGate { line, token } => {
                write!(f, "UnknownGate: line {line}: {token:?}")
            }
            ParseError::BadAngle { line, token } => {
                write!(f, "BadAngle: line {line}: {token:?}")
            }
            ParseError::BadTarget { line } => write!(f, "BadTarget: line {line}"),
            ParseError::BadControl { line, token } => {
                write!(f, "BadControl: line {line}: {token:?}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

fn parse_qubit(tok: Option<&&str>, line: usize) -> Result<usize, ParseError> {
    tok.and_then(|t| t.parse::<usize>().ok())
        .ok_or(ParseError::BadTarget { line })
}

fn parse_control_token(tok: &str, line: usize) -> Result<Control, ParseError> {
    let bad = || ParseError::BadControl {
        line,
        token: tok.to_string(),
    };
    let polarity = match tok.as_bytes().last() {
        Some(b'T') => true,
        Some(b'F') => false,
        _ => return Err(bad()),
    };
    let qubit = tok[..tok.len() - 1].parse::<usize>().map_err(|_| bad())?;
    Ok(Control { qubit, polarity })
}

fn parse_gate_line(tokens: &[&str], line: usize) -> Result<Gate, ParseError> {
    let name = tokens.first().copied().unwrap_or("");
    let kind = GateKind::from_name(name).ok_or_else(|| ParseError::UnknownGate {
        line,
        token: name.to_string(),
    })?;
    let mut pos = 1;
    let mut angle = None;
    if kind.takes_angle() {
        let tok = *tokens.get(pos).ok_or(ParseError::BadAngle {
            line,
            token: String::new(),
        })?;
        let deg: f64 = tok
            .parse()
            .ok()
            .filter(|d: &f64| d.is_finite())
            .ok_or_else(|| ParseError::BadAngle {
                line,
                token: tok.to_string(),
            })?;
        angle = Some(deg / DEG_PER_RAD);
        pos += 1;
    }
    let targets = if kind == GateKind::Swap {
        let a = parse_qubit(tokens.get(pos), line)?;
        let b = parse_qubit(tokens.get(pos + 1), line)?;
        pos += 2;
        vec![a, b]
    } else {
        if tokens.get(pos).copied() != Some("AT") {
            return Err(ParseError::BadTarget { line });
        }
        let q = parse_qubit(tokens.get(pos + 1), line)?;
        pos += 2;
        vec![q]
    };
    let mut controls = Vec::new();
    if pos < tokens.len() {
        if tokens[pos] != "IF" || pos + 1 == tokens.len() {
            return Err(ParseError::BadControl {
                line,
                token: tokens[pos].to_string(),
            });
        }
        for tok in &tokens[pos + 1..] {
            controls.push(parse_control_token(tok, line)?);
        }
    }
    Ok(Gate {
        kind,
        targets,
        angle,
        controls,
    })
}

/// Parse an English file back into a circuit.
///
/// Tolerates extra interior whitespace; rejects unknown gate names and
/// malformed targets, angles or controls with their line number.
pub fn parse_english(text: &str) -> Result<Circuit, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let header: Vec<&str> = lines
        .first()
        .map(|l| l.split_whitespace().collect())
        .unwrap_or_default();
    if header != ["QUANFORGE-ENG", "1"] {
        return Err(ParseError::BadHeader { line: 1 });
    }
    let nbits_line: Vec<&str> = lines
        .get(1)
        .map(|l| l.split_whitespace().collect())
        .unwrap_or_default();
    let nb = match nbits_line.as_slice() {
        ["NBITS", n] => n
            .parse::<usize>()
            .map_err(|_| ParseError::BadHeader { line: 2 })?,
        _ => return Err(ParseError::BadHeader { line: 2 }),
    };
    let mut gates = Vec::new();
    for (idx, raw) in lines.iter().enumerate().skip(2) {
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        gates.push(parse_gate_line(&tokens, idx + 1)?);
    }
    Ok(Circuit::new(nb, gates))
}

fn picture_symbol(kind: GateKind) -> char {
    match kind {
        GateKind::Had => 'H',
        GateKind::Phas => 'P',
        GateKind::Rotx => 'R',
        GateKind::Rotz => 'Z',
        GateKind::Sigx => 'X',
        GateKind::Swap => '*',
    }
}

/// Serialize a circuit as a Picture file: one line per gate, leftmost cell
/// is qubit nb-1, `@`/`O` mark true/false controls, `|` spans the gap.
pub fn emit_picture(c: &Circuit) -> String {
    let mut out = String::new();
    for g in &c.gates {
        let mut cells = vec!['-'; c.nb];
        for &t in &g.targets {
            cells[t] = picture_symbol(g.kind);
        }
        for ctl in &g.controls {
            cells[ctl.qubit] = if ctl.polarity { '@' } else { 'O' };
        }
        let lo = g.qubits().min().expect("gates have targets");
        let hi = g.qubits().max().expect("gates have targets");
        for cell in cells.iter_mut().take(hi).skip(lo + 1) {
            if *cell == '-' {
                *cell = '|';
            }
        }
        let line: Vec<String> = (0..c.nb).rev().map(|q| cells[q].to_string()).collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

/// Serialize a Log summary as fixed-order `key: value` lines.
pub fn emit_log(s: &LogSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "application: {}", s.application.name());
    let _ = writeln!(out, "nbits: {}", s.nb);
    for (key, value) in &s.params {
        let _ = writeln!(out, "{key}: {value}");
    }
    let _ = writeln!(out, "gates_total: {}", s.counts.total());
    for (kind, n) in s.counts.iter() {
        let _ = writeln!(out, "gates_{}: {}", kind.name(), n);
    }
    let verify = match s.verify {
        VerifyOutcome::Skipped => "skipped".to_string(),
        VerifyOutcome::MaxAbsDiff(d) => format!("{d:e}"),
    };
    let _ = writeln!(out, "verify_max_abs_diff: {verify}");
    out
}

//! Pulse programs.
//!
//! ```text
//! program   := statement { (";" | newline) statement }
//! statement := "pulse" target angle phase
//!            | "delay" seconds
//!            | "grad" seconds
//!            | "acquire" points dwell_seconds
//! target    := "I" | "S" | "both"
//! angle     := degrees | "magic"
//! phase     := "x" | "y" | "-x" | "-y" | degrees
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Blank statements
//! are ignored. `acquire` may appear at most once, as the last event.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rotations::magic_angle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    I,
    S,
    Both,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::I => "I",
            Target::S => "S",
            Target::Both => "both",
        })
    }
}

/// Flip angle of a pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Degrees(f64),
    /// `arccos(1/√3)`
    Magic,
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match self {
            Angle::Degrees(d) => d.to_radians(),
            Angle::Magic => magic_angle(),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Degrees(d) => write!(f, "{d}"),
            Angle::Magic => f.write_str("magic"),
        }
    }
}

/// Phase of the rotation axis in the transverse plane, measured from +x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phase {
    X,
    Y,
    MinusX,
    MinusY,
    Degrees(f64),
}

impl Phase {
    pub fn radians(&self) -> f64 {
        match self {
            Phase::X => 0.0,
            Phase::Y => 90f64.to_radians(),
            Phase::MinusX => 180f64.to_radians(),
            Phase::MinusY => 270f64.to_radians(),
            Phase::Degrees(d) => d.to_radians(),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::X => f.write_str("x"),
            Phase::Y => f.write_str("y"),
            Phase::MinusX => f.write_str("-x"),
            Phase::MinusY => f.write_str("-y"),
            Phase::Degrees(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseEvent {
    Pulse { target: Target, angle: Angle, phase: Phase },
    Delay { seconds: f64 },
    Gradient { seconds: f64 },
    Acquire { points: usize, dwell: f64 },
}

impl fmt::Display for PulseEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PulseEvent::Pulse { target, angle, phase } => write!(f, "pulse {target} {angle} {phase}"),
            PulseEvent::Delay { seconds } => write!(f, "delay {seconds}"),
            PulseEvent::Gradient { seconds } => write!(f, "grad {seconds}"),
            PulseEvent::Acquire { points, dwell } => write!(f, "acquire {points} {dwell}"),
        }
    }
}

/// A parsed program: events in time order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseSequence {
    pub events: Vec<PulseEvent>,
}

impl PulseSequence {
    pub fn new(events: Vec<PulseEvent>) -> Self {
        Self { events }
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn acquisition(&self) -> Option<(usize, f64)> {
        match self.events.last() {
            Some(PulseEvent::Acquire { points, dwell }) => Some((*points, *dwell)),
            _ => None,
        }
    }
}

/// One event per line; parses back to an equal sequence.
impl fmt::Display for PulseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for event in &self.events {
            writeln!(f, "{event}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("unknown command '{0}'")]
    UnknownCommand(String),
    #[error("'{command}' is missing its {expected}")]
    MissingArgument { command: &'static str, expected: &'static str },
    #[error("unexpected token '{0}'")]
    UnexpectedToken(String),
    #[error("invalid number '{0}'")]
    InvalidNumber(String),
    #[error("invalid pulse target '{0}' (expected I, S or both)")]
    InvalidTarget(String),
    #[error("invalid phase '{0}' (expected x, y, -x, -y or degrees)")]
    InvalidPhase(String),
    #[error("{0} must not be negative")]
    Negative(&'static str),
    #[error("acquire needs at least 2 points and a positive dwell")]
    BadAcquisition,
    #[error("acquire must be the last event")]
    AcquireNotLast,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column, kind }
    }
}

/// Splits the source into statements of located tokens. Columns are
/// 1-based character offsets.
fn statements<'a>(text: &'a str) -> Vec<Vec<Token<'a>>> {
    let mut out = Vec::new();
    for (line_index, line) in text.lines().enumerate() {
        let code = line.split('#').next().unwrap_or("");
        let mut current: Vec<Token<'a>> = Vec::new();
        let mut start: Option<usize> = None;
        let flush = |start: &mut Option<usize>, end: usize, current: &mut Vec<Token<'a>>| {
            if let Some(s) = start.take() {
                let column = code[..s].chars().count() + 1;
                current.push(Token { text: &code[s..end], line: line_index + 1, column });
            }
        };
        for (i, ch) in code.char_indices() {
            if ch == ';' {
                flush(&mut start, i, &mut current);
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            } else if ch.is_whitespace() {
                flush(&mut start, i, &mut current);
            } else if start.is_none() {
                start = Some(i);
            }
        }
        flush(&mut start, code.len(), &mut current);
        if !current.is_empty() {
            out.push(current);
        }
    }
    out
}

fn number(tok: &Token<'_>) -> Result<f64, ParseError> {
    match tok.text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(tok.error(ParseErrorKind::InvalidNumber(tok.text.to_string()))),
    }
}

fn duration(tok: &Token<'_>, what: &'static str) -> Result<f64, ParseError> {
    let v = number(tok)?;
    if v < 0.0 {
        return Err(tok.error(ParseErrorKind::Negative(what)));
    }
    Ok(v)
}

fn parse_statement(tokens: &[Token<'_>]) -> Result<PulseEvent, ParseError> {
    let head = tokens[0];
    let (command, arity, names): (&'static str, usize, &[&'static str]) = match head.text {
        "pulse" => ("pulse", 3, &["target", "angle", "phase"]),
        "delay" => ("delay", 1, &["duration"]),
        "grad" => ("grad", 1, &["duration"]),
        "acquire" => ("acquire", 2, &["point count", "dwell time"]),
        other => return Err(head.error(ParseErrorKind::UnknownCommand(other.to_string()))),
    };
    let args = &tokens[1..];
    if args.len() < arity {
        let last = tokens.last().expect("statement is non-empty");
        let column = last.column + last.text.chars().count();
        return Err(ParseError {
            line: head.line,
            column,
            kind: ParseErrorKind::MissingArgument { command, expected: names[args.len()] },
        });
    }
    if let Some(extra) = args.get(arity) {
        return Err(extra.error(ParseErrorKind::UnexpectedToken(extra.text.to_string())));
    }
    let event = match command {
        "pulse" => {
            let target = match args[0].text {
                "I" => Target::I,
                "S" => Target::S,
                "both" => Target::Both,
                other => return Err(args[0].error(ParseErrorKind::InvalidTarget(other.to_string()))),
            };
            let angle = match args[1].text {
                "magic" => Angle::Magic,
                _ => Angle::Degrees(number(&args[1])?),
            };
            let phase = match args[2].text {
                "x" => Phase::X,
                "y" => Phase::Y,
                "-x" => Phase::MinusX,
                "-y" => Phase::MinusY,
                other => match other.parse::<f64>() {
                    Ok(v) if v.is_finite() => Phase::Degrees(v),
                    _ => return Err(args[2].error(ParseErrorKind::InvalidPhase(other.to_string()))),
                },
            };
            PulseEvent::Pulse { target, angle, phase }
        }
        "delay" => PulseEvent::Delay { seconds: duration(&args[0], "delay")? },
        "grad" => PulseEvent::Gradient { seconds: duration(&args[0], "gradient duration")? },
        "acquire" => {
            let points = args[0]
                .text
                .parse::<usize>()
                .map_err(|_| args[0].error(ParseErrorKind::InvalidNumber(args[0].text.to_string())))?;
            let dwell = number(&args[1])?;
            if points < 2 || dwell <= 0.0 {
                return Err(head.error(ParseErrorKind::BadAcquisition));
            }
            PulseEvent::Acquire { points, dwell }
        }
        _ => unreachable!(),
    };
    Ok(event)
}

pub fn parse_sequence(text: &str) -> Result<PulseSequence, ParseError> {
    let stmts = statements(text);
    let mut events = Vec::with_capacity(stmts.len());
    let mut acquire_at: Option<Token<'_>> = None;
    for tokens in &stmts {
        if let Some(tok) = acquire_at {
            return Err(tok.error(ParseErrorKind::AcquireNotLast));
        }
        let event = parse_statement(tokens)?;
        if matches!(event, PulseEvent::Acquire { .. }) {
            acquire_at = Some(tokens[0]);
        }
        events.push(event);
    }
    Ok(PulseSequence { events })
}

impl FromStr for PulseSequence {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequence(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preparation_sequence() {
        let seq = parse_sequence("pulse I 60 y; delay 0.0693; pulse S 30 y").unwrap();
        assert_eq!(
            seq.events,
            vec![
                PulseEvent::Pulse { target: Target::I, angle: Angle::Degrees(60.0), phase: Phase::Y },
                PulseEvent::Delay { seconds: 0.0693 },
                PulseEvent::Pulse { target: Target::S, angle: Angle::Degrees(30.0), phase: Phase::Y },
            ]
        );
    }

    #[test]
    fn empty_and_comments() {
        assert!(parse_sequence("").unwrap().is_empty());
        assert!(parse_sequence("  # nothing here\n;;\n").unwrap().is_empty());
        let seq = parse_sequence("grad 0.002 # crush\n  pulse both magic -x\n").unwrap();
        assert_eq!(seq.len(), 2);
    }

    #[test]
    fn missing_phase() {
        let err = parse_sequence("pulse I 60").unwrap_err();
        assert_eq!((err.line, err.column), (1, 11));
        assert!(matches!(err.kind, ParseErrorKind::MissingArgument { expected: "phase", .. }));
    }

    #[test]
    fn located_errors() {
        let cases: &[(&str, usize, usize)] = &[
            ("delay 1\nflip I 90 x", 2, 1),
            ("pulse Q 90 x", 1, 7),
            ("pulse I ninety x", 1, 9),
            ("pulse I 90 z", 1, 12),
            ("delay -1", 1, 7),
            ("grad 1 2", 1, 8),
            ("acquire 1 0.001", 1, 1),
            ("acquire 16 0.001; delay 1", 1, 1),
            ("  delay 0.1;  grad abc", 1, 20),
        ];
        for (text, line, column) in cases {
            let err = parse_sequence(text).unwrap_err();
            assert_eq!((err.line, err.column), (*line, *column), "{text}: {err}");
        }
        let err = parse_sequence("acquire 8 0.1\n delay 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::AcquireNotLast);
    }

    #[test]
    fn display_round_trip() {
        let text = "pulse both 90 45\ndelay 0.000273\npulse both 90 180\ngrad 0.002183\npulse I magic x\nacquire 4096 0.000273\n";
        let seq = parse_sequence(text).unwrap();
        assert_eq!(seq.to_string(), text);
        assert_eq!(seq.acquisition(), Some((4096, 0.000273)));
    }
}

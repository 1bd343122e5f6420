//! Line-based text format for tangle diagrams.
//!
//! ```text
//! # trefoil
//! tangle n=3
//! kappa=2,0,1
//! eps=+,+,+
//! bridges=0,2
//! schedule=1:1;3:3
//! ```
//!
//! `bridges` and `schedule` are optional but must appear together. `#`
//! starts a comment that runs to the end of the line.

use std::fmt::{self, Write as _};

use suknot_core::tangle::{ScheduleStep, Sign, TangleDiagram, ValidationError, WirtingerCode};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid tangle: {0}")]
    Validation(#[from] ValidationError),
}

/// A slice of the input with its 1-based position.
#[derive(Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Span<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn trimmed(self) -> Self {
        let lead = self.text.len() - self.text.trim_start().len();
        Span {
            text: self.text.trim(),
            line: self.line,
            column: self.column + lead,
        }
    }

    fn split_once(self, sep: char) -> Option<(Self, Self)> {
        let at = self.text.find(sep)?;
        let left = Span {
            text: &self.text[..at],
            ..self
        };
        let right = Span {
            text: &self.text[at + sep.len_utf8()..],
            line: self.line,
            column: self.column + at + sep.len_utf8(),
        };
        Some((left, right))
    }

    fn split(self, sep: char) -> impl Iterator<Item = Span<'a>> {
        let mut offset = 0;
        self.text.split(sep).map(move |part| {
            let s = Span {
                text: part,
                line: self.line,
                column: self.column + offset,
            };
            offset += part.len() + sep.len_utf8();
            s.trimmed()
        })
    }

    fn number(self) -> Result<usize, ParseError> {
        self.text.parse().map_err(|_| {
            self.error(format!(
                "expected a non-negative integer, found {:?}",
                self.text
            ))
        })
    }
}

#[derive(Default)]
struct Fields<'a> {
    n: Option<(usize, Span<'a>)>,
    kappa: Option<(Vec<usize>, Span<'a>)>,
    eps: Option<(Vec<Sign>, Span<'a>)>,
    bridges: Option<(Vec<usize>, Span<'a>)>,
    schedule: Option<(Vec<ScheduleStep>, Span<'a>)>,
}

fn set<'a, T>(slot: &mut Option<(T, Span<'a>)>, value: T, key: Span<'a>) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(key.error(format!("duplicate key `{}`", key.text)));
    }
    *slot = Some((value, key));
    Ok(())
}

fn list<T>(
    value: Span<'_>,
    sep: char,
    item: impl Fn(Span<'_>) -> Result<T, ParseError>,
) -> Result<Vec<T>, ParseError> {
    if value.text.is_empty() {
        return Err(value.error("empty list"));
    }
    value.split(sep).map(item).collect()
}

fn sign(s: Span<'_>) -> Result<Sign, ParseError> {
    match s.text {
        "+" | "+1" => Ok(Sign::Positive),
        "-" | "-1" => Ok(Sign::Negative),
        other => Err(s.error(format!("expected `+` or `-`, found {other:?}"))),
    }
}

fn step(s: Span<'_>) -> Result<ScheduleStep, ParseError> {
    let (arc, crossing) = s
        .split_once(':')
        .ok_or_else(|| s.error(format!("expected `arc:crossing`, found {:?}", s.text)))?;
    Ok(ScheduleStep {
        target: arc.trimmed().number()?,
        crossing: crossing.trimmed().number()?,
    })
}

/// Parses a diagram, checking the code and the schedule.
pub fn parse(text: &str) -> Result<TangleDiagram, FormatError> {
    let mut fields = Fields::default();
    let mut last_line = 1;
    for (index, raw) in text.lines().enumerate() {
        last_line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let line = Span {
            text: content,
            line: index + 1,
            column: 1,
        }
        .trimmed();
        if line.text.is_empty() {
            continue;
        }
        if fields.n.is_none() {
            let rest = line
                .text
                .strip_prefix("tangle")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| line.error("expected header `tangle n=<N>`"))?;
            let rest = Span {
                text: rest,
                line: line.line,
                column: line.column + "tangle".len(),
            }
            .trimmed();
            let (key, value) = rest
                .split_once('=')
                .filter(|(k, _)| k.text.trim() == "n")
                .ok_or_else(|| rest.error("expected `n=<N>` after `tangle`"))?;
            let value = value.trimmed();
            fields.n = Some((value.number()?, key));
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| line.error("expected `key=value`"))?;
        let (key, value) = (key.trimmed(), value.trimmed());
        match key.text {
            "kappa" => set(&mut fields.kappa, list(value, ',', |s| s.number())?, key)?,
            "eps" => set(&mut fields.eps, list(value, ',', sign)?, key)?,
            "bridges" => set(&mut fields.bridges, list(value, ',', |s| s.number())?, key)?,
            "schedule" => {
                let steps = if value.text.is_empty() {
                    Vec::new()
                } else {
                    list(value, ';', step)?
                };
                set(&mut fields.schedule, steps, key)?
            }
            other => return Err(key.error(format!("unknown key `{other}`")).into()),
        }
    }

    let end = ParseError {
        line: last_line,
        column: 1,
        message: String::new(),
    };
    let missing = |what: &str| ParseError {
        message: format!("missing `{what}`"),
        ..end.clone()
    };
    let (n, _) = fields.n.ok_or_else(|| missing("tangle n=<N>"))?;
    let (kappa, _) = fields.kappa.ok_or_else(|| missing("kappa"))?;
    let (eps, _) = fields.eps.ok_or_else(|| missing("eps"))?;
    if kappa.len() != n || eps.len() != n {
        return Err(ValidationError::CrossingCount {
            declared: n,
            actual: if kappa.len() != n {
                kappa.len()
            } else {
                eps.len()
            },
        }
        .into());
    }
    let code = WirtingerCode::new(kappa, eps)?;
    match (fields.bridges, fields.schedule) {
        (Some((bridges, _)), Some((steps, _))) => Ok(TangleDiagram::new(code, bridges, steps)?),
        (None, None) => Ok(TangleDiagram::unscheduled(code)),
        (Some((_, key)), None) => Err(key.error("`bridges` given without `schedule`").into()),
        (None, Some((_, key))) => Err(key.error("`schedule` given without `bridges`").into()),
    }
}

/// Writes a diagram in the format read by [`parse`].
pub fn serialize(d: &TangleDiagram) -> String {
    Serialized(d).to_string()
}

struct Serialized<'a>(&'a TangleDiagram);

impl fmt::Display for Serialized<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = self.0.code();
        let join = |items: &mut dyn Iterator<Item = String>, sep: &str| {
            items.collect::<Vec<_>>().join(sep)
        };
        writeln!(f, "tangle n={}", code.crossings())?;
        writeln!(
            f,
            "kappa={}",
            join(&mut code.kappa().iter().map(|k| k.to_string()), ",")
        )?;
        writeln!(
            f,
            "eps={}",
            join(
                &mut code.signs().iter().map(|s| s.as_char().to_string()),
                ","
            )
        )?;
        if let Some(s) = self.0.schedule() {
            writeln!(
                f,
                "bridges={}",
                join(&mut s.bridges().iter().map(|b| b.to_string()), ",")
            )?;
            let mut steps = String::new();
            for (i, st) in s.steps().iter().enumerate() {
                if i > 0 {
                    steps.push(';');
                }
                write!(steps, "{}:{}", st.target, st.crossing)?;
            }
            writeln!(f, "schedule={steps}")?;
        }
        Ok(())
    }
}

//! Problem input: a TOML problem file or a line-oriented batch file.
//!
//! TOML form:
//!
//! ```toml
//! claims = ["10", "50", "70"]   # decimal strings or integers
//! estate = "100"
//! labels = ["a", "b", "c"]      # optional
//! ```
//!
//! Batch form, one problem per line, `#` starts a comment:
//!
//! ```text
//! 10,50,70;100
//! 50,100;100
//! ```

use std::ops::Range;

use pcea_core::{ClaimsProblem, Ratio};
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

/// A validated problem with one display label per agent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedProblem {
    pub problem: ClaimsProblem,
    pub labels: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
    Float(f64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    claims: Spanned<Vec<Spanned<Number>>>,
    estate: Spanned<Number>,
    labels: Option<Spanned<Vec<String>>>,
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("agent_{i}")).collect()
}

/// Parses either input form; the batch form is recognised by a `;` on the
/// first content line.
pub fn parse_input(text: &str, source_name: &str) -> Result<Vec<LoadedProblem>, CliError> {
    let first = text.lines().map(strip_comment).find(|l| !l.trim().is_empty());
    match first {
        None => Err(CliError::parse(source_name, text, 0, "no problem given")),
        Some(line) if line.contains(';') && !line.contains('=') => parse_batch(text, source_name),
        Some(_) => parse_problem_file(text, source_name).map(|p| vec![p]),
    }
}

pub fn parse_problem_file(text: &str, source_name: &str) -> Result<LoadedProblem, CliError> {
    let file: ProblemFile = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        CliError::parse(source_name, text, offset, e.message().trim().to_string())
    })?;
    let number = |n: &Spanned<Number>| -> Result<Ratio, CliError> {
        let span = n.span();
        match n.get_ref() {
            Number::Int(i) => Ok(Ratio::from(*i)),
            Number::Text(s) => s
                .parse::<Ratio>()
                .map_err(|_| CliError::parse(source_name, text, span.start, format!("not an exact decimal: {s:?}"))),
            Number::Float(f) => Err(CliError::parse(
                source_name,
                text,
                span.start,
                format!("write {f} as a quoted decimal string so it is read exactly"),
            )),
        }
    };
    let claims = file.claims.get_ref().iter().map(number).collect::<Result<Vec<_>, _>>()?;
    let estate = number(&file.estate)?;
    let labels = match file.labels {
        None => default_labels(claims.len()),
        Some(l) if l.get_ref().len() == claims.len() => l.into_inner(),
        Some(l) => {
            let msg = format!("{} labels for {} claims", l.get_ref().len(), claims.len());
            return Err(CliError::parse(source_name, text, l.span().start, msg));
        }
    };
    let problem = ClaimsProblem::new(claims, estate)?;
    Ok(LoadedProblem { problem, labels })
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

pub fn parse_batch(text: &str, source_name: &str) -> Result<Vec<LoadedProblem>, CliError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let err = |range: Range<usize>, msg: String| CliError::parse(source_name, text, line_start + range.start, msg);
        let Some(semi) = content.find(';') else {
            return Err(err(0..0, "expected `claims;estate`".into()));
        };
        if content[semi + 1..].contains(';') {
            return Err(err(semi + 1..semi + 1, "more than one `;`".into()));
        }
        let mut claims = Vec::new();
        let mut pos = 0;
        for field in content[..semi].split(',') {
            claims.push(parse_field(field, pos).map_err(|(at, m)| err(at..at, m))?);
            pos += field.len() + 1;
        }
        let estate = parse_field(&content[semi + 1..], semi + 1).map_err(|(at, m)| err(at..at, m))?;
        let n = claims.len();
        let problem = ClaimsProblem::new(claims, estate)?;
        out.push(LoadedProblem { problem, labels: default_labels(n) });
    }
    Ok(out)
}

fn parse_field(field: &str, start: usize) -> Result<Ratio, (usize, String)> {
    let trimmed = field.trim();
    let at = start + field.len() - field.trim_start().len();
    if trimmed.is_empty() {
        return Err((at, "empty value".into()));
    }
    trimmed.parse::<Ratio>().map_err(|_| (at, format!("not an exact decimal: {trimmed:?}")))
}

/// Comma-separated decimals, as used by `--grid` and `--claims`.
pub fn parse_list(s: &str, flag: &str) -> Result<Vec<Ratio>, CliError> {
    let items: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    if items.is_empty() {
        return Err(CliError::Usage(format!("{flag} needs at least one value")));
    }
    items
        .into_iter()
        .map(|t| t.parse::<Ratio>().map_err(|_| CliError::Usage(format!("{flag}: not an exact decimal: {t:?}"))))
        .collect()
}

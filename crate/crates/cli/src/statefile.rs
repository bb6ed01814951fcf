//! Plain-text state files.
//!
//! ```text
//! # comments run to the end of the line
//! basis: computational
//! amplitudes:
//!   0.5 0
//!   (0.5,0)
//!   ...
//! ```
//!
//! `amplitudes` takes 8 complex entries in index order `000..111`;
//! `density` takes 64 entries row-major. Each entry is either two bare
//! numbers `re im` or a parenthesized literal `(re,im)`. Exactly one of the
//! two sections must be present.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;
use tritangle::qcore::{BasisTag, CMat};
use tritangle::{DensityMatrix, PureState};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateData {
    Amplitudes([Complex64; 8]),
    Density(Box<[Complex64; 64]>),
}

/// Parsed file before any physical validation.
#[derive(Debug, Clone, PartialEq)]
pub struct StateFile {
    pub basis: BasisTag,
    pub data: StateData,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Pair(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Section {
    Amplitudes,
    Density,
}

impl Section {
    fn name(self) -> &'static str {
        match self {
            Section::Amplitudes => "amplitudes",
            Section::Density => "density",
        }
    }

    fn len(self) -> usize {
        match self {
            Section::Amplitudes => 8,
            Section::Density => 64,
        }
    }
}

fn parse_number(text: &str, line: usize, column: usize) -> Result<f64, ParseError> {
    let x: f64 = text
        .parse()
        .map_err(|_| err(line, column, format!("expected a number, found `{text}`")))?;
    if !x.is_finite() {
        return Err(err(line, column, format!("`{text}` is not finite")));
    }
    Ok(x)
}

/// Splits one line of entry text into tokens; `offset` is the 0-based
/// column where `text` starts.
fn tokenize(
    text: &str,
    line: usize,
    offset: usize,
    out: &mut Vec<(Tok, usize, usize)>,
) -> Result<(), ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() || c == b',' {
            i += 1;
            continue;
        }
        let column = offset + i + 1;
        if c == b'(' {
            let close = text[i..]
                .find(')')
                .ok_or_else(|| err(line, column, "unclosed `(`"))?;
            let inner = &text[i + 1..i + close];
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(err(
                    line,
                    column,
                    format!("expected `(re,im)`, found `({inner})`"),
                ));
            }
            let re = parse_number(parts[0], line, column + 1)?;
            let im = parse_number(parts[1], line, column + 1)?;
            out.push((Tok::Pair(re, im), line, column));
            i += close + 1;
        } else {
            let end = text[i..]
                .find(|ch: char| ch.is_ascii_whitespace() || ch == ',' || ch == '(')
                .map_or(bytes.len(), |k| i + k);
            out.push((
                Tok::Num(parse_number(&text[i..end], line, column)?),
                line,
                column,
            ));
            i = end;
        }
    }
    Ok(())
}

fn entries(
    tokens: &[(Tok, usize, usize)],
    section: Section,
    header: (usize, usize),
) -> Result<Vec<Complex64>, ParseError> {
    let mut out = Vec::with_capacity(section.len());
    let mut k = 0;
    while k < tokens.len() {
        let (tok, line, column) = &tokens[k];
        match tok {
            Tok::Pair(re, im) => {
                out.push(Complex64::new(*re, *im));
                k += 1;
            }
            Tok::Num(re) => match tokens.get(k + 1) {
                Some((Tok::Num(im), _, _)) => {
                    out.push(Complex64::new(*re, *im));
                    k += 2;
                }
                _ => return Err(err(*line, *column, "real part without an imaginary part")),
            },
        }
        if out.len() > section.len() {
            return Err(err(
                *line,
                *column,
                format!("{} takes {} entries", section.name(), section.len()),
            ));
        }
    }
    if out.len() != section.len() {
        return Err(err(
            header.0,
            header.1,
            format!(
                "{} has {} entries, expected {}",
                section.name(),
                out.len(),
                section.len()
            ),
        ));
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<StateFile, ParseError> {
    let mut basis: Option<BasisTag> = None;
    let mut sections: Vec<(Section, (usize, usize), Vec<(Tok, usize, usize)>)> = Vec::new();
    let mut current: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let body = content.trim_start();
        let key_end = body
            .find(':')
            .filter(|&k| body[..k].chars().all(|c| c.is_ascii_alphabetic()));
        if let Some(k) = key_end {
            let key = &body[..k];
            let rest = &body[k + 1..];
            let rest_offset = indent + k + 1;
            match key {
                "basis" => {
                    if basis.is_some() {
                        return Err(err(line, indent + 1, "duplicate `basis`"));
                    }
                    let tag = rest.trim();
                    if tag.is_empty() {
                        return Err(err(line, rest_offset + 1, "`basis` needs a tag"));
                    }
                    basis = Some(BasisTag::from(tag));
                    current = None;
                }
                "amplitudes" | "density" => {
                    let section = if key == "amplitudes" {
                        Section::Amplitudes
                    } else {
                        Section::Density
                    };
                    if sections.iter().any(|(s, _, _)| *s == section) {
                        return Err(err(line, indent + 1, format!("duplicate `{key}`")));
                    }
                    let mut toks = Vec::new();
                    tokenize(rest, line, rest_offset, &mut toks)?;
                    sections.push((section, (line, indent + 1), toks));
                    current = Some(sections.len() - 1);
                }
                other => return Err(err(line, indent + 1, format!("unknown field `{other}`"))),
            }
            continue;
        }
        match current {
            Some(s) => tokenize(content, line, 0, &mut sections[s].2)?,
            None => {
                return Err(err(
                    line,
                    indent + 1,
                    "entries outside an `amplitudes` or `density` section",
                ))
            }
        }
    }

    let (section, header, toks) = match sections.len() {
        0 => return Err(err(1, 1, "missing `amplitudes` or `density`")),
        1 => sections.pop().unwrap(),
        _ => {
            let (_, (line, column), _) = sections[1];
            return Err(err(
                line,
                column,
                "give either `amplitudes` or `density`, not both",
            ));
        }
    };
    let values = entries(&toks, section, header)?;
    let data = match section {
        Section::Amplitudes => StateData::Amplitudes(values.try_into().unwrap()),
        Section::Density => StateData::Density(Box::new(values.try_into().unwrap())),
    };
    Ok(StateFile {
        basis: basis.unwrap_or_default(),
        data,
    })
}

impl StateFile {
    pub fn pure(&self) -> Option<tritangle::Result<PureState>> {
        match &self.data {
            StateData::Amplitudes(a) => Some(PureState::new(*a, self.basis.clone())),
            StateData::Density(_) => None,
        }
    }

    pub fn density(&self) -> Option<tritangle::Result<DensityMatrix>> {
        match &self.data {
            StateData::Density(d) => Some(DensityMatrix::new(CMat::from_fn(|i, j| d[8 * i + j]))),
            StateData::Amplitudes(_) => None,
        }
    }
}

/// 17 significant digits, which round-trips every `f64`.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_pure(s: &PureState) -> String {
    let mut out = String::new();
    writeln!(out, "basis: {}", s.basis()).unwrap();
    writeln!(out, "amplitudes:").unwrap();
    for (k, z) in s.amps().iter().enumerate() {
        writeln!(out, "  {} {}  # |{k:03b}>", full(z.re), full(z.im)).unwrap();
    }
    out
}

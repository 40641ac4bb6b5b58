//! Reading, writing and drawing diagrams.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{validate, GridDiagram, GridError, RawDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" | "txt" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Text => "text",
        })
    }
}

/// A syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let msg = e.to_string();
        // serde_json appends " at line L column C"; keep only the message
        let message = match msg.rfind(" at line ") {
            Some(idx) => msg[..idx].to_string(),
            None => msg,
        };
        ParseError {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// Parses JSON or text diagram data.
pub fn parse_diagram(src: &str, format: Format) -> Result<GridDiagram, ReadError> {
    let raw = match format {
        Format::Json => serde_json::from_str::<RawDiagram>(src).map_err(ParseError::from)?,
        Format::Text => parse_text(src)?,
    };
    Ok(validate(&raw)?)
}

fn parse_text(src: &str) -> Result<RawDiagram, ParseError> {
    let mut n: Option<i64> = None;
    let mut columns = Vec::new();
    for (idx, line) in src.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain([(content.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((s, &content[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if tokens.is_empty() {
            continue;
        }
        let mut values = Vec::with_capacity(tokens.len());
        for (pos, tok) in &tokens {
            let v = tok.parse::<i64>().map_err(|_| ParseError {
                line: idx + 1,
                column: pos + 1,
                message: format!("expected an integer, found {tok:?}"),
            })?;
            values.push(v);
        }
        let expected = if n.is_none() { 1 } else { 2 };
        if values.len() != expected {
            return Err(ParseError {
                line: idx + 1,
                column: tokens[0].0 + 1,
                message: format!("expected {expected} integer(s), found {}", values.len()),
            });
        }
        match n {
            None => n = Some(values[0]),
            Some(_) => columns.push(values),
        }
    }
    let n = n.ok_or(ParseError {
        line: 1,
        column: 1,
        message: "missing size line".into(),
    })?;
    Ok(RawDiagram { n, columns })
}

pub fn format_diagram(d: &GridDiagram, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(d).expect("diagram serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("{}\n", d.size());
            for [a, b] in d.columns_vec() {
                s.push_str(&format!("{a} {b}\n"));
            }
            s
        }
    }
}

pub fn read_diagram(path: &Path, format: Format) -> Result<GridDiagram, ReadError> {
    let src = fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_diagram(&src, format)
}

pub fn write_diagram(d: &GridDiagram, path: &Path, format: Format) -> std::io::Result<()> {
    fs::write(path, format_diagram(d, format))
}

/// Draws the diagram with the top row first. Vertices are `+`, edges `-`
/// and `|`; at crossings the vertical edge is drawn since it passes over.
pub fn render_ascii(d: &GridDiagram) -> String {
    let n = d.size();
    let width = 2 * n - 1;
    let mut canvas = vec![vec![' '; width]; n];
    for (r, [c0, c1]) in d.rows().into_iter().enumerate() {
        canvas[r][2 * c0..=2 * c1].fill('-');
    }
    for c in 0..n {
        let [r0, r1] = d.column(c);
        for line in canvas.iter_mut().take(r1).skip(r0 + 1) {
            line[2 * c] = '|';
        }
        canvas[r0][2 * c] = '+';
        canvas[r1][2 * c] = '+';
    }
    let mut out = String::with_capacity(n * (width + 1));
    for line in canvas.iter().rev() {
        out.push_str(line.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let d = GridDiagram::from_pairs(&[[0, 2], [1, 4], [0, 3], [2, 4], [1, 3]]).unwrap();
        for format in [Format::Json, Format::Text] {
            let s = format_diagram(&d, format);
            assert_eq!(parse_diagram(&s, format).unwrap(), d);
        }
    }

    #[test]
    fn text_comments_and_positions() {
        let d = parse_diagram("# trivial\n2\n0 1 # first\n\n1 0\n", Format::Text).unwrap();
        assert_eq!(d, GridDiagram::trivial());
        match parse_diagram("2\n0 x\n1 0\n", Format::Text) {
            Err(ReadError::Parse(e)) => assert_eq!((e.line, e.column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn size_mismatch_rejected() {
        let r = parse_diagram(r#"{"n":3,"columns":[[0,1],[0,1]]}"#, Format::Json);
        assert!(matches!(r, Err(ReadError::Grid(GridError::Size { .. }))));
    }

    #[test]
    fn json_syntax_error_has_position() {
        match parse_diagram("{\"n\": 2,\n \"columns\": [[0,1],[0,1]\n", Format::Json) {
            Err(ReadError::Parse(e)) => assert!(e.line >= 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn render_trivial() {
        let s = render_ascii(&GridDiagram::trivial());
        assert_eq!(s, "+-+\n+-+\n");
        assert_eq!(s.matches('+').count(), 4);
    }

    #[test]
    fn render_draws_vertical_over() {
        let d = GridDiagram::from_pairs(&[[0, 2], [1, 4], [0, 3], [2, 4], [1, 3]]).unwrap();
        let s = render_ascii(&d);
        assert_eq!(s.matches('+').count(), 10);
        assert_eq!(s.lines().count(), 5);
    }
}

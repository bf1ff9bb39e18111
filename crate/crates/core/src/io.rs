//! Facet-list text format (`.scx`) and the structured JSON form.
//!
//! A `.scx` file holds one facet per line as whitespace-separated vertex labels. Lines
//! starting with `#` and blank lines are ignored. Output is always sorted and comment-free.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

pub fn parse_scx(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut vs = Vec::new();
        for token in line.split_whitespace() {
            let v = token.parse::<Vertex>().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("'{token}' is not a non-negative integer vertex label"),
            })?;
            vs.push(v);
        }
        let face = Face::new(vs).map_err(|e| Error::Parse {
            line: lineno + 1,
            message: e.to_string(),
        })?;
        facets.push(face);
    }
    Ok(SimplicialComplex::from_faces(facets))
}

pub fn write_scx(c: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in c.facets().iter().filter(|f| !f.is_empty()) {
        let line: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_json(text: &str) -> Result<SimplicialComplex> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

pub fn write_json(c: &SimplicialComplex) -> String {
    serde_json::to_string(c).expect("complexes always serialize")
}

/// Reads a complex, choosing the format by extension (`.json` or anything else as `.scx`).
pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_json(&text)
    } else {
        parse_scx(&text)
    }
}

pub fn write_complex(path: &Path, c: &SimplicialComplex) -> Result<()> {
    let text = if path.extension().is_some_and(|e| e == "json") {
        write_json(c)
    } else {
        write_scx(c)
    };
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Expected invariants stored next to a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub name: String,
    #[serde(default)]
    pub f_vector: Option<Vec<i64>>,
    #[serde(default)]
    pub g2: Option<i64>,
    #[serde(default)]
    pub tags: Vec<String>,
}

pub fn parse_sidecar(text: &str) -> Result<Sidecar> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments() {
        let c = parse_scx("# a triangle\n\n0 1\n1 2\n 2 0 \n").unwrap();
        assert_eq!(c.num_facets(), 3);
        assert_eq!(write_scx(&c), "0 1\n0 2\n1 2\n");
    }

    #[test]
    fn malformed_line_is_named() {
        let err = parse_scx("0 1 2\n1 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_scx("0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn round_trips() {
        let text = "0 1 2\n0 1 3\n0 2 3\n1 2 3\n";
        let c = parse_scx(text).unwrap();
        assert_eq!(write_scx(&c), text);
        let json = write_json(&c);
        assert_eq!(parse_json(&json).unwrap(), c);
        assert_eq!(write_scx(&parse_json(&json).unwrap()), text);
    }

    #[test]
    fn empty_file_is_empty_complex() {
        assert!(parse_scx("# nothing\n").unwrap().is_empty());
    }

    #[test]
    fn sidecar_fields() {
        let s = parse_sidecar(r#"{"name":"x","f_vector":[1,2],"g2":0,"tags":["sphere"]}"#).unwrap();
        assert_eq!(s.g2, Some(0));
        assert_eq!(s.tags, vec!["sphere"]);
    }
}

//! Turtle (subset) and N-Triples reading and writing.
//!
//! The parser accepts `@prefix`/`@base` and their SPARQL-style forms,
//! prefixed names, `<iri>`, `a`, `;` and `,` lists, `[ ... ]` and `_:x` blank
//! nodes, string, numeric and boolean literals, `^^` datatypes and language
//! tags. Collections `( ... )` and quoted triples are rejected with a
//! diagnostic. N-Triples is read by the same parser.

mod ntriples;
mod patch;
mod prefix;
mod turtle;
mod turtle_write;

use std::fmt;

use thiserror::Error;

pub use ntriples::serialize_ntriples;
pub use patch::{apply_patch, parse_patch, Patch, PatchError};
pub use prefix::{PrefixError, PrefixMap};
pub use turtle::parse_turtle;
pub use turtle_write::serialize_turtle;

use crate::rdf::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A located parse problem. Lines and columns start at 1; columns count characters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {severity}: {message}")]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl ParseDiagnostic {
    pub fn error(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic {
            line,
            column,
            message: message.into(),
            severity: Severity::Error,
        }
    }
}

/// Reads N-Triples. Any Turtle accepted by [`parse_turtle`] is accepted too.
pub fn parse_ntriples(text: &str) -> Result<Graph, ParseDiagnostic> {
    parse_turtle(text, None).map(|(g, _)| g)
}

/// Output syntax for graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdfFormat {
    Turtle,
    NTriples,
}

impl RdfFormat {
    /// Guesses from a file extension; Turtle otherwise.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("nt") => RdfFormat::NTriples,
            _ => RdfFormat::Turtle,
        }
    }
}

pub fn serialize(g: &Graph, format: RdfFormat, prefixes: &PrefixMap) -> String {
    match format {
        RdfFormat::Turtle => serialize_turtle(g, prefixes),
        RdfFormat::NTriples => serialize_ntriples(g),
    }
}

//! Graph patches used by the mutation fixtures.
//!
//! ```text
//! @prefix core: <https://w3id.org/mdo/core/> .
//! #! delete
//! data:calc core:hasInputStructure data:in .
//! #! insert
//! data:calc core:hasInputStructure data:other .
//! ```
//!
//! Lines before the first `#!` marker are a header prepended to every
//! section. Deleted triples must be ground and present in the target graph.

use thiserror::Error;

use super::{parse_turtle, ParseDiagnostic};
use crate::rdf::{Graph, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatchError {
    #[error("patch {section}: {source}")]
    Parse {
        section: &'static str,
        #[source]
        source: ParseDiagnostic,
    },
    #[error("unknown patch section `{0}`")]
    UnknownSection(String),
    #[error("deleted triple contains a blank node: {0}")]
    BlankInDelete(String),
    #[error("deleted triple is not in the graph: {0}")]
    MissingTriple(String),
}

#[derive(Debug, Clone, Default)]
pub struct Patch {
    pub delete: Vec<Triple>,
    pub insert: Graph,
}

pub fn parse_patch(text: &str) -> Result<Patch, PatchError> {
    let mut header = String::new();
    let mut delete = String::new();
    let mut insert = String::new();
    let mut current = &mut header;
    for line in text.lines() {
        if let Some(marker) = line.trim().strip_prefix("#!") {
            current = match marker.trim() {
                "delete" => &mut delete,
                "insert" => &mut insert,
                other => return Err(PatchError::UnknownSection(other.to_owned())),
            };
            // keep line numbers aligned with the file
            current.push('\n');
            continue;
        }
        current.push_str(line);
        current.push('\n');
    }
    let header_lines = header.lines().count();
    let section = |name: &'static str, body: &str| -> Result<Graph, PatchError> {
        if body.trim().is_empty() {
            return Ok(Graph::new());
        }
        parse_turtle(&format!("{header}{body}"), None)
            .map(|(g, _)| g)
            .map_err(|mut source| {
                source.line = source.line.saturating_sub(header_lines).max(1);
                PatchError::Parse { section: name, source }
            })
    };
    let deleted = section("delete", &delete)?;
    let mut triples = Vec::with_capacity(deleted.len());
    for t in deleted.iter() {
        let t = t.to_owned();
        if t.subject.is_blank() || t.object.is_blank() {
            return Err(PatchError::BlankInDelete(t.to_ntriples()));
        }
        triples.push(t);
    }
    Ok(Patch {
        delete: triples,
        insert: section("insert", &insert)?,
    })
}

/// Applies `patch` to a copy of `g`.
pub fn apply_patch(g: &Graph, patch: &Patch) -> Result<Graph, PatchError> {
    let mut out = g.clone();
    for t in &patch.delete {
        if !out.remove(t) {
            return Err(PatchError::MissingTriple(t.to_ntriples()));
        }
    }
    out.merge(&patch.insert);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = "@prefix x: <http://e/> .\nx:a x:p x:b .\nx:a x:q x:c .\n";

    #[test]
    fn delete_then_insert() {
        let g = parse_turtle(BASE, None).unwrap().0;
        let patch = parse_patch("@prefix x: <http://e/> .\n#! delete\nx:a x:p x:b .\n#! insert\nx:a x:p x:d , x:e .\n").unwrap();
        let out = apply_patch(&g, &patch).unwrap();
        assert_eq!(out.len(), 3);
        assert!(!out.contains_terms(
            &crate::rdf::Term::iri("http://e/a").unwrap(),
            &crate::rdf::Term::iri("http://e/p").unwrap(),
            &crate::rdf::Term::iri("http://e/b").unwrap()
        ));
    }

    #[test]
    fn missing_delete_is_an_error() {
        let g = parse_turtle(BASE, None).unwrap().0;
        let patch = parse_patch("@prefix x: <http://e/> .\n#! delete\nx:a x:p x:zzz .\n").unwrap();
        assert!(matches!(apply_patch(&g, &patch), Err(PatchError::MissingTriple(_))));
    }

    #[test]
    fn rejects_blank_deletes_and_bad_sections() {
        assert!(matches!(
            parse_patch("#! delete\n_:x <http://e/p> <http://e/o> .\n"),
            Err(PatchError::BlankInDelete(_))
        ));
        assert!(matches!(parse_patch("#! replace\n"), Err(PatchError::UnknownSection(_))));
        let err = parse_patch("@prefix x: <http://e/> .\n#! insert\nx:a x:p .\n").unwrap_err();
        assert!(matches!(err, PatchError::Parse { section: "insert", .. }));
    }
}

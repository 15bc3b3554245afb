//! Materials Design Ontology toolkit.
//!
//! An in-memory RDF store ([`rdf`]), Turtle and N-Triples I/O ([`io`]), the
//! MDO vocabulary and axioms ([`vocab`]), closed-world axiom validation
//! ([`validate`]), a JSON-to-RDF template mapper ([`mapper`]) and a SPARQL
//! subset for the competency questions ([`query`]).

pub mod cli;
pub mod io;
pub mod mapper;
mod syntax;
pub mod rdf;
pub mod query;
pub mod validate;
pub mod vocab;

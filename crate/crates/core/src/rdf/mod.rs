//! RDF data model: terms, triples, the indexed in-memory [`Graph`] and
//! blank-node-aware graph comparison.

mod graph;
mod iso;
mod term;

pub use graph::{Binding, Graph, GraphError, PatternTerm, TripleRef, TriplePattern};
pub use iso::{canonical_numerics, isomorphic, isomorphic_value_level};
pub use term::{Iri, Literal, Term, TermError, Triple};
pub(crate) use term::{write_ntriples_term, write_quoted};

//! JSON to RDF mapping with a small template language modelled on
//! SPARQL-Generate.
//!
//! ```text
//! BASE <https://w3id.org/mdo/data/1.0/>
//! PREFIX core: <https://w3id.org/mdo/core/>
//! GENERATE {
//!   ?node a core:CalculatedProperty ; core:hasPropertyName "band_gap" .
//!   GENERATE { ?site a structure:Site . }
//!     ITERATE JSONPath(?source, "$.sites[*]") AS ?item
//!     WHERE { BIND(IRI("{doc}_site_{index}") AS ?site) } .
//! }
//! SOURCE <http://example.com/doc.json> AS ?source
//! WHERE {
//!   BIND(JSONPath(?source, "$.band_gap") AS ?band_gap)
//!   BIND(IRI("{doc}_band_gap") AS ?node)
//! }
//! ```
//!
//! Each `GENERATE` block is a scope. Its `WHERE` bindings run once per scope
//! instance (once per item under `ITERATE`); if a `JSONPath` binding finds
//! nothing the instance and its nested blocks are skipped and a soft error is
//! recorded. `JSONPath(?v, "path", datatype)` types the values; numbers are
//! `xsd:double` by default. IRI templates accept `{doc}`, `{index}`,
//! `{indexN}` and `{?var}`; paths accept `[{index}]` to address a parallel
//! array at the current iteration index.

mod apply;
mod ingest;
mod path;
mod template;

pub use apply::{apply_template, apply_template_report, canonical_double, json_scalar, Application};
pub use ingest::{ingest_batch, ingest_texts, read_manifest, IngestionResult, SoftError, TemplateStats};
pub use path::{eval_path, PathExpr, Step};
pub use template::{
    parse_template, Bind, BindExpr, Group, IriPart, IriTemplate, Iterate, MappingTemplate, PathCall, Slot,
    TemplateError, TripleTemplate,
};

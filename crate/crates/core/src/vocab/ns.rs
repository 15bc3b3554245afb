//! Namespace IRIs and a handful of frequently used term IRIs.

pub const CORE: &str = "https://w3id.org/mdo/core/";
pub const STRUCTURE: &str = "https://w3id.org/mdo/structure/";
// Not printed in any published listing; follows the w3id pattern of core/structure.
pub const CALCULATION: &str = "https://w3id.org/mdo/calculation/";
pub const PROVENANCE: &str = "https://w3id.org/mdo/provenance/";
/// Base IRI for instance data minted by the mapping templates.
pub const DATA: &str = "https://w3id.org/mdo/data/1.0/";

pub const QUDT: &str = "http://qudt.org/schema/qudt/";
pub const QUDT_UNIT: &str = "http://qudt.org/vocab/unit/";
pub const PROV: &str = "http://www.w3.org/ns/prov#";
/// Placeholder: EMMO publishes opaque IRIs; `Material` is mirrored under this namespace.
pub const EMMO: &str = "http://emmo.info/emmo#";
pub const OBO: &str = "http://purl.obolibrary.org/obo/";
pub const DCTERMS: &str = "http://purl.org/dc/terms/";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_FLOAT: &str = "http://www.w3.org/2001/XMLSchema#float";

const INTEGER_DERIVED: &[&str] = &[
    "int",
    "long",
    "short",
    "byte",
    "nonNegativeInteger",
    "positiveInteger",
    "nonPositiveInteger",
    "negativeInteger",
    "unsignedLong",
    "unsignedInt",
    "unsignedShort",
    "unsignedByte",
];

pub fn is_numeric_datatype(dt: &str) -> bool {
    matches!(dt, XSD_INTEGER | XSD_DECIMAL | XSD_DOUBLE | XSD_FLOAT)
        || dt
            .strip_prefix(XSD)
            .is_some_and(|local| INTEGER_DERIVED.contains(&local))
}

/// Prefix labels used by the shipped files, in declaration order.
pub const STANDARD_PREFIXES: &[(&str, &str)] = &[
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("xsd", XSD),
    ("core", CORE),
    ("structure", STRUCTURE),
    ("calculation", CALCULATION),
    ("provenance", PROVENANCE),
    ("qudt", QUDT),
    ("qudt_unit", QUDT_UNIT),
    ("prov", PROV),
    ("emmo", EMMO),
    ("obo", OBO),
    ("dcterms", DCTERMS),
    ("data", DATA),
];

//! The MDO vocabulary and its description-logic axioms, encoded as data.
//!
//! Terms come from the four modules (Core, Structure, Calculation,
//! Provenance) plus the external terms MDO reuses from QUDT, PROV-O, EMMO and
//! ChEBI. Where the published ontology does not pin an external IRI, the
//! term's `placeholder` flag is set:
//!
//! * EMMO `Material` is mirrored as `emmo:Material` (EMMO itself uses opaque IRIs).
//! * ChEBI `atom` is `obo:CHEBI_33250`, looked up by the name `Atom`.
//!
//! PROV-O `wasAssociatedWith` uses PROV-O's camel case; the axiom table in the
//! ontology paper prints it as `wasAssociatedwith`.
//!
//! A few data properties used by the shipped fixtures and templates are not
//! named by the ontology (space group symbols, coordinate components,
//! lattice lengths and angles, parameter names). They are marked `extension`.

mod axioms;
pub mod ns;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::sync::LazyLock;

use thiserror::Error;

pub use axioms::{axioms, axioms_for, AxiomRule, Cardinality, Restriction, RuleKind, AXIOM_IDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Namespace {
    Core,
    Structure,
    Calculation,
    Provenance,
    Qudt,
    QudtUnit,
    Prov,
    Emmo,
    Chebi,
    Rdf,
    Rdfs,
    Xsd,
    Dcterms,
}

impl Namespace {
    pub fn iri(self) -> &'static str {
        match self {
            Namespace::Core => ns::CORE,
            Namespace::Structure => ns::STRUCTURE,
            Namespace::Calculation => ns::CALCULATION,
            Namespace::Provenance => ns::PROVENANCE,
            Namespace::Qudt => ns::QUDT,
            Namespace::QudtUnit => ns::QUDT_UNIT,
            Namespace::Prov => ns::PROV,
            Namespace::Emmo => ns::EMMO,
            Namespace::Chebi => ns::OBO,
            Namespace::Rdf => ns::RDF,
            Namespace::Rdfs => ns::RDFS,
            Namespace::Xsd => ns::XSD,
            Namespace::Dcterms => ns::DCTERMS,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Namespace::Core => "core",
            Namespace::Structure => "structure",
            Namespace::Calculation => "calculation",
            Namespace::Provenance => "provenance",
            Namespace::Qudt => "qudt",
            Namespace::QudtUnit => "qudt_unit",
            Namespace::Prov => "prov",
            Namespace::Emmo => "emmo",
            Namespace::Chebi => "obo",
            Namespace::Rdf => "rdf",
            Namespace::Rdfs => "rdfs",
            Namespace::Xsd => "xsd",
            Namespace::Dcterms => "dcterms",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermKind {
    Class,
    ObjectProperty,
    DataProperty,
    Individual,
}

impl fmt::Display for TermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermKind::Class => "class",
            TermKind::ObjectProperty => "object-property",
            TermKind::DataProperty => "data-property",
            TermKind::Individual => "individual",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VocabTerm {
    /// Name used for lookup, e.g. `CalculatedProperty`.
    pub name: &'static str,
    pub namespace: Namespace,
    /// Local part of the IRI; differs from `name` only for opaque external IRIs.
    pub local: &'static str,
    pub kind: TermKind,
    /// IRI chosen here because no published listing fixes it.
    pub placeholder: bool,
    /// Not part of the ontology; used by shipped data.
    pub extension: bool,
}

impl VocabTerm {
    pub fn iri(&self) -> String {
        format!("{}{}", self.namespace.iri(), self.local)
    }

    pub fn curie(&self) -> String {
        format!("{}:{}", self.namespace.prefix(), self.local)
    }
}

const fn term(name: &'static str, namespace: Namespace, kind: TermKind) -> VocabTerm {
    VocabTerm {
        name,
        namespace,
        local: name,
        kind,
        placeholder: false,
        extension: false,
    }
}

const fn ext(name: &'static str, namespace: Namespace, kind: TermKind) -> VocabTerm {
    VocabTerm {
        extension: true,
        ..term(name, namespace, kind)
    }
}

use Namespace::*;
use TermKind::*;

static VOCABULARY: &[VocabTerm] = &[
    // Core
    term("Calculation", Core, Class),
    term("Structure", Core, Class),
    term("Property", Core, Class),
    term("CalculatedProperty", Core, Class),
    term("PhysicalProperty", Core, Class),
    term("relatesToStructure", Core, ObjectProperty),
    term("relatesToMaterial", Core, ObjectProperty),
    term("hasInputStructure", Core, ObjectProperty),
    term("hasOutputStructure", Core, ObjectProperty),
    term("hasInputProperty", Core, ObjectProperty),
    term("hasOutputCalculatedProperty", Core, ObjectProperty),
    term("hasPropertyName", Core, DataProperty),
    // Structure
    term("Composition", Structure, Class),
    term("Occupancy", Structure, Class),
    term("Species", Structure, Class),
    term("Site", Structure, Class),
    term("Basis", Structure, Class),
    term("Lattice", Structure, Class),
    term("AxisVectors", Structure, Class),
    term("LengthTriple", Structure, Class),
    term("AngleTriple", Structure, Class),
    term("CoordinateVector", Structure, Class),
    term("SpaceGroup", Structure, Class),
    term("PointGroup", Structure, Class),
    term("hasComposition", Structure, ObjectProperty),
    term("hasOccupancy", Structure, ObjectProperty),
    term("hasSpecies", Structure, ObjectProperty),
    term("hasSite", Structure, ObjectProperty),
    term("hasElement", Structure, ObjectProperty),
    term("hasCartesianCoordinates", Structure, ObjectProperty),
    term("hasFractionalCoordinates", Structure, ObjectProperty),
    term("hasBasis", Structure, ObjectProperty),
    term("hasLattice", Structure, ObjectProperty),
    term("hasAxisVectors", Structure, ObjectProperty),
    term("hasLengthTriple", Structure, ObjectProperty),
    term("hasAngleTriple", Structure, ObjectProperty),
    term("has_a_axisVector", Structure, ObjectProperty),
    term("has_b_axisVector", Structure, ObjectProperty),
    term("has_c_axisVector", Structure, ObjectProperty),
    term("hasSpaceGroup", Structure, ObjectProperty),
    term("hasPointGroup", Structure, ObjectProperty),
    term("hasDescriptiveFormula", Structure, DataProperty),
    ext("hasReducedFormula", Structure, DataProperty),
    ext("hasAnonymousFormula", Structure, DataProperty),
    ext("hasOccupancyFraction", Structure, DataProperty),
    ext("hasSpaceGroupSymbol", Structure, DataProperty),
    ext("hasSpaceGroupNumber", Structure, DataProperty),
    ext("hasPointGroupSymbol", Structure, DataProperty),
    ext("hasLatticeType", Structure, DataProperty),
    ext("hasXComponent", Structure, DataProperty),
    ext("hasYComponent", Structure, DataProperty),
    ext("hasZComponent", Structure, DataProperty),
    ext("hasLengthA", Structure, DataProperty),
    ext("hasLengthB", Structure, DataProperty),
    ext("hasLengthC", Structure, DataProperty),
    ext("hasAngleAlpha", Structure, DataProperty),
    ext("hasAngleBeta", Structure, DataProperty),
    ext("hasAngleGamma", Structure, DataProperty),
    // Calculation
    term("ComputationalMethod", Calculation, Class),
    term("ComputationalMethodParameter", Calculation, Class),
    term("DensityFunctionalTheoryMethod", Calculation, Class),
    term("HartreeFockMethod", Calculation, Class),
    term("ExchangeCorrelationEnergyFunctional", Calculation, Class),
    term("GeneralizedGradientApproximation", Calculation, Class),
    term("LocalDensityApproximation", Calculation, Class),
    term("metaGeneralizedGradientApproximation", Calculation, Class),
    term("HybridFunctional", Calculation, Class),
    term("HybridGeneralizedGradientApproximation", Calculation, Class),
    term("HybridmetaGeneralizedGradientApproximation", Calculation, Class),
    term("hasComputationalMethod", Calculation, ObjectProperty),
    term("hasParameter", Calculation, ObjectProperty),
    term("hasXCFunctional", Calculation, ObjectProperty),
    ext("hasParameterName", Calculation, DataProperty),
    // Provenance
    term("ReferenceAgent", Provenance, Class),
    term("Agent", Prov, Class),
    term("SoftwareAgent", Prov, Class),
    term("Person", Prov, Class),
    term("wasAttributedTo", Prov, ObjectProperty),
    term("wasAssociatedWith", Prov, ObjectProperty),
    // QUDT
    term("Quantity", Qudt, Class),
    term("QuantityValue", Qudt, Class),
    term("quantityValue", Qudt, ObjectProperty),
    term("unit", Qudt, ObjectProperty),
    term("numericValue", Qudt, DataProperty),
    term("EV", QudtUnit, Individual),
    term("K", QudtUnit, Individual),
    term("ANGSTROM", QudtUnit, Individual),
    term("DEG", QudtUnit, Individual),
    // EMMO, ChEBI
    VocabTerm {
        placeholder: true,
        ..term("Material", Emmo, Class)
    },
    VocabTerm {
        local: "CHEBI_33250",
        placeholder: true,
        ..term("Atom", Chebi, Class)
    },
    // RDF / RDFS / DCMI
    term("type", Rdf, ObjectProperty),
    term("label", Rdfs, DataProperty),
    ext("issued", Dcterms, DataProperty),
];

/// All vocabulary terms.
pub fn vocabulary() -> &'static [VocabTerm] {
    VOCABULARY
}

/// Looks a term up by name (e.g. `CalculatedProperty`, `Atom`).
pub fn lookup(name: &str) -> Option<&'static VocabTerm> {
    VOCABULARY.iter().find(|t| t.name == name)
}

pub fn lookup_in(namespace: Namespace, name: &str) -> Option<&'static VocabTerm> {
    VOCABULARY.iter().find(|t| t.namespace == namespace && t.name == name)
}

/// Full IRI of a vocabulary term. Panics on unknown names; intended for
/// names that are part of the shipped table.
pub fn iri(name: &str) -> String {
    lookup(name)
        .unwrap_or_else(|| panic!("`{name}` is not in the vocabulary"))
        .iri()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("subclass hierarchy has a cycle through {0}")]
    SubclassCycle(String),
}

/// Reflexive-transitive closure of the subclass axioms.
#[derive(Debug, Clone)]
pub struct SubclassClosure {
    ancestors: HashMap<String, BTreeSet<String>>,
}

impl SubclassClosure {
    /// Builds the closure from arbitrary rules; only `SubClassOf` rules count.
    pub fn from_rules<'a>(rules: impl IntoIterator<Item = &'a AxiomRule>) -> Result<Self, VocabError> {
        let mut direct: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for r in rules {
            if let RuleKind::SubClassOf { sub, sup } = &r.kind {
                direct.entry(sub.as_str()).or_default().insert(sup.as_str());
                direct.entry(sup.as_str()).or_default();
            }
        }
        // depth-first with colouring to catch cycles
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        fn visit<'a>(
            c: &'a str,
            direct: &BTreeMap<&'a str, BTreeSet<&'a str>>,
            marks: &mut HashMap<&'a str, Mark>,
            out: &mut HashMap<String, BTreeSet<String>>,
        ) -> Result<(), VocabError> {
            match marks.get(c) {
                Some(Mark::Done) => return Ok(()),
                Some(Mark::Active) => return Err(VocabError::SubclassCycle(c.to_owned())),
                None => {}
            }
            marks.insert(c, Mark::Active);
            let mut acc = BTreeSet::from([c.to_owned()]);
            for &sup in &direct[c] {
                visit(sup, direct, marks, out)?;
                acc.extend(out[sup].iter().cloned());
            }
            marks.insert(c, Mark::Done);
            out.insert(c.to_owned(), acc);
            Ok(())
        }
        let mut marks = HashMap::new();
        let mut ancestors = HashMap::new();
        for &c in direct.keys() {
            visit(c, &direct, &mut marks, &mut ancestors)?;
        }
        Ok(SubclassClosure { ancestors })
    }

    /// `sub ⊑* sup`. Every class is a subclass of itself.
    pub fn is_subclass(&self, sub: &str, sup: &str) -> bool {
        sub == sup || self.ancestors.get(sub).is_some_and(|a| a.contains(sup))
    }

    /// All superclasses of `class`, including itself.
    pub fn superclasses(&self, class: &str) -> BTreeSet<String> {
        self.ancestors
            .get(class)
            .cloned()
            .unwrap_or_else(|| BTreeSet::from([class.to_owned()]))
    }

    /// Classes that have at least one strict superclass.
    pub fn classes(&self) -> impl Iterator<Item = &str> {
        self.ancestors.keys().map(String::as_str)
    }
}

static CLOSURE: LazyLock<SubclassClosure> =
    LazyLock::new(|| SubclassClosure::from_rules(axioms()).expect("MDO subclass hierarchy is acyclic"));

/// Closure of the shipped subclass axioms.
pub fn subclass_closure() -> &'static SubclassClosure {
    &CLOSURE
}

/// Tab-separated manifest of the vocabulary and the decomposed axioms.
///
/// ```text
/// term   <kind>  <curie>  <iri>  <flags>
/// axiom  <id>    <axiom>  <kind> <class>  <property>  <filler>  <n>
/// ```
/// Union axioms list their alternatives in the filler column as
/// `=1 p F & =1 q G | ...`. Empty cells are `-`.
pub fn manifest() -> String {
    let mut out = String::from("# mdo vocabulary manifest v1\n");
    for t in VOCABULARY {
        let mut flags = Vec::new();
        if t.placeholder {
            flags.push("placeholder");
        }
        if t.extension {
            flags.push("extension");
        }
        let flags = if flags.is_empty() { "-".to_owned() } else { flags.join(",") };
        let _ = writeln!(out, "term\t{}\t{}\t{}\t{}", t.kind, t.curie(), t.iri(), flags);
    }
    for r in axioms() {
        let _ = writeln!(out, "axiom\t{}", r.manifest_fields().join("\t"));
    }
    out
}

/// Compact `prefix:local` form for vocabulary IRIs, full `<iri>` otherwise.
pub fn compact(iri: &str) -> String {
    for (prefix, namespace) in ns::STANDARD_PREFIXES {
        if let Some(local) = iri.strip_prefix(namespace) {
            if !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                return format!("{prefix}:{local}");
            }
        }
    }
    format!("<{iri}>")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn lookup_examples() {
        let cp = lookup("CalculatedProperty").unwrap();
        assert_eq!(cp.kind, TermKind::Class);
        assert_eq!(cp.iri(), "https://w3id.org/mdo/core/CalculatedProperty");
        let f = lookup("hasDescriptiveFormula").unwrap();
        assert_eq!(f.kind, TermKind::DataProperty);
        assert_eq!(f.namespace, Namespace::Structure);
        assert!(lookup("nonexistent").is_none());
    }

    #[test]
    fn namespace_and_local_names_unique() {
        let mut seen = HashSet::new();
        for t in vocabulary() {
            assert!(seen.insert((t.namespace, t.local)), "duplicate {}", t.curie());
        }
        let names: HashSet<_> = vocabulary().iter().map(|t| t.name).collect();
        assert_eq!(names.len(), vocabulary().len(), "lookup names must be unique");
    }

    #[test]
    fn required_terms_present() {
        let classes = [
            "Calculation", "Structure", "Property", "CalculatedProperty", "PhysicalProperty", "Material",
            "Composition", "Occupancy", "Species", "Site", "Basis", "Lattice", "AxisVectors", "LengthTriple",
            "AngleTriple", "CoordinateVector", "SpaceGroup", "PointGroup", "ComputationalMethod",
            "ComputationalMethodParameter", "DensityFunctionalTheoryMethod", "HartreeFockMethod",
            "ExchangeCorrelationEnergyFunctional", "GeneralizedGradientApproximation",
            "LocalDensityApproximation", "metaGeneralizedGradientApproximation", "HybridFunctional",
            "HybridGeneralizedGradientApproximation", "HybridmetaGeneralizedGradientApproximation",
            "ReferenceAgent", "Agent", "SoftwareAgent", "Quantity", "QuantityValue", "Atom",
        ];
        for c in classes {
            assert_eq!(lookup(c).map(|t| t.kind), Some(TermKind::Class), "{c}");
        }
        for p in [
            "hasInputStructure", "hasOutputStructure", "hasInputProperty", "hasOutputCalculatedProperty",
            "relatesToStructure", "relatesToMaterial", "hasComposition", "hasOccupancy", "hasSpecies",
            "hasSite", "hasElement", "hasCartesianCoordinates", "hasFractionalCoordinates", "hasBasis",
            "hasLattice", "hasAxisVectors", "hasLengthTriple", "hasAngleTriple", "has_a_axisVector",
            "has_b_axisVector", "has_c_axisVector", "hasSpaceGroup", "hasPointGroup",
            "hasComputationalMethod", "hasParameter", "hasXCFunctional", "wasAttributedTo",
            "wasAssociatedWith", "quantityValue", "unit",
        ] {
            assert_eq!(lookup(p).map(|t| t.kind), Some(TermKind::ObjectProperty), "{p}");
        }
        for d in ["hasPropertyName", "hasDescriptiveFormula", "numericValue"] {
            assert_eq!(lookup(d).map(|t| t.kind), Some(TermKind::DataProperty), "{d}");
        }
    }

    #[test]
    fn qudt_namespace_matches_listing() {
        assert_eq!(iri("QuantityValue"), "http://qudt.org/schema/qudt/QuantityValue");
        assert_eq!(iri("EV"), "http://qudt.org/vocab/unit/EV");
    }

    #[test]
    fn closure_examples() {
        let c = subclass_closure();
        assert!(c.is_subclass(
            &iri("HybridGeneralizedGradientApproximation"),
            &iri("ExchangeCorrelationEnergyFunctional")
        ));
        assert!(c.is_subclass(&iri("CalculatedProperty"), &iri("Quantity")));
        assert!(!c.is_subclass(&iri("Structure"), &iri("Calculation")));
        assert!(c.is_subclass(&iri("ReferenceAgent"), &iri("Agent")));
    }

    #[test]
    fn closure_is_antisymmetric() {
        let c = subclass_closure();
        let classes: Vec<&str> = c.classes().collect();
        for a in &classes {
            for b in &classes {
                if a != b {
                    assert!(!(c.is_subclass(a, b) && c.is_subclass(b, a)), "{a} <-> {b}");
                }
            }
        }
    }

    #[test]
    fn cycle_is_an_error() {
        let rule = |id: &'static str, sub: &str, sup: &str| AxiomRule {
            id,
            axiom: id,
            kind: RuleKind::SubClassOf {
                sub: sub.into(),
                sup: sup.into(),
            },
        };
        let rules = [rule("X1", "urn:a", "urn:b"), rule("X2", "urn:b", "urn:c"), rule("X3", "urn:c", "urn:a")];
        assert!(matches!(SubclassClosure::from_rules(&rules), Err(VocabError::SubclassCycle(_))));
    }

    #[test]
    fn manifest_lists_everything() {
        let m = manifest();
        assert_eq!(m.lines().filter(|l| l.starts_with("term\t")).count(), vocabulary().len());
        assert_eq!(m.lines().filter(|l| l.starts_with("axiom\t")).count(), axioms().len());
        assert!(m.contains("axiom\tCore3\tCore3\tDisjoint\tcore:CalculatedProperty\t-\tcore:PhysicalProperty\t-"));
        assert!(m.lines().all(|l| l.starts_with('#') || !l.contains("  ")));
    }
}

use std::fmt;
use std::sync::LazyLock;

use super::{compact, iri};

/// All numbered axiom ids, in module order.
pub const AXIOM_IDS: [&str; 36] = [
    "Core1", "Core2", "Core3", "Core4", "Core5", "Core6", "Core7", "Core8", "Struc1", "Struc2", "Struc3", "Struc4",
    "Struc5", "Struc6", "Struc7", "Struc8", "Struc9", "Struc10", "Struc11", "Struc12", "Struc13", "Cal1", "Cal2",
    "Cal3", "Cal4", "Cal5", "Cal6", "Cal7", "Cal8", "Cal9", "Cal10", "Cal11", "Prov1", "Prov2", "Prov3", "Prov4",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    Exact(u32),
    Max(u32),
    Min(u32),
}

impl Cardinality {
    pub fn admits(self, count: usize) -> bool {
        match self {
            Cardinality::Exact(n) => count == n as usize,
            Cardinality::Max(n) => count <= n as usize,
            Cardinality::Min(n) => count >= n as usize,
        }
    }

    pub fn bound(self) -> u32 {
        match self {
            Cardinality::Exact(n) | Cardinality::Max(n) | Cardinality::Min(n) => n,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cardinality::Exact(_) => "=",
            Cardinality::Max(_) => "<=",
            Cardinality::Min(_) => ">=",
        }
    }
}

/// One qualified cardinality restriction `n p.F` inside a union alternative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub property: String,
    pub filler: String,
    pub cardinality: Cardinality,
}

/// Class, property and filler fields hold full IRIs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    SubClassOf { sub: String, sup: String },
    Disjoint { first: String, second: String },
    SomeValuesFrom { class: String, property: String, filler: String },
    AllValuesFrom { class: String, property: String, filler: String },
    Cardinality { class: String, property: String, filler: String, cardinality: Cardinality },
    /// The class must satisfy every restriction of at least one alternative.
    Union { class: String, alternatives: Vec<Vec<Restriction>> },
}

impl RuleKind {
    pub fn name(&self) -> &'static str {
        match self {
            RuleKind::SubClassOf { .. } => "SubClassOf",
            RuleKind::Disjoint { .. } => "Disjoint",
            RuleKind::SomeValuesFrom { .. } => "SomeValuesFrom",
            RuleKind::AllValuesFrom { .. } => "AllValuesFrom",
            RuleKind::Cardinality { cardinality, .. } => match cardinality {
                Cardinality::Exact(_) => "ExactCardinality",
                Cardinality::Max(_) => "MaxCardinality",
                Cardinality::Min(_) => "MinCardinality",
            },
            RuleKind::Union { .. } => "Union",
        }
    }

    /// The class whose instances the rule constrains.
    pub fn class(&self) -> &str {
        match self {
            RuleKind::SubClassOf { sub, .. } => sub,
            RuleKind::Disjoint { first, .. } => first,
            RuleKind::SomeValuesFrom { class, .. }
            | RuleKind::AllValuesFrom { class, .. }
            | RuleKind::Cardinality { class, .. }
            | RuleKind::Union { class, .. } => class,
        }
    }

    pub fn properties(&self) -> Vec<&str> {
        match self {
            RuleKind::SubClassOf { .. } | RuleKind::Disjoint { .. } => Vec::new(),
            RuleKind::SomeValuesFrom { property, .. }
            | RuleKind::AllValuesFrom { property, .. }
            | RuleKind::Cardinality { property, .. } => vec![property],
            RuleKind::Union { alternatives, .. } => {
                alternatives.iter().flatten().map(|r| r.property.as_str()).collect()
            }
        }
    }

    pub fn classes(&self) -> Vec<&str> {
        match self {
            RuleKind::SubClassOf { sub, sup } => vec![sub, sup],
            RuleKind::Disjoint { first, second } => vec![first, second],
            RuleKind::SomeValuesFrom { class, filler, .. }
            | RuleKind::AllValuesFrom { class, filler, .. }
            | RuleKind::Cardinality { class, filler, .. } => vec![class, filler],
            RuleKind::Union { class, alternatives } => std::iter::once(class.as_str())
                .chain(alternatives.iter().flatten().map(|r| r.filler.as_str()))
                .collect(),
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: &str| compact(s);
        match self {
            RuleKind::SubClassOf { sub, sup } => write!(f, "{} ⊑ {}", c(sub), c(sup)),
            RuleKind::Disjoint { first, second } => write!(f, "{} ⊓ {} ⊑ ⊥", c(first), c(second)),
            RuleKind::SomeValuesFrom { class, property, filler } => {
                write!(f, "{} ⊑ ∃ {}.{}", c(class), c(property), c(filler))
            }
            RuleKind::AllValuesFrom { class, property, filler } => {
                write!(f, "{} ⊑ ∀ {}.{}", c(class), c(property), c(filler))
            }
            RuleKind::Cardinality { class, property, filler, cardinality } => write!(
                f,
                "{} ⊑ {} {} {}.{}",
                c(class),
                cardinality.symbol(),
                cardinality.bound(),
                c(property),
                c(filler)
            ),
            RuleKind::Union { class, alternatives } => {
                write!(f, "{} ⊑ ", c(class))?;
                for (i, alt) in alternatives.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ⊔ ")?;
                    }
                    let parts: Vec<String> = alt
                        .iter()
                        .map(|r| format!("{} {} {}.{}", r.cardinality.symbol(), r.cardinality.bound(), c(&r.property), c(&r.filler)))
                        .collect();
                    if parts.len() > 1 {
                        write!(f, "({})", parts.join(" ⊓ "))?;
                    } else {
                        f.write_str(&parts.join(""))?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// One machine-checkable piece of a numbered axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomRule {
    /// Rule id, e.g. `Core6b`; equals `axiom` for single-rule axioms.
    pub id: &'static str,
    /// Numbered axiom the rule belongs to, e.g. `Core6`.
    pub axiom: &'static str,
    pub kind: RuleKind,
}

impl AxiomRule {
    pub(super) fn manifest_fields(&self) -> Vec<String> {
        let c = |s: &str| compact(s);
        let dash = || "-".to_owned();
        let (class, property, filler, n) = match &self.kind {
            RuleKind::SubClassOf { sub, sup } => (c(sub), dash(), c(sup), dash()),
            RuleKind::Disjoint { first, second } => (c(first), dash(), c(second), dash()),
            RuleKind::SomeValuesFrom { class, property, filler } | RuleKind::AllValuesFrom { class, property, filler } => {
                (c(class), c(property), c(filler), dash())
            }
            RuleKind::Cardinality { class, property, filler, cardinality } => {
                (c(class), c(property), c(filler), cardinality.bound().to_string())
            }
            RuleKind::Union { class, alternatives } => {
                let alts: Vec<String> = alternatives
                    .iter()
                    .map(|alt| {
                        alt.iter()
                            .map(|r| format!("{}{} {} {}", r.cardinality.symbol(), r.cardinality.bound(), c(&r.property), c(&r.filler)))
                            .collect::<Vec<_>>()
                            .join(" & ")
                    })
                    .collect();
                (c(class), dash(), alts.join(" | "), dash())
            }
        };
        vec![self.id.to_owned(), self.axiom.to_owned(), self.kind.name().to_owned(), class, property, filler, n]
    }
}

impl fmt::Display for AxiomRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.id, self.kind)
    }
}

fn sub(id: &'static str, a: &str, b: &str) -> AxiomRule {
    AxiomRule {
        id,
        axiom: id,
        kind: RuleKind::SubClassOf { sub: iri(a), sup: iri(b) },
    }
}

fn some(id: &'static str, axiom: &'static str, class: &str, p: &str, filler: &str) -> AxiomRule {
    AxiomRule {
        id,
        axiom,
        kind: RuleKind::SomeValuesFrom { class: iri(class), property: iri(p), filler: iri(filler) },
    }
}

fn all(id: &'static str, axiom: &'static str, class: &str, p: &str, filler: &str) -> AxiomRule {
    AxiomRule {
        id,
        axiom,
        kind: RuleKind::AllValuesFrom { class: iri(class), property: iri(p), filler: iri(filler) },
    }
}

fn card(id: &'static str, axiom: &'static str, class: &str, n: Cardinality, p: &str, filler: &str) -> AxiomRule {
    AxiomRule {
        id,
        axiom,
        kind: RuleKind::Cardinality { class: iri(class), property: iri(p), filler: iri(filler), cardinality: n },
    }
}

fn exactly_one(p: &str, filler: &str) -> Restriction {
    Restriction { property: iri(p), filler: iri(filler), cardinality: Cardinality::Exact(1) }
}

fn axis_or_triples(id: &'static str, class: &str) -> AxiomRule {
    AxiomRule {
        id,
        axiom: id,
        kind: RuleKind::Union {
            class: iri(class),
            alternatives: vec![
                vec![exactly_one("hasAxisVectors", "AxisVectors")],
                vec![exactly_one("hasLengthTriple", "LengthTriple"), exactly_one("hasAngleTriple", "AngleTriple")],
            ],
        },
    }
}

fn build() -> Vec<AxiomRule> {
    use Cardinality::{Exact, Max};
    const XCF: &str = "ExchangeCorrelationEnergyFunctional";
    vec![
        // Core
        sub("Core1", "CalculatedProperty", "Property"),
        sub("Core2", "PhysicalProperty", "Property"),
        AxiomRule {
            id: "Core3",
            axiom: "Core3",
            kind: RuleKind::Disjoint { first: iri("CalculatedProperty"), second: iri("PhysicalProperty") },
        },
        sub("Core4", "Property", "Quantity"),
        all("Core5", "Core5", "Property", "relatesToStructure", "Structure"),
        some("Core6a", "Core6", "Calculation", "hasInputStructure", "Structure"),
        all("Core6b", "Core6", "Calculation", "hasInputStructure", "Structure"),
        all("Core6c", "Core6", "Calculation", "hasOutputStructure", "Structure"),
        some("Core7a", "Core7", "Calculation", "hasInputProperty", "Property"),
        all("Core7b", "Core7", "Calculation", "hasInputProperty", "Property"),
        all("Core7c", "Core7", "Calculation", "hasOutputCalculatedProperty", "CalculatedProperty"),
        some("Core8a", "Core8", "Structure", "relatesToMaterial", "Material"),
        all("Core8b", "Core8", "Structure", "relatesToMaterial", "Material"),
        // Structure
        card("Struc1", "Struc1", "Structure", Exact(1), "hasComposition", "Composition"),
        some("Struc2a", "Struc2", "Structure", "hasOccupancy", "Occupancy"),
        all("Struc2b", "Struc2", "Structure", "hasOccupancy", "Occupancy"),
        some("Struc3a", "Struc3", "Occupancy", "hasSpecies", "Species"),
        all("Struc3b", "Struc3", "Occupancy", "hasSpecies", "Species"),
        some("Struc4a", "Struc4", "Occupancy", "hasSite", "Site"),
        all("Struc4b", "Struc4", "Occupancy", "hasSite", "Site"),
        card("Struc5", "Struc5", "Species", Exact(1), "hasElement", "Atom"),
        card("Struc6", "Struc6", "Site", Max(1), "hasCartesianCoordinates", "CoordinateVector"),
        card("Struc7", "Struc7", "Site", Max(1), "hasFractionalCoordinates", "CoordinateVector"),
        some("Struc8a", "Struc8", "Structure", "hasBasis", "Basis"),
        all("Struc8b", "Struc8", "Structure", "hasBasis", "Basis"),
        all("Struc8c", "Struc8", "Structure", "hasLattice", "Lattice"),
        axis_or_triples("Struc9", "Basis"),
        axis_or_triples("Struc10", "Lattice"),
        card("Struc11a", "Struc11", "AxisVectors", Exact(1), "has_a_axisVector", "CoordinateVector"),
        card("Struc11b", "Struc11", "AxisVectors", Exact(1), "has_b_axisVector", "CoordinateVector"),
        card("Struc11c", "Struc11", "AxisVectors", Exact(1), "has_c_axisVector", "CoordinateVector"),
        card("Struc12a", "Struc12", "Structure", Exact(1), "hasSpaceGroup", "SpaceGroup"),
        all("Struc12b", "Struc12", "Structure", "hasSpaceGroup", "SpaceGroup"),
        some("Struc13a", "Struc13", "SpaceGroup", "hasPointGroup", "PointGroup"),
        all("Struc13b", "Struc13", "SpaceGroup", "hasPointGroup", "PointGroup"),
        // Calculation
        card("Cal1", "Cal1", "Calculation", Exact(1), "hasComputationalMethod", "ComputationalMethod"),
        some("Cal2a", "Cal2", "ComputationalMethod", "hasParameter", "ComputationalMethodParameter"),
        all("Cal2b", "Cal2", "ComputationalMethod", "hasParameter", "ComputationalMethodParameter"),
        sub("Cal3", "DensityFunctionalTheoryMethod", "ComputationalMethod"),
        sub("Cal4", "HartreeFockMethod", "ComputationalMethod"),
        some("Cal5a", "Cal5", "DensityFunctionalTheoryMethod", "hasXCFunctional", XCF),
        all("Cal5b", "Cal5", "DensityFunctionalTheoryMethod", "hasXCFunctional", XCF),
        sub("Cal6", "GeneralizedGradientApproximation", XCF),
        sub("Cal7", "LocalDensityApproximation", XCF),
        sub("Cal8", "metaGeneralizedGradientApproximation", XCF),
        sub("Cal9", "HybridFunctional", XCF),
        sub("Cal10", "HybridGeneralizedGradientApproximation", "HybridFunctional"),
        sub("Cal11", "HybridmetaGeneralizedGradientApproximation", "HybridFunctional"),
        // Provenance
        sub("Prov1", "ReferenceAgent", "Agent"),
        all("Prov2", "Prov2", "Structure", "wasAttributedTo", "ReferenceAgent"),
        all("Prov3", "Prov3", "Property", "wasAttributedTo", "ReferenceAgent"),
        some("Prov4", "Prov4", "Calculation", "wasAssociatedWith", "SoftwareAgent"),
    ]
}

static AXIOMS: LazyLock<Vec<AxiomRule>> = LazyLock::new(build);

/// The decomposed rule set for all numbered axioms.
pub fn axioms() -> &'static [AxiomRule] {
    &AXIOMS
}

/// Rules of one numbered axiom (`Core6` gives Core6a..c), or of one rule id
/// (`Core6b`). Empty for unknown ids.
pub fn axioms_for(id: &str) -> Vec<&'static AxiomRule> {
    AXIOMS.iter().filter(|r| r.axiom == id || r.id == id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::{lookup, vocabulary, TermKind};
    use std::collections::HashSet;

    #[test]
    fn every_axiom_has_rules() {
        for id in AXIOM_IDS {
            assert!(!axioms_for(id).is_empty(), "{id}");
        }
        let ids: HashSet<&str> = axioms().iter().map(|r| r.axiom).collect();
        assert_eq!(ids.len(), AXIOM_IDS.len());
    }

    #[test]
    fn rule_ids_unique() {
        let ids: HashSet<&str> = axioms().iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), axioms().len());
    }

    #[test]
    fn no_dangling_symbols() {
        let iris: HashSet<String> = vocabulary().iter().map(|t| t.iri()).collect();
        for r in axioms() {
            for p in r.kind.properties() {
                assert!(iris.contains(p), "{} uses {p}", r.id);
            }
            for c in r.kind.classes() {
                assert!(iris.contains(c), "{} uses {c}", r.id);
            }
        }
        assert_eq!(lookup("wasAssociatedWith").unwrap().kind, TermKind::ObjectProperty);
    }

    #[test]
    fn worked_examples() {
        let core3 = axioms_for("Core3");
        assert_eq!(core3.len(), 1);
        assert_eq!(
            core3[0].kind,
            RuleKind::Disjoint { first: iri("CalculatedProperty"), second: iri("PhysicalProperty") }
        );
        let cal1 = axioms_for("Cal1");
        assert_eq!(
            cal1[0].kind,
            RuleKind::Cardinality {
                class: iri("Calculation"),
                property: iri("hasComputationalMethod"),
                filler: iri("ComputationalMethod"),
                cardinality: Cardinality::Exact(1)
            }
        );
        let struc9 = axioms_for("Struc9");
        let RuleKind::Union { alternatives, .. } = &struc9[0].kind else {
            panic!("Struc9 is a union");
        };
        assert_eq!(alternatives.len(), 2);
        assert_eq!(alternatives[0].len(), 1);
        assert_eq!(alternatives[1].len(), 2);
        assert_eq!(axioms_for("Core6").len(), 3);
        assert_eq!(axioms_for("Core6b").len(), 1);
        assert!(axioms_for("Core99").is_empty());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(axioms_for("Cal1")[0].to_string(), "(Cal1) core:Calculation ⊑ = 1 calculation:hasComputationalMethod.calculation:ComputationalMethod");
        assert!(axioms_for("Struc10")[0].to_string().contains(" ⊔ (= 1 structure:hasLengthTriple"));
    }
}

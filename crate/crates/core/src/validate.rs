//! Closed-world validation of instance data against the MDO axioms.
//!
//! Each axiom is read as an integrity constraint on the data present: a node
//! typed `C` must have the successors `C`'s restrictions require, successors
//! count only when they carry an explicit `rdf:type` for the filler, and
//! cardinalities count distinct successor nodes.
//!
//! By default types are first closed under the subclass axioms, which makes
//! the `SubClassOf` rules hold by construction. [`TypeMode::Asserted`] checks
//! the rules against the asserted types only, so a missing supertype triple
//! is reported.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::io::Severity;
use crate::rdf::{Graph, Iri, Term};
use crate::vocab::{self, axioms, axioms_for, compact, ns, AxiomRule, Cardinality, Restriction, RuleKind, AXIOM_IDS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TypeMode {
    /// Types closed under the subclass axioms before checking.
    #[default]
    Entailed,
    /// Only `rdf:type` triples present in the data.
    Asserted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    pub types: TypeMode,
}

impl ValidationOptions {
    pub fn asserted() -> Self {
        ValidationOptions { types: TypeMode::Asserted }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Numbered axiom, e.g. `Core6`.
    pub axiom: String,
    /// Rule within the axiom, e.g. `Core6a`.
    pub rule: String,
    pub focus: Term,
    pub message: String,
    pub severity: Severity,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Untyped-node diagnostics; they never affect conformance.
    pub warnings: Vec<Violation>,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    axiom: &'a str,
    rule: &'a str,
    focus: String,
    message: &'a str,
    severity: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    conforming: bool,
    summary: BTreeMap<&'a str, usize>,
    violations: Vec<JsonRecord<'a>>,
    warnings: Vec<JsonRecord<'a>>,
}

impl ValidationReport {
    pub fn conforming(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violation count per numbered axiom.
    pub fn summary(&self) -> BTreeMap<&str, usize> {
        let mut m = BTreeMap::new();
        for v in &self.violations {
            *m.entry(v.axiom.as_str()).or_default() += 1;
        }
        m
    }

    /// Distinct numbered axioms with at least one violation.
    pub fn violated_axioms(&self) -> BTreeSet<&str> {
        self.violations.iter().map(|v| v.axiom.as_str()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "conforms: {}", self.conforming());
        let _ = writeln!(out, "violations: {}", self.violations.len());
        for v in &self.violations {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", v.severity, v.rule, v.focus, v.message);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", w.severity, w.rule, w.focus, w.message);
        }
        if !self.violations.is_empty() {
            let parts: Vec<String> = self.summary().iter().map(|(k, n)| format!("{k}={n}")).collect();
            let _ = writeln!(out, "summary: {}", parts.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> String {
        fn record(v: &Violation) -> JsonRecord<'_> {
            JsonRecord {
                axiom: &v.axiom,
                rule: &v.rule,
                focus: v.focus.to_ntriples(),
                message: &v.message,
                severity: v.severity.to_string(),
            }
        }
        let report = JsonReport {
            conforming: self.conforming(),
            summary: self.summary(),
            violations: self.violations.iter().map(record).collect(),
            warnings: self.warnings.iter().map(record).collect(),
        };
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    }
}

fn rdf_type() -> Term {
    Term::static_iri(ns::RDF_TYPE)
}

fn class_term(iri: &str) -> Term {
    Term::Iri(Iri::from_static(iri))
}

/// Adds `(x, rdf:type, D)` for every `(x, rdf:type, C)` with `C ⊑* D`.
pub fn materialize_types(g: &Graph) -> Graph {
    let closure = vocab::subclass_closure();
    let ty = rdf_type();
    let mut out = g.clone();
    let typed: Vec<(Term, String)> = g
        .triples_matching(None, Some(&ty), None)
        .filter_map(|t| t.object.as_iri().map(|c| (t.subject.clone(), c.as_str().to_owned())))
        .collect();
    for (x, c) in typed {
        for d in closure.superclasses(&c) {
            if d != c {
                out.insert_terms(x.clone(), ty.clone(), class_term(&d))
                    .expect("type triple is well formed");
            }
        }
    }
    out
}

/// Validates against every axiom with default options.
pub fn validate(g: &Graph) -> ValidationReport {
    validate_with(g, &ValidationOptions::default())
}

pub fn validate_with(g: &Graph, opts: &ValidationOptions) -> ValidationReport {
    let rules: Vec<&AxiomRule> = axioms().iter().collect();
    validate_rules(g, &rules, opts)
}

/// Report restricted to one numbered axiom (or one rule id such as `Core6a`).
pub fn validate_axiom(g: &Graph, id: &str) -> Result<ValidationReport, ValidateError> {
    validate_axiom_with(g, id, &ValidationOptions::default())
}

pub fn validate_axiom_with(g: &Graph, id: &str, opts: &ValidationOptions) -> Result<ValidationReport, ValidateError> {
    let rules = axioms_for(id);
    if rules.is_empty() {
        return Err(ValidateError::UnknownAxiom(id.to_owned()));
    }
    Ok(validate_rules(g, &rules, opts))
}

pub fn validate_rules(g: &Graph, rules: &[&AxiomRule], opts: &ValidationOptions) -> ValidationReport {
    let materialized;
    let data = match opts.types {
        TypeMode::Entailed => {
            materialized = materialize_types(g);
            &materialized
        }
        TypeMode::Asserted => g,
    };
    let checker = Checker { g: data, ty: rdf_type() };
    let mut violations = Vec::new();
    for rule in rules {
        checker.check(rule, &mut violations);
    }
    sort_findings(&mut violations);

    let mut warnings = Vec::new();
    let ty = rdf_type();
    let mut seen = BTreeSet::new();
    for t in g.iter() {
        if seen.insert(t.subject) && g.triples_matching(Some(t.subject), Some(&ty), None).next().is_none() {
            warnings.push(Violation {
                axiom: "untyped".into(),
                rule: "untyped".into(),
                focus: t.subject.clone(),
                message: "untyped node: no rdf:type".into(),
                severity: Severity::Warning,
            });
        }
    }
    sort_findings(&mut warnings);
    ValidationReport { violations, warnings }
}

fn axiom_rank(axiom: &str) -> usize {
    AXIOM_IDS.iter().position(|a| *a == axiom).unwrap_or(usize::MAX)
}

fn sort_findings(v: &mut [Violation]) {
    v.sort_by_cached_key(|x| (axiom_rank(&x.axiom), x.rule.clone(), x.focus.to_ntriples(), x.message.clone()));
}

struct Checker<'g> {
    g: &'g Graph,
    ty: Term,
}

impl Checker<'_> {
    fn instances(&self, class: &str) -> Vec<&Term> {
        let c = class_term(class);
        self.g.subjects(&self.ty, &c).collect()
    }

    fn has_type(&self, node: &Term, class: &str) -> bool {
        !node.is_literal() && self.g.contains_terms(node, &self.ty, &class_term(class))
    }

    fn typed_successors(&self, x: &Term, property: &str, filler: &str) -> usize {
        let p = class_term(property);
        self.g.objects(x, &p).filter(|o| self.has_type(o, filler)).collect::<BTreeSet<_>>().len()
    }

    fn check(&self, rule: &AxiomRule, out: &mut Vec<Violation>) {
        let mut report = |focus: &Term, message: String| {
            out.push(Violation {
                axiom: rule.axiom.to_owned(),
                rule: rule.id.to_owned(),
                focus: focus.clone(),
                message,
                severity: Severity::Error,
            })
        };
        match &rule.kind {
            RuleKind::SubClassOf { sub, sup } => {
                for x in self.instances(sub) {
                    if !self.has_type(x, sup) {
                        report(x, format!("typed {} but not {}", compact(sub), compact(sup)));
                    }
                }
            }
            RuleKind::Disjoint { first, second } => {
                for x in self.instances(first) {
                    if self.has_type(x, second) {
                        report(x, format!("typed both {} and {}", compact(first), compact(second)));
                    }
                }
            }
            RuleKind::SomeValuesFrom { class, property, filler } => {
                for x in self.instances(class) {
                    if self.typed_successors(x, property, filler) == 0 {
                        report(x, format!("∃ {}.{} unmet: no successor typed {}", compact(property), compact(filler), compact(filler)));
                    }
                }
            }
            RuleKind::AllValuesFrom { class, property, filler } => {
                let p = class_term(property);
                for x in self.instances(class) {
                    let mut bad: Vec<&Term> = self.g.objects(x, &p).filter(|o| !self.has_type(o, filler)).collect();
                    bad.sort_by_cached_key(|t| t.to_ntriples());
                    for o in bad {
                        report(x, format!("∀ {}.{} unmet: successor {o} is not typed {}", compact(property), compact(filler), compact(filler)));
                    }
                }
            }
            RuleKind::Cardinality { class, property, filler, cardinality } => {
                for x in self.instances(class) {
                    let n = self.typed_successors(x, property, filler);
                    if !cardinality.admits(n) {
                        report(x, format!("{} successors typed {}: found {n}, {}", compact(property), compact(filler), describe(*cardinality)));
                    }
                }
            }
            RuleKind::Union { class, alternatives } => {
                for x in self.instances(class) {
                    let ok = alternatives.iter().any(|alt| {
                        alt.iter().all(|Restriction { property, filler, cardinality }| {
                            cardinality.admits(self.typed_successors(x, property, filler))
                        })
                    });
                    if !ok {
                        report(x, format!("no alternative of {} holds", rule.kind));
                    }
                }
            }
        }
    }
}

fn describe(c: Cardinality) -> String {
    match c {
        Cardinality::Exact(n) => format!("expected exactly {n}"),
        Cardinality::Max(n) => format!("expected at most {n}"),
        Cardinality::Min(n) => format!("expected at least {n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_turtle;
    use crate::vocab::iri;
    use proptest::prelude::*;

    const PREFIXES: &str = "@prefix core: <https://w3id.org/mdo/core/> .\n\
        @prefix structure: <https://w3id.org/mdo/structure/> .\n\
        @prefix calculation: <https://w3id.org/mdo/calculation/> .\n\
        @prefix prov: <http://www.w3.org/ns/prov#> .\n\
        @prefix d: <http://example.org/> .\n";

    fn graph(body: &str) -> Graph {
        parse_turtle(&format!("{PREFIXES}{body}"), None).unwrap().0
    }

    #[test]
    fn materialize_examples() {
        let g = graph("d:m a calculation:DensityFunctionalTheoryMethod . d:p a core:CalculatedProperty .");
        let m = materialize_types(&g);
        let has = |x: &str, c: &str| m.contains_terms(&Term::iri(x).unwrap(), &rdf_type(), &Term::iri(iri(c)).unwrap());
        assert!(has("http://example.org/m", "ComputationalMethod"));
        assert!(has("http://example.org/p", "Property"));
        assert!(has("http://example.org/p", "Quantity"));
        assert_eq!(materialize_types(&m), m);
        let untyped = graph("d:a d:b d:c .");
        assert_eq!(materialize_types(&untyped), untyped);
    }

    #[test]
    fn disjointness() {
        let r = validate(&graph("d:p a core:CalculatedProperty , core:PhysicalProperty ."));
        assert_eq!(r.violated_axioms(), BTreeSet::from(["Core3"]));
    }

    #[test]
    fn cardinality_counts_distinct_typed_nodes() {
        let site = "d:s a structure:Site ; structure:hasCartesianCoordinates d:v1 , d:v2 .\n";
        let typed = "d:v1 a structure:CoordinateVector . d:v2 a structure:CoordinateVector .";
        let r = validate_axiom(&graph(&format!("{site}{typed}")), "Struc6").unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].focus, Term::iri("http://example.org/s").unwrap());
        // an untyped second successor does not count towards the filler
        let r = validate_axiom(&graph(&format!("{site}d:v1 a structure:CoordinateVector .")), "Struc6").unwrap();
        assert!(r.conforming());
    }

    #[test]
    fn axiom_scoping() {
        assert!(validate_axiom(&Graph::new(), "Core6").unwrap().conforming());
        assert_eq!(validate_axiom(&Graph::new(), "Core99"), Err(ValidateError::UnknownAxiom("Core99".into())));
        let calc = graph(
            "d:c a core:Calculation ; core:hasInputProperty d:p ; calculation:hasComputationalMethod d:m ; \
             prov:wasAssociatedWith d:sw .\n\
             d:p a core:PhysicalProperty . d:m a calculation:HartreeFockMethod ; calculation:hasParameter d:k .\n\
             d:k a calculation:ComputationalMethodParameter . d:sw a prov:SoftwareAgent .",
        );
        let r = validate_axiom(&calc, "Core6").unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].rule, "Core6a");
        assert!(r.violations[0].message.contains("∃ core:hasInputStructure"));
        let all = validate(&calc);
        assert_eq!(all.violated_axioms(), BTreeSet::from(["Core6"]));
    }

    #[test]
    fn union_alternatives() {
        let vec3 = "d:a a structure:CoordinateVector . d:b a structure:CoordinateVector . d:c a structure:CoordinateVector .\n";
        let axes = "d:ax a structure:AxisVectors ; structure:has_a_axisVector d:a ; structure:has_b_axisVector d:b ; structure:has_c_axisVector d:c .\n";
        let ok1 = graph(&format!("{vec3}{axes}d:l a structure:Lattice ; structure:hasAxisVectors d:ax ."));
        assert!(validate(&ok1).conforming());
        let ok2 = graph(
            "d:l a structure:Lattice ; structure:hasLengthTriple d:lt ; structure:hasAngleTriple d:at .\n\
             d:lt a structure:LengthTriple . d:at a structure:AngleTriple .",
        );
        assert!(validate(&ok2).conforming());
        let half = graph("d:l a structure:Lattice ; structure:hasLengthTriple d:lt . d:lt a structure:LengthTriple .");
        let r = validate(&half);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].axiom, "Struc10");
    }

    #[test]
    fn asserted_mode_reports_missing_supertypes() {
        let g = graph("d:x a calculation:GeneralizedGradientApproximation .");
        assert!(validate(&g).conforming());
        let r = validate_with(&g, &ValidationOptions::asserted());
        assert_eq!(r.violated_axioms(), BTreeSet::from(["Cal6"]));
        let complete = graph(
            "d:x a calculation:GeneralizedGradientApproximation , calculation:ExchangeCorrelationEnergyFunctional .",
        );
        assert!(validate_with(&complete, &ValidationOptions::asserted()).conforming());
    }

    #[test]
    fn untyped_nodes_are_warnings_only() {
        let r = validate(&graph("d:a d:b d:c ."));
        assert!(r.conforming());
        assert_eq!(r.warnings.len(), 1);
        assert_eq!(r.warnings[0].severity, Severity::Warning);
    }

    #[test]
    fn report_formats() {
        let r = validate(&graph("d:p a core:CalculatedProperty , core:PhysicalProperty ."));
        let text = r.to_text();
        assert!(text.starts_with("conforms: false\nviolations: 1\n"));
        assert!(text.contains("error\tCore3\t<http://example.org/p>"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["conforming"], false);
        assert_eq!(json["summary"]["Core3"], 1);
        assert_eq!(json["violations"][0]["axiom"], "Core3");
    }

    /// Reference checker: linear scans over the triple list, no indexes.
    fn naive(g: &Graph, opts: &ValidationOptions) -> Vec<(String, String, String)> {
        let g = match opts.types {
            TypeMode::Entailed => naive_materialize(g),
            TypeMode::Asserted => g.clone(),
        };
        let triples: Vec<(Term, Term, Term)> = g.iter().map(|t| (t.subject.clone(), t.predicate.clone(), t.object.clone())).collect();
        let ty = rdf_type();
        let typed = |x: &Term, c: &str| triples.iter().any(|(s, p, o)| s == x && *p == ty && o.as_iri().is_some_and(|o| o.as_str() == c));
        let nodes: BTreeSet<Term> = triples.iter().map(|t| t.0.clone()).collect();
        let succ = |x: &Term, p: &str| -> BTreeSet<Term> {
            triples.iter().filter(|(s, q, _)| s == x && q.as_iri().is_some_and(|q| q.as_str() == p)).map(|t| t.2.clone()).collect()
        };
        let count = |x: &Term, p: &str, f: &str| succ(x, p).into_iter().filter(|o| typed(o, f)).count();
        let mut out = Vec::new();
        for rule in axioms() {
            for x in nodes.iter().filter(|x| typed(x, rule.kind.class())) {
                let mut push = |n: usize| {
                    for _ in 0..n {
                        out.push((rule.id.to_owned(), x.to_ntriples(), String::new()));
                    }
                };
                match &rule.kind {
                    RuleKind::SubClassOf { sup, .. } => push(usize::from(!typed(x, sup))),
                    RuleKind::Disjoint { second, .. } => push(usize::from(typed(x, second))),
                    RuleKind::SomeValuesFrom { property, filler, .. } => push(usize::from(count(x, property, filler) == 0)),
                    RuleKind::AllValuesFrom { property, filler, .. } => {
                        push(succ(x, property).iter().filter(|o| !typed(o, filler)).count())
                    }
                    RuleKind::Cardinality { property, filler, cardinality, .. } => {
                        push(usize::from(!cardinality.admits(count(x, property, filler))))
                    }
                    RuleKind::Union { alternatives, .. } => push(usize::from(!alternatives.iter().any(|alt| {
                        alt.iter().all(|r| r.cardinality.admits(count(x, &r.property, &r.filler)))
                    }))),
                }
            }
        }
        out.sort();
        out
    }

    fn naive_materialize(g: &Graph) -> Graph {
        // fixpoint over direct subclass edges
        let mut g = g.clone();
        let ty = rdf_type();
        loop {
            let mut added = false;
            let typed: Vec<(Term, Term)> = g.iter().filter(|t| *t.predicate == ty).map(|t| (t.subject.clone(), t.object.clone())).collect();
            for (x, c) in typed {
                for r in axioms() {
                    if let RuleKind::SubClassOf { sub, sup } = &r.kind {
                        if c.as_iri().is_some_and(|c| c.as_str() == sub) {
                            added |= g.insert_terms(x.clone(), ty.clone(), Term::iri(sup.clone()).unwrap()).unwrap();
                        }
                    }
                }
            }
            if !added {
                return g;
            }
        }
    }

    fn vocab_pool() -> (Vec<String>, Vec<String>) {
        let classes = vocab::vocabulary().iter().filter(|t| t.kind == vocab::TermKind::Class).map(|t| t.iri()).collect();
        let mut props: Vec<String> = axioms().iter().flat_map(|r| r.kind.properties()).map(str::to_owned).collect();
        props.sort();
        props.dedup();
        (classes, props)
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        let (classes, props) = vocab_pool();
        let nc = classes.len();
        let np = props.len();
        let node = 0usize..12;
        let edge = prop_oneof![
            (node.clone(), 0..nc).prop_map(|(n, c)| (n, None, c)),
            (node.clone(), 0..np, node.clone()).prop_map(|(n, p, m)| (n, Some(p), m)),
        ];
        proptest::collection::vec(edge, 0..120).prop_map(move |edges| {
            let mut g = Graph::new();
            let node = |i: usize| Term::iri(format!("http://example.org/n{i}")).unwrap();
            for (s, p, o) in edges {
                match p {
                    None => g.insert_terms(node(s), rdf_type(), Term::iri(classes[o].clone()).unwrap()),
                    Some(p) => g.insert_terms(node(s), Term::iri(props[p].clone()).unwrap(), node(o)),
                }
                .unwrap();
            }
            g
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn matches_naive_oracle(g in arb_graph(), asserted in any::<bool>()) {
            let opts = if asserted { ValidationOptions::asserted() } else { ValidationOptions::default() };
            let r = validate_with(&g, &opts);
            let mut got: Vec<(String, String, String)> = r.violations.iter().map(|v| (v.rule.clone(), v.focus.to_ntriples(), String::new())).collect();
            got.sort();
            prop_assert_eq!(got, naive(&g, &opts));
        }

        #[test]
        fn validation_invariant_under_materialization(g in arb_graph()) {
            prop_assert_eq!(validate(&g).violations, validate(&materialize_types(&g)).violations);
        }
    }
}

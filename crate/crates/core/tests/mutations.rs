mod common;

use std::collections::BTreeSet;

use mdo::io::{apply_patch, parse_patch};
use mdo::validate::{validate, validate_with, ValidationOptions};
use mdo::vocab::AXIOM_IDS;

#[test]
fn fixture_conforms_in_both_modes() {
    let g = common::turtle("fixtures/fig10.ttl");
    let entailed = validate(&g);
    assert!(entailed.conforming(), "{}", entailed.to_text());
    assert!(entailed.warnings.is_empty(), "{}", entailed.to_text());
    let asserted = validate_with(&g, &ValidationOptions::asserted());
    assert!(asserted.conforming(), "{}", asserted.to_text());
}

#[test]
fn each_mutation_breaks_exactly_its_axiom() {
    let g = common::turtle("fixtures/fig10.ttl");
    for id in AXIOM_IDS {
        let text = common::read(&format!("mutations/{}.patch", id.to_lowercase()));
        let mutant = apply_patch(&g, &parse_patch(&text).unwrap()).unwrap();
        let r = validate_with(&mutant, &ValidationOptions::asserted());
        assert_eq!(r.violations.len(), 1, "{id}:\n{}", r.to_text());
        assert_eq!(r.violated_axioms(), BTreeSet::from([id]), "{id}");
    }
}

//! Browses the generated vocabulary and the axiom rules behind validation.

use std::collections::BTreeMap;

use mdo::vocab::{axioms, axioms_for, lookup, subclass_closure, vocabulary, AXIOM_IDS};

fn main() {
    let mut per_namespace: BTreeMap<String, usize> = BTreeMap::new();
    for t in vocabulary() {
        *per_namespace.entry(format!("{:?}", t.namespace)).or_default() += 1;
    }
    println!("{} terms", vocabulary().len());
    for (ns, n) in &per_namespace {
        println!("  {ns}: {n}");
    }

    println!("\n{} axioms, {} rules", AXIOM_IDS.len(), axioms().len());
    for id in ["Core1", "Struc5", "Cal3"] {
        for rule in axioms_for(id) {
            println!("  {id}: {rule:?}");
        }
    }

    if let Some(t) = lookup("CalculatedProperty") {
        println!("\n{} = {}", t.curie(), t.iri());
        let supers = subclass_closure().superclasses(&t.iri());
        println!("superclasses: {supers:?}");
    }
}

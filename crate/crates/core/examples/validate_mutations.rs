//! Validates the conforming fixture, then breaks it with a few of the
//! shipped mutation patches and prints the reports.

use mdo::io::{apply_patch, parse_patch, parse_turtle};
use mdo::validate::{validate, validate_with, ValidationOptions};

const FIXTURE: &str = include_str!("../data/fixtures/fig10.ttl");
const PATCHES: [(&str, &str); 3] = [
    ("Core1", include_str!("../data/mutations/core1.patch")),
    ("Struc5", include_str!("../data/mutations/struc5.patch")),
    ("Prov2", include_str!("../data/mutations/prov2.patch")),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, _) = parse_turtle(FIXTURE, None)?;
    let report = validate(&g);
    println!("fixture: {} triples, conforming: {}", g.len(), report.conforming());

    for (id, text) in PATCHES {
        let mutant = apply_patch(&g, &parse_patch(text)?)?;
        let report = validate_with(&mutant, &ValidationOptions::asserted());
        println!("\n{id} mutant, violated axioms {:?}", report.violated_axioms());
        print!("{}", report.to_text());
    }
    Ok(())
}

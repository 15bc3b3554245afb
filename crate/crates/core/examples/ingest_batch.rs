//! Ingests the synthetic batch listed in a manifest with the Materials
//! Project template and validates the result.

use std::path::Path;
use std::time::Instant;

use mdo::mapper::{ingest_texts, parse_template, read_manifest};
use mdo::query::run_cq;
use mdo::validate::validate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let template = parse_template(&std::fs::read_to_string(data.join("templates/materials_project.rqg"))?)?;
    let start = Instant::now();
    let docs = read_manifest(&data.join("batch/manifest.tsv"))?;
    let result = ingest_texts(&[("materials_project".to_owned(), template)], &docs);
    let report = validate(&result.graph);
    println!("{} documents -> {} triples in {:?}", docs.len(), result.graph.len(), start.elapsed());
    for s in &result.stats {
        println!("  {}: {} documents, {} triples, {} failed bindings", s.name, s.documents, s.triples, s.failed_bindings);
    }
    println!("soft errors: {}, conforming: {}", result.errors.len(), report.conforming());

    let wide = run_cq("CQ6", &result.graph, &[])?;
    print!("\nband gaps between the default bounds:\n{}", wide.to_tsv());
    Ok(())
}

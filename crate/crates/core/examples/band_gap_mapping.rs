//! Maps a JSON document with a band gap into RDF using the shipped
//! band-gap template.

use mdo::io::{serialize_turtle, PrefixMap};
use mdo::mapper::{apply_template_report, parse_template};
use serde_json::json;

const TEMPLATE: &str = include_str!("../data/templates/band_gap.rqg");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let template = parse_template(TEMPLATE)?;
    let doc = json!({ "material_id": "mp-989579", "band_gap": 1.5623 });
    let app = apply_template_report(&template, &doc, "mp-989579");
    print!("{}", serialize_turtle(&app.graph, &PrefixMap::standard()));

    // a document without the value produces nothing and a soft error
    let empty = apply_template_report(&template, &json!({}), "mp-0");
    println!("\nempty document: {} triples, errors {:?}", empty.graph.len(), empty.soft_errors);
    Ok(())
}

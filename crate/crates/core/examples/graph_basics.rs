//! Builds a small graph by hand, looks triples up through the indexes and
//! round-trips it through Turtle and N-Triples.

use mdo::io::{parse_ntriples, parse_turtle, serialize_ntriples, serialize_turtle, PrefixMap};
use mdo::rdf::{isomorphic, Graph, Term};
use mdo::vocab::{iri, ns};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = Graph::new();
    let ty = Term::iri(ns::RDF_TYPE)?;
    let calculation = Term::iri(format!("{}mp-989579_calculation", ns::DATA))?;
    let structure = Term::iri(format!("{}mp-989579_output_structure", ns::DATA))?;
    let composition = g.fresh_blank();

    g.insert_terms(calculation.clone(), ty.clone(), Term::iri(iri("Calculation"))?)?;
    g.insert_terms(calculation.clone(), Term::iri(iri("hasOutputStructure"))?, structure.clone())?;
    g.insert_terms(structure.clone(), ty.clone(), Term::iri(iri("Structure"))?)?;
    g.insert_terms(structure, Term::iri(iri("hasComposition"))?, composition.clone())?;
    g.insert_terms(composition, Term::iri(iri("hasDescriptiveFormula"))?, Term::string("Rb2Li1Ti1Cl6"))?;

    println!("{} triples, {} blank node(s)", g.len(), g.blank_nodes().len());
    for t in g.triples_matching(Some(&calculation), None, None) {
        println!("  calculation -> {}", t.object.to_ntriples());
    }

    let turtle = serialize_turtle(&g, &PrefixMap::standard());
    println!("\n{turtle}");
    let (back, _) = parse_turtle(&turtle, None)?;
    println!("Turtle round trip isomorphic: {}", isomorphic(&g, &back));

    let nt = serialize_ntriples(&g);
    println!("N-Triples round trip isomorphic: {}", isomorphic(&g, &parse_ntriples(&nt)?));
    Ok(())
}

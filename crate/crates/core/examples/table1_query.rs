//! Runs the band-gap threshold query over the `table1` fixture.

use mdo::io::{parse_turtle, PrefixMap};
use mdo::query::{evaluate, parse_query};

const FIXTURE: &str = include_str!("../data/fixtures/table1.ttl");
const QUERY: &str = include_str!("../data/queries/listing3.rq");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, _) = parse_turtle(FIXTURE, None)?;
    let q = parse_query(QUERY)?;
    let table = evaluate(&q, &g);
    println!("{QUERY}");
    print!("{}", table.to_pretty(&PrefixMap::standard()));
    println!("{} rows", table.len());
    Ok(())
}

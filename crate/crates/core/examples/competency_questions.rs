//! Answers every competency question over the shipped fixtures.

use mdo::io::parse_turtle;
use mdo::query::{competency_questions, run_cq};

const FIG10: &str = include_str!("../data/fixtures/fig10.ttl");
const TABLE1: &str = include_str!("../data/fixtures/table1.ttl");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (fig10, _) = parse_turtle(FIG10, None)?;
    let (table1, _) = parse_turtle(TABLE1, None)?;
    for cq in competency_questions() {
        // the band-gap range question needs values above its default minimum
        let g = if cq.id == "CQ6" { &table1 } else { &fig10 };
        let table = run_cq(cq.id, g, &[])?;
        println!("{} ({:?}): {} row(s)", cq.id, cq.module, table.len());
        for line in table.to_tsv().lines().skip(1) {
            println!("  {line}");
        }
    }

    let narrow = run_cq("CQ6", &table1, &[("min".into(), "5.9".into()), ("max".into(), "6.1".into())])?;
    println!("\nCQ6 with min=5.9 max=6.1:\n{}", narrow.to_tsv());
    Ok(())
}

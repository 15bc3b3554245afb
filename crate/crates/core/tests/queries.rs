mod common;

use std::time::Instant;

use mdo::query::{competency_question, evaluate, parse_query, run_cq};
use mdo::rdf::Graph;

#[test]
fn listing3_over_table1() {
    let g = common::turtle("fixtures/table1.ttl");
    let q = parse_query(&common::read("queries/listing3.rq")).unwrap();
    let start = Instant::now();
    let table = evaluate(&q, &g);
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert_eq!(table.to_tsv(), common::read("golden/table1.tsv"));
}

#[test]
fn raised_threshold_returns_nothing() {
    let g = common::turtle("fixtures/table1.ttl");
    let text = common::read("queries/listing3.rq").replace("?value>5", "?value>7");
    let table = evaluate(&parse_query(&text).unwrap(), &g);
    assert!(table.is_empty());
}

#[test]
fn cq6_range_matches_listing3() {
    let g = common::turtle("fixtures/table1.ttl");
    let cq6 = run_cq("CQ6", &g, &[]).unwrap();
    assert_eq!(cq6.to_tsv(), common::read("golden/table1.tsv"));
    let narrow = run_cq("CQ6", &g, &[("min".into(), "5.9".into()), ("max".into(), "6".into())]).unwrap();
    assert_eq!(narrow.len(), 2);
}

#[test]
fn competency_questions_match_goldens() {
    for (id, fixture) in common::CQ_CASES {
        let g = common::turtle(&format!("fixtures/{fixture}.ttl"));
        let got = run_cq(id, &g, &[]).unwrap().to_tsv();
        let want = common::read(&format!("golden/{}.tsv", id.to_lowercase()));
        assert_eq!(got, want, "{id}");
        assert!(!got.lines().nth(1).unwrap_or("").is_empty(), "{id} returned no rows");
    }
}

#[test]
fn cq12_without_authors_is_empty() {
    let g = common::turtle("fixtures/table1.ttl");
    assert!(run_cq("CQ12", &g, &[]).unwrap().is_empty());
    assert!(run_cq("CQ9", &Graph::new(), &[]).unwrap().is_empty());
    assert_eq!(competency_question("CQ9").unwrap().id, "CQ9");
}

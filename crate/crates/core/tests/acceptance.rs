//! One PASS/FAIL line per acceptance criterion. Runs without the test
//! harness; exits non-zero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mdo::io::{apply_patch, parse_patch, parse_turtle};
use mdo::mapper::{apply_template, ingest_texts, parse_template, read_manifest};
use mdo::query::{competency_question, evaluate, parse_query, run_cq};
use mdo::rdf::isomorphic_value_level;
use mdo::validate::{validate, validate_with, ValidationOptions};
use mdo::vocab::{Namespace, AXIOM_IDS};
use serde_json::json;

const QUERY_LIMIT: Duration = Duration::from_secs(1);
const MAPPING_LIMIT: Duration = Duration::from_secs(1);
const PROPERTY_SUITE_LIMIT: Duration = Duration::from_secs(60);
const BATCH_LIMIT: Duration = Duration::from_secs(5);
const BATCH_MIN_TRIPLES: usize = 3000;
const TABLE1_ROWS: usize = 7;
const ROUNDTRIP_CASES: u32 = 1000;
const ORACLE_CASES: u32 = 500;
const JOIN_ORDER_CASES: u32 = 200;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn table1() -> Outcome {
    let g = common::turtle("fixtures/table1.ttl");
    let q = parse_query(&common::read("queries/listing3.rq")).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let table = evaluate(&q, &g);
    let elapsed = start.elapsed();
    ensure(table.len() == TABLE1_ROWS, format!("{} rows, want {TABLE1_ROWS}", table.len()))?;
    ensure(table.to_tsv() == common::read("golden/table1.tsv"), format!("rows differ from golden:\n{}", table.to_tsv()))?;
    ensure(elapsed < QUERY_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("{} rows equal to golden in {elapsed:?}", table.len()))
}

fn listing2() -> Outcome {
    let t = parse_template(&common::read("templates/band_gap.rqg")).map_err(|e| e.to_string())?;
    let golden = parse_turtle(&common::read("golden/listing2.ttl"), None).map_err(|e| e.to_string())?.0;
    let start = Instant::now();
    let g = apply_template(&t, &json!({"band_gap": 1.5623}), "mp-989579");
    let elapsed = start.elapsed();
    ensure(isomorphic_value_level(&g, &golden), "not isomorphic to golden")?;
    ensure(g.blank_nodes().len() == 1, format!("{} blank nodes, want 1", g.blank_nodes().len()))?;
    ensure(elapsed < MAPPING_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("{} triples isomorphic to golden in {elapsed:?}", g.len()))
}

fn mutations() -> Outcome {
    let g = common::turtle("fixtures/fig10.ttl");
    let base = validate_with(&g, &ValidationOptions::asserted());
    ensure(base.conforming() && validate(&g).conforming(), format!("fixture does not conform:\n{}", base.to_text()))?;
    let mut failed = Vec::new();
    for id in AXIOM_IDS {
        let text = common::read(&format!("mutations/{}.patch", id.to_lowercase()));
        let mutant = parse_patch(&text).and_then(|p| apply_patch(&g, &p)).map_err(|e| format!("{id}: {e}"))?;
        let r = validate_with(&mutant, &ValidationOptions::asserted());
        if r.violations.len() != 1 || r.violated_axioms() != BTreeSet::from([id]) {
            failed.push(format!("{id} gave {:?}", r.violated_axioms()));
        }
    }
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!("{n}/{n} axioms", n = AXIOM_IDS.len()))
}

fn expected_module(n: usize) -> Namespace {
    match n {
        1..=2 => Namespace::Core,
        3..=8 => Namespace::Structure,
        9..=10 => Namespace::Calculation,
        _ => Namespace::Provenance,
    }
}

fn competency_questions() -> Outcome {
    let mut failed = Vec::new();
    for (n, (id, fixture)) in (1..).zip(common::CQ_CASES) {
        let cq = competency_question(id).map_err(|e| format!("{id}: {e}"))?;
        if cq.module != expected_module(n) {
            failed.push(format!("{id} attributed to {:?}", cq.module));
        }
        let g = common::turtle(&format!("fixtures/{fixture}.ttl"));
        match run_cq(id, &g, &[]) {
            Ok(t) if t.to_tsv() == common::read(&format!("golden/{}.tsv", id.to_lowercase())) => {}
            Ok(_) => failed.push(format!("{id} rows differ from golden")),
            Err(e) => failed.push(format!("{id}: {e}")),
        }
    }
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!("{n}/{n} questions", n = common::CQ_CASES.len()))
}

fn roundtrip(suite: &mut Duration) -> Outcome {
    let start = Instant::now();
    let r = common::props::roundtrip(ROUNDTRIP_CASES);
    *suite += start.elapsed();
    r?;
    Ok(format!("{ROUNDTRIP_CASES} graphs in Turtle and N-Triples"))
}

fn query_oracle(suite: &mut Duration) -> Outcome {
    let start = Instant::now();
    let r = common::props::query_oracle(ORACLE_CASES).and_then(|()| common::props::join_order(JOIN_ORDER_CASES));
    *suite += start.elapsed();
    r?;
    ensure(*suite < PROPERTY_SUITE_LIMIT, format!("property suite took {suite:?}"))?;
    Ok(format!("{ORACLE_CASES} cases; property suite {suite:?}"))
}

fn batch() -> Outcome {
    let t = parse_template(&common::read("templates/materials_project.rqg")).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let docs = read_manifest(&common::data("batch/manifest.tsv")).map_err(|e| e.to_string())?;
    let r = ingest_texts(&[("materials_project".to_owned(), t)], &docs);
    let report = validate_with(&r.graph, &ValidationOptions::asserted());
    let elapsed = start.elapsed();
    ensure(docs.len() == 8, format!("{} documents", docs.len()))?;
    ensure(r.errors.is_empty(), format!("{:?}", r.errors))?;
    ensure(report.conforming(), report.to_text())?;
    ensure(r.graph.len() >= BATCH_MIN_TRIPLES, format!("{} triples", r.graph.len()))?;
    ensure(elapsed < BATCH_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("{} triples, conforming, in {elapsed:?}", r.graph.len()))
}

fn main() {
    let mut suite = Duration::ZERO;
    let results = [
        ("1 band-gap threshold query", table1()),
        ("2 band-gap mapping", listing2()),
        ("3 axiom mutations", mutations()),
        ("4 competency questions", competency_questions()),
        ("5 round trip", roundtrip(&mut suite)),
        ("6 query oracle", query_oracle(&mut suite)),
        ("7 synthetic batch", batch()),
    ];
    let mut failures = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

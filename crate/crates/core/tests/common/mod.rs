#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;

use mdo::io::parse_turtle;
use mdo::rdf::Graph;

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub fn read(rel: &str) -> String {
    std::fs::read_to_string(data(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn turtle(rel: &str) -> Graph {
    parse_turtle(&read(rel), None).unwrap_or_else(|e| panic!("{rel}: {e}")).0
}

/// Fixture and golden file each competency question is checked against.
pub const CQ_CASES: [(&str, &str); 14] = [
    ("CQ1", "fig10"),
    ("CQ2", "fig10"),
    ("CQ3", "fig10"),
    ("CQ4", "fig10"),
    ("CQ5", "fig10"),
    ("CQ6", "table1"),
    ("CQ7", "fig10"),
    ("CQ8", "fig10"),
    ("CQ9", "fig10"),
    ("CQ10", "fig10"),
    ("CQ11", "fig10"),
    ("CQ12", "fig10"),
    ("CQ13", "fig10"),
    ("CQ14", "fig10"),
];

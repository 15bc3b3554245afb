//! The fourteen competency questions as shipped, parameterised queries.
//!
//! Each query file starts with header comments:
//!
//! ```text
//! # module: structure
//! # param min: number = 5
//! ```
//!
//! and refers to parameters as `{{min}}`. Parameters are typed `string`,
//! `number` (including `INF` and `-INF`) or `iri`.

use std::fmt;
use std::sync::LazyLock;

use thiserror::Error;

use super::numeric::parse_query_number;
use super::{evaluate, parse_query, Query, QueryError, SolutionTable};
use crate::rdf::{write_quoted, Graph};
use crate::vocab::Namespace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CqError {
    #[error("unknown competency question `{0}` (expected CQ1..CQ14)")]
    UnknownCq(String),
    #[error("{cq} has no parameter `{name}`")]
    UnknownParam { cq: &'static str, name: String },
    #[error("parameter `{name}`: {reason}")]
    BadParam { name: String, reason: String },
    #[error(transparent)]
    Query(#[from] QueryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    String,
    Number,
    Iri,
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamKind::String => "string",
            ParamKind::Number => "number",
            ParamKind::Iri => "iri",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub kind: ParamKind,
    pub default: String,
}

#[derive(Debug, Clone)]
pub struct CompetencyQuestion {
    pub id: &'static str,
    pub module: Namespace,
    pub params: Vec<Param>,
    /// Query text with `{{name}}` placeholders.
    pub source: &'static str,
}

const SOURCES: [(&str, &str); 14] = [
    ("CQ1", include_str!("../../data/queries/cq1.rq")),
    ("CQ2", include_str!("../../data/queries/cq2.rq")),
    ("CQ3", include_str!("../../data/queries/cq3.rq")),
    ("CQ4", include_str!("../../data/queries/cq4.rq")),
    ("CQ5", include_str!("../../data/queries/cq5.rq")),
    ("CQ6", include_str!("../../data/queries/cq6.rq")),
    ("CQ7", include_str!("../../data/queries/cq7.rq")),
    ("CQ8", include_str!("../../data/queries/cq8.rq")),
    ("CQ9", include_str!("../../data/queries/cq9.rq")),
    ("CQ10", include_str!("../../data/queries/cq10.rq")),
    ("CQ11", include_str!("../../data/queries/cq11.rq")),
    ("CQ12", include_str!("../../data/queries/cq12.rq")),
    ("CQ13", include_str!("../../data/queries/cq13.rq")),
    ("CQ14", include_str!("../../data/queries/cq14.rq")),
];

fn parse_header(id: &'static str, source: &'static str) -> CompetencyQuestion {
    let mut module = None;
    let mut params = Vec::new();
    for line in source.lines().map_while(|l| l.strip_prefix('#')) {
        let line = line.trim();
        if let Some(m) = line.strip_prefix("module:") {
            module = [Namespace::Core, Namespace::Structure, Namespace::Calculation, Namespace::Provenance]
                .into_iter()
                .find(|n| n.prefix() == m.trim());
        } else if let Some(p) = line.strip_prefix("param ") {
            let (name, rest) = p.split_once(':').expect("param name");
            let (kind, default) = rest.split_once('=').expect("param default");
            let kind = match kind.trim() {
                "string" => ParamKind::String,
                "number" => ParamKind::Number,
                "iri" => ParamKind::Iri,
                other => panic!("{id}: unknown parameter type `{other}`"),
            };
            params.push(Param { name: name.trim().to_owned(), kind, default: default.trim().to_owned() });
        }
    }
    CompetencyQuestion {
        id,
        module: module.unwrap_or_else(|| panic!("{id}: missing `# module:` header")),
        params,
        source,
    }
}

static QUESTIONS: LazyLock<Vec<CompetencyQuestion>> =
    LazyLock::new(|| SOURCES.iter().map(|&(id, src)| parse_header(id, src)).collect());

pub fn competency_questions() -> &'static [CompetencyQuestion] {
    &QUESTIONS
}

/// Looks up a question by id; `cq6`, `CQ6` and `6` all work.
pub fn competency_question(id: &str) -> Result<&'static CompetencyQuestion, CqError> {
    let digits = id.trim_start_matches(['C', 'c']).trim_start_matches(['Q', 'q']);
    QUESTIONS
        .iter()
        .find(|q| &q.id[2..] == digits)
        .ok_or_else(|| CqError::UnknownCq(id.to_owned()))
}

fn render(kind: ParamKind, name: &str, value: &str) -> Result<String, CqError> {
    let bad = |reason: &str| CqError::BadParam { name: name.to_owned(), reason: reason.to_owned() };
    match kind {
        ParamKind::String => {
            let mut s = String::new();
            write_quoted(&mut s, value);
            Ok(s)
        }
        ParamKind::Number => {
            let v = value.trim();
            parse_query_number(v).ok_or_else(|| bad("not a number"))?;
            if v.ends_with("INF") {
                Ok(format!("\"{v}\"^^<http://www.w3.org/2001/XMLSchema#double>"))
            } else {
                Ok(v.to_owned())
            }
        }
        ParamKind::Iri => {
            if value.contains(['<', '>', ' ', '"']) || crate::rdf::Iri::new(value).is_err() {
                return Err(bad("not an absolute IRI"));
            }
            Ok(format!("<{value}>"))
        }
    }
}

impl CompetencyQuestion {
    /// Query text with parameters substituted; unset parameters take their
    /// defaults.
    pub fn instantiate(&self, params: &[(String, String)]) -> Result<String, CqError> {
        for (name, _) in params {
            if !self.params.iter().any(|p| &p.name == name) {
                return Err(CqError::UnknownParam { cq: self.id, name: name.clone() });
            }
        }
        let mut text = self.source.to_owned();
        for p in &self.params {
            let value = params.iter().rev().find(|(n, _)| *n == p.name).map_or(p.default.as_str(), |(_, v)| v);
            text = text.replace(&format!("{{{{{}}}}}", p.name), &render(p.kind, &p.name, value)?);
        }
        Ok(text)
    }

    pub fn query(&self, params: &[(String, String)]) -> Result<Query, CqError> {
        Ok(parse_query(&self.instantiate(params)?)?)
    }
}

/// Runs a competency question over `g`.
pub fn run_cq(id: &str, g: &Graph, params: &[(String, String)]) -> Result<SolutionTable, CqError> {
    let q = competency_question(id)?.query(params)?;
    Ok(evaluate(&q, g))
}

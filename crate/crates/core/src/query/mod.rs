//! A SPARQL subset: `PREFIX`/`BASE`, `SELECT` with a basic graph pattern and
//! `FILTER` expressions (comparisons, `&&`, `||`, `!`).
//!
//! Results keep duplicates and are sorted by the N-Triples form of the
//! projected terms.

pub mod cq;
mod eval;
pub mod numeric;
mod parser;

use std::fmt::{self, Write as _};

use thiserror::Error;

pub use eval::{effective_boolean, eval_expr, evaluate, ExprError, Value};
pub use cq::{competency_question, competency_questions, run_cq, CompetencyQuestion, CqError, Param, ParamKind};
pub use parser::parse_query;

use crate::io::{ParseDiagnostic, PrefixMap};
use crate::rdf::{write_quoted, Term, TriplePattern};
use crate::vocab::ns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("query syntax: {0}")]
    Syntax(#[from] ParseDiagnostic),
    #[error("variable ?{0} is not bound by the graph pattern")]
    UnboundVariable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    Const(Term),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(v) => out.push(v),
            Expr::Const(_) => {}
            Expr::Not(e) => e.collect_vars(out),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Cmp(_, a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Top-level `&&` operands.
    pub fn conjuncts(&self) -> Vec<&Expr> {
        match self {
            Expr::And(a, b) => {
                let mut v = a.conjuncts();
                v.extend(b.conjuncts());
                v
            }
            other => vec![other],
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => write!(f, "?{v}"),
            Expr::Const(t) => f.write_str(&tsv_term(t)),
            Expr::Not(e) => write!(f, "!({e})"),
            Expr::And(a, b) => write!(f, "({a} && {b})"),
            Expr::Or(a, b) => write!(f, "({a} || {b})"),
            Expr::Cmp(op, a, b) => write!(f, "{a} {} {b}", op.symbol()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    All,
    Vars(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub prefixes: PrefixMap,
    pub projection: Projection,
    pub patterns: Vec<TriplePattern>,
    /// Each `FILTER`; a row survives when all are true.
    pub filters: Vec<Expr>,
}

/// Names starting with this prefix stand for blank nodes written in the
/// query; they are never projected by `SELECT *`.
pub(crate) const HIDDEN_VAR_PREFIX: &str = "_:";

impl Query {
    /// Variables in order of first appearance in the pattern.
    pub fn pattern_variables(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for p in &self.patterns {
            for v in p.variables() {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen
    }

    /// Header of the result table.
    pub fn header(&self) -> Vec<String> {
        match &self.projection {
            Projection::Vars(vs) => vs.clone(),
            Projection::All => self
                .pattern_variables()
                .into_iter()
                .filter(|v| !v.starts_with(HIDDEN_VAR_PREFIX))
                .map(str::to_owned)
                .collect(),
        }
    }

    /// Projected and filter variables must occur in the pattern.
    pub fn check(&self) -> Result<(), QueryError> {
        let bound = self.pattern_variables();
        let projected = match &self.projection {
            Projection::Vars(vs) => vs.iter().map(String::as_str).collect(),
            Projection::All => Vec::new(),
        };
        for v in projected.into_iter().chain(self.filters.iter().flat_map(Expr::variables)) {
            if !bound.contains(&v) {
                return Err(QueryError::UnboundVariable(v.to_owned()));
            }
        }
        Ok(())
    }
}

/// Query result: a header and rows of terms aligned with it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolutionTable {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl SolutionTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, var: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == var)
    }

    pub fn get(&self, row: usize, var: &str) -> Option<&Term> {
        self.rows.get(row)?.get(self.column(var)?)
    }

    /// SPARQL TSV results: `?var` header, one tab-separated row per line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.variables.iter().map(|v| format!("?{v}")).collect();
        out.push_str(&header.join("\t"));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(tsv_term).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Column-aligned table with compacted IRIs and bare literal values.
    pub fn to_pretty(&self, prefixes: &PrefixMap) -> String {
        let cell = |t: &Term| match t {
            Term::Iri(iri) => match prefixes.compact(iri.as_str()) {
                Some((p, l)) => format!("{p}:{l}"),
                None => format!("<{}>", iri.as_str()),
            },
            Term::Blank(l) => format!("_:{l}"),
            Term::Literal(l) => l.lexical().to_owned(),
        };
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let mut widths: Vec<usize> = self.variables.iter().map(|v| v.chars().count()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |values: &[String]| -> String {
            let padded: Vec<String> = values.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
            padded.join(" | ").trim_end().to_owned() + "\n"
        };
        let mut out = line(&self.variables);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&rule.join("-+-"));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
        }
        let _ = writeln!(out, "({} rows)", self.rows.len());
        out
    }
}

fn is_bare_numeric(lex: &str, dt: &str) -> bool {
    let body = lex.strip_prefix(['+', '-']).unwrap_or(lex);
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match dt {
        ns::XSD_INTEGER => all_digits(body),
        ns::XSD_DECIMAL => body.split_once('.').is_some_and(|(i, f)| (i.is_empty() || all_digits(i)) && all_digits(f)),
        ns::XSD_DOUBLE => match body.split_once(['e', 'E']) {
            Some((m, e)) => {
                let e = e.strip_prefix(['+', '-']).unwrap_or(e);
                let m_ok = match m.split_once('.') {
                    Some((i, f)) => (i.is_empty() || all_digits(i)) && (f.is_empty() || all_digits(f)) && !(i.is_empty() && f.is_empty()),
                    None => all_digits(m),
                };
                m_ok && all_digits(e)
            }
            None => false,
        },
        _ => false,
    }
}

/// Term in SPARQL TSV syntax: numbers bare when their lexical form allows it.
pub fn tsv_term(t: &Term) -> String {
    match t {
        Term::Literal(l) if l.language().is_none() && is_bare_numeric(l.lexical(), l.datatype().as_str()) => {
            l.lexical().to_owned()
        }
        Term::Literal(l) if l.language().is_none() && l.datatype().as_str() == ns::XSD_STRING => {
            let mut s = String::new();
            write_quoted(&mut s, l.lexical());
            s
        }
        other => other.to_ntriples(),
    }
}

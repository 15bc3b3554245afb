use std::cmp::Ordering;

use thiserror::Error;

use super::numeric::{literal_value, Numeric};
use super::{CmpOp, Expr, Query, SolutionTable};
use crate::rdf::{Binding, Graph, PatternTerm, Term, TriplePattern};
use crate::vocab::ns;

/// A FILTER evaluation error. Rows whose filter errors are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unbound variable ?{0}")]
    Unbound(String),
    #[error("cannot compare {0} with {1}")]
    Incomparable(String, String),
    #[error("no boolean value for {0}")]
    NoBooleanValue(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Term(Term),
    Bool(bool),
}

impl Value {
    fn describe(&self) -> String {
        match self {
            Value::Term(t) => t.to_ntriples(),
            Value::Bool(b) => b.to_string(),
        }
    }
}

enum Comparable<'a> {
    Number(Numeric),
    Str(&'a str),
    Bool(bool),
    Other,
}

fn classify(v: &Value) -> Result<Comparable<'_>, ExprError> {
    let Value::Term(t) = v else {
        let Value::Bool(b) = v else { unreachable!() };
        return Ok(Comparable::Bool(*b));
    };
    let Term::Literal(l) = t else {
        return Ok(Comparable::Other);
    };
    let dt = l.datatype().as_str();
    if l.language().is_some() {
        return Ok(Comparable::Other);
    }
    if ns::is_numeric_datatype(dt) {
        return literal_value(l)
            .map(Comparable::Number)
            .ok_or_else(|| ExprError::NoBooleanValue(t.to_ntriples()));
    }
    match dt {
        ns::XSD_STRING => Ok(Comparable::Str(l.lexical())),
        ns::XSD_BOOLEAN => match l.lexical() {
            "true" | "1" => Ok(Comparable::Bool(true)),
            "false" | "0" => Ok(Comparable::Bool(false)),
            _ => Err(ExprError::NoBooleanValue(t.to_ntriples())),
        },
        _ => Ok(Comparable::Other),
    }
}

fn compare(op: CmpOp, a: &Value, b: &Value) -> Result<bool, ExprError> {
    let incomparable = || ExprError::Incomparable(a.describe(), b.describe());
    let ordering = match (classify(a), classify(b)) {
        (Ok(Comparable::Number(x)), Ok(Comparable::Number(y))) => x.cmp(&y),
        (Ok(Comparable::Str(x)), Ok(Comparable::Str(y))) => x.cmp(y),
        (Ok(Comparable::Bool(x)), Ok(Comparable::Bool(y))) => x.cmp(&y),
        (Ok(Comparable::Other), Ok(Comparable::Other)) if matches!(op, CmpOp::Eq | CmpOp::Ne) => {
            let (Value::Term(x), Value::Term(y)) = (a, b) else {
                return Err(incomparable());
            };
            // two literals of an unknown datatype with different lexical
            // forms may still denote the same value
            if x != y && x.is_literal() && y.is_literal() {
                return Err(incomparable());
            }
            if x == y {
                Ordering::Equal
            } else {
                Ordering::Less
            }
        }
        (Ok(Comparable::Other), Ok(_)) | (Ok(_), Ok(Comparable::Other))
            if matches!(op, CmpOp::Eq | CmpOp::Ne) && is_node(a) != is_node(b) =>
        {
            // an IRI or blank node never equals a literal
            Ordering::Less
        }
        _ => return Err(incomparable()),
    };
    Ok(match op {
        CmpOp::Eq => ordering == Ordering::Equal,
        CmpOp::Ne => ordering != Ordering::Equal,
        CmpOp::Lt => ordering == Ordering::Less,
        CmpOp::Le => ordering != Ordering::Greater,
        CmpOp::Gt => ordering == Ordering::Greater,
        CmpOp::Ge => ordering != Ordering::Less,
    })
}

fn is_node(v: &Value) -> bool {
    matches!(v, Value::Term(Term::Iri(_) | Term::Blank(_)))
}

/// SPARQL effective boolean value.
pub fn effective_boolean(v: &Value) -> Result<bool, ExprError> {
    let no_value = || ExprError::NoBooleanValue(v.describe());
    match v {
        Value::Bool(b) => Ok(*b),
        Value::Term(Term::Literal(l)) if l.language().is_some() => Ok(!l.lexical().is_empty()),
        Value::Term(Term::Literal(l)) => {
            let dt = l.datatype().as_str();
            if ns::is_numeric_datatype(dt) {
                // an ill-typed numeric literal is false
                return Ok(literal_value(l).is_some_and(|n| n != Numeric::zero()));
            }
            match dt {
                ns::XSD_BOOLEAN => Ok(l.lexical() == "true" || l.lexical() == "1"),
                ns::XSD_STRING => Ok(!l.lexical().is_empty()),
                _ => Err(no_value()),
            }
        }
        Value::Term(_) => Err(no_value()),
    }
}

/// Evaluates `e` under `binding` with SPARQL error semantics for `&&`, `||`
/// and `!`.
pub fn eval_expr(e: &Expr, binding: &Binding) -> Result<Value, ExprError> {
    match e {
        Expr::Var(v) => binding
            .get(v)
            .cloned()
            .map(Value::Term)
            .ok_or_else(|| ExprError::Unbound(v.clone())),
        Expr::Const(t) => Ok(Value::Term(t.clone())),
        Expr::Not(inner) => Ok(Value::Bool(!effective_boolean(&eval_expr(inner, binding)?)?)),
        Expr::And(a, b) => {
            let x = eval_expr(a, binding).and_then(|v| effective_boolean(&v));
            let y = eval_expr(b, binding).and_then(|v| effective_boolean(&v));
            match (x, y) {
                (Ok(false), _) | (_, Ok(false)) => Ok(Value::Bool(false)),
                (Ok(true), Ok(true)) => Ok(Value::Bool(true)),
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        }
        Expr::Or(a, b) => {
            let x = eval_expr(a, binding).and_then(|v| effective_boolean(&v));
            let y = eval_expr(b, binding).and_then(|v| effective_boolean(&v));
            match (x, y) {
                (Ok(true), _) | (_, Ok(true)) => Ok(Value::Bool(true)),
                (Ok(false), Ok(false)) => Ok(Value::Bool(false)),
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        }
        Expr::Cmp(op, a, b) => Ok(Value::Bool(compare(*op, &eval_expr(a, binding)?, &eval_expr(b, binding)?)?)),
    }
}

fn passes(e: &Expr, binding: &Binding) -> bool {
    matches!(eval_expr(e, binding).and_then(|v| effective_boolean(&v)), Ok(true))
}

/// Written order, except that a pattern sharing no variable with those
/// before it waits until one that does has run.
fn join_order(patterns: &[TriplePattern]) -> Vec<&TriplePattern> {
    let mut left: Vec<&TriplePattern> = patterns.iter().collect();
    let mut order = Vec::with_capacity(left.len());
    let mut bound: Vec<&str> = Vec::new();
    while !left.is_empty() {
        let at = left
            .iter()
            .position(|p| bound.is_empty() || p.variables().next().is_none() || p.variables().any(|v| bound.contains(&v)))
            .unwrap_or(0);
        let p = left.remove(at);
        bound.extend(p.variables());
        order.push(p);
    }
    order
}

/// Evaluates the basic graph pattern by index joins, connected patterns
/// first. Each top-level conjunct of a FILTER runs as soon as its variables
/// are bound.
pub fn evaluate(q: &Query, g: &Graph) -> SolutionTable {
    let header = q.header();
    let patterns = join_order(&q.patterns);
    // each conjunct runs after the first pattern that completes its variables
    let mut conjuncts: Vec<(&Expr, usize)> = Vec::new();
    for c in q.filters.iter().flat_map(Expr::conjuncts) {
        let mut seen: Vec<&str> = Vec::new();
        let at = patterns.iter().position(|p| {
            seen.extend(p.variables());
            c.variables().iter().all(|v| seen.contains(v))
        });
        conjuncts.push((c, at.unwrap_or(0)));
    }
    let mut rows: Vec<Binding> = vec![Binding::new()];
    if q.patterns.is_empty() {
        rows.retain(|b| q.filters.iter().all(|f| passes(f, b)));
    }
    for (i, pattern) in patterns.iter().enumerate() {
        let mut next = Vec::new();
        for row in &rows {
            let resolve = |pt: &'_ PatternTerm| match pt {
                PatternTerm::Term(t) => Some(t.clone()),
                PatternTerm::Var(v) => row.get(v).cloned(),
            };
            let (s, p, o) = (resolve(&pattern.subject), resolve(&pattern.predicate), resolve(&pattern.object));
            'triples: for t in g.triples_matching(s.as_ref(), p.as_ref(), o.as_ref()) {
                let mut b = row.clone();
                for (pt, term) in pattern.positions().into_iter().zip([t.subject, t.predicate, t.object]) {
                    if let PatternTerm::Var(v) = pt {
                        match b.get(v) {
                            Some(prev) if prev != term => continue 'triples,
                            Some(_) => {}
                            None => {
                                b.insert(v.clone(), term.clone());
                            }
                        }
                    }
                }
                if conjuncts.iter().filter(|(_, at)| *at == i).all(|(c, _)| passes(c, &b)) {
                    next.push(b);
                }
            }
        }
        rows = next;
        if rows.is_empty() {
            break;
        }
    }
    let mut table: Vec<Vec<Term>> = rows
        .into_iter()
        .map(|b| header.iter().map(|v| b[v].clone()).collect())
        .collect();
    table.sort_by_cached_key(|r| r.iter().map(Term::to_ntriples).collect::<Vec<_>>());
    SolutionTable { variables: header, rows: table }
}

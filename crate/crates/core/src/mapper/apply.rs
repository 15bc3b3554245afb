use serde_json::Value;

use super::template::{Bind, BindExpr, Group, IriPart, IriTemplate, MappingTemplate, PathCall, Slot};
use crate::rdf::{Graph, Iri, Literal, Term};
use crate::vocab::ns;

/// Output of one template over one document.
#[derive(Debug, Clone, Default)]
pub struct Application {
    pub graph: Graph,
    /// One message per binding that produced no value, and per triple that
    /// could not be formed.
    pub soft_errors: Vec<String>,
    pub failed_bindings: usize,
}

#[derive(Debug, Clone)]
enum Val<'a> {
    Json(&'a Value),
    Terms(Vec<Term>),
}

struct Run<'a> {
    template: &'a MappingTemplate,
    doc_id: &'a str,
    out: Application,
    blanks: usize,
}

/// Applies `t` to `doc`. Data gaps are soft: a group whose binding finds
/// nothing is skipped together with its nested groups.
pub fn apply_template_report(t: &MappingTemplate, doc: &Value, doc_id: &str) -> Application {
    let mut run = Run { template: t, doc_id, out: Application::default(), blanks: 0 };
    let mut env = vec![(t.source_var.as_str(), Val::Json(doc))];
    run.group(&t.root, &mut env, &mut Vec::new());
    run.out
}

pub fn apply_template(t: &MappingTemplate, doc: &Value, doc_id: &str) -> Graph {
    apply_template_report(t, doc, doc_id).graph
}

fn lookup<'e, 'a>(env: &'e [(&str, Val<'a>)], var: &str) -> Option<&'e Val<'a>> {
    env.iter().rev().find(|(n, _)| *n == var).map(|(_, v)| v)
}

/// Canonical `xsd:double` lexical form: shortest round-trip digits with an
/// explicit exponent, e.g. `1.5623e0`.
pub fn canonical_double(x: f64) -> String {
    format!("{x:e}")
}

/// RDF term for a JSON scalar. Numbers default to `xsd:double`.
pub fn json_scalar(v: &Value, datatype: Option<&Iri>) -> Result<Option<Term>, String> {
    let dt = datatype.map(Iri::as_str);
    let lit = |lex: String, dt: &str| Term::Literal(Literal::typed(lex, Iri::new(dt).expect("datatype IRI")));
    Ok(Some(match v {
        Value::Null => return Ok(None),
        Value::String(s) => match dt {
            None | Some(ns::XSD_STRING) => Term::string(s.clone()),
            Some(dt) => lit(s.clone(), dt),
        },
        Value::Bool(b) => lit(b.to_string(), dt.unwrap_or(ns::XSD_BOOLEAN)),
        Value::Number(n) => match dt {
            None | Some(ns::XSD_DOUBLE) => lit(canonical_double(n.as_f64().ok_or("number out of range")?), ns::XSD_DOUBLE),
            Some(ns::XSD_INTEGER) => {
                let lex = if n.is_i64() || n.is_u64() {
                    n.to_string()
                } else {
                    let f = n.as_f64().unwrap_or(f64::NAN);
                    if !f.is_finite() || f.fract() != 0.0 {
                        return Err(format!("{n} is not an integer"));
                    }
                    format!("{f:.0}")
                };
                lit(lex, ns::XSD_INTEGER)
            }
            Some(ns::XSD_DECIMAL) => {
                let f = n.as_f64().ok_or("number out of range")?;
                let mut lex = f.to_string();
                if !lex.contains('.') {
                    lex.push_str(".0");
                }
                lit(lex, ns::XSD_DECIMAL)
            }
            Some(dt) => lit(n.to_string(), dt),
        },
        Value::Array(_) | Value::Object(_) => return Err("value is not a scalar".into()),
    }))
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn percent_encode(s: &str) -> String {
    let mut out = String::new();
    for b in s.bytes() {
        if b.is_ascii_alphanumeric() || matches!(b, b'-' | b'_' | b'.' | b'~') {
            out.push(b as char);
        } else {
            out.push_str(&format!("%{b:02X}"));
        }
    }
    out
}

impl<'a> Run<'a> {
    fn soft(&mut self, msg: String) {
        self.out.soft_errors.push(format!("{}: {msg}", self.doc_id));
    }

    fn group(&mut self, g: &'a Group, env: &mut Vec<(&'a str, Val<'a>)>, indices: &mut Vec<usize>) {
        let Some(it) = &g.iterate else {
            self.body(g, env, indices);
            return;
        };
        let Some(items) = self.path_values(&it.call, env, indices) else {
            return;
        };
        if items.is_empty() {
            self.out.failed_bindings += 1;
            self.soft(format!("?{}: {} matched nothing", it.var, it.call.path));
            return;
        }
        for (i, item) in items.into_iter().enumerate() {
            env.push((&it.var, Val::Json(item)));
            indices.push(i);
            self.body(g, env, indices);
            indices.pop();
            env.pop();
        }
    }

    fn path_values(&mut self, call: &PathCall, env: &[(&'a str, Val<'a>)], indices: &[usize]) -> Option<Vec<&'a Value>> {
        match lookup(env, &call.source) {
            Some(Val::Json(v)) => {
                let v: &'a Value = v;
                Some(call.path.eval_at(v, indices.last().copied()).into_iter().filter(|v| !v.is_null()).collect())
            }
            _ => {
                self.out.failed_bindings += 1;
                self.soft(format!("?{} is not a JSON value", call.source));
                None
            }
        }
    }

    fn bind(&mut self, b: &Bind, env: &[(&'a str, Val<'a>)], indices: &[usize]) -> Option<Val<'a>> {
        match &b.expr {
            BindExpr::Path(call) => {
                let values = self.path_values(call, env, indices)?;
                let mut terms = Vec::new();
                for v in values {
                    match json_scalar(v, call.datatype.as_ref()) {
                        Ok(Some(t)) => terms.push(t),
                        Ok(None) => {}
                        Err(e) => self.soft(format!("?{}: {}: {e}", b.var, call.path)),
                    }
                }
                if terms.is_empty() {
                    self.out.failed_bindings += 1;
                    self.soft(format!("?{}: {} matched nothing", b.var, call.path));
                    return None;
                }
                Some(Val::Terms(terms))
            }
            BindExpr::BNode => {
                let label = format!("{}_{}_{}", sanitize(self.doc_id), sanitize(&b.var), self.blanks);
                self.blanks += 1;
                Some(Val::Terms(vec![Term::Blank(label)]))
            }
            BindExpr::Iri(t) => match self.mint(t, env, indices) {
                Ok(iri) => Some(Val::Terms(vec![Term::Iri(iri)])),
                Err(e) => {
                    self.out.failed_bindings += 1;
                    self.soft(format!("?{}: {e}", b.var));
                    None
                }
            },
        }
    }

    fn mint(&self, t: &IriTemplate, env: &[(&'a str, Val<'a>)], indices: &[usize]) -> Result<Iri, String> {
        let mut s = String::new();
        for p in &t.parts {
            match p {
                IriPart::Text(x) => s.push_str(x),
                IriPart::Doc => s.push_str(&percent_encode(self.doc_id)),
                IriPart::Index(None) => s.push_str(&indices.last().ok_or("{index} outside an iteration")?.to_string()),
                IriPart::Index(Some(n)) => {
                    s.push_str(&indices.get(n - 1).ok_or_else(|| format!("no enclosing iteration {n}"))?.to_string())
                }
                IriPart::Var(v) => {
                    let value = match lookup(env, v) {
                        Some(Val::Terms(ts)) if ts.len() == 1 => match &ts[0] {
                            Term::Literal(l) => l.lexical().to_owned(),
                            Term::Iri(i) => i.as_str().to_owned(),
                            Term::Blank(_) => return Err(format!("?{v} is a blank node")),
                        },
                        Some(Val::Json(j)) => match json_scalar(j, None)? {
                            Some(Term::Literal(l)) => l.lexical().to_owned(),
                            _ => return Err(format!("?{v} has no value")),
                        },
                        _ => return Err(format!("?{v} must have exactly one value")),
                    };
                    s.push_str(&percent_encode(&value));
                }
            }
        }
        if let Ok(iri) = Iri::new(s.clone()) {
            return Ok(iri);
        }
        let base = self.template.prefixes.base().ok_or("relative IRI without BASE")?;
        let joined = url::Url::parse(base.as_str()).and_then(|b| b.join(&s)).map_err(|e| e.to_string())?;
        Iri::new(joined.to_string()).map_err(|e| e.to_string())
    }

    fn body(&mut self, g: &'a Group, env: &mut Vec<(&'a str, Val<'a>)>, indices: &mut Vec<usize>) {
        let mark = env.len();
        for b in &g.bindings {
            match self.bind(b, env, indices) {
                Some(v) => env.push((&b.var, v)),
                None => {
                    env.truncate(mark);
                    return;
                }
            }
        }
        for t in &g.triples {
            let mut candidates: Vec<Vec<Term>> = Vec::with_capacity(3);
            for slot in [&t.subject, &t.predicate, &t.object] {
                let terms = match slot {
                    Slot::Const(c) => vec![c.clone()],
                    Slot::Var(v) => match lookup(env, v) {
                        Some(Val::Terms(ts)) => ts.clone(),
                        Some(Val::Json(j)) => match json_scalar(j, None) {
                            Ok(Some(t)) => vec![t],
                            _ => Vec::new(),
                        },
                        None => Vec::new(),
                    },
                };
                candidates.push(terms);
            }
            for s in &candidates[0] {
                for p in &candidates[1] {
                    for o in &candidates[2] {
                        if let Err(e) = self.out.graph.insert_terms(s.clone(), p.clone(), o.clone()) {
                            self.soft(e.to_string());
                        }
                    }
                }
            }
        }
        for c in &g.children {
            self.group(c, env, indices);
        }
        env.truncate(mark);
    }
}

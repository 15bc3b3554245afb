use std::fmt::{self, Write as _};

use thiserror::Error;

use super::path::PathExpr;
use crate::io::{ParseDiagnostic, PrefixMap};
use crate::rdf::{Iri, Term};
use crate::syntax::{lex, PResult, Parser, Tok};
use crate::vocab::ns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("template syntax: {0}")]
    Syntax(#[from] ParseDiagnostic),
    #[error("variable ?{0} is used but not bound in scope")]
    Unbound(String),
    #[error("variable ?{0} is bound more than once in scope")]
    Rebound(String),
    #[error("IRI template `{0}` is relative and the template has no BASE")]
    RelativeIri(String),
}

/// `JSONPath(?source, "$.path")` with an optional datatype for the values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCall {
    pub source: String,
    pub path: PathExpr,
    pub datatype: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IriPart {
    Text(String),
    Doc,
    /// `{index}` (innermost iteration, `None`) or `{indexN}` (N-th enclosing
    /// iteration, outermost first, 1-based).
    Index(Option<usize>),
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IriTemplate {
    pub parts: Vec<IriPart>,
}

impl IriTemplate {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut parts = Vec::new();
        let mut rest = text;
        while let Some(open) = rest.find('{') {
            if open > 0 {
                parts.push(IriPart::Text(rest[..open].to_owned()));
            }
            let close = rest[open..].find('}').ok_or("unclosed `{` in IRI template")? + open;
            let name = &rest[open + 1..close];
            parts.push(match name {
                "doc" => IriPart::Doc,
                "index" => IriPart::Index(None),
                _ if name.starts_with("index") && name[5..].parse::<usize>().is_ok_and(|n| n > 0) => {
                    IriPart::Index(Some(name[5..].parse().expect("checked")))
                }
                _ if name.len() > 1 && name.starts_with('?') => IriPart::Var(name[1..].to_owned()),
                _ => return Err(format!("unknown placeholder `{{{name}}}`")),
            });
            rest = &rest[close + 1..];
        }
        if rest.contains('}') {
            return Err("unmatched `}` in IRI template".into());
        }
        if !rest.is_empty() {
            parts.push(IriPart::Text(rest.to_owned()));
        }
        Ok(IriTemplate { parts })
    }

    fn variables(&self) -> impl Iterator<Item = &str> {
        self.parts.iter().filter_map(|p| match p {
            IriPart::Var(v) => Some(v.as_str()),
            _ => None,
        })
    }

    fn is_absolute(&self) -> bool {
        match self.parts.first() {
            Some(IriPart::Text(t)) => t.split_once(':').is_some_and(|(scheme, _)| {
                scheme.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && scheme.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
            }),
            _ => false,
        }
    }
}

impl fmt::Display for IriTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            match p {
                IriPart::Text(t) => f.write_str(t)?,
                IriPart::Doc => f.write_str("{doc}")?,
                IriPart::Index(None) => f.write_str("{index}")?,
                IriPart::Index(Some(n)) => write!(f, "{{index{n}}}")?,
                IriPart::Var(v) => write!(f, "{{?{v}}}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BindExpr {
    Path(PathCall),
    /// `BNODE()`: one fresh blank node per scope instance.
    BNode,
    Iri(IriTemplate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bind {
    pub expr: BindExpr,
    pub var: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Var(String),
    Const(Term),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleTemplate {
    pub subject: Slot,
    pub predicate: Slot,
    pub object: Slot,
}

/// `ITERATE JSONPath(...) AS ?var`: the group runs once per value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iterate {
    pub call: PathCall,
    pub var: String,
}

/// One `GENERATE { ... }` block and its scope.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Group {
    pub triples: Vec<TripleTemplate>,
    pub children: Vec<Group>,
    pub iterate: Option<Iterate>,
    pub bindings: Vec<Bind>,
}

impl Group {
    /// Number of nested groups, at any depth.
    pub fn nested_count(&self) -> usize {
        self.children.iter().map(|c| 1 + c.nested_count()).sum()
    }

    pub fn binding_count(&self) -> usize {
        self.bindings.len() + self.children.iter().map(Group::binding_count).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTemplate {
    pub prefixes: PrefixMap,
    /// Informational: the document the template was written against.
    pub source: Option<Iri>,
    /// Variable holding the whole JSON document.
    pub source_var: String,
    pub root: Group,
}

impl MappingTemplate {
    /// Scope rules: every variable is bound before use, and at most once
    /// along any chain of nested groups.
    pub fn check(&self) -> Result<(), TemplateError> {
        check_group(&self.root, &mut vec![self.source_var.clone()], self.prefixes.base().is_some())
    }
}

fn check_group(g: &Group, scope: &mut Vec<String>, has_base: bool) -> Result<(), TemplateError> {
    let mark = scope.len();
    let declare = |scope: &mut Vec<String>, v: &str| {
        if scope.iter().any(|s| s == v) {
            return Err(TemplateError::Rebound(v.to_owned()));
        }
        scope.push(v.to_owned());
        Ok(())
    };
    let need = |scope: &Vec<String>, v: &str| {
        if scope.iter().any(|s| s == v) {
            Ok(())
        } else {
            Err(TemplateError::Unbound(v.to_owned()))
        }
    };
    if let Some(it) = &g.iterate {
        need(scope, &it.call.source)?;
        declare(scope, &it.var)?;
    }
    for b in &g.bindings {
        match &b.expr {
            BindExpr::Path(call) => need(scope, &call.source)?,
            BindExpr::BNode => {}
            BindExpr::Iri(t) => {
                for v in t.variables() {
                    need(scope, v)?;
                }
                if !has_base && !t.is_absolute() {
                    return Err(TemplateError::RelativeIri(t.to_string()));
                }
            }
        }
        declare(scope, &b.var)?;
    }
    for t in &g.triples {
        for slot in [&t.subject, &t.predicate, &t.object] {
            if let Slot::Var(v) = slot {
                need(scope, v)?;
            }
        }
    }
    for c in &g.children {
        check_group(c, scope, has_base)?;
    }
    scope.truncate(mark);
    Ok(())
}

/// Parses a template and checks its scopes.
pub fn parse_template(text: &str) -> Result<MappingTemplate, TemplateError> {
    let toks = lex(text)?;
    let end = text.lines().enumerate().last().map_or((1, 1), |(n, l)| (n + 1, l.chars().count() + 1));
    let mut p = Parser::new(toks, end);
    p.prologue()?;
    p.expect_word("GENERATE")?;
    let mut root = p.group_body()?;
    let mut source = None;
    let mut source_var = "source".to_owned();
    if p.at_word("SOURCE") {
        p.pos += 1;
        source = Some(p.iri()?);
        p.expect_word("AS")?;
        source_var = p.var()?;
    }
    if p.at_word("WHERE") {
        p.pos += 1;
        root.bindings = p.bindings()?;
    }
    if p.peek().is_some() {
        return Err(p.error(format!("unexpected {} after template", p.describe())).into());
    }
    let t = MappingTemplate { prefixes: std::mem::take(&mut p.prefixes), source, source_var, root };
    t.check()?;
    Ok(t)
}

impl Parser {
    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.at_word(w) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {w}, found {}", self.describe())))
        }
    }

    fn var(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Var(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error(format!("expected a variable, found {}", self.describe()))),
        }
    }

    fn string(&mut self) -> PResult<(String, ParseDiagnostic)> {
        let at = self.error("");
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, at))
            }
            _ => Err(self.error(format!("expected a string, found {}", self.describe()))),
        }
    }

    /// `{ triples and nested GENERATE groups }`
    fn group_body(&mut self) -> PResult<Group> {
        self.expect_punct("{")?;
        let mut g = Group::default();
        loop {
            if self.eat_punct("}") {
                return Ok(g);
            }
            if self.at_word("GENERATE") {
                self.pos += 1;
                let mut child = self.group_body()?;
                if self.at_word("ITERATE") {
                    self.pos += 1;
                    let call = self.path_call()?;
                    self.expect_word("AS")?;
                    child.iterate = Some(Iterate { call, var: self.var()? });
                }
                if self.at_word("WHERE") {
                    self.pos += 1;
                    child.bindings = self.bindings()?;
                }
                g.children.push(child);
                self.eat_punct(".");
                continue;
            }
            self.template_triples(&mut g.triples)?;
            if !self.eat_punct(".") && !self.at_punct("}") && !self.at_word("GENERATE") {
                return Err(self.error(format!("expected `.` or `}}`, found {}", self.describe())));
            }
        }
    }

    fn template_triples(&mut self, out: &mut Vec<TripleTemplate>) -> PResult<()> {
        let subject = self.slot(false)?;
        loop {
            let predicate = if matches!(self.peek(), Some(Tok::Word(w)) if w == "a") {
                self.pos += 1;
                Slot::Const(Term::static_iri(ns::RDF_TYPE))
            } else {
                self.slot(false)?
            };
            loop {
                let object = self.slot(true)?;
                out.push(TripleTemplate { subject: subject.clone(), predicate: predicate.clone(), object });
                if !self.eat_punct(",") {
                    break;
                }
            }
            if !self.eat_punct(";") {
                return Ok(());
            }
            while self.eat_punct(";") {}
            if self.at_punct(".") || self.at_punct("}") || self.at_word("GENERATE") {
                return Ok(());
            }
        }
    }

    fn slot(&mut self, literals: bool) -> PResult<Slot> {
        match self.peek() {
            Some(Tok::Var(_)) => Ok(Slot::Var(self.var()?)),
            Some(Tok::Iri(_) | Tok::PName(..)) => Ok(Slot::Const(Term::Iri(self.iri()?))),
            Some(Tok::Str(_) | Tok::Number(..) | Tok::Punct("-" | "+")) if literals => Ok(Slot::Const(self.literal()?)),
            Some(Tok::Word(w)) if literals && (w == "true" || w == "false") => Ok(Slot::Const(self.literal()?)),
            _ => Err(self.error(format!("expected a term or variable, found {}", self.describe()))),
        }
    }

    fn at_jsonpath(&self) -> bool {
        match self.peek() {
            Some(Tok::Word(w)) => w == "JSONPath",
            Some(Tok::PName(_, local)) => local == "JSONPath",
            _ => false,
        }
    }

    fn path_call(&mut self) -> PResult<PathCall> {
        if !self.at_jsonpath() {
            return Err(self.error(format!("expected JSONPath(...), found {}", self.describe())));
        }
        self.pos += 1;
        self.expect_punct("(")?;
        let source = self.var()?;
        self.expect_punct(",")?;
        let (text, at) = self.string()?;
        let path = PathExpr::parse(&text).map_err(|d| {
            // column of the opening quote plus the offset inside the string
            ParseDiagnostic::error(at.line, at.column + d.column, d.message)
        })?;
        let datatype = if self.eat_punct(",") { Some(self.iri()?) } else { None };
        self.expect_punct(")")?;
        Ok(PathCall { source, path, datatype })
    }

    fn bindings(&mut self) -> PResult<Vec<Bind>> {
        self.expect_punct("{")?;
        let mut out = Vec::new();
        while !self.eat_punct("}") {
            self.expect_word("BIND")?;
            self.expect_punct("(")?;
            let expr = if self.at_jsonpath() {
                BindExpr::Path(self.path_call()?)
            } else if self.at_word("BNODE") {
                self.pos += 1;
                self.expect_punct("(")?;
                self.expect_punct(")")?;
                BindExpr::BNode
            } else if self.at_word("IRI") {
                self.pos += 1;
                self.expect_punct("(")?;
                let (text, at) = self.string()?;
                let t = IriTemplate::parse(&text).map_err(|m| ParseDiagnostic::error(at.line, at.column, m))?;
                self.expect_punct(")")?;
                BindExpr::Iri(t)
            } else {
                return Err(self.error(format!("expected JSONPath, BNODE or IRI, found {}", self.describe())));
            };
            self.expect_word("AS")?;
            let var = self.var()?;
            self.expect_punct(")")?;
            self.eat_punct(".");
            out.push(Bind { expr, var });
        }
        Ok(out)
    }
}

struct Printer<'a> {
    prefixes: &'a PrefixMap,
    out: String,
}

impl Printer<'_> {
    fn iri(&self, iri: &str) -> String {
        match self.prefixes.compact(iri) {
            Some((p, l)) => format!("{p}:{l}"),
            None => format!("<{iri}>"),
        }
    }

    fn slot(&self, s: &Slot) -> String {
        match s {
            Slot::Var(v) => format!("?{v}"),
            Slot::Const(Term::Iri(i)) => self.iri(i.as_str()),
            Slot::Const(t) => crate::query::tsv_term(t),
        }
    }

    fn call(&self, c: &PathCall) -> String {
        let mut s = format!("JSONPath(?{}, \"{}\"", c.source, c.path);
        if let Some(dt) = &c.datatype {
            let _ = write!(s, ", {}", self.iri(dt.as_str()));
        }
        s.push(')');
        s
    }

    fn group(&mut self, g: &Group, depth: usize) {
        let pad = "  ".repeat(depth + 1);
        for t in &g.triples {
            let line = format!("{pad}{} {} {} .\n", self.slot(&t.subject), self.slot(&t.predicate), self.slot(&t.object));
            self.out.push_str(&line);
        }
        for c in &g.children {
            let _ = writeln!(self.out, "{pad}GENERATE {{");
            self.group(c, depth + 1);
            let _ = write!(self.out, "{pad}}}");
            if let Some(it) = &c.iterate {
                let call = self.call(&it.call);
                let _ = write!(self.out, " ITERATE {call} AS ?{}", it.var);
            }
            if !c.bindings.is_empty() {
                self.out.push_str(" WHERE ");
                self.bindings(&c.bindings, depth + 1);
            }
            self.out.push_str(" .\n");
        }
    }

    fn bindings(&mut self, bindings: &[Bind], depth: usize) {
        let pad = "  ".repeat(depth + 1);
        self.out.push_str("{\n");
        for b in bindings {
            let expr = match &b.expr {
                BindExpr::Path(c) => self.call(c),
                BindExpr::BNode => "BNODE()".to_owned(),
                BindExpr::Iri(t) => format!("IRI(\"{t}\")"),
            };
            let _ = writeln!(self.out, "{pad}BIND({expr} AS ?{})", b.var);
        }
        self.out.push_str(&"  ".repeat(depth));
        self.out.push('}');
    }
}

impl fmt::Display for MappingTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = Printer { prefixes: &self.prefixes, out: String::new() };
        if let Some(base) = self.prefixes.base() {
            let _ = writeln!(p.out, "BASE <{}>", base.as_str());
        }
        for (label, iri) in self.prefixes.iter() {
            let _ = writeln!(p.out, "PREFIX {label}: <{}>", iri.as_str());
        }
        p.out.push_str("\nGENERATE {\n");
        p.group(&self.root, 0);
        p.out.push('}');
        if let Some(src) = &self.source {
            let _ = write!(p.out, "\nSOURCE <{}> AS ?{}", src.as_str(), self.source_var);
        } else if self.source_var != "source" {
            let _ = write!(p.out, "\nSOURCE <urn:document> AS ?{}", self.source_var);
        }
        if !self.root.bindings.is_empty() {
            p.out.push_str("\nWHERE ");
            p.bindings(&self.root.bindings, 0);
        }
        p.out.push('\n');
        f.write_str(&p.out)
    }
}

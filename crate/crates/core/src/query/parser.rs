use super::{CmpOp, Expr, Projection, Query, QueryError, HIDDEN_VAR_PREFIX};
use crate::rdf::{PatternTerm, Term, TriplePattern};
use crate::syntax::{lex, PResult, Parser, Tok};
use crate::vocab::ns;

/// Parses and statically checks a query.
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let toks = lex(text)?;
    let end = text.lines().enumerate().last().map_or((1, 1), |(n, l)| (n + 1, l.chars().count() + 1));
    let mut p = Parser::new(toks, end);
    let query = p.query()?;
    query.check()?;
    Ok(query)
}

impl Parser {
    fn query(&mut self) -> PResult<Query> {
        self.prologue()?;
        if !self.at_word("SELECT") {
            return Err(self.error(format!("expected SELECT, found {}", self.describe())));
        }
        self.pos += 1;
        if self.at_word("DISTINCT") || self.at_word("REDUCED") {
            return Err(self.error("DISTINCT and REDUCED are not supported"));
        }
        let projection = if self.eat_punct("*") {
            Projection::All
        } else {
            let mut vars = Vec::new();
            while let Some(Tok::Var(v)) = self.peek() {
                vars.push(v.clone());
                self.pos += 1;
            }
            if vars.is_empty() {
                return Err(self.error("expected `*` or variables after SELECT"));
            }
            Projection::Vars(vars)
        };
        if self.at_word("WHERE") {
            self.pos += 1;
        }
        self.expect_punct("{")?;
        let mut patterns = Vec::new();
        let mut filters = Vec::new();
        loop {
            if self.eat_punct("}") {
                break;
            }
            if self.at_word("FILTER") {
                self.pos += 1;
                self.expect_punct("(")?;
                filters.push(self.expr()?);
                self.expect_punct(")")?;
                self.eat_punct(".");
                continue;
            }
            for w in ["OPTIONAL", "UNION", "GRAPH", "MINUS", "BIND", "VALUES", "SERVICE"] {
                if self.at_word(w) {
                    return Err(self.error(format!("{w} is not supported")));
                }
            }
            self.triples(&mut patterns)?;
            if !self.eat_punct(".") && !self.at_punct("}") && !self.at_word("FILTER") {
                return Err(self.error(format!("expected `.` or `}}`, found {}", self.describe())));
            }
        }
        for w in ["ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING"] {
            if self.at_word(w) {
                return Err(self.error(format!("{w} is not supported")));
            }
        }
        if self.peek().is_some() {
            return Err(self.error(format!("unexpected {} after query", self.describe())));
        }
        Ok(Query {
            prefixes: std::mem::take(&mut self.prefixes),
            projection,
            patterns,
            filters,
        })
    }

    fn triples(&mut self, out: &mut Vec<TriplePattern>) -> PResult<()> {
        let subject = self.node("subject", false)?;
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.node("object", true)?;
                out.push(TriplePattern::new(subject.clone(), predicate.clone(), object));
                if !self.eat_punct(",") {
                    break;
                }
            }
            if !self.eat_punct(";") {
                return Ok(());
            }
            while self.eat_punct(";") {}
            if self.at_punct(".") || self.at_punct("}") {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<PatternTerm> {
        if matches!(self.peek(), Some(Tok::Word(w)) if w == "a") {
            self.pos += 1;
            return Ok(PatternTerm::Term(Term::static_iri(ns::RDF_TYPE)));
        }
        match self.peek() {
            Some(Tok::Var(_) | Tok::Iri(_) | Tok::PName(..)) => self.node("predicate", false),
            _ => Err(self.error(format!("expected a predicate, found {}", self.describe()))),
        }
    }

    fn node(&mut self, role: &str, literals: bool) -> PResult<PatternTerm> {
        match self.peek() {
            Some(Tok::Var(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(PatternTerm::Var(v))
            }
            Some(Tok::Blank(l)) => {
                let l = l.clone();
                self.pos += 1;
                Ok(PatternTerm::Var(format!("{HIDDEN_VAR_PREFIX}{l}")))
            }
            Some(Tok::Iri(_) | Tok::PName(..)) => Ok(PatternTerm::Term(Term::Iri(self.iri()?))),
            Some(Tok::Str(_) | Tok::Number(..) | Tok::Punct("-" | "+")) if literals => Ok(PatternTerm::Term(self.literal()?)),
            Some(Tok::Word(w)) if literals && (w == "true" || w == "false") => Ok(PatternTerm::Term(self.literal()?)),
            _ => Err(self.error(format!("expected {role}, found {}", self.describe()))),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut left = self.and_expr()?;
        while self.eat_punct("||") {
            let right = self.and_expr()?;
            left = Expr::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> PResult<Expr> {
        let mut left = self.relational()?;
        while self.eat_punct("&&") {
            let right = self.relational()?;
            left = Expr::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn relational(&mut self) -> PResult<Expr> {
        let left = self.unary()?;
        let op = match self.peek() {
            Some(Tok::Punct("=")) => CmpOp::Eq,
            Some(Tok::Punct("!=")) => CmpOp::Ne,
            Some(Tok::Punct("<")) => CmpOp::Lt,
            Some(Tok::Punct("<=")) => CmpOp::Le,
            Some(Tok::Punct(">")) => CmpOp::Gt,
            Some(Tok::Punct(">=")) => CmpOp::Ge,
            _ => return Ok(left),
        };
        self.pos += 1;
        let right = self.unary()?;
        Ok(Expr::Cmp(op, Box::new(left), Box::new(right)))
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_punct("!") {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        match self.peek() {
            Some(Tok::Punct("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_punct(")")?;
                Ok(e)
            }
            Some(Tok::Var(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Iri(_) | Tok::PName(..)) => Ok(Expr::Const(Term::Iri(self.iri()?))),
            Some(Tok::Str(_) | Tok::Number(..) | Tok::Punct("-" | "+")) => Ok(Expr::Const(self.literal()?)),
            Some(Tok::Word(w)) if w == "true" || w == "false" => Ok(Expr::Const(self.literal()?)),
            _ => Err(self.error(format!("expected an expression, found {}", self.describe()))),
        }
    }
}

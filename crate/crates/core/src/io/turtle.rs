use std::collections::HashMap;

use url::Url;

use super::{ParseDiagnostic, PrefixMap};
use crate::rdf::{Graph, Iri, Literal, Term};
use crate::vocab::ns;

/// Parses Turtle into a fresh graph. Relative IRIs resolve against `base`
/// or a later `@base`. The first error aborts the parse.
pub fn parse_turtle(text: &str, base: Option<&str>) -> Result<(Graph, PrefixMap), ParseDiagnostic> {
    let mut p = Parser {
        src: text,
        pos: 0,
        line: 1,
        column: 1,
        graph: Graph::new(),
        prefixes: PrefixMap::new(),
        blank_labels: HashMap::new(),
    };
    if let Some(b) = base {
        let iri = Iri::new(b).map_err(|e| p.error(format!("base: {e}")))?;
        p.prefixes.set_base(Some(iri));
    }
    p.document()?;
    Ok((p.graph, p.prefixes))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
    graph: Graph,
    prefixes: PrefixMap,
    blank_labels: HashMap<String, Term>,
}

type PResult<T> = Result<T, ParseDiagnostic>;

fn is_pn_chars_base(c: char) -> bool {
    c.is_ascii_alphabetic()
        || matches!(c as u32,
            0xC0..=0xD6 | 0xD8..=0xF6 | 0xF8..=0x2FF | 0x370..=0x37D | 0x37F..=0x1FFF
            | 0x200C..=0x200D | 0x2070..=0x218F | 0x2C00..=0x2FEF | 0x3001..=0xD7FF
            | 0xF900..=0xFDCF | 0xFDF0..=0xFFFD | 0x10000..=0xEFFFF)
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c) || c == '-' || c.is_ascii_digit() || matches!(c as u32, 0xB7 | 0x300..=0x36F | 0x203F..=0x2040)
}

const LOCAL_ESCAPABLE: &str = "_~.-!$&'()*+,;=/?#@%";

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic::error(self.line, self.column, message)
    }

    fn error_at(&self, (line, column): (usize, usize), message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic::error(line, column, message)
    }

    fn here(&self) -> (usize, usize) {
        (self.line, self.column)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.bump();
                Ok(())
            }
            Some(found) => Err(self.error(format!("expected `{c}`, found `{found}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    /// Case-insensitive keyword followed by a non-name character.
    fn at_keyword(&self, kw: &str) -> bool {
        let rest = self.rest();
        rest.len() >= kw.len()
            && rest.is_char_boundary(kw.len())
            && rest[..kw.len()].eq_ignore_ascii_case(kw)
            && !rest[kw.len()..].starts_with(|c: char| is_pn_chars(c) || c == ':')
    }

    fn consume_keyword(&mut self, kw: &str) {
        for _ in 0..kw.chars().count() {
            self.bump();
        }
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> PResult<()> {
        if self.peek() == Some('@') {
            let at = self.here();
            self.bump();
            if self.at_keyword("prefix") {
                self.consume_keyword("prefix");
                self.prefix_decl()?;
            } else if self.at_keyword("base") {
                self.consume_keyword("base");
                self.base_decl()?;
            } else {
                return Err(self.error_at(at, "unknown directive"));
            }
            return self.expect('.');
        }
        if self.at_keyword("PREFIX") {
            self.consume_keyword("PREFIX");
            return self.prefix_decl();
        }
        if self.at_keyword("BASE") {
            self.consume_keyword("BASE");
            return self.base_decl();
        }
        self.triples()?;
        self.expect('.')
    }

    fn prefix_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let at = self.here();
        let label = self.pn_prefix();
        if self.peek() != Some(':') {
            return Err(self.error("expected `:` after prefix label"));
        }
        self.bump();
        self.skip_ws();
        let iri = self.iriref()?;
        self.prefixes
            .insert(&label, iri.as_str())
            .map_err(|e| self.error_at(at, e.to_string()))
    }

    fn base_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let iri = self.iriref()?;
        self.prefixes.set_base(Some(iri));
        Ok(())
    }

    fn triples(&mut self) -> PResult<()> {
        self.skip_ws();
        let subject = match self.peek() {
            Some('[') => {
                let node = self.blank_property_list()?;
                self.skip_ws();
                if self.peek() == Some('.') {
                    return Ok(());
                }
                node
            }
            Some('(') => return Err(self.error("collections are not supported")),
            Some('"' | '\'') => return Err(self.error("a literal cannot be a subject")),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-') => {
                return Err(self.error("a literal cannot be a subject"))
            }
            _ => self.iri_or_blank("subject")?,
        };
        self.predicate_object_list(&subject)
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            self.skip_ws();
            let predicate = self.verb()?;
            loop {
                self.skip_ws();
                let object = self.object()?;
                self.graph
                    .insert_terms(subject.clone(), predicate.clone(), object)
                    .map_err(|e| self.error(e.to_string()))?;
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            // one or more `;`, optionally followed by another predicate
            let mut saw_semicolon = false;
            loop {
                self.skip_ws();
                if self.peek() == Some(';') {
                    self.bump();
                    saw_semicolon = true;
                } else {
                    break;
                }
            }
            if !saw_semicolon {
                return Ok(());
            }
            self.skip_ws();
            if matches!(self.peek(), Some('.' | ']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Term> {
        if self.peek() == Some('a') && !self.peek_nth(1).is_some_and(|c| is_pn_chars(c) || c == ':') {
            self.bump();
            return Ok(Term::static_iri(ns::RDF_TYPE));
        }
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_' | '[') => Err(self.error("a predicate must be an IRI")),
            Some(c) if c == ':' || is_pn_chars_base(c) => Ok(Term::Iri(self.prefixed_name()?)),
            Some(c) => Err(self.error(format!("expected a predicate, found `{c}`"))),
            None => Err(self.error("expected a predicate, found end of input")),
        }
    }

    fn iri_or_blank(&mut self, role: &str) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_nth(1) == Some(':') => self.blank_label(),
            Some(c) if c == ':' || is_pn_chars_base(c) => Ok(Term::Iri(self.prefixed_name()?)),
            Some(c) => Err(self.error(format!("expected {role}, found `{c}`"))),
            None => Err(self.error(format!("expected {role}, found end of input"))),
        }
    }

    fn object(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('[') => self.blank_property_list(),
            Some('(') => Err(self.error("collections are not supported")),
            Some('<') if self.peek_nth(1) == Some('<') => Err(self.error("quoted triples are not supported")),
            Some('"' | '\'') => self.literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => self.numeric(),
            _ if self.rest().starts_with("true") && self.at_keyword("true") => {
                self.consume_keyword("true");
                Ok(Term::Literal(Literal::typed("true", Iri::from_static(ns::XSD_BOOLEAN))))
            }
            _ if self.rest().starts_with("false") && self.at_keyword("false") => {
                self.consume_keyword("false");
                Ok(Term::Literal(Literal::typed("false", Iri::from_static(ns::XSD_BOOLEAN))))
            }
            _ => self.iri_or_blank("an object"),
        }
    }

    fn blank_property_list(&mut self) -> PResult<Term> {
        self.bump(); // [
        let node = self.graph.fresh_blank();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.expect(']')?;
        Ok(node)
    }

    fn blank_label(&mut self) -> PResult<Term> {
        let at = self.here();
        self.bump();
        self.bump(); // _:
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return Err(self.error_at(at, "empty blank node label")),
        }
        self.name_tail(&mut label, is_pn_chars)?;
        let graph = &mut self.graph;
        Ok(self
            .blank_labels
            .entry(label)
            .or_insert_with(|| graph.fresh_blank())
            .clone())
    }

    /// Consumes `(allowed | '.')*` without a trailing `.`.
    fn name_tail(&mut self, out: &mut String, allowed: impl Fn(char) -> bool) -> PResult<()> {
        loop {
            match self.peek() {
                Some('.') => {
                    let mut n = 1;
                    while self.peek_nth(n) == Some('.') {
                        n += 1;
                    }
                    if !self.peek_nth(n).is_some_and(&allowed) {
                        return Ok(());
                    }
                    for _ in 0..n {
                        out.push('.');
                        self.bump();
                    }
                }
                Some(c) if allowed(c) => {
                    out.push(c);
                    self.bump();
                }
                _ => return Ok(()),
            }
        }
    }

    fn pn_prefix(&mut self) -> String {
        let mut label = String::new();
        if let Some(c) = self.peek().filter(|&c| is_pn_chars_base(c)) {
            label.push(c);
            self.bump();
            let _ = self.name_tail(&mut label, is_pn_chars);
        }
        label
    }

    fn prefixed_name(&mut self) -> PResult<Iri> {
        let at = self.here();
        let label = self.pn_prefix();
        if self.peek() != Some(':') {
            let word = if label.is_empty() { self.peek().map(String::from).unwrap_or_default() } else { label };
            return Err(self.error_at(at, format!("unexpected `{word}`")));
        }
        self.bump();
        let local = self.pn_local()?;
        let Some(namespace) = self.prefixes.get(&label) else {
            return Err(self.error_at(at, format!("undefined prefix `{label}:`")));
        };
        Iri::new(format!("{}{local}", namespace.as_str())).map_err(|e| self.error_at(at, e.to_string()))
    }

    fn pn_local(&mut self) -> PResult<String> {
        let mut local = String::new();
        let continues = |c: char| is_pn_chars(c) || matches!(c, ':' | '%' | '\\');
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c == ':' || c.is_ascii_digit() || c == '%' || c == '\\' => {}
            _ => return Ok(local),
        }
        loop {
            match self.peek() {
                Some('%') => {
                    let h1 = self.peek_nth(1).filter(char::is_ascii_hexdigit);
                    let h2 = self.peek_nth(2).filter(char::is_ascii_hexdigit);
                    let (Some(h1), Some(h2)) = (h1, h2) else {
                        return Err(self.error("`%` must be followed by two hex digits"));
                    };
                    local.extend(['%', h1, h2]);
                    for _ in 0..3 {
                        self.bump();
                    }
                }
                Some('\\') => {
                    match self.peek_nth(1).filter(|c| LOCAL_ESCAPABLE.contains(*c)) {
                        Some(c) => local.push(c),
                        None => return Err(self.error("invalid escape in local name")),
                    }
                    self.bump();
                    self.bump();
                }
                Some('.') => {
                    let mut n = 1;
                    while self.peek_nth(n) == Some('.') {
                        n += 1;
                    }
                    if !self.peek_nth(n).is_some_and(continues) {
                        return Ok(local);
                    }
                    for _ in 0..n {
                        local.push('.');
                        self.bump();
                    }
                }
                Some(c) if is_pn_chars(c) || c == ':' => {
                    local.push(c);
                    self.bump();
                }
                _ => return Ok(local),
            }
        }
    }

    fn iriref(&mut self) -> PResult<Iri> {
        let at = self.here();
        if self.peek() != Some('<') {
            return Err(self.error("expected `<`"));
        }
        self.bump();
        let mut raw = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        _ => return Err(self.error("invalid escape in IRI")),
                    };
                    raw.push(c);
                }
                Some(c) if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error(format!("character `{}` not allowed in IRI", c.escape_default())));
                }
                Some(c) => raw.push(c),
                None => return Err(self.error_at(at, "unterminated IRI")),
            }
        }
        self.resolve(&raw).map_err(|m| self.error_at(at, m))
    }

    fn resolve(&self, raw: &str) -> Result<Iri, String> {
        if let Ok(iri) = Iri::new(raw) {
            return Ok(iri);
        }
        let Some(base) = self.prefixes.base() else {
            return Err(format!("relative IRI `{raw}` without a base"));
        };
        let base = Url::parse(base.as_str()).map_err(|e| format!("base `{}`: {e}", base.as_str()))?;
        let joined = base.join(raw).map_err(|e| format!("cannot resolve `{raw}`: {e}"))?;
        Iri::new(joined.as_str()).map_err(|e| e.to_string())
    }

    fn hex_escape(&mut self, digits: usize) -> PResult<char> {
        let mut v = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error("invalid hex digit in escape"))?;
            v = v * 16 + d;
        }
        char::from_u32(v).ok_or_else(|| self.error(format!("invalid code point U+{v:X}")))
    }

    fn literal(&mut self) -> PResult<Term> {
        let lexical = self.string()?;
        match self.peek() {
            Some('@') => {
                let at = self.here();
                self.bump();
                let mut tag = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '-') {
                    tag.push(c);
                    self.bump();
                }
                Literal::lang(lexical, tag)
                    .map(Term::Literal)
                    .map_err(|e| self.error_at(at, e.to_string()))
            }
            Some('^') => {
                self.bump();
                if self.bump() != Some('^') {
                    return Err(self.error("expected `^^`"));
                }
                let dt = match self.peek() {
                    Some('<') => self.iriref()?,
                    _ => self.prefixed_name()?,
                };
                Ok(Term::Literal(Literal::typed(lexical, dt)))
            }
            _ => Ok(Term::string(lexical)),
        }
    }

    fn string(&mut self) -> PResult<String> {
        let at = self.here();
        let quote = self.bump().expect("caller checked quote");
        let long = self.peek() == Some(quote) && self.peek_nth(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error_at(at, "unterminated string")),
                Some(c) if c == quote => {
                    if !long {
                        self.bump();
                        return Ok(out);
                    }
                    if self.peek_nth(1) == Some(quote) && self.peek_nth(2) == Some(quote) {
                        // a long string may end with up to two extra quotes
                        let mut run = 3;
                        while self.peek_nth(run) == Some(quote) && run < 5 {
                            run += 1;
                        }
                        for _ in 0..run - 3 {
                            out.push(quote);
                        }
                        for _ in 0..run {
                            self.bump();
                        }
                        return Ok(out);
                    }
                    out.push(c);
                    self.bump();
                }
                Some('\\') => {
                    self.bump();
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        _ => return Err(self.error("invalid escape in string")),
                    };
                    out.push(c);
                }
                Some('\n' | '\r') if !long => return Err(self.error("line break in short string")),
                Some(c) => {
                    out.push(c);
                    self.bump();
                }
            }
        }
    }

    fn numeric(&mut self) -> PResult<Term> {
        let at = self.here();
        let mut lex = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            lex.push(c);
            self.bump();
        }
        let digits = |p: &mut Self, out: &mut String| {
            let mut n = 0;
            while let Some(c) = p.peek().filter(char::is_ascii_digit) {
                out.push(c);
                p.bump();
                n += 1;
            }
            n
        };
        let int_digits = digits(self, &mut lex);
        let mut datatype = ns::XSD_INTEGER;
        if self.peek() == Some('.') {
            // the dot belongs to the number only if digits or an exponent follow
            let mut n = 1;
            while self.peek_nth(n).is_some_and(|c| c.is_ascii_digit()) {
                n += 1;
            }
            let frac = n - 1;
            let exp_follows = matches!(self.peek_nth(n), Some('e' | 'E'));
            if frac > 0 || (exp_follows && int_digits > 0) {
                lex.push('.');
                self.bump();
                digits(self, &mut lex);
                datatype = ns::XSD_DECIMAL;
            }
        }
        if int_digits == 0 && datatype == ns::XSD_INTEGER {
            return Err(self.error_at(at, "malformed number"));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            lex.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                lex.push(c);
                self.bump();
            }
            if digits(self, &mut lex) == 0 {
                return Err(self.error_at(at, "exponent without digits"));
            }
            datatype = ns::XSD_DOUBLE;
        }
        Ok(Term::Literal(Literal::typed(lex, Iri::from_static(datatype))))
    }
}

//! Tokens and parsing helpers shared by the query and template languages.

use crate::io::{ParseDiagnostic, PrefixMap};
use crate::rdf::{Iri, Literal, Term};
use crate::vocab::ns;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Word(String),
    Var(String),
    Iri(String),
    PName(String, String),
    Blank(String),
    Str(String),
    Lang(String),
    Number(String, &'static str),
    Punct(&'static str),
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub(crate) tok: Tok,
    pub(crate) line: usize,
    pub(crate) column: usize,
}

const PUNCT: [&str; 17] = [
    "&&", "||", "!=", "<=", ">=", "^^", "{", "}", "(", ")", ".", ";", ",", "*", "=", "<", ">",
];

pub(crate) fn lex(src: &str) -> Result<Vec<Spanned>, ParseDiagnostic> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let (mut line, mut col) = (1, 1);
    let mut out = Vec::new();
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    let name_char = |c: char| c.is_alphanumeric() || matches!(c, '_' | '-');
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        let (l0, c0) = (line, col);
        let err = |msg: String| ParseDiagnostic::error(l0, c0, msg);
        let start = i;
        let tok = if c == '?' || c == '$' {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            if j == i + 1 {
                return Err(err("empty variable name".into()));
            }
            let name: String = chars[i + 1..j].iter().collect();
            advance(&mut i, &mut line, &mut col, j - start);
            Tok::Var(name)
        } else if c == '<' && iri_end(&chars, i).is_some() {
            let j = iri_end(&chars, i).expect("checked");
            let iri: String = chars[i + 1..j].iter().collect();
            advance(&mut i, &mut line, &mut col, j + 1 - start);
            Tok::Iri(iri)
        } else if c == '"' || c == '\'' {
            let (s, len) = lex_string(&chars[i..]).map_err(err)?;
            advance(&mut i, &mut line, &mut col, len);
            Tok::Str(s)
        } else if c == '@' {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '-') {
                j += 1;
            }
            let tag: String = chars[i + 1..j].iter().collect();
            advance(&mut i, &mut line, &mut col, j - start);
            Tok::Lang(tag)
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            let (lexical, dt, len) = lex_number(&chars[i..]);
            advance(&mut i, &mut line, &mut col, len);
            Tok::Number(lexical, dt)
        } else if c == '_' && chars.get(i + 1) == Some(&':') {
            let mut j = i + 2;
            while j < chars.len() && name_char(chars[j]) {
                j += 1;
            }
            if j == i + 2 {
                return Err(err("empty blank node label".into()));
            }
            let label: String = chars[i + 2..j].iter().collect();
            advance(&mut i, &mut line, &mut col, j - start);
            Tok::Blank(label)
        } else if c.is_alphabetic() || c == ':' {
            let mut j = i;
            while j < chars.len() && (name_char(chars[j]) || chars[j] == '.') {
                j += 1;
            }
            while j > i && chars[j - 1] == '.' {
                j -= 1;
            }
            let word: String = chars[i..j].iter().collect();
            if j < chars.len() && chars[j] == ':' {
                // prefixed name: local part may contain `.` (not trailing), `:` and `%hh`
                let mut k = j + 1;
                while k < chars.len() && (name_char(chars[k]) || matches!(chars[k], '.' | ':' | '%')) {
                    k += 1;
                }
                while k > j + 1 && chars[k - 1] == '.' {
                    k -= 1;
                }
                let local: String = chars[j + 1..k].iter().collect();
                advance(&mut i, &mut line, &mut col, k - start);
                Tok::PName(word, local)
            } else if word.contains('.') {
                return Err(err(format!("unexpected `{word}`")));
            } else {
                advance(&mut i, &mut line, &mut col, j - start);
                Tok::Word(word)
            }
        } else if let Some(p) = PUNCT.iter().find(|p| chars[i..].iter().take(p.len()).copied().eq(p.chars())) {
            advance(&mut i, &mut line, &mut col, p.len());
            Tok::Punct(p)
        } else if c == '!' || c == '-' || c == '+' {
            advance(&mut i, &mut line, &mut col, 1);
            Tok::Punct(match c {
                '!' => "!",
                '-' => "-",
                _ => "+",
            })
        } else {
            return Err(err(format!("unexpected character `{c}`")));
        };
        out.push(Spanned { tok, line: l0, column: c0 });
    }
    Ok(out)
}

/// Index of the closing `>` when `<` starts an IRI reference.
fn iri_end(chars: &[char], start: usize) -> Option<usize> {
    let mut j = start + 1;
    while j < chars.len() {
        match chars[j] {
            '>' => return Some(j),
            c if c.is_whitespace() || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') => return None,
            _ => j += 1,
        }
    }
    None
}

fn lex_string(chars: &[char]) -> Result<(String, usize), String> {
    let q = chars[0];
    let long = chars.len() >= 3 && chars[1] == q && chars[2] == q;
    let mut i = if long { 3 } else { 1 };
    let mut s = String::new();
    loop {
        let Some(&c) = chars.get(i) else {
            return Err("unterminated string".into());
        };
        if c == q {
            if !long {
                return Ok((s, i + 1));
            }
            if chars.get(i + 1) == Some(&q) && chars.get(i + 2) == Some(&q) {
                return Ok((s, i + 3));
            }
        }
        if c == '\\' {
            let e = chars.get(i + 1).copied().ok_or("unterminated escape")?;
            let (ch, used) = match e {
                't' => ('\t', 2),
                'n' => ('\n', 2),
                'r' => ('\r', 2),
                'b' => ('\u{8}', 2),
                'f' => ('\u{c}', 2),
                '"' | '\'' | '\\' => (e, 2),
                'u' | 'U' => {
                    let n = if e == 'u' { 4 } else { 8 };
                    let hex: String = chars.get(i + 2..i + 2 + n).ok_or("short unicode escape")?.iter().collect();
                    let v = u32::from_str_radix(&hex, 16).map_err(|_| "bad unicode escape")?;
                    (char::from_u32(v).ok_or("bad code point")?, 2 + n)
                }
                _ => return Err(format!("invalid escape `\\{e}`")),
            };
            s.push(ch);
            i += used;
            continue;
        }
        if !long && (c == '\n' || c == '\r') {
            return Err("line break in string".into());
        }
        s.push(c);
        i += 1;
    }
}

fn lex_number(chars: &[char]) -> (String, &'static str, usize) {
    let digits = |from: usize| chars[from..].iter().take_while(|c| c.is_ascii_digit()).count();
    let mut i = digits(0);
    let int_digits = i;
    let mut dt = ns::XSD_INTEGER;
    if chars.get(i) == Some(&'.') {
        let frac = digits(i + 1);
        let exp = matches!(chars.get(i + 1 + frac), Some('e' | 'E'));
        if frac > 0 || (exp && int_digits > 0) {
            i += 1 + frac;
            dt = ns::XSD_DECIMAL;
        }
    }
    if matches!(chars.get(i), Some('e' | 'E')) {
        let mut j = i + 1;
        if matches!(chars.get(j), Some('+' | '-')) {
            j += 1;
        }
        let e = digits(j);
        if e > 0 {
            i = j + e;
            dt = ns::XSD_DOUBLE;
        }
    }
    (chars[..i].iter().collect(), dt, i)
}

pub(crate) struct Parser {
    pub(crate) toks: Vec<Spanned>,
    pub(crate) pos: usize,
    pub(crate) prefixes: PrefixMap,
    pub(crate) end: (usize, usize),
}

pub(crate) type PResult<T> = Result<T, ParseDiagnostic>;

impl Parser {
    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub(crate) fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> ParseDiagnostic {
        let (line, column) = self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.column));
        ParseDiagnostic::error(line, column, msg)
    }

    pub(crate) fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(t) => format!("{t:?}"),
        }
    }

    pub(crate) fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(x)) if x.eq_ignore_ascii_case(w))
    }

    pub(crate) fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(x)) if *x == p)
    }

    pub(crate) fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_punct(&mut self, p: &str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{p}`, found {}", self.describe())))
        }
    }

    pub(crate) fn iri_ref(&mut self) -> PResult<Iri> {
        match self.peek() {
            Some(Tok::Iri(_)) => self.iri(),
            _ => Err(self.error(format!("expected <iri>, found {}", self.describe()))),
        }
    }

    pub(crate) fn iri(&mut self) -> PResult<Iri> {
        let here = self.pos;
        let resolved = match self.next() {
            Some(Tok::Iri(raw)) => match Iri::new(raw.clone()) {
                Ok(iri) => return Ok(iri),
                Err(_) => {
                    let Some(base) = self.prefixes.base() else {
                        self.pos = here;
                        return Err(self.error(format!("relative IRI <{raw}> without BASE")));
                    };
                    url::Url::parse(base.as_str())
                        .and_then(|b| b.join(&raw))
                        .map(|u| u.to_string())
                        .map_err(|e| e.to_string())
                }
            },
            Some(Tok::PName(label, local)) => match self.prefixes.expand(&format!("{label}:{local}")) {
                Some(iri) => Ok(iri),
                None => Err(format!("unknown prefix `{label}:`")),
            },
            _ => Err("expected an IRI".to_owned()),
        };
        let resolved = resolved.and_then(|s| Iri::new(s).map_err(|e| e.to_string()));
        resolved.map_err(|m| {
            self.pos = here;
            self.error(m)
        })
    }

    pub(crate) fn literal(&mut self) -> PResult<Term> {
        let sign = if self.eat_punct("-") {
            "-"
        } else if self.eat_punct("+") {
            "+"
        } else {
            ""
        };
        match self.next() {
            Some(Tok::Number(lex, dt)) => Ok(Term::Literal(Literal::typed(format!("{sign}{lex}"), Iri::from_static(dt)))),
            Some(Tok::Str(s)) if sign.is_empty() => match self.peek() {
                Some(Tok::Lang(tag)) => {
                    let tag = tag.clone();
                    self.pos += 1;
                    Literal::lang(s, tag).map(Term::Literal).map_err(|e| self.error(e.to_string()))
                }
                Some(Tok::Punct("^^")) => {
                    self.pos += 1;
                    let dt = self.iri()?;
                    Ok(Term::Literal(Literal::typed(s, dt)))
                }
                _ => Ok(Term::string(s)),
            },
            Some(Tok::Word(w)) if sign.is_empty() && (w == "true" || w == "false") => {
                Ok(Term::Literal(Literal::typed(w, Iri::from_static(ns::XSD_BOOLEAN))))
            }
            _ => {
                self.pos -= 1;
                Err(self.error(format!("expected a literal, found {}", self.describe())))
            }
        }
    }


    pub(crate) fn new(toks: Vec<Spanned>, end: (usize, usize)) -> Self {
        Parser { toks, pos: 0, prefixes: PrefixMap::new(), end }
    }

    /// `PREFIX` and `BASE` declarations.
    pub(crate) fn prologue(&mut self) -> PResult<()> {
        loop {
            if self.at_word("PREFIX") {
                self.pos += 1;
                let Some(Tok::PName(label, local)) = self.next() else {
                    self.pos -= 1;
                    return Err(self.error("expected `prefix:` after PREFIX"));
                };
                if !local.is_empty() {
                    self.pos -= 1;
                    return Err(self.error("prefix label must end with `:`"));
                }
                let iri = self.iri_ref()?;
                self.prefixes.insert(&label, iri.as_str()).map_err(|e| self.error(e.to_string()))?;
            } else if self.at_word("BASE") {
                self.pos += 1;
                let iri = self.iri_ref()?;
                self.prefixes.set_base(Some(iri));
            } else {
                break;
            }
        }
        Ok(())
    }
}

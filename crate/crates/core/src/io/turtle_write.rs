use std::collections::{BTreeMap, HashMap, HashSet};

use super::PrefixMap;
use crate::rdf::{write_quoted, Graph, Term};
use crate::vocab::ns;

/// Turtle with the map's prefixes, subjects grouped and sorted, `rdf:type`
/// first. A blank node used exactly once as an object is written inline as
/// `[ ... ]`; other blank nodes get fresh `_:bN` labels.
pub fn serialize_turtle(g: &Graph, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    for (label, iri) in prefixes.iter() {
        out.push_str(&format!("@prefix {label}: <{}> .\n", iri.as_str()));
    }
    if g.is_empty() {
        return out;
    }
    if !prefixes.is_empty() {
        out.push('\n');
    }

    let w = Writer::new(g, prefixes);
    let mut roots: Vec<&Term> = w.subjects.keys().copied().filter(|s| !w.inline.contains(s)).collect();
    roots.sort_by_cached_key(|t| (t.is_blank(), w.sort_key(t)));
    for (i, s) in roots.into_iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&w.term(s));
        w.write_properties(&mut out, s, 1);
        out.push_str(" .\n");
    }
    out
}

struct Writer<'g> {
    prefixes: &'g PrefixMap,
    /// predicate -> sorted objects, per subject
    subjects: HashMap<&'g Term, BTreeMap<(u8, String), (&'g Term, Vec<&'g Term>)>>,
    inline: HashSet<&'g Term>,
    labels: HashMap<&'g Term, String>,
}

impl<'g> Writer<'g> {
    fn new(g: &'g Graph, prefixes: &'g PrefixMap) -> Self {
        let mut w = Writer {
            prefixes,
            subjects: HashMap::new(),
            inline: HashSet::new(),
            labels: HashMap::new(),
        };
        let mut object_uses: HashMap<&Term, usize> = HashMap::new();
        let mut parent: HashMap<&Term, &Term> = HashMap::new();
        for t in g.iter() {
            let rank = if t.predicate.as_iri().is_some_and(|p| p.as_str() == ns::RDF_TYPE) { 0 } else { 1 };
            w.subjects
                .entry(t.subject)
                .or_default()
                .entry((rank, t.predicate.to_ntriples()))
                .or_insert_with(|| (t.predicate, Vec::new()))
                .1
                .push(t.object);
            if t.object.is_blank() {
                *object_uses.entry(t.object).or_default() += 1;
                parent.insert(t.object, t.subject);
            }
        }
        for preds in w.subjects.values_mut() {
            for (_, objects) in preds.values_mut() {
                objects.sort_by_cached_key(|o| o.to_ntriples());
            }
        }

        let mut candidates: Vec<&Term> = object_uses.iter().filter(|(_, &n)| n == 1).map(|(t, _)| *t).collect();
        candidates.sort_by_cached_key(|t| t.to_ntriples());
        let mut inline: HashSet<&Term> = candidates.iter().copied().collect();
        // a chain of single-use blank nodes that loops back on itself has no
        // root to hang from; promote one member of each such cycle
        for &b in &candidates {
            let mut seen = vec![b];
            let mut cur = b;
            while let Some(&p) = parent.get(cur) {
                if !inline.contains(p) {
                    break;
                }
                if p == b {
                    let promoted = seen.iter().min_by_key(|t| t.to_ntriples()).copied().unwrap_or(b);
                    inline.remove(promoted);
                    break;
                }
                if seen.contains(&p) {
                    break;
                }
                seen.push(p);
                cur = p;
            }
        }
        w.inline = inline;

        // labels for the blank nodes written by name, in output order
        let mut named: Vec<&Term> = g
            .iter()
            .flat_map(|t| [t.subject, t.object])
            .filter(|t| t.is_blank() && !w.inline.contains(t))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        named.sort_by_cached_key(|t| t.to_ntriples());
        for (i, t) in named.into_iter().enumerate() {
            w.labels.insert(t, format!("_:b{i}"));
        }
        w
    }

    fn sort_key(&self, t: &Term) -> String {
        match self.labels.get(t) {
            Some(l) => format!("{:0>12}", &l[3..]),
            None => t.to_ntriples(),
        }
    }

    fn write_properties(&self, out: &mut String, s: &Term, depth: usize) {
        let Some(preds) = self.subjects.get(s) else {
            return;
        };
        let indent = "    ".repeat(depth);
        for (i, (p, objects)) in preds.values().enumerate() {
            if i == 0 {
                out.push(' ');
            } else {
                out.push_str(" ;\n");
                out.push_str(&indent);
            }
            out.push_str(&self.predicate(p));
            for (j, o) in objects.iter().enumerate() {
                out.push_str(if j == 0 { " " } else { " , " });
                self.write_object(out, o, depth);
            }
        }
    }

    fn write_object(&self, out: &mut String, o: &Term, depth: usize) {
        if self.inline.contains(o) {
            if !self.subjects.contains_key(o) {
                out.push_str("[]");
                return;
            }
            out.push('[');
            let mut inner = String::new();
            self.write_properties(&mut inner, o, depth + 1);
            out.push_str(&inner);
            out.push_str(" ]");
            return;
        }
        out.push_str(&self.term(o));
    }

    fn predicate(&self, p: &Term) -> String {
        match p.as_iri() {
            Some(iri) if iri.as_str() == ns::RDF_TYPE => "a".to_owned(),
            _ => self.term(p),
        }
    }

    fn iri(&self, iri: &str) -> String {
        match self.prefixes.compact(iri) {
            Some((label, local)) => format!("{label}:{local}"),
            None => format!("<{iri}>"),
        }
    }

    fn term(&self, t: &Term) -> String {
        match t {
            Term::Iri(iri) => self.iri(iri.as_str()),
            Term::Blank(_) => self.labels[t].clone(),
            Term::Literal(l) => {
                let lex = l.lexical();
                let dt = l.datatype().as_str();
                let bare = match dt {
                    ns::XSD_INTEGER => is_integer(lex),
                    ns::XSD_DECIMAL => is_decimal(lex),
                    ns::XSD_DOUBLE => is_double(lex),
                    ns::XSD_BOOLEAN => lex == "true" || lex == "false",
                    _ => false,
                };
                if bare {
                    return lex.to_owned();
                }
                let mut s = String::new();
                write_quoted(&mut s, lex);
                if let Some(lang) = l.language() {
                    s.push('@');
                    s.push_str(lang);
                } else if dt != ns::XSD_STRING {
                    s.push_str("^^");
                    s.push_str(&self.iri(dt));
                }
                s
            }
        }
    }
}

fn digits(s: &str) -> usize {
    s.bytes().take_while(u8::is_ascii_digit).count()
}

fn strip_sign(s: &str) -> &str {
    s.strip_prefix(['+', '-']).unwrap_or(s)
}

fn is_integer(s: &str) -> bool {
    let s = strip_sign(s);
    !s.is_empty() && digits(s) == s.len()
}

fn is_decimal(s: &str) -> bool {
    let s = strip_sign(s);
    let int = digits(s);
    let Some(frac) = s[int..].strip_prefix('.') else {
        return false;
    };
    !frac.is_empty() && digits(frac) == frac.len()
}

fn is_double(s: &str) -> bool {
    let s = strip_sign(s);
    let Some(e) = s.find(['e', 'E']) else {
        return false;
    };
    let (mantissa, exp) = (&s[..e], strip_sign(&s[e + 1..]));
    let mantissa_ok = is_integer(mantissa) && !mantissa.starts_with(['+', '-'])
        || match mantissa.split_once('.') {
            Some((i, f)) => digits(i) == i.len() && digits(f) == f.len() && !(i.is_empty() && f.is_empty()),
            None => false,
        };
    mantissa_ok && !exp.is_empty() && digits(exp) == exp.len()
}

//! Graph isomorphism up to blank node renaming.
//!
//! Blank nodes are first partitioned by iterated neighbourhood hashing
//! (starting from degree signatures), then a backtracking search tries
//! bijections within each colour class and checks every incident triple as
//! soon as all of its blank nodes are assigned.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use num_rational::BigRational;

use super::graph::Graph;
use super::term::{Iri, Literal, Term};
use crate::vocab::ns;

/// True iff a bijection between blank nodes makes the two triple sets equal.
pub fn isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.len() != g2.len() {
        return false;
    }
    let t1 = Side::new(g1);
    let t2 = Side::new(g2);
    if t1.blanks.len() != t2.blanks.len() || t1.open.len() != t2.open.len() {
        return false;
    }
    // ground triples must coincide exactly
    if t1.ground.len() != t2.ground.len() || !t1.ground.iter().all(|t| g2.contains_terms(&t[0], &t[1], &t[2])) {
        return false;
    }
    if t1.blanks.is_empty() {
        return true;
    }

    let c1 = colours(&t1);
    let c2 = colours(&t2);
    let histogram = |c: &HashMap<&str, u64>| {
        let mut h: BTreeMap<u64, usize> = BTreeMap::new();
        for v in c.values() {
            *h.entry(*v).or_default() += 1;
        }
        h
    };
    let h1 = histogram(&c1);
    if h1 != histogram(&c2) {
        return false;
    }

    // assign the rarest colours first
    let mut order: Vec<&str> = t1.blanks.iter().copied().collect();
    order.sort_by_key(|b| (h1[&c1[b]], c1[b], *b));

    let mut candidates: HashMap<u64, Vec<&str>> = HashMap::new();
    for b in &t2.blanks {
        candidates.entry(c2[b]).or_default().push(b);
    }
    for v in candidates.values_mut() {
        v.sort_unstable();
    }

    let target: HashSet<[Term; 3]> = t2.open.iter().cloned().collect();
    let mut search = Search {
        left: &t1,
        target: &target,
        order: &order,
        colour: &c1,
        candidates: &candidates,
        mapping: HashMap::new(),
        used: HashSet::new(),
    };
    search.run(0)
}

/// Isomorphism where numeric literals compare by value: lexical forms of
/// `xsd:double`/`xsd:float` and `xsd:decimal`/`xsd:integer` are canonicalised
/// on copies of both graphs before comparison.
pub fn isomorphic_value_level(g1: &Graph, g2: &Graph) -> bool {
    isomorphic(&canonical_numerics(g1), &canonical_numerics(g2))
}

/// Copy of `g` with numeric literal lexical forms canonicalised.
pub fn canonical_numerics(g: &Graph) -> Graph {
    let mut out = Graph::new();
    for t in g.iter() {
        let o = match t.object {
            Term::Literal(l) => Term::Literal(canonical_literal(l)),
            other => other.clone(),
        };
        out.insert_terms(t.subject.clone(), t.predicate.clone(), o)
            .expect("copied triple is well formed");
    }
    out
}

fn canonical_literal(l: &Literal) -> Literal {
    let dt = l.datatype().as_str();
    let lex = l.lexical().trim();
    if dt == ns::XSD_DOUBLE || dt == ns::XSD_FLOAT {
        if let Ok(v) = lex.parse::<f64>() {
            return Literal::typed(format!("{v:e}"), Iri::from_static(dt));
        }
    } else if dt == ns::XSD_DECIMAL || dt == ns::XSD_INTEGER {
        if let Some(v) = crate::query::numeric::parse_decimal(lex) {
            return Literal::typed(canonical_decimal(&v), Iri::from_static(dt));
        }
    }
    l.clone()
}

fn canonical_decimal(v: &BigRational) -> String {
    // numer/denom in lowest terms is a canonical key for the value
    format!("{}/{}", v.numer(), v.denom())
}

struct Side<'a> {
    blanks: HashSet<&'a str>,
    ground: Vec<[Term; 3]>,
    open: Vec<[Term; 3]>,
    incident: HashMap<&'a str, Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(g: &'a Graph) -> Self {
        let mut side = Side {
            blanks: HashSet::new(),
            ground: Vec::new(),
            open: Vec::new(),
            incident: HashMap::new(),
        };
        for t in g.iter() {
            let triple = [t.subject.clone(), t.predicate.clone(), t.object.clone()];
            let mut has_blank = false;
            for term in [t.subject, t.object] {
                if let Term::Blank(l) = term {
                    has_blank = true;
                    side.blanks.insert(l.as_str());
                    let incident = side.incident.entry(l.as_str()).or_default();
                    if incident.last() != Some(&side.open.len()) {
                        incident.push(side.open.len());
                    }
                }
            }
            if has_blank {
                side.open.push(triple);
            } else {
                side.ground.push(triple);
            }
        }
        side
    }
}

fn hash_of<T: Hash>(v: T) -> u64 {
    let mut h = DefaultHasher::new();
    v.hash(&mut h);
    h.finish()
}

/// Stable colouring of blank nodes by iterated neighbourhood hashing.
fn colours<'a>(side: &Side<'a>) -> HashMap<&'a str, u64> {
    let position_key = |t: &[Term; 3], me: &str, colour: &HashMap<&str, u64>| -> u64 {
        let role = match (&t[0], &t[2]) {
            (Term::Blank(s), Term::Blank(o)) if s == me && o == me => 2u8,
            (Term::Blank(s), _) if s == me => 0,
            _ => 1,
        };
        let other = if role == 0 { &t[2] } else { &t[0] };
        let other_key = match other {
            Term::Blank(l) if role != 2 => colour[l.as_str()],
            Term::Blank(_) => 0,
            ground => hash_of(ground),
        };
        hash_of((role, &t[1], other_key))
    };

    // degree signature
    let mut colour: HashMap<&str, u64> = side
        .blanks
        .iter()
        .map(|b| {
            let incident = &side.incident[b];
            let out = incident.iter().filter(|&&i| matches!(&side.open[i][0], Term::Blank(l) if l == b)).count();
            (*b, hash_of((out, incident.len())))
        })
        .collect();

    let mut classes = count_classes(&colour);
    for _ in 0..side.blanks.len().max(1) {
        let next: HashMap<&str, u64> = side
            .blanks
            .iter()
            .map(|b| {
                let mut keys: Vec<u64> = side.incident[b]
                    .iter()
                    .map(|&i| position_key(&side.open[i], b, &colour))
                    .collect();
                keys.sort_unstable();
                (*b, hash_of((colour[b], keys)))
            })
            .collect();
        let n = count_classes(&next);
        colour = next;
        if n == classes {
            break;
        }
        classes = n;
    }
    colour
}

fn count_classes(c: &HashMap<&str, u64>) -> usize {
    c.values().collect::<HashSet<_>>().len()
}

struct Search<'s, 'a> {
    left: &'s Side<'a>,
    target: &'s HashSet<[Term; 3]>,
    order: &'s [&'a str],
    colour: &'s HashMap<&'a str, u64>,
    candidates: &'s HashMap<u64, Vec<&'s str>>,
    mapping: HashMap<&'a str, &'s str>,
    used: HashSet<&'s str>,
}

impl<'s, 'a> Search<'s, 'a> {
    fn run(&mut self, depth: usize) -> bool {
        let Some(&b) = self.order.get(depth) else {
            return true;
        };
        let options = &self.candidates[&self.colour[b]];
        for &c in options {
            if self.used.contains(c) {
                continue;
            }
            self.mapping.insert(b, c);
            self.used.insert(c);
            if self.consistent(b) && self.run(depth + 1) {
                return true;
            }
            self.mapping.remove(b);
            self.used.remove(c);
        }
        false
    }

    /// Every triple touching `b` whose blank nodes are all mapped must exist on the right.
    fn consistent(&self, b: &str) -> bool {
        self.left.incident[b].iter().all(|&i| {
            let t = &self.left.open[i];
            let map = |term: &Term| match term {
                Term::Blank(l) => self.mapping.get(l.as_str()).map(|m| Term::Blank((*m).to_owned())),
                other => Some(other.clone()),
            };
            match (map(&t[0]), map(&t[2])) {
                (Some(s), Some(o)) => self.target.contains(&[s, t[1].clone(), o]),
                _ => true,
            }
        })
    }
}

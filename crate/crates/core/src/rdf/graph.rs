//! In-memory triple store.
//!
//! Terms are interned into a dictionary and triples are kept in three ordered
//! index sets: `(s, p, o)`, `(p, o, s)` and `(o, s, p)`. Every lookup is a
//! range scan over the index whose prefix covers the bound positions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Bound;

use indexmap::IndexSet;
use thiserror::Error;

use super::term::{Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("literal {0} cannot be a subject")]
    LiteralSubject(String),
    #[error("predicate {0} is not an IRI")]
    NonIriPredicate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct TermId(u32);

type Key = (TermId, TermId, TermId);

const MIN: TermId = TermId(0);
const MAX: TermId = TermId(u32::MAX);

#[derive(Debug, Clone, Default)]
pub struct Graph {
    terms: IndexSet<Term>,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    next_blank: usize,
}

/// A borrowed view of a stored triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleRef<'a> {
    pub subject: &'a Term,
    pub predicate: &'a Term,
    pub object: &'a Term,
}

impl TripleRef<'_> {
    pub fn to_owned(&self) -> Triple {
        Triple::new(self.subject.clone(), self.predicate.clone(), self.object.clone())
    }
}

/// One position of a [`TriplePattern`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Term(Term),
    Var(String),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> Self {
        PatternTerm::Var(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Term(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }
}

pub type Binding = BTreeMap<String, Term>;

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn from_triples<I: IntoIterator<Item = Triple>>(triples: I) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for t in triples {
            g.insert(t)?;
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    /// Inserts a triple, returning whether it was new.
    pub fn insert(&mut self, triple: Triple) -> Result<bool, GraphError> {
        let Triple {
            subject,
            predicate,
            object,
        } = triple;
        self.insert_terms(subject, predicate, object)
    }

    pub fn insert_terms(&mut self, subject: Term, predicate: Term, object: Term) -> Result<bool, GraphError> {
        if subject.is_literal() {
            return Err(GraphError::LiteralSubject(subject.to_ntriples()));
        }
        if !predicate.is_iri() {
            return Err(GraphError::NonIriPredicate(predicate.to_ntriples()));
        }
        let s = self.intern(subject);
        let p = self.intern(predicate);
        let o = self.intern(object);
        Ok(self.insert_ids(s, p, o))
    }

    fn insert_ids(&mut self, s: TermId, p: TermId, o: TermId) -> bool {
        if !self.spo.insert((s, p, o)) {
            return false;
        }
        self.pos.insert((p, o, s));
        self.osp.insert((o, s, p));
        true
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        let (Some(s), Some(p), Some(o)) = (
            self.id_of(&triple.subject),
            self.id_of(&triple.predicate),
            self.id_of(&triple.object),
        ) else {
            return false;
        };
        if !self.spo.remove(&(s, p, o)) {
            return false;
        }
        self.pos.remove(&(p, o, s));
        self.osp.remove(&(o, s, p));
        true
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.contains_terms(&triple.subject, &triple.predicate, &triple.object)
    }

    pub fn contains_terms(&self, s: &Term, p: &Term, o: &Term) -> bool {
        match (self.id_of(s), self.id_of(p), self.id_of(o)) {
            (Some(s), Some(p), Some(o)) => self.spo.contains(&(s, p, o)),
            _ => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = TripleRef<'_>> + '_ {
        self.spo.iter().map(move |&(s, p, o)| self.triple_ref(s, p, o))
    }

    /// Triples matching the given concrete positions (`None` = wildcard).
    pub fn triples_matching<'a>(
        &'a self,
        s: Option<&Term>,
        p: Option<&Term>,
        o: Option<&Term>,
    ) -> Box<dyn Iterator<Item = TripleRef<'a>> + 'a> {
        let lookup = |t: Option<&Term>| match t {
            None => Ok(None),
            Some(t) => self.id_of(t).map(Some).ok_or(()),
        };
        let (Ok(s), Ok(p), Ok(o)) = (lookup(s), lookup(p), lookup(o)) else {
            return Box::new(std::iter::empty());
        };
        Box::new(
            self.match_ids(s, p, o)
                .map(move |(s, p, o)| self.triple_ref(s, p, o)),
        )
    }

    pub(crate) fn match_ids(
        &self,
        s: Option<TermId>,
        p: Option<TermId>,
        o: Option<TermId>,
    ) -> Box<dyn Iterator<Item = Key> + '_> {
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                Box::new(self.spo.contains(&(s, p, o)).then_some((s, p, o)).into_iter())
            }
            (Some(s), Some(p), None) => Box::new(range2(&self.spo, s, p).copied()),
            (Some(s), None, None) => Box::new(range1(&self.spo, s).copied()),
            (Some(s), None, Some(o)) => Box::new(range2(&self.osp, o, s).map(|&(o, s, p)| (s, p, o))),
            (None, Some(p), Some(o)) => Box::new(range2(&self.pos, p, o).map(|&(p, o, s)| (s, p, o))),
            (None, Some(p), None) => Box::new(range1(&self.pos, p).map(|&(p, o, s)| (s, p, o))),
            (None, None, Some(o)) => Box::new(range1(&self.osp, o).map(|&(o, s, p)| (s, p, o))),
            (None, None, None) => Box::new(self.spo.iter().copied()),
        }
    }

    /// All variable bindings for `pattern`, sorted by the N-Triples form of
    /// the bound terms.
    pub fn match_pattern(&self, pattern: &TriplePattern) -> Vec<Binding> {
        let concrete = |pt: &PatternTerm| match pt {
            PatternTerm::Term(t) => Some(t.clone()),
            PatternTerm::Var(_) => None,
        };
        let (s, p, o) = (
            concrete(&pattern.subject),
            concrete(&pattern.predicate),
            concrete(&pattern.object),
        );
        let mut out: Vec<Binding> = Vec::new();
        'triples: for t in self.triples_matching(s.as_ref(), p.as_ref(), o.as_ref()) {
            let mut b = Binding::new();
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
            out.push(b);
        }
        sort_bindings(&mut out);
        out
    }

    /// Allocates a blank node label not used anywhere in this graph.
    pub fn fresh_blank(&mut self) -> Term {
        loop {
            let label = format!("b{}", self.next_blank);
            self.next_blank += 1;
            let t = Term::Blank(label);
            if !self.terms.contains(&t) {
                // reserve the label so later allocations skip it
                self.terms.insert(t.clone());
                return t;
            }
        }
    }

    /// RDF merge: blank nodes of `other` are renamed apart from this graph's.
    /// Labels are kept when they do not clash.
    pub fn merge(&mut self, other: &Graph) {
        let mut renamed: HashMap<&str, Term> = HashMap::new();
        for t in other.iter() {
            let s = self.rename_apart(&mut renamed, t.subject);
            let o = self.rename_apart(&mut renamed, t.object);
            let s = self.intern(s);
            let p = self.intern(t.predicate.clone());
            let o = self.intern(o);
            self.insert_ids(s, p, o);
        }
    }

    fn rename_apart<'a>(&mut self, renamed: &mut HashMap<&'a str, Term>, t: &'a Term) -> Term {
        let Term::Blank(label) = t else {
            return t.clone();
        };
        if let Some(mapped) = renamed.get(label.as_str()) {
            return mapped.clone();
        }
        let mapped = if self.terms.contains(t) {
            self.fresh_blank()
        } else {
            self.terms.insert(t.clone());
            t.clone()
        };
        renamed.insert(label, mapped.clone());
        mapped
    }

    /// Blank nodes appearing in some triple.
    pub fn blank_nodes(&self) -> BTreeSet<&str> {
        self.iter()
            .flat_map(|t| [t.subject, t.object])
            .filter_map(|t| match t {
                Term::Blank(l) => Some(l.as_str()),
                _ => None,
            })
            .collect()
    }

    /// Objects of `(subject, predicate, ?)`.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.triples_matching(Some(subject), Some(predicate), None).map(|t| t.object)
    }

    /// Subjects of `(?, predicate, object)`.
    pub fn subjects<'a>(&'a self, predicate: &Term, object: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.triples_matching(None, Some(predicate), Some(object)).map(|t| t.subject)
    }

    pub(crate) fn id_of(&self, term: &Term) -> Option<TermId> {
        self.terms.get_index_of(term).map(|i| TermId(i as u32))
    }

    pub(crate) fn term(&self, id: TermId) -> &Term {
        &self.terms[id.0 as usize]
    }

    fn intern(&mut self, term: Term) -> TermId {
        let (i, _) = self.terms.insert_full(term);
        TermId(i as u32)
    }

    fn triple_ref(&self, s: TermId, p: TermId, o: TermId) -> TripleRef<'_> {
        TripleRef {
            subject: self.term(s),
            predicate: self.term(p),
            object: self.term(o),
        }
    }
}

fn range1(set: &BTreeSet<Key>, a: TermId) -> impl Iterator<Item = &Key> {
    set.range((Bound::Included((a, MIN, MIN)), Bound::Included((a, MAX, MAX))))
}

fn range2(set: &BTreeSet<Key>, a: TermId, b: TermId) -> impl Iterator<Item = &Key> {
    set.range((Bound::Included((a, b, MIN)), Bound::Included((a, b, MAX))))
}

pub(crate) fn sort_bindings(bindings: &mut [Binding]) {
    bindings.sort_by_cached_key(|b| b.values().map(Term::to_ntriples).collect::<Vec<_>>());
}

impl PartialEq for Graph {
    /// Plain set equality. Blank labels must match exactly; see
    /// [`crate::rdf::isomorphic`] for equality up to blank renaming.
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|t| other.contains_terms(t.subject, t.predicate, t.object))
    }
}

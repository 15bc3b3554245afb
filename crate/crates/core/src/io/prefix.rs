use thiserror::Error;

use crate::rdf::{Iri, TermError};
use crate::vocab::ns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrefixError {
    #[error("namespace for `{0}` is not an absolute IRI")]
    BadNamespace(String, #[source] TermError),
    #[error("invalid prefix label `{0}`")]
    BadLabel(String),
}

/// Ordered prefix declarations plus an optional base IRI.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: Vec<(String, Iri)>,
    base: Option<Iri>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// The prefixes used throughout the shipped fixtures.
    pub fn standard() -> Self {
        let mut m = PrefixMap::new();
        for (label, namespace) in ns::STANDARD_PREFIXES {
            m.entries.push(((*label).to_owned(), Iri::from_static(namespace)));
        }
        m
    }

    /// Declares `label`; a redeclaration replaces the namespace in place.
    pub fn insert(&mut self, label: &str, namespace: &str) -> Result<(), PrefixError> {
        if !valid_label(label) {
            return Err(PrefixError::BadLabel(label.to_owned()));
        }
        let iri = Iri::new(namespace).map_err(|e| PrefixError::BadNamespace(label.to_owned(), e))?;
        match self.entries.iter_mut().find(|(l, _)| l == label) {
            Some(entry) => entry.1 = iri,
            None => self.entries.push((label.to_owned(), iri)),
        }
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, iri)| iri)
    }

    pub fn base(&self) -> Option<&Iri> {
        self.base.as_ref()
    }

    pub fn set_base(&mut self, base: Option<Iri>) {
        self.base = base;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(l, iri)| (l.as_str(), iri))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `prefix:local` to a full IRI string.
    pub fn expand(&self, curie: &str) -> Option<String> {
        let (label, local) = curie.split_once(':')?;
        self.get(label).map(|ns| format!("{}{local}", ns.as_str()))
    }

    /// Longest namespace that is a prefix of `iri` and leaves a local part
    /// writable without escapes.
    pub fn compact<'a>(&'a self, iri: &'a str) -> Option<(&'a str, &'a str)> {
        self.entries
            .iter()
            .filter_map(|(label, ns)| iri.strip_prefix(ns.as_str()).map(|local| (label.as_str(), ns.as_str().len(), local)))
            .filter(|(_, _, local)| plain_local(local))
            .max_by_key(|(label, len, _)| (*len, std::cmp::Reverse(*label)))
            .map(|(label, _, local)| (label, local))
    }
}

fn valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_alphabetic() => {
            !label.ends_with('.') && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        }
        Some(_) => false,
    }
}

/// Local names the Turtle writer emits bare: conservative subset of PN_LOCAL.
fn plain_local(local: &str) -> bool {
    local.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-'))
        && !local.starts_with('-')
}

use alloc::collections::{btree_map, btree_set, BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;

use super::term::{Iri, Triple};
use super::vocab;
use super::RdfError;

/// Prefix label to namespace IRI, at most one namespace per label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Prefixes(BTreeMap<String, String>);

impl Prefixes {
    pub fn new() -> Self {
        Self::default()
    }

    /// `rdf`, `rdfs`, `owl`, `xsd`, `AgriOnt` and `AgriKMap`.
    pub fn standard() -> Self {
        let mut p = Self::new();
        p.insert("rdf", vocab::rdf::NS);
        p.insert("rdfs", vocab::rdfs::NS);
        p.insert("owl", vocab::owl::NS);
        p.insert("xsd", vocab::xsd::NS);
        p.insert("AgriOnt", vocab::AGRIONT);
        p.insert("AgriKMap", vocab::AGRIKMAP);
        p
    }

    /// Returns the namespace previously bound to `label`, if any.
    pub fn insert(&mut self, label: impl Into<String>, namespace: impl Into<String>) -> Option<String> {
        self.0.insert(label.into(), namespace.into())
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.0.get(label).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend(&mut self, other: &Prefixes) {
        for (k, v) in other.iter() {
            self.insert(k, v);
        }
    }

    /// Expands `label:local` into a full IRI.
    pub fn expand(&self, name: &str) -> Result<Iri, RdfError> {
        let (label, local) = name
            .split_once(':')
            .filter(|(label, local)| is_prefix_label(label) && is_local_name(local))
            .ok_or_else(|| RdfError::InvalidPrefixedName(name.into()))?;
        let ns = self.get(label).ok_or_else(|| RdfError::UnknownPrefix(label.into()))?;
        Iri::new(format!("{ns}{local}")).map_err(|_| RdfError::InvalidPrefixedName(name.into()))
    }

    /// Shortest `label:local` rendering of `iri`, preferring the longest
    /// matching namespace and then the smallest label.
    pub fn abbreviate<'a>(&'a self, iri: &'a Iri) -> Option<(&'a str, &'a str)> {
        let s = iri.as_str();
        self.0
            .iter()
            .filter_map(|(label, ns)| {
                let local = s.strip_prefix(ns.as_str())?;
                is_local_name(local).then_some((label.as_str(), ns.len(), local))
            })
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(a.0)))
            .map(|(label, _, local)| (label, local))
    }
}

/// Empty, or `[A-Za-z][A-Za-z0-9_-]*`.
pub(crate) fn is_prefix_label(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        None => true,
        Some(c) => c.is_ascii_alphabetic() && chars.all(is_name_char),
    }
}

/// Local part of a prefixed name: `[A-Za-z0-9_][A-Za-z0-9_-]*` or empty.
pub(crate) fn is_local_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        None => true,
        Some(c) => (c.is_ascii_alphanumeric() || c == '_') && chars.all(is_name_char),
    }
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

/// A set of triples plus the prefixes used to read or write it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    pub prefixes: Prefixes,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prefixes(prefixes: Prefixes) -> Self {
        Graph {
            triples: BTreeSet::new(),
            prefixes,
        }
    }

    /// Returns `false` when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Triple> {
        self.triples.iter()
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    /// Union of the triples; prefixes from `other` are added where the label is free.
    pub fn merge(&mut self, other: &Graph) {
        self.triples.extend(other.triples.iter().cloned());
        for (label, ns) in other.prefixes.iter() {
            if let btree_map::Entry::Vacant(e) = self.prefixes.0.entry(label.into()) {
                e.insert(ns.into());
            }
        }
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter);
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
            prefixes: Prefixes::new(),
        }
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

//! In-memory triple storage: a term dictionary plus three sorted permutation
//! indexes (SPO, POS, OSP) over dictionary ids.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::rdf::{is_identifier, Graph, Iri, Prefixes, Term, TermError, Triple};

/// Dense id of a term in a store's dictionary. Stable for the store's lifetime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(u32);

/// Bijective mapping between terms and ids. Terms are never evicted.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    ids: BTreeMap<Term, TermId>,
    terms: Vec<Term>,
}

impl Dictionary {
    pub fn encode(&mut self, term: &Term) -> TermId {
        if let Some(id) = self.ids.get(term) {
            return *id;
        }
        let id = TermId(u32::try_from(self.terms.len()).expect("dictionary overflow"));
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }

    pub fn lookup(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn decode(&self, id: TermId) -> Option<&Term> {
        self.terms.get(id.0 as usize)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A query variable name, `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Result<Self, TermError> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(Variable(name))
        } else {
            Err(TermError::InvalidVariable(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternTerm {
    Bound(Term),
    Var(Variable),
}

impl PatternTerm {
    pub fn bound(&self) -> Option<&Term> {
        match self {
            PatternTerm::Bound(t) => Some(t),
            PatternTerm::Var(_) => None,
        }
    }

    pub fn var(&self) -> Option<&Variable> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Bound(_) => None,
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Bound(t)
    }
}

impl From<Iri> for PatternTerm {
    fn from(iri: Iri) -> Self {
        PatternTerm::Bound(Term::Iri(iri))
    }
}

impl From<Variable> for PatternTerm {
    fn from(v: Variable) -> Self {
        PatternTerm::Var(v)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Bound(t) => t.fmt(f),
            PatternTerm::Var(v) => v.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(subject: impl Into<PatternTerm>, predicate: impl Into<PatternTerm>, object: impl Into<PatternTerm>) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn bound_count(&self) -> usize {
        self.positions().iter().filter(|p| p.bound().is_some()).count()
    }

    /// True when every bound position equals the triple's term.
    pub fn matches(&self, triple: &Triple) -> bool {
        let predicate = Term::Iri(triple.predicate().clone());
        let terms = [triple.subject(), &predicate, triple.object()];
        let matched = self
            .positions()
            .iter()
            .zip(terms)
            .all(|(p, t)| p.bound().is_none_or(|b| b == t));
        matched
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

/// Which permutation index serves a lookup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexOrder {
    Spo,
    Pos,
    Osp,
}

impl IndexOrder {
    /// Picks the index with the longest bound key prefix; ties go to SPO, then POS, then OSP.
    pub fn for_shape(s: bool, p: bool, o: bool) -> Self {
        let prefix = |a: bool, b: bool, c: bool| usize::from(a) * (1 + usize::from(b) * (1 + usize::from(c)));
        let candidates = [
            (IndexOrder::Spo, prefix(s, p, o)),
            (IndexOrder::Pos, prefix(p, o, s)),
            (IndexOrder::Osp, prefix(o, s, p)),
        ];
        let mut best = candidates[0];
        for c in &candidates[1..] {
            if c.1 > best.1 {
                best = *c;
            }
        }
        best.0
    }
}

type Key = (TermId, TermId, TermId);

#[derive(Debug, Clone, Default)]
pub struct Store {
    dict: Dictionary,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    generation: u64,
}

const MIN: TermId = TermId(0);
const MAX: TermId = TermId(u32::MAX);

fn key_range(a: Option<TermId>, b: Option<TermId>, c: Option<TermId>) -> RangeInclusive<Key> {
    // Only a bound prefix narrows the range; later positions are filtered.
    let (a_lo, a_hi) = a.map_or((MIN, MAX), |x| (x, x));
    let (b_lo, b_hi) = match (a, b) {
        (Some(_), Some(x)) => (x, x),
        _ => (MIN, MAX),
    };
    let (c_lo, c_hi) = match (a, b, c) {
        (Some(_), Some(_), Some(x)) => (x, x),
        _ => (MIN, MAX),
    };
    (a_lo, b_lo, c_lo)..=(a_hi, b_hi, c_hi)
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    /// Bumped by every change to the stored triples.
    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    /// Returns `false` when the triple was already present.
    pub fn insert(&mut self, triple: &Triple) -> bool {
        let s = self.dict.encode(triple.subject());
        let p = self.dict.encode(&Term::Iri(triple.predicate().clone()));
        let o = self.dict.encode(triple.object());
        if !self.spo.insert((s, p, o)) {
            return false;
        }
        self.pos.insert((p, o, s));
        self.osp.insert((o, s, p));
        self.generation += 1;
        true
    }

    /// Inserts every triple of `graph`, returning how many were new.
    pub fn insert_graph(&mut self, graph: &Graph) -> usize {
        graph.iter().filter(|t| self.insert(t)).count()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.encode_existing(triple)
            .is_some_and(|key| self.spo.contains(&key))
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        let Some((s, p, o)) = self.encode_existing(triple) else {
            return false;
        };
        if !self.spo.remove(&(s, p, o)) {
            return false;
        }
        self.pos.remove(&(p, o, s));
        self.osp.remove(&(o, s, p));
        self.generation += 1;
        true
    }

    /// Removes every triple whose subject is `subject`.
    pub fn remove_subject(&mut self, subject: &Term) -> usize {
        let Some(s) = self.dict.lookup(subject) else {
            return 0;
        };
        let keys: Vec<Key> = self.spo.range(key_range(Some(s), None, None)).copied().collect();
        for &(s, p, o) in &keys {
            self.spo.remove(&(s, p, o));
            self.pos.remove(&(p, o, s));
            self.osp.remove(&(o, s, p));
        }
        if !keys.is_empty() {
            self.generation += 1;
        }
        keys.len()
    }

    fn encode_existing(&self, triple: &Triple) -> Option<Key> {
        Some((
            self.dict.lookup(triple.subject())?,
            self.dict.lookup(&Term::Iri(triple.predicate().clone()))?,
            self.dict.lookup(triple.object())?,
        ))
    }

    fn decode(&self, (s, p, o): Key) -> Triple {
        let term = |id| self.dict.decode(id).expect("index ids are in the dictionary").clone();
        let Term::Iri(predicate) = term(p) else {
            unreachable!("predicate ids always decode to IRIs")
        };
        Triple::new(term(s), predicate, term(o)).expect("stored subjects are never literals")
    }

    /// Ids in SPO order for every stored triple matching the bound positions,
    /// listed in the order of the index chosen by [`IndexOrder::for_shape`].
    fn match_keys(&self, pattern: &TriplePattern) -> Option<Vec<Key>> {
        let lookup = |p: &PatternTerm| -> Option<Option<TermId>> {
            match p.bound() {
                Some(t) => self.dict.lookup(t).map(Some),
                None => Some(None),
            }
        };
        let s = lookup(&pattern.subject)?;
        let p = lookup(&pattern.predicate)?;
        let o = lookup(&pattern.object)?;
        let keep = |(ks, kp, ko): &Key| {
            s.is_none_or(|x| x == *ks) && p.is_none_or(|x| x == *kp) && o.is_none_or(|x| x == *ko)
        };
        let keys = match IndexOrder::for_shape(s.is_some(), p.is_some(), o.is_some()) {
            IndexOrder::Spo => self.spo.range(key_range(s, p, o)).copied().filter(keep).collect(),
            IndexOrder::Pos => self
                .pos
                .range(key_range(p, o, s))
                .map(|&(p, o, s)| (s, p, o))
                .filter(keep)
                .collect(),
            IndexOrder::Osp => self
                .osp
                .range(key_range(o, s, p))
                .map(|&(o, s, p)| (s, p, o))
                .filter(keep)
                .collect(),
        };
        Some(keys)
    }

    /// Triples matching every bound position of `pattern`, in index order.
    /// Variables are not unified with each other here.
    pub fn match_pattern(&self, pattern: &TriplePattern) -> impl Iterator<Item = Triple> + '_ {
        self.match_keys(pattern)
            .unwrap_or_default()
            .into_iter()
            .map(|k| self.decode(k))
    }

    /// Number of index entries a probe for `pattern` yields.
    pub fn count(&self, pattern: &TriplePattern) -> usize {
        self.match_keys(pattern).map_or(0, |k| k.len())
    }

    /// Every triple in SPO order.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|&k| self.decode(k))
    }

    pub fn to_graph(&self, prefixes: Prefixes) -> Graph {
        let mut g = Graph::with_prefixes(prefixes);
        g.extend(self.triples());
        g
    }

    /// Objects of `(subject, predicate, ?)`.
    pub fn objects(&self, subject: &Term, predicate: &Iri) -> Vec<Term> {
        let pattern = TriplePattern::new(
            subject.clone(),
            predicate.clone(),
            PatternTerm::Var(Variable(String::from("o"))),
        );
        self.match_pattern(&pattern).map(|t| t.object().clone()).collect()
    }

    /// Subjects of `(?, predicate, object)`.
    pub fn subjects(&self, predicate: &Iri, object: &Term) -> Vec<Term> {
        let pattern = TriplePattern::new(
            PatternTerm::Var(Variable(String::from("s"))),
            predicate.clone(),
            object.clone(),
        );
        self.match_pattern(&pattern).map(|t| t.subject().clone()).collect()
    }

    /// True when `term` occurs as subject or object of any stored triple.
    pub fn mentions(&self, term: &Term) -> bool {
        let Some(id) = self.dict.lookup(term) else {
            return false;
        };
        self.spo.range(key_range(Some(id), None, None)).next().is_some()
            || self.osp.range(key_range(Some(id), None, None)).next().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{vocab, Literal};
    use alloc::format;
    use alloc::vec;
    use proptest::prelude::*;

    fn iri(s: &str) -> Term {
        Term::Iri(vocab::iri(s))
    }

    fn var(n: &str) -> PatternTerm {
        PatternTerm::Var(Variable::new(n).unwrap())
    }

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(iri(s), vocab::iri(p), iri(o)).unwrap()
    }

    fn decoded(index: &BTreeSet<Key>, store: &Store, order: IndexOrder) -> BTreeSet<Triple> {
        index
            .iter()
            .map(|&k| {
                let k = match order {
                    IndexOrder::Spo => k,
                    IndexOrder::Pos => (k.2, k.0, k.1),
                    IndexOrder::Osp => (k.1, k.2, k.0),
                };
                store.decode(k)
            })
            .collect()
    }

    fn assert_coherent(store: &Store) {
        let spo = decoded(&store.spo, store, IndexOrder::Spo);
        assert_eq!(spo, decoded(&store.pos, store, IndexOrder::Pos));
        assert_eq!(spo, decoded(&store.osp, store, IndexOrder::Osp));
        assert_eq!(store.spo.len(), store.pos.len());
        assert_eq!(store.spo.len(), store.osp.len());
    }

    #[test]
    fn insert_is_set_semantics() {
        let mut store = Store::new();
        let triple = t("http://x#s", "http://x#p", "http://x#o");
        assert!(store.insert(&triple));
        assert_eq!(store.len(), 1);
        assert!(!store.insert(&triple));
        assert_eq!(store.len(), 1);
        assert_eq!(store.generation(), 1);
    }

    #[test]
    fn empty_store_matches_nothing() {
        let store = Store::new();
        assert_eq!(store.match_pattern(&TriplePattern::new(var("s"), var("p"), var("o"))).count(), 0);
    }

    #[test]
    fn remove_subject_counts() {
        let mut store = Store::new();
        assert_eq!(store.remove_subject(&iri("http://x#nobody")), 0);
        store.insert(&t("http://x#s", "http://x#p", "http://x#a"));
        store.insert(&t("http://x#s", "http://x#p", "http://x#b"));
        store.insert(&t("http://x#s", "http://x#q", "http://x#a"));
        store.insert(&t("http://x#other", "http://x#p", "http://x#s"));
        assert_eq!(store.remove_subject(&iri("http://x#s")), 3);
        assert_eq!(store.len(), 1);
        assert!(store.mentions(&iri("http://x#s")));
        assert_coherent(&store);
    }

    #[test]
    fn index_choice() {
        assert_eq!(IndexOrder::for_shape(false, false, false), IndexOrder::Spo);
        assert_eq!(IndexOrder::for_shape(true, false, false), IndexOrder::Spo);
        assert_eq!(IndexOrder::for_shape(false, true, false), IndexOrder::Pos);
        assert_eq!(IndexOrder::for_shape(false, false, true), IndexOrder::Osp);
        assert_eq!(IndexOrder::for_shape(true, true, false), IndexOrder::Spo);
        assert_eq!(IndexOrder::for_shape(false, true, true), IndexOrder::Pos);
        assert_eq!(IndexOrder::for_shape(true, false, true), IndexOrder::Osp);
        assert_eq!(IndexOrder::for_shape(true, true, true), IndexOrder::Spo);
    }

    #[test]
    fn bound_predicate_results_follow_pos_order() {
        let mut store = Store::new();
        store.insert(&t("http://x#a", "http://x#p", "http://x#z"));
        store.insert(&t("http://x#b", "http://x#p", "http://x#y"));
        let got: Vec<Triple> = store
            .match_pattern(&TriplePattern::new(var("s"), iri("http://x#p"), var("o")))
            .collect();
        // z was encoded before y, so (p, z, a) sorts first in POS.
        assert_eq!(got, vec![t("http://x#a", "http://x#p", "http://x#z"), t("http://x#b", "http://x#p", "http://x#y")]);
    }

    #[test]
    fn dictionary_is_bijective_and_stable() {
        let mut store = Store::new();
        let a = iri("http://x#a");
        store.insert(&t("http://x#a", "http://x#p", "http://x#b"));
        let id = store.dictionary().lookup(&a).unwrap();
        store.remove_subject(&a);
        store.insert(&t("http://x#c", "http://x#p", "http://x#a"));
        assert_eq!(store.dictionary().lookup(&a), Some(id));
        assert_eq!(store.dictionary().decode(id), Some(&a));
    }

    fn small_term() -> impl Strategy<Value = Term> {
        prop_oneof![
            (0u8..5).prop_map(|i| iri(&format!("http://x#n{i}"))),
            (0u8..3).prop_map(|i| Term::Literal(Literal::string(format!("l{i}")))),
        ]
    }

    fn small_triple() -> impl Strategy<Value = Triple> {
        ((0u8..5), (0u8..3), small_term()).prop_map(|(s, p, o)| {
            Triple::new(iri(&format!("http://x#n{s}")), vocab::iri(&format!("http://x#p{p}")), o).unwrap()
        })
    }

    #[derive(Debug, Clone)]
    enum Op {
        Insert(Triple),
        Remove(Triple),
        RemoveSubject(u8),
    }

    fn op() -> impl Strategy<Value = Op> {
        prop_oneof![
            3 => small_triple().prop_map(Op::Insert),
            1 => small_triple().prop_map(Op::Remove),
            1 => (0u8..5).prop_map(Op::RemoveSubject),
        ]
    }

    proptest! {
        #[test]
        fn match_equals_naive_scan(
            triples in proptest::collection::vec(small_triple(), 0..50),
            s in proptest::option::of(0u8..6),
            p in proptest::option::of(0u8..4),
            o in proptest::option::of(small_term()),
        ) {
            let mut store = Store::new();
            for t in &triples {
                store.insert(t);
            }
            let pattern = TriplePattern::new(
                s.map_or(var("s"), |i| iri(&format!("http://x#n{i}")).into()),
                p.map_or(var("p"), |i| iri(&format!("http://x#p{i}")).into()),
                o.map_or(var("o"), PatternTerm::Bound),
            );
            let got: BTreeSet<Triple> = store.match_pattern(&pattern).collect();
            let all: BTreeSet<Triple> = triples.iter().cloned().collect();
            let naive: BTreeSet<Triple> = all.into_iter().filter(|t| pattern.matches(t)).collect();
            prop_assert_eq!(store.count(&pattern), naive.len());
            prop_assert_eq!(got, naive);
        }

        #[test]
        fn indexes_stay_coherent(ops in proptest::collection::vec(op(), 0..80)) {
            let mut store = Store::new();
            let mut model = BTreeSet::new();
            for op in ops {
                match op {
                    Op::Insert(t) => prop_assert_eq!(store.insert(&t), model.insert(t)),
                    Op::Remove(t) => prop_assert_eq!(store.remove(&t), model.remove(&t)),
                    Op::RemoveSubject(i) => {
                        let subject = iri(&format!("http://x#n{i}"));
                        let before = model.len();
                        model.retain(|t: &Triple| t.subject() != &subject);
                        prop_assert_eq!(store.remove_subject(&subject), before - model.len());
                    }
                }
                assert_coherent(&store);
            }
            prop_assert_eq!(store.triples().collect::<BTreeSet<_>>(), model);
        }
    }
}

//! The shared knowledge map: an ontology plus a store behind a reader–writer
//! lock. Queries share read access; ingestion prepares under a read lock and
//! holds the write lock only to insert.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{PoisonError, RwLock, RwLockReadGuard, RwLockWriteGuard};
use std::{fs, io};

use oak_core::fixtures::CORE_ONTOLOGY;
use oak_core::model::Task;
use oak_core::ontology::{load_ontology, OntologyError, OntologyIndex, OntologyMetrics};
use oak_core::rdf::vocab::{self, rdf};
use oak_core::rdf::{parse_turtle, parse_turtle_bytes, serialize_turtle, Iri, Prefixes, RdfError, Term};
use oak_core::sparql::{evaluate, parse_query, BindingSet, SparqlError};
use oak_core::store::{PatternTerm, Store, TriplePattern, Variable};
use oak_core::wrapper::{commit, prepare, ModelDescriptor, SchemaError, WrapError, WrapOptions, WrapReport};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum OakError {
    #[error("{source_name}: {error}")]
    Rdf { source_name: String, error: RdfError },
    #[error(transparent)]
    Sparql(#[from] SparqlError),
    #[error(transparent)]
    Wrap(#[from] WrapError),
    #[error("invalid descriptor: {0}")]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Ontology(#[from] OntologyError),
    #[error("invalid IRI '{0}'")]
    InvalidIri(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("internal error: {0}")]
    Internal(String),
}

impl OakError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        OakError::Io { path: path.into(), source }
    }

    /// Failures not caused by the caller's input.
    pub fn is_internal(&self) -> bool {
        matches!(self, OakError::Internal(_))
    }

    /// Machine-readable form: `{"error": <kind>, ...details, "message": ...}`.
    pub fn to_json(&self) -> Value {
        let mut v = match self {
            OakError::Rdf { source_name, error } => match error {
                RdfError::Syntax { line, column, message } => json!({
                    "error": "SyntaxError", "source": source_name, "line": line, "column": column, "message": message
                }),
                RdfError::UnknownPrefix(p) => json!({ "error": "UnknownPrefix", "source": source_name, "prefix": p }),
                RdfError::InvalidPrefixedName(n) => {
                    json!({ "error": "InvalidPrefixedName", "source": source_name, "name": n })
                }
            },
            OakError::Sparql(e) => match e {
                SparqlError::Syntax { line, column, message } => {
                    json!({ "error": "SyntaxError", "line": line, "column": column, "message": message })
                }
                SparqlError::UnknownPrefix(p) => json!({ "error": "UnknownPrefix", "prefix": p }),
                SparqlError::UnsupportedFeature(f) => json!({ "error": "UnsupportedFeature", "feature": f }),
            },
            OakError::Wrap(e) => match e {
                WrapError::Schema(s) => json!({ "error": "SchemaError", "field": s.field, "reason": s.reason }),
                WrapError::UnknownConcept(c) => json!({ "error": "UnknownConcept", "concept": c }),
                WrapError::AmbiguousConcept { name, candidates } => json!({
                    "error": "AmbiguousConcept",
                    "concept": name,
                    "candidates": candidates.iter().map(Iri::as_str).collect::<Vec<_>>(),
                }),
                WrapError::UnanchoredState(c) => json!({ "error": "UnanchoredState", "concept": c }),
                WrapError::DuplicateModel(m) => json!({ "error": "DuplicateModel", "model": m }),
                WrapError::UnknownModel(m) => json!({ "error": "UnknownModel", "model": m }),
                WrapError::ValidationFailed(v) => json!({
                    "error": "ValidationFailed",
                    "violations": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
            },
            OakError::Schema(s) => json!({ "error": "SchemaError", "field": s.field, "reason": s.reason }),
            OakError::Ontology(e) => match e {
                OntologyError::CyclicHierarchy(c) => json!({ "error": "CyclicHierarchy", "class": c.as_str() }),
                OntologyError::UnknownConcept(c) => json!({ "error": "UnknownConcept", "concept": c }),
                OntologyError::AmbiguousConcept { name, .. } => json!({ "error": "AmbiguousConcept", "concept": name }),
            },
            OakError::InvalidIri(i) => json!({ "error": "InvalidIri", "iri": i }),
            OakError::Io { path, source } => {
                json!({ "error": "IoError", "path": path.display().to_string(), "reason": source.to_string() })
            }
            OakError::Internal(_) => json!({ "error": "Internal" }),
        };
        v["message"] = json!(self.to_string());
        v
    }
}

struct Inner {
    store: Store,
    prefixes: Prefixes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub triples: usize,
    pub metrics: OntologyMetrics,
}

impl Stats {
    pub fn to_json(&self) -> Value {
        let m = &self.metrics;
        json!({
            "triples": self.triples,
            "axiom_count": m.axiom_count,
            "logical_axiom_count": m.logical_axiom_count,
            "declaration_axiom_count": m.declaration_axiom_count,
            "class_count": m.class_count,
            "object_property_count": m.object_property_count,
            "data_property_count": m.data_property_count,
            "individual_count": m.individual_count,
        })
    }
}

/// One-hop neighbourhood of a node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Neighborhood {
    pub subject_of: Vec<(Iri, Term)>,
    pub object_of: Vec<(Term, Iri)>,
}

pub struct KnowledgeMap {
    ontology: OntologyIndex,
    inner: RwLock<Inner>,
    options: WrapOptions,
}

fn var(name: &str) -> PatternTerm {
    PatternTerm::Var(Variable::new(name).expect("valid variable name"))
}

impl KnowledgeMap {
    /// Loads an ontology document; its triples also seed the store.
    pub fn from_ontology(text: &str, source_name: &str, options: WrapOptions) -> Result<Self, OakError> {
        let graph = parse_turtle(text, None).map_err(|error| OakError::Rdf { source_name: source_name.into(), error })?;
        let mut store = Store::new();
        store.insert_graph(&graph);
        let mut prefixes = Prefixes::standard();
        prefixes.extend(&graph.prefixes);
        Ok(KnowledgeMap {
            ontology: load_ontology(graph)?,
            inner: RwLock::new(Inner { store, prefixes }),
            options,
        })
    }

    pub fn bundled(options: WrapOptions) -> Self {
        Self::from_ontology(CORE_ONTOLOGY, "core-ontology.ttl", options).expect("bundled ontology loads")
    }

    pub fn from_ontology_file(path: &Path, options: WrapOptions) -> Result<Self, OakError> {
        let text = fs::read_to_string(path).map_err(|e| OakError::io(path, e))?;
        Self::from_ontology(&text, &path.display().to_string(), options)
    }

    fn read(&self) -> RwLockReadGuard<'_, Inner> {
        // writers never leave the store half-updated, so poisoning is harmless
        self.inner.read().unwrap_or_else(PoisonError::into_inner)
    }

    fn write(&self) -> RwLockWriteGuard<'_, Inner> {
        self.inner.write().unwrap_or_else(PoisonError::into_inner)
    }

    pub fn ontology(&self) -> &OntologyIndex {
        &self.ontology
    }

    pub fn options(&self) -> WrapOptions {
        self.options
    }

    pub fn len(&self) -> usize {
        self.read().store.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Bulk-inserts a Turtle document; returns the number of new triples.
    pub fn load_turtle(&self, bytes: &[u8], source_name: &str) -> Result<usize, OakError> {
        let graph = parse_turtle_bytes(bytes, Some(&Prefixes::standard()))
            .map_err(|error| OakError::Rdf { source_name: source_name.into(), error })?;
        let mut inner = self.write();
        let added = inner.store.insert_graph(&graph);
        for (label, ns) in graph.prefixes.iter() {
            if inner.prefixes.get(label).is_none() {
                inner.prefixes.insert(label, ns);
            }
        }
        Ok(added)
    }

    pub fn load_file(&self, path: &Path) -> Result<usize, OakError> {
        let bytes = fs::read(path).map_err(|e| OakError::io(path, e))?;
        self.load_turtle(&bytes, &path.display().to_string())
    }

    pub fn ingest(&self, descriptor: &ModelDescriptor) -> Result<WrapReport, OakError> {
        let prepared = prepare(descriptor, &self.ontology, &self.read().store, self.options)?;
        let mut inner = self.write();
        let prepared = if prepared.is_current(&inner.store) {
            prepared
        } else {
            prepare(descriptor, &self.ontology, &inner.store, self.options)?
        };
        Ok(commit(prepared, &mut inner.store))
    }

    pub fn query(&self, text: &str) -> Result<BindingSet, OakError> {
        let query = parse_query(text)?;
        Ok(evaluate(&query, &self.read().store))
    }

    pub fn export(&self) -> String {
        let inner = self.read();
        serialize_turtle(&inner.store.to_graph(inner.prefixes.clone()))
    }

    /// Writes the export next to `path` and renames it into place.
    pub fn save(&self, path: &Path) -> Result<(), OakError> {
        let text = self.export();
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, text).map_err(|e| OakError::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| OakError::io(path, e))
    }

    pub fn stats(&self) -> Stats {
        Stats { triples: self.len(), metrics: self.ontology.compute_metrics() }
    }

    pub fn browse(&self, iri: &Iri) -> Neighborhood {
        let inner = self.read();
        let node = Term::Iri(iri.clone());
        let out = TriplePattern::new(node.clone(), var("p"), var("o"));
        let inc = TriplePattern::new(var("s"), var("p"), node);
        Neighborhood {
            subject_of: inner
                .store
                .match_pattern(&out)
                .map(|t| (t.predicate().clone(), t.object().clone()))
                .collect(),
            object_of: inner
                .store
                .match_pattern(&inc)
                .map(|t| (t.subject().clone(), t.predicate().clone()))
                .collect(),
        }
    }

    /// Model IRIs grouped by task class.
    pub fn models(&self) -> BTreeMap<Task, Vec<Iri>> {
        let inner = self.read();
        let rdf_type = vocab::iri(rdf::TYPE);
        Task::ALL
            .into_iter()
            .map(|task| {
                let models = inner
                    .store
                    .subjects(&rdf_type, &Term::Iri(task.class()))
                    .into_iter()
                    .filter_map(|t| t.as_iri().cloned())
                    .collect();
                (task, models)
            })
            .collect()
    }
}

pub fn report_to_json(r: &WrapReport) -> Value {
    fn iris(v: &[Iri]) -> Vec<&str> {
        v.iter().map(Iri::as_str).collect()
    }
    json!({
        "model": r.model.as_str(),
        "algorithm": r.algorithm.as_str(),
        "conditions": iris(&r.conditions),
        "output": r.output.as_ref().map(Iri::as_str),
        "transformations": iris(&r.transformations),
        "states": iris(&r.states),
        "concepts": iris(&r.concepts),
        "minted": iris(&r.minted),
        "triples_added": r.triples_added,
        "turtle": r.turtle,
    })
}

//! Turns model descriptors into knowledge-map triples and back.
//!
//! Wrapping runs in five steps (model, concepts, instances, transformations,
//! states), builds the whole graph first and only then touches the store, so
//! a failed wrap leaves the store unchanged.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{
    decimal_literal, Concept, Evaluation, Instance, KnowledgeRepresentation, Range, Relation, RelationKind, State,
    Task, Transformation, TransformationKind, Violation,
};
use crate::ontology::{OntologyError, OntologyIndex};
use crate::rdf::vocab::{self, owl, rdf, rdfs};
use crate::rdf::{is_identifier, serialize_turtle, Graph, Iri, Prefixes, Term};
use crate::store::Store;

/// Transformation name meaning "used as is"; no transformation node is created.
pub const IDENTITY: &str = "identity";

#[derive(Debug, Clone, PartialEq)]
pub struct InputSpec {
    pub concept: String,
    pub transformation: String,
    pub unit: Option<String>,
    pub range: Option<(f64, f64)>,
}

impl InputSpec {
    pub fn new(concept: impl Into<String>, transformation: impl Into<String>) -> Self {
        InputSpec { concept: concept.into(), transformation: transformation.into(), unit: None, range: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputSpec {
    pub concept: String,
    pub transformation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpec {
    pub concept: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationSpec {
    pub metric: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelDescriptor {
    pub model_id: String,
    pub task: Task,
    pub algorithm: String,
    pub inputs: Vec<InputSpec>,
    pub output: Option<OutputSpec>,
    pub states: Vec<StateSpec>,
    pub evaluation: Option<EvaluationSpec>,
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub field: String,
    pub reason: String,
}

impl SchemaError {
    pub fn new(field: impl Into<String>, reason: impl Into<String>) -> Self {
        SchemaError { field: field.into(), reason: reason.into() }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.reason)
    }
}

impl core::error::Error for SchemaError {}

fn require_text(field: String, value: &str) -> Result<(), SchemaError> {
    if value.trim().is_empty() {
        Err(SchemaError::new(field, "must not be empty"))
    } else {
        Ok(())
    }
}

impl ModelDescriptor {
    pub fn new(model_id: impl Into<String>, task: Task, algorithm: impl Into<String>) -> Self {
        ModelDescriptor {
            model_id: model_id.into(),
            task,
            algorithm: algorithm.into(),
            inputs: Vec::new(),
            output: None,
            states: Vec::new(),
            evaluation: None,
            source: None,
        }
    }

    /// Structural checks that need no ontology.
    pub fn check(&self) -> Result<(), SchemaError> {
        if !is_identifier(&self.model_id) {
            return Err(SchemaError::new("model_id", "must match [A-Za-z][A-Za-z0-9_]*"));
        }
        require_text("algorithm".into(), &self.algorithm)?;
        if self.task.requires_output() && self.output.is_none() {
            return Err(SchemaError::new("output", format!("required for {} models", self.task)));
        }
        if self.inputs.is_empty() && self.output.is_none() {
            return Err(SchemaError::new("inputs", "at least one input or an output is required"));
        }
        if self.task == Task::AssociationRule && self.inputs.is_empty() {
            return Err(SchemaError::new("inputs", "association rules need an antecedent"));
        }
        if self.task == Task::AssociationRule && self.states.is_empty() && self.output.is_none() {
            return Err(SchemaError::new("states", "association rules need a consequent state or output"));
        }
        for (i, input) in self.inputs.iter().enumerate() {
            require_text(format!("inputs[{i}].concept"), &input.concept)?;
            require_text(format!("inputs[{i}].transformation"), &input.transformation)?;
            if let Some(unit) = &input.unit {
                require_text(format!("inputs[{i}].unit"), unit)?;
            }
            if let Some((lo, hi)) = input.range {
                if !(Range::Numeric { lower: lo, upper: hi }).is_valid() {
                    return Err(SchemaError::new(format!("inputs[{i}].range"), "need finite lower <= upper"));
                }
            }
        }
        if let Some(out) = &self.output {
            require_text("output.concept".into(), &out.concept)?;
            require_text("output.transformation".into(), &out.transformation)?;
        }
        for (i, state) in self.states.iter().enumerate() {
            require_text(format!("states[{i}].concept"), &state.concept)?;
            if camel_case(&state.value).is_empty() {
                return Err(SchemaError::new(format!("states[{i}].value"), "needs at least one letter or digit"));
            }
        }
        if let Some(e) = &self.evaluation {
            require_text("evaluation.metric".into(), &e.metric)?;
            if !e.value.is_finite() {
                return Err(SchemaError::new("evaluation.value", "must be finite"));
            }
        }
        Ok(())
    }

    pub fn model_iri(&self) -> Iri {
        vocab::agrikmap(&self.model_id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WrapError {
    #[error("schema error: {0}")]
    Schema(SchemaError),
    #[error("unknown concept '{0}'")]
    UnknownConcept(String),
    #[error("ambiguous concept '{name}'")]
    AmbiguousConcept { name: String, candidates: Vec<Iri> },
    #[error("state concept '{0}' is neither the output nor an input")]
    UnanchoredState(String),
    #[error("model '{0}' already exists with a different description")]
    DuplicateModel(String),
    #[error("unknown model '{0}'")]
    UnknownModel(String),
    #[error("validation failed: {0:?}")]
    ValidationFailed(Vec<Violation>),
}

impl From<SchemaError> for WrapError {
    fn from(e: SchemaError) -> Self {
        WrapError::Schema(e)
    }
}

impl From<OntologyError> for WrapError {
    fn from(e: OntologyError) -> Self {
        match e {
            OntologyError::UnknownConcept(n) => WrapError::UnknownConcept(n),
            OntologyError::AmbiguousConcept { name, candidates } => WrapError::AmbiguousConcept { name, candidates },
            OntologyError::CyclicHierarchy(i) => WrapError::UnknownConcept(i.as_str().into()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WrapOptions {
    /// Mint unknown concepts under `UnclassifiedConcept` instead of failing.
    pub lenient: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrapReport {
    pub model: Iri,
    pub algorithm: Iri,
    pub conditions: Vec<Iri>,
    pub output: Option<Iri>,
    pub transformations: Vec<Iri>,
    pub states: Vec<Iri>,
    pub concepts: Vec<Iri>,
    /// Every IRI this call introduced to the store.
    pub minted: Vec<Iri>,
    pub triples_added: usize,
    pub turtle: String,
}

/// `"Sheath rot"` → `"SheathRot"`.
pub fn camel_case(text: &str) -> String {
    let mut out = String::new();
    for word in text.split(|c: char| !c.is_ascii_alphanumeric()).filter(|w| !w.is_empty()) {
        let mut chars = word.chars();
        if let Some(first) = chars.next() {
            out.push(first.to_ascii_uppercase());
            out.extend(chars);
        }
    }
    out
}

fn sanitize(text: &str) -> String {
    text.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

/// Leading camel-case word of a concept's local name: `SoilPH` → `Soil`.
pub fn concept_stem(local_name: &str) -> String {
    let clean: Vec<char> = local_name.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
    let mut end = clean.len();
    for i in 1..clean.len() {
        if clean[i].is_ascii_uppercase() && (clean[i - 1].is_ascii_lowercase() || clean[i - 1].is_ascii_digit()) {
            end = i;
            break;
        }
    }
    let stem: String = clean[..end].iter().collect();
    if stem.is_empty() {
        String::from("Instance")
    } else {
        stem
    }
}

fn is_identity(name: &str) -> bool {
    name.trim().eq_ignore_ascii_case(IDENTITY)
}

fn label_of(store: &Store, iri: &Iri) -> Option<String> {
    store
        .objects(&Term::Iri(iri.clone()), &vocab::iri(rdfs::LABEL))
        .into_iter()
        .find_map(|t| t.as_literal().map(|l| String::from(l.lexical())))
}

fn has_type(store: &Store, iri: &Iri, class: &str) -> bool {
    store.objects(&Term::Iri(iri.clone()), &vocab::iri(rdf::TYPE)).iter().any(|t| t.as_iri().is_some_and(|c| c.as_str() == class))
}

struct ConceptResolver<'a> {
    index: &'a OntologyIndex,
    store: &'a Store,
    options: WrapOptions,
    minted: BTreeMap<Iri, Concept>,
    previously_minted: BTreeMap<Iri, Concept>,
}

impl ConceptResolver<'_> {
    fn resolve(&mut self, name: &str) -> Result<Iri, WrapError> {
        match self.index.resolve_concept(name) {
            Ok(iri) => Ok(iri),
            Err(OntologyError::UnknownConcept(_)) if self.options.lenient => {
                let local = camel_case(name);
                if local.is_empty() {
                    return Err(WrapError::UnknownConcept(name.into()));
                }
                let iri = vocab::agriont(&local);
                let concept = Concept {
                    iri: iri.clone(),
                    label: String::from(name.trim()),
                    parent: Some(vocab::agriont("UnclassifiedConcept")),
                };
                if has_type(self.store, &iri, owl::CLASS) {
                    self.previously_minted.entry(iri.clone()).or_insert(concept);
                } else {
                    self.minted.entry(iri.clone()).or_insert(concept);
                }
                Ok(iri)
            }
            Err(e) => Err(e.into()),
        }
    }
}

/// Descriptor content with concept names resolved, for equality checks.
#[derive(Debug, PartialEq, Eq)]
struct Normalized {
    task: Task,
    algorithm: String,
    inputs: Vec<(Iri, String)>,
    output: Option<(Iri, String)>,
    states: Vec<(Iri, Iri)>,
    evaluation: Option<(String, String)>,
    source: Option<String>,
}

fn normalize(desc: &ModelDescriptor, resolver: &mut ConceptResolver<'_>) -> Result<Normalized, WrapError> {
    let transformation = |name: &str| if is_identity(name) { String::from(IDENTITY) } else { String::from(name) };
    let mut inputs = Vec::new();
    for i in &desc.inputs {
        inputs.push((resolver.resolve(&i.concept)?, transformation(&i.transformation)));
    }
    inputs.sort();
    let output = match &desc.output {
        Some(o) => Some((resolver.resolve(&o.concept)?, transformation(&o.transformation))),
        None => None,
    };
    let mut states = Vec::new();
    for s in &desc.states {
        states.push((resolver.resolve(&s.concept)?, vocab::agriont(&camel_case(&s.value))));
    }
    states.sort();
    states.dedup();
    Ok(Normalized {
        task: desc.task,
        algorithm: desc.algorithm.clone(),
        inputs,
        output,
        states,
        evaluation: desc
            .evaluation
            .as_ref()
            .map(|e| (e.metric.clone(), String::from(decimal_literal(e.value).lexical()))),
        source: desc.source.clone(),
    })
}

/// A wrap computed against one version of a store, ready to be committed.
#[derive(Debug, Clone)]
pub struct PreparedWrap {
    generation: u64,
    graph: Option<Graph>,
    report: WrapReport,
}

impl PreparedWrap {
    /// Whether the store is still at the version this wrap was computed from.
    pub fn is_current(&self, store: &Store) -> bool {
        store.generation() == self.generation
    }

    pub fn report(&self) -> &WrapReport {
        &self.report
    }
}

/// Steps 1–5 and materialization, without touching the store. Identical
/// re-ingestion yields a prepared no-op.
pub fn prepare(
    desc: &ModelDescriptor,
    index: &OntologyIndex,
    store: &Store,
    options: WrapOptions,
) -> Result<PreparedWrap, WrapError> {
    desc.check()?;
    let model = desc.model_iri();
    let mut resolver = ConceptResolver {
        index,
        store,
        options,
        minted: BTreeMap::new(),
        previously_minted: BTreeMap::new(),
    };

    if has_any_type(store, &model) {
        let stored = unwrap(store, &model)?;
        let wanted = normalize(desc, &mut resolver)?;
        return match normalize(&stored, &mut resolver) {
            Ok(existing) if existing == wanted => Ok(PreparedWrap {
                generation: store.generation(),
                graph: None,
                report: existing_report(store, &model),
            }),
            _ => Err(WrapError::DuplicateModel(desc.model_id.clone())),
        };
    }

    let kr = build(desc, &mut resolver)?;
    let graph = kr
        .to_triples(index)
        .map_err(|crate::model::ModelError::InvalidRepresentation(v)| WrapError::ValidationFailed(v))?;

    let mut minted: BTreeSet<Iri> = BTreeSet::new();
    for t in &graph {
        if let Term::Iri(s) = t.subject() {
            if !store.mentions(t.subject()) {
                minted.insert(s.clone());
            }
        }
    }
    let mut states: Vec<Iri> = kr.states.iter().map(|s| s.iri.clone()).collect();
    states.dedup();
    let report = WrapReport {
        model,
        algorithm: kr.transformations[0].iri.clone(),
        conditions: kr
            .relations
            .iter()
            .filter(|r| r.kind == RelationKind::HasCondition)
            .map(|r| r.object.clone())
            .collect(),
        output: kr.relations.iter().find(|r| r.kind == RelationKind::Predicts).map(|r| r.object.clone()),
        transformations: kr.transformations[1..].iter().map(|t| t.iri.clone()).collect(),
        states,
        concepts: resolver.minted.keys().cloned().collect(),
        minted: minted.into_iter().collect(),
        triples_added: 0,
        turtle: serialize_turtle(&graph),
    };
    Ok(PreparedWrap { generation: store.generation(), graph: Some(graph), report })
}

/// Inserts a prepared wrap. The caller must hold the store at the version
/// the wrap was prepared against (see [`PreparedWrap::is_current`]).
pub fn commit(prepared: PreparedWrap, store: &mut Store) -> WrapReport {
    debug_assert!(prepared.is_current(store), "prepared against a different store version");
    let mut report = prepared.report;
    if let Some(graph) = &prepared.graph {
        report.triples_added = store.insert_graph(graph);
    }
    report
}

/// Adds the descriptor's model to `store`, or reports the existing one when an
/// identical description is already stored.
pub fn wrap(
    desc: &ModelDescriptor,
    index: &OntologyIndex,
    store: &mut Store,
    options: WrapOptions,
) -> Result<WrapReport, WrapError> {
    let prepared = prepare(desc, index, store, options)?;
    Ok(commit(prepared, store))
}

fn has_any_type(store: &Store, iri: &Iri) -> bool {
    !store.objects(&Term::Iri(iri.clone()), &vocab::iri(rdf::TYPE)).is_empty()
}

fn iri_objects(store: &Store, subject: &Iri, predicate: Iri) -> Vec<Iri> {
    store
        .objects(&Term::Iri(subject.clone()), &predicate)
        .into_iter()
        .filter_map(|t| t.as_iri().cloned())
        .collect()
}

/// Instance IRI, concept, transformation name and source range.
type InstancePlan<'a> = (Iri, Iri, &'a str, Option<(f64, f64)>);

fn build(desc: &ModelDescriptor, resolver: &mut ConceptResolver<'_>) -> Result<KnowledgeRepresentation, WrapError> {
    let store = resolver.store;
    let model = desc.model_iri();
    let mut kr = KnowledgeRepresentation::new(model.clone(), desc.task);
    kr.provenance = desc.source.clone();
    kr.evaluation = desc.evaluation.as_ref().map(|e| Evaluation { metric: e.metric.clone(), value: e.value });

    let mut relations: Vec<Relation> = Vec::new();
    let mut relate = |s: &Iri, kind: RelationKind, o: &Iri| {
        let r = Relation::new(s.clone(), kind, o.clone());
        if !relations.contains(&r) {
            relations.push(r);
        }
    };

    // 1. the model and its algorithm
    let algorithm = vocab::agrikmap(&format!("{}_alg", desc.model_id));
    relate(&model, RelationKind::IsA, &desc.task.class());
    relate(&model, RelationKind::HasTransformation, &algorithm);
    relate(&algorithm, RelationKind::IsA, &vocab::agriont("DataMiningAlgorithm"));
    kr.transformations.push(Transformation {
        iri: algorithm,
        name: desc.algorithm.clone(),
        concept: desc.task.class(),
        kind: TransformationKind::Algorithm,
        source_range: None,
        target_range: None,
    });

    // 2. concepts
    let output_concept = match &desc.output {
        Some(o) => Some(resolver.resolve(&o.concept)?),
        None => None,
    };
    let mut input_concepts = Vec::new();
    for i in &desc.inputs {
        input_concepts.push(resolver.resolve(&i.concept)?);
    }
    let mut state_concepts = Vec::new();
    for s in &desc.states {
        state_concepts.push(resolver.resolve(&s.concept)?);
    }

    // 3. instances, allocated in per-stem blocks: slot 0 of a block is the
    // output's (reserved if the output has another stem), inputs follow
    let mut stems: Vec<String> = Vec::new();
    let stem_of = |c: &Iri| concept_stem(c.local_name());
    for c in output_concept.iter().chain(&input_concepts) {
        let s = stem_of(c);
        if !stems.contains(&s) {
            stems.push(s);
        }
    }
    let slot_iri = |stem: &str, n: usize| vocab::agrikmap(&format!("{stem}_{n:03}"));
    let mut output_iri = None;
    let mut input_iris: Vec<Option<Iri>> = alloc::vec![None; input_concepts.len()];
    for stem in &stems {
        let members: Vec<usize> = (0..input_concepts.len()).filter(|&i| &stem_of(&input_concepts[i]) == stem).collect();
        let free = |n: usize| !store.mentions(&Term::Iri(slot_iri(stem, n)));
        let start = (0..)
            .find(|&b| (b..=b + members.len()).all(free))
            .expect("the store is finite");
        if output_concept.as_ref().is_some_and(|c| &stem_of(c) == stem) {
            output_iri = Some(slot_iri(stem, start));
        }
        for (k, &i) in members.iter().enumerate() {
            input_iris[i] = Some(slot_iri(stem, start + 1 + k));
        }
    }
    let input_iris: Vec<Iri> = input_iris.into_iter().map(|i| i.expect("every input has a stem")).collect();

    let mut instance_specs: Vec<InstancePlan<'_>> = Vec::new();
    if let (Some(iri), Some(concept), Some(spec)) = (&output_iri, &output_concept, &desc.output) {
        relate(&model, RelationKind::Predicts, iri);
        instance_specs.push((iri.clone(), concept.clone(), &spec.transformation, None));
    }
    for ((iri, concept), spec) in input_iris.iter().zip(&input_concepts).zip(&desc.inputs) {
        relate(&model, RelationKind::HasCondition, iri);
        instance_specs.push((iri.clone(), concept.clone(), &spec.transformation, spec.range));
    }

    // 4. transformations, reusing stored ones with the same concept and name
    let transformation_of = vocab::agriont("transformationOf");
    let mut taken: BTreeSet<Iri> = BTreeSet::new();
    for (iri, concept, name, range) in &instance_specs {
        relate(iri, RelationKind::IsA, concept);
        let mut instance = Instance { iri: iri.clone(), concept: concept.clone(), transformation: None };
        if !is_identity(name) {
            let name = name.trim();
            let in_rep = kr.transformations.iter().find(|t| &t.concept == concept && t.name == name).map(|t| t.iri.clone());
            let t_iri = match in_rep {
                Some(t) => t,
                None => {
                    let stored = store
                        .subjects(&transformation_of, &Term::Iri(concept.clone()))
                        .into_iter()
                        .filter_map(|t| t.as_iri().cloned())
                        .find(|t| label_of(store, t).as_deref() == Some(name));
                    let t = stored.unwrap_or_else(|| {
                        let base = format!("{}_{}", sanitize(concept.local_name()), sanitize(name));
                        let mut candidate = vocab::agrikmap(&base);
                        let mut n = 2;
                        while store.mentions(&Term::Iri(candidate.clone())) || taken.contains(&candidate) {
                            candidate = vocab::agrikmap(&format!("{base}_{n}"));
                            n += 1;
                        }
                        candidate
                    });
                    taken.insert(t.clone());
                    kr.transformations.push(Transformation {
                        iri: t.clone(),
                        name: String::from(name),
                        concept: concept.clone(),
                        kind: TransformationKind::Function,
                        source_range: range.map(|(lower, upper)| Range::Numeric { lower, upper }),
                        target_range: None,
                    });
                    relate(&t, RelationKind::IsA, &vocab::agriont("Transformation"));
                    relate(&t, RelationKind::TransformationOf, concept);
                    t
                }
            };
            relate(iri, RelationKind::HasTransformation, &t_iri);
            instance.transformation = Some(t_iri);
        }
        kr.instances.push(instance);
    }

    // 5. states, attached to the output if it has the state's concept, else
    // to the first input that does
    for (spec, concept) in desc.states.iter().zip(&state_concepts) {
        let target = instance_specs
            .iter()
            .find(|(_, c, _, _)| c == concept)
            .map(|(i, _, _, _)| i.clone())
            .ok_or_else(|| WrapError::UnanchoredState(spec.concept.clone()))?;
        let iri = vocab::agriont(&camel_case(&spec.value));
        let known = resolver.index.individuals().contains(&iri) || store.mentions(&Term::Iri(iri.clone()));
        if kr.states.iter().any(|s| s.iri == iri && s.instance == target) {
            continue;
        }
        let declared = !known && !kr.states.iter().any(|s| s.iri == iri);
        if declared {
            relate(&iri, RelationKind::IsA, &vocab::agriont("State"));
        }
        relate(&target, RelationKind::HasState, &iri);
        kr.states.push(State { iri, instance: target, label: declared.then(|| String::from(spec.value.trim())) });
    }

    kr.relations = relations;
    kr.concepts = resolver.minted.values().chain(resolver.previously_minted.values()).cloned().collect();
    Ok(kr)
}

fn existing_report(store: &Store, model: &Iri) -> WrapReport {
    let ont = vocab::agriont;
    let conditions = iri_objects(store, model, ont("hasCondition"));
    let output = iri_objects(store, model, ont("predicts")).into_iter().next();
    let algorithm = iri_objects(store, model, ont("hasTransformation"))
        .into_iter()
        .next()
        .unwrap_or_else(|| vocab::agrikmap(&format!("{}_alg", model.local_name())));
    let instances: Vec<Iri> = output.iter().chain(&conditions).cloned().collect();
    let mut transformations = BTreeSet::new();
    let mut states = BTreeSet::new();
    for i in &instances {
        transformations.extend(iri_objects(store, i, ont("hasTransformation")));
        states.extend(iri_objects(store, i, ont("hasState")));
    }
    let mut subjects: BTreeSet<Iri> = [model.clone(), algorithm.clone()].into();
    subjects.extend(iri_objects(store, model, ont("hasEvaluation")));
    subjects.extend(instances.iter().cloned());
    subjects.extend(transformations.iter().cloned());
    let mut graph = Graph::with_prefixes(Prefixes::standard());
    for s in &subjects {
        for t in store.triples().filter(|t| t.subject() == &Term::Iri(s.clone())) {
            graph.insert(t);
        }
    }
    WrapReport {
        model: model.clone(),
        algorithm,
        conditions,
        output,
        transformations: transformations.into_iter().collect(),
        states: states.into_iter().collect(),
        concepts: Vec::new(),
        minted: Vec::new(),
        triples_added: 0,
        turtle: serialize_turtle(&graph),
    }
}

/// Reconstructs a descriptor from stored triples. Units and ranges are not
/// materialized and so come back empty; lists come back in IRI order.
pub fn unwrap(store: &Store, model: &Iri) -> Result<ModelDescriptor, WrapError> {
    let ont = vocab::agriont;
    let unknown = || WrapError::UnknownModel(String::from(model.local_name()));
    let task = iri_objects(store, model, vocab::iri(rdf::TYPE))
        .iter()
        .find_map(Task::from_class)
        .ok_or_else(unknown)?;
    let algorithm = iri_objects(store, model, ont("hasTransformation"))
        .iter()
        .find_map(|a| label_of(store, a))
        .unwrap_or_default();

    let concept_of = |i: &Iri| {
        iri_objects(store, i, vocab::iri(rdf::TYPE))
            .into_iter()
            .next()
            .map(|c| String::from(c.local_name()))
            .unwrap_or_default()
    };
    let transformation_of = |i: &Iri| {
        iri_objects(store, i, ont("hasTransformation"))
            .iter()
            .find_map(|t| label_of(store, t))
            .unwrap_or_else(|| String::from(IDENTITY))
    };

    let output_iri = iri_objects(store, model, ont("predicts")).into_iter().next();
    let conditions = iri_objects(store, model, ont("hasCondition"));
    let mut states = Vec::new();
    for i in output_iri.iter().chain(&conditions) {
        for s in iri_objects(store, i, ont("hasState")) {
            let value = label_of(store, &s).unwrap_or_else(|| String::from(s.local_name()));
            states.push(StateSpec { concept: concept_of(i), value });
        }
    }
    let evaluation = iri_objects(store, model, ont("hasEvaluation")).into_iter().next().and_then(|e| {
        let subject = Term::Iri(e);
        let literal = |p: &str| {
            store
                .objects(&subject, &ont(p))
                .into_iter()
                .find_map(|t| t.as_literal().map(|l| String::from(l.lexical())))
        };
        Some(EvaluationSpec { metric: literal("metricName")?, value: literal("metricValue")?.parse().ok()? })
    });

    Ok(ModelDescriptor {
        model_id: String::from(model.local_name()),
        task,
        algorithm,
        inputs: conditions.iter().map(|i| InputSpec::new(concept_of(i), transformation_of(i))).collect(),
        output: output_iri.map(|o| OutputSpec { concept: concept_of(&o), transformation: transformation_of(&o) }),
        states,
        evaluation,
        source: label_of(store, model),
    })
}

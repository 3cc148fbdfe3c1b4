//! Knowledge representations of data-mining models: instances of ontology
//! concepts, the transformations applied to them, observed states, and the
//! typed relations tying them to the model.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::ontology::OntologyIndex;
use crate::rdf::vocab::{self, owl, rdf, rdfs, xsd};
use crate::rdf::{Graph, Iri, Literal, Prefixes, Term, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Task {
    Clustering,
    Classification,
    Regression,
    AssociationRule,
}

impl Task {
    pub const ALL: [Task; 4] = [Task::Clustering, Task::Classification, Task::Regression, Task::AssociationRule];

    pub fn name(self) -> &'static str {
        match self {
            Task::Clustering => "clustering",
            Task::Classification => "classification",
            Task::Regression => "regression",
            Task::AssociationRule => "association_rule",
        }
    }

    /// The ontology class the model is typed with.
    pub fn class(self) -> Iri {
        vocab::agriont(match self {
            Task::Clustering => "Clustering",
            Task::Classification => "Classification",
            Task::Regression => "Regression",
            Task::AssociationRule => "AssociationRule",
        })
    }

    pub fn from_class(class: &Iri) -> Option<Task> {
        Task::ALL.into_iter().find(|t| &t.class() == class)
    }

    /// Regression and classification models predict exactly one output.
    pub fn requires_output(self) -> bool {
        matches!(self, Task::Regression | Task::Classification)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown task '{s}'"))
    }
}

/// A class introduced by a representation rather than taken from the ontology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub iri: Iri,
    pub label: String,
    pub parent: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Range {
    Numeric { lower: f64, upper: f64 },
    Categorical(Vec<String>),
}

impl Range {
    pub fn is_valid(&self) -> bool {
        match self {
            Range::Numeric { lower, upper } => lower.is_finite() && upper.is_finite() && lower <= upper,
            Range::Categorical(values) => !values.is_empty(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformationKind {
    Function,
    Algorithm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transformation {
    pub iri: Iri,
    pub name: String,
    /// Concept the transformation applies to (the task class for algorithms).
    pub concept: Iri,
    pub kind: TransformationKind,
    pub source_range: Option<Range>,
    pub target_range: Option<Range>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub iri: Iri,
    pub concept: Iri,
    pub transformation: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    pub iri: Iri,
    pub instance: Iri,
    /// Set when the state is declared by this representation rather than
    /// already present in the ontology or store.
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    IsA,
    HasTransformation,
    HasState,
    HasCondition,
    Predicts,
    TransformationOf,
}

impl RelationKind {
    pub fn predicate(self) -> Iri {
        match self {
            RelationKind::IsA => vocab::iri(rdf::TYPE),
            RelationKind::HasTransformation => vocab::agriont("hasTransformation"),
            RelationKind::HasState => vocab::agriont("hasState"),
            RelationKind::HasCondition => vocab::agriont("hasCondition"),
            RelationKind::Predicts => vocab::agriont("predicts"),
            RelationKind::TransformationOf => vocab::agriont("transformationOf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    pub subject: Iri,
    pub kind: RelationKind,
    pub object: Iri,
}

impl Relation {
    pub fn new(subject: Iri, kind: RelationKind, object: Iri) -> Self {
        Relation { subject, kind, object }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub metric: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeRepresentation {
    pub model: Iri,
    pub task: Task,
    pub provenance: Option<String>,
    pub concepts: Vec<Concept>,
    pub instances: Vec<Instance>,
    pub transformations: Vec<Transformation>,
    pub states: Vec<State>,
    pub relations: Vec<Relation>,
    pub evaluation: Option<Evaluation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    MissingPredicts,
    MultiplePredicts(usize),
    UnknownConcept(Iri),
    DanglingRelation(Relation),
    MissingRelation(Relation),
    StateOutsideRepresentation(Iri),
    OrphanInstance(Iri),
    InvalidRange(Iri),
    EmptyTransformationName(Iri),
    NonFiniteEvaluation,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => f.write_str("representation is empty"),
            Violation::MissingPredicts => f.write_str("model predicts nothing"),
            Violation::MultiplePredicts(n) => write!(f, "model predicts {n} outputs"),
            Violation::UnknownConcept(c) => write!(f, "unknown concept {c}"),
            Violation::DanglingRelation(r) => write!(f, "dangling {:?} relation {} -> {}", r.kind, r.subject, r.object),
            Violation::MissingRelation(r) => write!(f, "missing {:?} relation {} -> {}", r.kind, r.subject, r.object),
            Violation::StateOutsideRepresentation(s) => write!(f, "state {s} is not attached to an instance"),
            Violation::OrphanInstance(i) => write!(f, "instance {i} is neither a condition nor an output"),
            Violation::InvalidRange(t) => write!(f, "transformation {t} has an invalid range"),
            Violation::EmptyTransformationName(t) => write!(f, "transformation {t} has an empty name"),
            Violation::NonFiniteEvaluation => f.write_str("evaluation value is not finite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid representation: {} violation(s)", .0.len())]
    InvalidRepresentation(Vec<Violation>),
}

/// `xsd:decimal` lexical form of a finite float.
pub fn decimal_literal(value: f64) -> Literal {
    let mut text = value.to_string();
    if !text.contains('.') {
        text.push_str(".0");
    }
    Literal::typed(text, vocab::iri(xsd::DECIMAL))
}

impl KnowledgeRepresentation {
    pub fn new(model: Iri, task: Task) -> Self {
        KnowledgeRepresentation {
            model,
            task,
            provenance: None,
            concepts: Vec::new(),
            instances: Vec::new(),
            transformations: Vec::new(),
            states: Vec::new(),
            relations: Vec::new(),
            evaluation: None,
        }
    }

    pub fn evaluation_iri(&self) -> Iri {
        vocab::iri(&format!("{}_eval", self.model.as_str()))
    }

    fn has(&self, subject: &Iri, kind: RelationKind, object: &Iri) -> bool {
        self.relations
            .iter()
            .any(|r| r.kind == kind && &r.subject == subject && &r.object == object)
    }

    fn is_class(&self, iri: &Iri, ontology: &OntologyIndex) -> bool {
        ontology.is_class(iri) || self.concepts.iter().any(|c| &c.iri == iri)
    }

    /// Every structural rule the representation breaks; empty means valid.
    pub fn validate(&self, ontology: &OntologyIndex) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.instances.is_empty() && self.transformations.is_empty() && self.states.is_empty() && self.relations.is_empty() {
            out.push(Violation::Empty);
            return out;
        }

        let instances: BTreeSet<&Iri> = self.instances.iter().map(|i| &i.iri).collect();
        let transformations: BTreeSet<&Iri> = self.transformations.iter().map(|t| &t.iri).collect();
        let states: BTreeSet<&Iri> = self.states.iter().map(|s| &s.iri).collect();

        let task_class = self.task.class();
        if !self.has(&self.model, RelationKind::IsA, &task_class) {
            out.push(Violation::MissingRelation(Relation::new(self.model.clone(), RelationKind::IsA, task_class)));
        }

        let predicts = self.relations.iter().filter(|r| r.kind == RelationKind::Predicts).count();
        if self.task.requires_output() {
            match predicts {
                0 => out.push(Violation::MissingPredicts),
                1 => {}
                n => out.push(Violation::MultiplePredicts(n)),
            }
        }

        let mut unknown = BTreeSet::new();
        for r in &self.relations {
            let model = r.subject == self.model;
            let endpoints_ok = match r.kind {
                RelationKind::IsA => {
                    if !self.is_class(&r.object, ontology) {
                        unknown.insert(r.object.clone());
                    }
                    model
                        || instances.contains(&r.subject)
                        || transformations.contains(&r.subject)
                        || states.contains(&r.subject)
                }
                RelationKind::HasTransformation => {
                    (model || instances.contains(&r.subject)) && transformations.contains(&r.object)
                }
                RelationKind::HasCondition | RelationKind::Predicts => model && instances.contains(&r.object),
                RelationKind::HasState => instances.contains(&r.subject) && states.contains(&r.object),
                RelationKind::TransformationOf => {
                    if !self.is_class(&r.object, ontology) {
                        unknown.insert(r.object.clone());
                    }
                    transformations.contains(&r.subject)
                }
            };
            if !endpoints_ok {
                out.push(Violation::DanglingRelation(r.clone()));
            }
        }

        for i in &self.instances {
            if !self.is_class(&i.concept, ontology) {
                unknown.insert(i.concept.clone());
            }
            if !self.has(&i.iri, RelationKind::IsA, &i.concept) {
                out.push(Violation::MissingRelation(Relation::new(i.iri.clone(), RelationKind::IsA, i.concept.clone())));
            }
            let attached = self.relations.iter().any(|r| {
                matches!(r.kind, RelationKind::HasCondition | RelationKind::Predicts) && r.object == i.iri
            });
            if !attached {
                out.push(Violation::OrphanInstance(i.iri.clone()));
            }
            if let Some(t) = &i.transformation {
                if !self.has(&i.iri, RelationKind::HasTransformation, t) {
                    out.push(Violation::MissingRelation(Relation::new(
                        i.iri.clone(),
                        RelationKind::HasTransformation,
                        t.clone(),
                    )));
                }
            }
        }
        for t in &self.transformations {
            if t.name.trim().is_empty() {
                out.push(Violation::EmptyTransformationName(t.iri.clone()));
            }
            if [&t.source_range, &t.target_range].into_iter().flatten().any(|r| !r.is_valid()) {
                out.push(Violation::InvalidRange(t.iri.clone()));
            }
            if !self.is_class(&t.concept, ontology) {
                unknown.insert(t.concept.clone());
            }
            let link = match t.kind {
                TransformationKind::Function => RelationKind::TransformationOf,
                TransformationKind::Algorithm => RelationKind::HasTransformation,
            };
            let present = match link {
                RelationKind::TransformationOf => self.has(&t.iri, link, &t.concept),
                _ => self.has(&self.model, link, &t.iri),
            };
            if !present {
                let missing = match link {
                    RelationKind::TransformationOf => Relation::new(t.iri.clone(), link, t.concept.clone()),
                    _ => Relation::new(self.model.clone(), link, t.iri.clone()),
                };
                out.push(Violation::MissingRelation(missing));
            }
        }
        for s in &self.states {
            if !instances.contains(&s.instance) {
                out.push(Violation::StateOutsideRepresentation(s.iri.clone()));
            } else if !self.has(&s.instance, RelationKind::HasState, &s.iri) {
                out.push(Violation::MissingRelation(Relation::new(
                    s.instance.clone(),
                    RelationKind::HasState,
                    s.iri.clone(),
                )));
            }
        }
        if self.evaluation.as_ref().is_some_and(|e| !e.value.is_finite()) {
            out.push(Violation::NonFiniteEvaluation);
        }
        out.extend(unknown.into_iter().map(Violation::UnknownConcept));
        out
    }

    /// Materializes the representation; fails if [`validate`](Self::validate)
    /// reports anything.
    pub fn to_triples(&self, ontology: &OntologyIndex) -> Result<Graph, ModelError> {
        let violations = self.validate(ontology);
        if !violations.is_empty() {
            return Err(ModelError::InvalidRepresentation(violations));
        }
        let mut g = Graph::with_prefixes(Prefixes::standard());
        let mut add = |s: &Iri, p: Iri, o: Term| {
            g.insert(Triple::new(s.clone(), p, o).expect("IRI subject"));
        };
        let label = || vocab::iri(rdfs::LABEL);

        for c in &self.concepts {
            add(&c.iri, vocab::iri(rdf::TYPE), vocab::iri(owl::CLASS).into());
            if let Some(parent) = &c.parent {
                add(&c.iri, vocab::iri(rdfs::SUB_CLASS_OF), parent.clone().into());
            }
            add(&c.iri, label(), Literal::string(c.label.clone()).into());
        }
        for r in &self.relations {
            add(&r.subject, r.kind.predicate(), r.object.clone().into());
        }
        if let Some(p) = &self.provenance {
            add(&self.model, label(), Literal::string(p.clone()).into());
        }
        for t in &self.transformations {
            add(&t.iri, label(), Literal::string(t.name.clone()).into());
        }
        for s in &self.states {
            if let Some(l) = &s.label {
                add(&s.iri, label(), Literal::string(l.clone()).into());
            }
        }
        if let Some(e) = &self.evaluation {
            let node = self.evaluation_iri();
            add(&self.model, vocab::agriont("hasEvaluation"), node.clone().into());
            add(&node, vocab::agriont("metricName"), Literal::string(e.metric.clone()).into());
            add(&node, vocab::agriont("metricValue"), decimal_literal(e.value).into());
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::CORE_ONTOLOGY;
    use crate::ontology::load_ontology;
    use crate::rdf::parse_turtle;
    use alloc::vec;

    fn core() -> OntologyIndex {
        load_ontology(parse_turtle(CORE_ONTOLOGY, None).unwrap()).unwrap()
    }

    fn km(local: &str) -> Iri {
        vocab::agrikmap(local)
    }

    fn ont(local: &str) -> Iri {
        vocab::agriont(local)
    }

    /// A regression on soil pH with one transformed input.
    fn regression() -> KnowledgeRepresentation {
        let mut kr = KnowledgeRepresentation::new(km("R"), Task::Regression);
        let (out, input, t) = (km("Soil_000"), km("Soil_001"), km("SoilPH_min"));
        kr.instances = vec![
            Instance { iri: out.clone(), concept: ont("SoilPH"), transformation: None },
            Instance { iri: input.clone(), concept: ont("SoilPH"), transformation: Some(t.clone()) },
        ];
        kr.transformations = vec![Transformation {
            iri: t.clone(),
            name: "min".into(),
            concept: ont("SoilPH"),
            kind: TransformationKind::Function,
            source_range: Some(Range::Numeric { lower: 3.0, upper: 10.0 }),
            target_range: None,
        }];
        kr.relations = vec![
            Relation::new(km("R"), RelationKind::IsA, ont("Regression")),
            Relation::new(km("R"), RelationKind::Predicts, out.clone()),
            Relation::new(km("R"), RelationKind::HasCondition, input.clone()),
            Relation::new(out, RelationKind::IsA, ont("SoilPH")),
            Relation::new(input.clone(), RelationKind::IsA, ont("SoilPH")),
            Relation::new(input, RelationKind::HasTransformation, t.clone()),
            Relation::new(t, RelationKind::TransformationOf, ont("SoilPH")),
        ];
        kr
    }

    #[test]
    fn task_names_round_trip() {
        for t in Task::ALL {
            assert_eq!(t.name().parse::<Task>(), Ok(t));
            assert_eq!(Task::from_class(&t.class()), Some(t));
        }
        assert!("kmeans".parse::<Task>().is_err());
    }

    #[test]
    fn valid_regression_materializes() {
        let kr = regression();
        assert_eq!(kr.validate(&core()), vec![]);
        let g = kr.to_triples(&core()).unwrap();
        // seven relations plus the transformation label
        assert_eq!(g.len(), 8);
    }

    #[test]
    fn empty_representation_is_invalid() {
        let kr = KnowledgeRepresentation::new(km("E"), Task::Clustering);
        assert_eq!(kr.to_triples(&core()), Err(ModelError::InvalidRepresentation(vec![Violation::Empty])));
    }

    #[test]
    fn minimal_clustering_is_valid() {
        let mut kr = KnowledgeRepresentation::new(km("C"), Task::Clustering);
        kr.instances.push(Instance { iri: km("Crop_000"), concept: ont("Wheat"), transformation: None });
        kr.relations = vec![
            Relation::new(km("C"), RelationKind::IsA, ont("Clustering")),
            Relation::new(km("C"), RelationKind::HasCondition, km("Crop_000")),
            Relation::new(km("Crop_000"), RelationKind::IsA, ont("Wheat")),
        ];
        assert_eq!(kr.to_triples(&core()).unwrap().len(), 3);
    }

    #[test]
    fn regression_needs_exactly_one_output() {
        let mut kr = regression();
        kr.relations.retain(|r| r.kind != RelationKind::Predicts);
        assert!(kr.validate(&core()).contains(&Violation::MissingPredicts));

        let mut kr = regression();
        kr.relations.push(Relation::new(km("R"), RelationKind::Predicts, km("Soil_001")));
        assert!(kr.validate(&core()).contains(&Violation::MultiplePredicts(2)));
    }

    #[test]
    fn deleting_any_referenced_element_is_detected() {
        let ont = core();
        let base = regression();
        for i in 0..base.instances.len() {
            let mut kr = base.clone();
            kr.instances.remove(i);
            assert!(!kr.validate(&ont).is_empty(), "instance {i}");
        }
        let mut kr = base.clone();
        kr.transformations.clear();
        assert!(!kr.validate(&ont).is_empty());
        for i in 0..base.relations.len() {
            let mut kr = base.clone();
            kr.relations.remove(i);
            assert!(!kr.validate(&ont).is_empty(), "relation {i}");
        }
    }

    #[test]
    fn unknown_concepts_and_bad_ranges() {
        let mut kr = regression();
        kr.instances[0].concept = ont("Unobtainium");
        kr.relations[3].object = ont("Unobtainium");
        assert!(kr.validate(&core()).contains(&Violation::UnknownConcept(ont("Unobtainium"))));

        let mut kr = regression();
        kr.transformations[0].source_range = Some(Range::Numeric { lower: 5.0, upper: 1.0 });
        assert_eq!(kr.validate(&core()), vec![Violation::InvalidRange(km("SoilPH_min"))]);
        kr.transformations[0].source_range = Some(Range::Categorical(vec![]));
        assert_eq!(kr.validate(&core()), vec![Violation::InvalidRange(km("SoilPH_min"))]);
    }

    #[test]
    fn minted_concepts_count_as_known() {
        let mut kr = regression();
        let new = ont("Mystery");
        kr.concepts.push(Concept { iri: new.clone(), label: "Mystery".into(), parent: Some(ont("UnclassifiedConcept")) });
        kr.instances[0].concept = new.clone();
        kr.relations[3].object = new;
        assert_eq!(kr.validate(&core()), vec![]);
        assert_eq!(kr.to_triples(&core()).unwrap().len(), 11);
    }

    #[test]
    fn states_must_hang_off_instances() {
        let mut kr = regression();
        kr.states.push(State { iri: ont("SheathRot"), instance: km("Elsewhere"), label: None });
        assert!(kr.validate(&core()).contains(&Violation::StateOutsideRepresentation(ont("SheathRot"))));
    }

    #[test]
    fn evaluation_triples() {
        let mut kr = regression();
        kr.evaluation = Some(Evaluation { metric: "rmse".into(), value: 2.0 });
        let g = kr.to_triples(&core()).unwrap();
        let value = Triple::new(km("R_eval"), ont("metricValue"), decimal_literal(2.0)).unwrap();
        assert!(g.contains(&value));
        assert_eq!(decimal_literal(2.0).lexical(), "2.0");
        assert_eq!(decimal_literal(0.25).lexical(), "0.25");
        kr.evaluation = Some(Evaluation { metric: "rmse".into(), value: f64::NAN });
        assert_eq!(kr.validate(&core()), vec![Violation::NonFiniteEvaluation]);
    }
}

//! Ontology loading: entity sets, the `rdfs:subClassOf` closure, a
//! case-insensitive name index and declaration metrics.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::rdf::vocab::{owl, rdf, rdfs};
use crate::rdf::{Graph, Iri, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OntologyError {
    #[error("rdfs:subClassOf cycle through {0}")]
    CyclicHierarchy(Iri),
    #[error("unknown concept '{0}'")]
    UnknownConcept(String),
    #[error("ambiguous concept '{name}' ({} candidates)", candidates.len())]
    AmbiguousConcept { name: String, candidates: Vec<Iri> },
}

#[derive(Debug, Clone, Default)]
pub struct OntologyIndex {
    graph: Graph,
    classes: BTreeSet<Iri>,
    object_properties: BTreeSet<Iri>,
    data_properties: BTreeSet<Iri>,
    individuals: BTreeSet<Iri>,
    ancestors: BTreeMap<Iri, BTreeSet<Iri>>,
    by_local_name: BTreeMap<String, BTreeSet<Iri>>,
    by_label: BTreeMap<String, BTreeSet<Iri>>,
}

/// Declaration-level metrics, named after the usual OWL tooling counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OntologyMetrics {
    pub axiom_count: usize,
    pub logical_axiom_count: usize,
    pub declaration_axiom_count: usize,
    pub class_count: usize,
    pub object_property_count: usize,
    pub data_property_count: usize,
    pub individual_count: usize,
}

fn is_declaration_type(iri: &str) -> bool {
    matches!(iri, owl::CLASS | owl::OBJECT_PROPERTY | owl::DATATYPE_PROPERTY | owl::NAMED_INDIVIDUAL)
}

/// Builds the index. Entity kinds are made disjoint with precedence
/// class > object property > data property > individual.
pub fn load_ontology(graph: Graph) -> Result<OntologyIndex, OntologyError> {
    let mut typed: BTreeMap<&str, BTreeSet<Iri>> = BTreeMap::new();
    let mut parents: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    let mut labels: Vec<(Iri, String)> = Vec::new();

    for t in &graph {
        let Term::Iri(subject) = t.subject() else { continue };
        match (t.predicate().as_str(), t.object()) {
            (rdf::TYPE, Term::Iri(class)) => {
                typed.entry(class.as_str()).or_default().insert(subject.clone());
            }
            (rdfs::SUB_CLASS_OF, Term::Iri(parent)) => {
                parents.entry(subject.clone()).or_default().insert(parent.clone());
            }
            (rdfs::LABEL, Term::Literal(l)) => labels.push((subject.clone(), l.lexical().to_lowercase())),
            _ => {}
        }
    }

    let take = |kind: &str| typed.get(kind).cloned().unwrap_or_default();
    let classes = take(owl::CLASS);
    let object_properties: BTreeSet<Iri> = take(owl::OBJECT_PROPERTY).difference(&classes).cloned().collect();
    let data_properties: BTreeSet<Iri> = take(owl::DATATYPE_PROPERTY)
        .into_iter()
        .filter(|i| !classes.contains(i) && !object_properties.contains(i))
        .collect();
    let mut individuals = take(owl::NAMED_INDIVIDUAL);
    for class in &classes {
        if let Some(members) = typed.get(class.as_str()) {
            individuals.extend(members.iter().cloned());
        }
    }
    individuals.retain(|i| !classes.contains(i) && !object_properties.contains(i) && !data_properties.contains(i));

    let ancestors = subclass_closure(&parents)?;

    let known = |i: &Iri| {
        classes.contains(i) || object_properties.contains(i) || data_properties.contains(i) || individuals.contains(i)
    };
    let mut by_local_name: BTreeMap<String, BTreeSet<Iri>> = BTreeMap::new();
    for iri in classes.iter().chain(&object_properties).chain(&data_properties).chain(&individuals) {
        by_local_name.entry(iri.local_name().to_lowercase()).or_default().insert(iri.clone());
    }
    let mut by_label: BTreeMap<String, BTreeSet<Iri>> = BTreeMap::new();
    for (iri, label) in labels.into_iter().filter(|(i, _)| known(i)) {
        by_label.entry(label).or_default().insert(iri);
    }

    Ok(OntologyIndex {
        graph,
        classes,
        object_properties,
        data_properties,
        individuals,
        ancestors,
        by_local_name,
        by_label,
    })
}

/// Ancestor sets by depth-first search; any cycle (self-loops included) is an error.
fn subclass_closure(parents: &BTreeMap<Iri, BTreeSet<Iri>>) -> Result<BTreeMap<Iri, BTreeSet<Iri>>, OntologyError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }

    fn visit(
        node: &Iri,
        parents: &BTreeMap<Iri, BTreeSet<Iri>>,
        marks: &mut BTreeMap<Iri, Mark>,
        closure: &mut BTreeMap<Iri, BTreeSet<Iri>>,
    ) -> Result<(), OntologyError> {
        match marks.get(node) {
            Some(Mark::Done) => return Ok(()),
            Some(Mark::Active) => return Err(OntologyError::CyclicHierarchy(node.clone())),
            None => {}
        }
        marks.insert(node.clone(), Mark::Active);
        let mut all = BTreeSet::new();
        for parent in parents.get(node).into_iter().flatten() {
            visit(parent, parents, marks, closure)?;
            all.insert(parent.clone());
            if let Some(up) = closure.get(parent) {
                all.extend(up.iter().cloned());
            }
        }
        marks.insert(node.clone(), Mark::Done);
        if !all.is_empty() {
            closure.insert(node.clone(), all);
        }
        Ok(())
    }

    let mut marks = BTreeMap::new();
    let mut closure = BTreeMap::new();
    for node in parents.keys() {
        visit(node, parents, &mut marks, &mut closure)?;
    }
    Ok(closure)
}

impl OntologyIndex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn classes(&self) -> &BTreeSet<Iri> {
        &self.classes
    }

    pub fn object_properties(&self) -> &BTreeSet<Iri> {
        &self.object_properties
    }

    pub fn data_properties(&self) -> &BTreeSet<Iri> {
        &self.data_properties
    }

    pub fn individuals(&self) -> &BTreeSet<Iri> {
        &self.individuals
    }

    pub fn is_class(&self, iri: &Iri) -> bool {
        self.classes.contains(iri)
    }

    /// Strict ancestors of `class` under `rdfs:subClassOf`.
    pub fn ancestors(&self, class: &Iri) -> Option<&BTreeSet<Iri>> {
        self.ancestors.get(class)
    }

    /// Case-insensitive class lookup by local name, then by `rdfs:label`.
    pub fn resolve_concept(&self, name: &str) -> Result<Iri, OntologyError> {
        let key = name.trim().to_lowercase();
        for index in [&self.by_local_name, &self.by_label] {
            let candidates: Vec<Iri> = index
                .get(&key)
                .into_iter()
                .flatten()
                .filter(|i| self.classes.contains(*i))
                .cloned()
                .collect();
            match candidates.len() {
                0 => continue,
                1 => return Ok(candidates.into_iter().next().expect("one candidate")),
                _ => {
                    return Err(OntologyError::AmbiguousConcept {
                        name: name.into(),
                        candidates,
                    });
                }
            }
        }
        Err(OntologyError::UnknownConcept(name.into()))
    }

    /// All descendants of `class`, excluding itself.
    pub fn subconcepts_of(&self, class: &Iri) -> Result<BTreeSet<Iri>, OntologyError> {
        if !self.classes.contains(class) {
            return Err(OntologyError::UnknownConcept(class.as_str().into()));
        }
        Ok(self
            .ancestors
            .iter()
            .filter(|(_, up)| up.contains(class))
            .map(|(c, _)| c.clone())
            .collect())
    }

    pub fn compute_metrics(&self) -> OntologyMetrics {
        let logical = self
            .graph
            .iter()
            .filter(|t| match t.predicate().as_str() {
                rdf::TYPE => !t.object().as_iri().is_some_and(|o| is_declaration_type(o.as_str())),
                rdfs::LABEL | rdfs::COMMENT => false,
                _ => true,
            })
            .count();
        OntologyMetrics {
            axiom_count: self.graph.len(),
            logical_axiom_count: logical,
            declaration_axiom_count: self.classes.len()
                + self.object_properties.len()
                + self.data_properties.len()
                + self.individuals.len(),
            class_count: self.classes.len(),
            object_property_count: self.object_properties.len(),
            data_property_count: self.data_properties.len(),
            individual_count: self.individuals.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::CORE_ONTOLOGY;
    use crate::rdf::{parse_turtle, vocab};

    fn core() -> OntologyIndex {
        load_ontology(parse_turtle(CORE_ONTOLOGY, None).unwrap()).unwrap()
    }

    fn agri(local: &str) -> Iri {
        vocab::agriont(local)
    }

    #[test]
    fn empty_graph_gives_empty_index() {
        let idx = load_ontology(Graph::new()).unwrap();
        assert!(idx.classes().is_empty());
        assert_eq!(idx.compute_metrics(), OntologyMetrics::default());
    }

    #[test]
    fn core_ontology_has_required_classes() {
        let idx = core();
        for c in [
            "Field", "Farmer", "Crop", "Organization", "Location", "Product", "Clustering", "Classification",
            "Regression", "AssociationRule",
        ] {
            assert!(idx.is_class(&agri(c)), "{c}");
        }
    }

    #[test]
    fn cycles_are_rejected() {
        let g = parse_turtle(
            "@prefix x: <http://x#> . @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
             x:A rdfs:subClassOf x:B . x:B rdfs:subClassOf x:A .",
            None,
        )
        .unwrap();
        assert!(matches!(load_ontology(g), Err(OntologyError::CyclicHierarchy(_))));
    }

    #[test]
    fn resolve_by_local_name_label_and_case() {
        let idx = core();
        assert_eq!(idx.resolve_concept("SoilPH").unwrap(), agri("SoilPH"));
        assert_eq!(idx.resolve_concept("soilph").unwrap(), agri("SoilPH"));
        assert_eq!(idx.resolve_concept("Soil pH").unwrap(), agri("SoilPH"));
        assert_eq!(idx.resolve_concept("Unobtainium"), Err(OntologyError::UnknownConcept("Unobtainium".into())));
        // individuals are not concepts
        assert!(idx.resolve_concept("SheathRot").is_err());
    }

    #[test]
    fn ambiguous_names() {
        let g = parse_turtle(
            "@prefix a: <http://a#> . @prefix b: <http://b#> . @prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
             a:Crop a owl:Class . b:Crop a owl:Class .",
            None,
        )
        .unwrap();
        let idx = load_ontology(g).unwrap();
        assert!(matches!(idx.resolve_concept("crop"), Err(OntologyError::AmbiguousConcept { candidates, .. }) if candidates.len() == 2));
    }

    #[test]
    fn data_mining_tasks_are_subconcepts() {
        let idx = core();
        let subs = idx.subconcepts_of(&agri("DataMiningTask")).unwrap();
        let expected: BTreeSet<Iri> = ["Clustering", "Classification", "Regression", "AssociationRule"]
            .into_iter()
            .map(agri)
            .collect();
        assert_eq!(subs, expected);
        assert!(idx.subconcepts_of(&agri("Wheat")).unwrap().is_empty());
        assert!(matches!(idx.subconcepts_of(&agri("Nope")), Err(OntologyError::UnknownConcept(_))));
    }

    #[test]
    fn closure_matches_repeated_one_step_expansion() {
        let idx = core();
        for class in idx.classes() {
            // naive: expand children one step at a time until nothing changes
            let mut found: BTreeSet<Iri> = BTreeSet::new();
            let mut frontier: BTreeSet<Iri> = [class.clone()].into();
            while !frontier.is_empty() {
                let mut next = BTreeSet::new();
                for t in idx.graph() {
                    if t.predicate().as_str() == rdfs::SUB_CLASS_OF {
                        if let (Term::Iri(child), Some(parent)) = (t.subject(), t.object().as_iri()) {
                            if frontier.contains(parent) && found.insert(child.clone()) {
                                next.insert(child.clone());
                            }
                        }
                    }
                }
                frontier = next;
            }
            assert_eq!(idx.subconcepts_of(class).unwrap(), found, "{class}");
        }
    }

    #[test]
    fn every_class_resolves_to_itself() {
        let idx = core();
        for class in idx.classes() {
            assert_eq!(&idx.resolve_concept(class.local_name()).unwrap(), class);
        }
    }

    #[test]
    fn metric_invariants() {
        let m = core().compute_metrics();
        assert_eq!(
            m.declaration_axiom_count,
            m.class_count + m.object_property_count + m.data_property_count + m.individual_count
        );
        assert!(m.logical_axiom_count < m.axiom_count);
    }

    #[test]
    fn metrics_of_disjoint_union() {
        let g1 = parse_turtle(
            "@prefix x: <http://x#> . @prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
             x:A a owl:Class . x:p a owl:ObjectProperty . x:i a x:A .",
            None,
        )
        .unwrap();
        let g2 = parse_turtle(
            "@prefix x: <http://x#> . @prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
             x:B a owl:Class . x:d a owl:DatatypeProperty . x:j a owl:NamedIndividual .",
            None,
        )
        .unwrap();
        let m1 = load_ontology(g1.clone()).unwrap().compute_metrics();
        let m2 = load_ontology(g2.clone()).unwrap().compute_metrics();
        let mut union = g1;
        union.merge(&g2);
        let m = load_ontology(union).unwrap().compute_metrics();
        assert_eq!(m.axiom_count, m1.axiom_count + m2.axiom_count);
        assert_eq!(m.declaration_axiom_count, m1.declaration_axiom_count + m2.declaration_axiom_count);
        assert_eq!(m.logical_axiom_count, m1.logical_axiom_count + m2.logical_axiom_count);
    }
}

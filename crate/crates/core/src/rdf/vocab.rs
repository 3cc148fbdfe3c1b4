//! Namespace and term constants used throughout the crate.

use alloc::format;

use super::term::Iri;

pub mod rdf {
    pub const NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
}

pub mod rdfs {
    pub const NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
    pub const COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
    pub const SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
}

pub mod owl {
    pub const NS: &str = "http://www.w3.org/2002/07/owl#";
    pub const CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const NAMED_INDIVIDUAL: &str = "http://www.w3.org/2002/07/owl#NamedIndividual";
}

pub mod xsd {
    pub const NS: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
}

/// Domain ontology namespace.
pub const AGRIONT: &str = "http://www.ucd.ie/consus/AgriOnt#";
/// Namespace for minted knowledge-map individuals.
pub const AGRIKMAP: &str = "http://www.ucd.ie/consus/AgriKMap#";

/// Builds an IRI from a known-good constant.
pub fn iri(value: &str) -> Iri {
    Iri::new(value).expect("vocabulary constant is a valid IRI")
}

pub fn agriont(local: &str) -> Iri {
    iri(&format!("{AGRIONT}{local}"))
}

pub fn agrikmap(local: &str) -> Iri {
    iri(&format!("{AGRIKMAP}{local}"))
}

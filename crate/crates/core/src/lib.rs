//! Ontology-backed knowledge maps.
//!
//! Mined models are described by [`wrapper::ModelDescriptor`]s, turned into
//! [`model::KnowledgeRepresentation`]s grounded in an [`ontology::OntologyIndex`],
//! and materialized as RDF triples in a [`store::Store`] that answers
//! [`sparql`] basic graph pattern queries.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod fixtures;
pub mod model;
pub mod ontology;
pub mod rdf;
pub mod sparql;
pub mod store;
pub mod wrapper;

//! SPARQL subset: `PREFIX`, `SELECT` (variables or `*`), a `WHERE` block of
//! dot-separated triple patterns, and `LIMIT`. Anything else is rejected with
//! [`SparqlError::UnsupportedFeature`].

mod eval;
mod parser;

use alloc::string::String;
use alloc::vec::Vec;

pub use eval::{evaluate, evaluate_with_order, plan, BindingSet};
pub use parser::parse_query;

use crate::rdf::Prefixes;
use crate::store::{TriplePattern, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SparqlError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown prefix '{0}'")]
    UnknownPrefix(String),
    #[error("unsupported feature: {0}")]
    UnsupportedFeature(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    All,
    Vars(Vec<Variable>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub prefixes: Prefixes,
    pub projection: Projection,
    pub patterns: Vec<TriplePattern>,
    pub limit: Option<usize>,
}

impl Query {
    /// Variables in order of first occurrence in the patterns.
    pub fn pattern_variables(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = Vec::new();
        for p in &self.patterns {
            for v in p.positions().iter().filter_map(|t| t.var()) {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        vars
    }

    /// The projected variables, expanding `*`.
    pub fn projected(&self) -> Vec<Variable> {
        match &self.projection {
            Projection::All => self.pattern_variables(),
            Projection::Vars(v) => v.clone(),
        }
    }
}

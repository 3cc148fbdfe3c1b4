//! RDF data model and the Turtle subset.

mod graph;
pub(crate) mod lexer;
mod term;
mod turtle;
pub mod vocab;

use alloc::string::String;

pub use graph::{Graph, Prefixes};
pub use term::{BlankNode, Iri, Literal, Term, TermError, Triple};
pub(crate) use term::is_identifier;
pub use turtle::{parse_turtle, parse_turtle_bytes, serialize_turtle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RdfError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown prefix '{0}'")]
    UnknownPrefix(String),
    #[error("'{0}' is not a prefixed name")]
    InvalidPrefixedName(String),
}

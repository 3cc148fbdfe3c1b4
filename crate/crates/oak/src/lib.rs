//! Std side of the knowledge map: descriptor and results JSON, the shared
//! store, the HTTP endpoint and the `oak` command line.

pub mod cli;
pub mod descriptor;
pub mod json;
pub mod kmap;
pub mod server;

pub use kmap::{KnowledgeMap, OakError};

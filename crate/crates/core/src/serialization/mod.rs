//! Functional-Style Syntax reading and writing, the OWL-to-RDF triple
//! mapping and the Turtle writer built on it.

pub mod functional;
mod lexer;
mod parser;
pub mod rdf;
mod turtle;

use std::fmt;

use thiserror::Error;

pub use functional::serialize_functional;
pub use lexer::Pos;
pub use parser::parse_functional;
pub use rdf::{
    map_axiom_to_triples, ontology_to_triples, Term, Triple, TripleMapper, UnmappableAxiom,
};
pub use turtle::{serialize_turtle, TurtleOptions};

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// Failure to read a functional-syntax document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: {message}")]
    Lex { pos: Pos, message: String },
    #[error("{pos}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        pos: Pos,
        found: String,
        expected: Vec<String>,
    },
    #[error("{pos}: unknown prefix `{prefix}:`")]
    UnknownPrefix { pos: Pos, prefix: String },
    #[error("{pos}: unsupported construct `{construct}`")]
    Unsupported { pos: Pos, construct: String },
    #[error("{pos}: {message}")]
    Invalid { pos: Pos, message: String },
}

impl ParseError {
    pub(crate) fn lex(pos: Pos, message: &str) -> Self {
        ParseError::Lex {
            pos,
            message: message.to_string(),
        }
    }

    pub(crate) fn syntax(pos: Pos, found: String, expected: Vec<String>) -> Self {
        ParseError::Syntax {
            pos,
            found,
            expected,
        }
    }

    pub(crate) fn unknown_prefix(pos: Pos, prefix: &str) -> Self {
        ParseError::UnknownPrefix {
            pos,
            prefix: prefix.to_string(),
        }
    }

    pub(crate) fn unsupported(pos: Pos, construct: &str) -> Self {
        ParseError::Unsupported {
            pos,
            construct: construct.to_string(),
        }
    }

    pub(crate) fn invalid(pos: Pos, message: String) -> Self {
        ParseError::Invalid { pos, message }
    }

    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Lex { pos, .. }
            | ParseError::Syntax { pos, .. }
            | ParseError::UnknownPrefix { pos, .. }
            | ParseError::Unsupported { pos, .. }
            | ParseError::Invalid { pos, .. } => *pos,
        }
    }
}

//! Class expression to SPARQL translation, and a small evaluator for the
//! generated subset used to check the translation.

mod eval;
mod query;
mod translate;

use thiserror::Error;

pub use eval::eval_query;
pub use query::{CompareOp, FilterExpr, Pattern, SparqlQuery, TermPattern};
pub use translate::to_sparql;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparqlError {
    #[error("class expression cannot be translated: {0}")]
    InvalidExpression(String),
    #[error("invalid projection variable `{0}`")]
    InvalidVariable(String),
    #[error("unsupported construct in query: {0}")]
    UnsupportedConstruct(String),
}

//! OWL 2 ontology toolkit.
//!
//! * [`model`]: entities, class expressions, axioms and SWRL rules.
//! * [`ontology`]: the axiom store with load/save.
//! * [`serialization`]: Functional-Style Syntax, RDF triples and Turtle.
//! * [`syntax`]: DL and Manchester notation for class expressions, SWRL rule strings.
//! * [`sparql`]: class expression to SPARQL translation.
//! * [`reasoner`]: closed-world instance retrieval and told hierarchies.
//! * [`ebr`]: embedding-based approximate retrieval.
//!
//! ```
//! use owlkit::model::{Axiom, Class, NamedIndividual};
//! use owlkit::ontology::Ontology;
//! use owlkit::reasoner::{ReasonerConfig, Snapshot};
//!
//! let male = Class::parse("http://example.com/father#male").unwrap();
//! let alkid = NamedIndividual::parse("http://example.com/father#alkid").unwrap();
//! let mut onto = Ontology::new();
//! onto.add_axiom(Axiom::class_assertion(alkid.clone(), male.clone()));
//! let snapshot = Snapshot::build(&onto, ReasonerConfig::default());
//! assert!(snapshot.instances(&male.into()).contains(&alkid));
//! ```

pub mod ebr;
pub mod model;
pub mod ontology;
pub mod reasoner;
pub mod serialization;
pub mod sparql;
pub mod syntax;

use thiserror::Error;

pub use model::{Axiom, Class, ClassExpression, Iri, NamedIndividual};
pub use ontology::{Format, Ontology};

/// Any error raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Iri(#[from] model::IriError),
    #[error(transparent)]
    Ontology(#[from] ontology::OntologyError),
    #[error(transparent)]
    Parse(#[from] serialization::ParseError),
    #[error(transparent)]
    Unmappable(#[from] serialization::UnmappableAxiom),
    #[error(transparent)]
    Syntax(#[from] syntax::SyntaxError),
    #[error(transparent)]
    Sparql(#[from] sparql::SparqlError),
    #[error(transparent)]
    Reasoner(#[from] reasoner::ReasonerError),
    #[error(transparent)]
    Ebr(#[from] ebr::EbrError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

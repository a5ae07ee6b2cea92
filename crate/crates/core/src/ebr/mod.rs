//! Embedding-based approximate reasoning.
//!
//! A bilinear-diagonal link predictor is trained on the ontology's named
//! class assertions and object property assertions; class membership is the
//! reserved `rdf:type` relation with classes embedded alongside
//! individuals. Retrieval evaluates class expressions with Gödel fuzzy
//! semantics over the model's probabilities.
//!
//! Everything numeric is generic over `F: num_traits::Float`; the `*64`
//! aliases are the usual choice.

mod fuzzy;
mod model;
mod train;

use thiserror::Error;

use crate::model::{vocab, Axiom, Iri};
use crate::ontology::Ontology;

pub use fuzzy::{
    membership, retrieval_metrics, retrieve, CrispScorer, MembershipMap, RetrievalMetrics, Scorer,
};
pub use model::{EmbeddingModel, EmbeddingModel32, EmbeddingModel64};
pub use train::{
    gradient_check, train, Trained, TrainingConfig, TrainingConfig32, TrainingConfig64,
};

#[derive(Debug, Error)]
pub enum EbrError {
    #[error("no triples to train on")]
    EmptyTripleSet,
    #[error("symbol not seen during training: {0}")]
    UnknownSymbol(Iri),
    #[error("invalid training configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed model file, line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A training triple. Class membership uses `rdf:type` as the relation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EbrTriple {
    pub head: Iri,
    pub relation: Iri,
    pub tail: Iri,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extraction {
    pub triples: Vec<EbrTriple>,
    /// Class assertions with complex class expressions, which have no
    /// embedding.
    pub skipped: usize,
}

pub fn type_relation() -> Iri {
    Iri::new(vocab::RDF_TYPE).expect("rdf:type")
}

/// Collects training triples in axiom order: named class assertions become
/// `(x, rdf:type, C)`, object property assertions `(s, p, o)` with inverse
/// assertions flipped.
pub fn extract_triples(onto: &Ontology) -> Extraction {
    let mut out = Extraction::default();
    for ax in onto.axioms() {
        match ax {
            Axiom::ClassAssertion { individual, class } => match class.as_class() {
                Some(c) => out.triples.push(EbrTriple {
                    head: individual.0.clone(),
                    relation: type_relation(),
                    tail: c.0.clone(),
                }),
                None => out.skipped += 1,
            },
            Axiom::ObjectPropertyAssertion {
                subject,
                property,
                object,
            } => {
                let (h, t) = if property.is_inverse() {
                    (object, subject)
                } else {
                    (subject, object)
                };
                out.triples.push(EbrTriple {
                    head: h.0.clone(),
                    relation: property.property().0.clone(),
                    tail: t.0.clone(),
                });
            }
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Class, ClassExpression, NamedIndividual, ObjectProperty};

    #[test]
    fn extraction_counts() {
        assert!(extract_triples(&Ontology::new()).triples.is_empty());
        let x = NamedIndividual::parse("http://e.org/x").unwrap();
        let y = NamedIndividual::parse("http://e.org/y").unwrap();
        let a = Class::parse("http://e.org/A").unwrap();
        let b = Class::parse("http://e.org/B").unwrap();
        let r = ObjectProperty::parse("http://e.org/r").unwrap();
        let mut o = Ontology::new();
        o.add_axiom(Axiom::class_assertion(x.clone(), a.clone()));
        o.add_axiom(Axiom::class_assertion(
            x.clone(),
            ClassExpression::intersection(vec![a.into(), b.into()]).unwrap(),
        ));
        o.add_axiom(Axiom::object_property_assertion(
            crate::model::ObjectPropertyExpression::named(r.clone()).inverse(),
            x.clone(),
            y.clone(),
        ));
        let e = extract_triples(&o);
        assert_eq!(e.skipped, 1);
        assert_eq!(e.triples.len(), 2);
        assert_eq!(e.triples[0].relation, type_relation());
        assert_eq!(e.triples[1].head, y.0);
        assert_eq!(e.triples[1].tail, x.0);
    }
}

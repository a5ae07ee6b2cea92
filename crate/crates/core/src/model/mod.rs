//! The OWL 2 structural data model: entities, literals, class expressions,
//! data ranges, axioms and SWRL rules. All values are immutable after
//! construction and compare structurally.

mod axiom;
mod entity;
mod expression;
mod iri;
mod literal;
mod swrl;
mod validate;

pub use axiom::{signature_of, AnnotationValue, Axiom, AxiomKind};
pub use entity::{
    AnnotationProperty, Class, DataProperty, Datatype, EntityKind, NamedIndividual, ObjectProperty,
    OwlEntity,
};
pub use expression::{
    ClassExpression, DataRange, Facet, FacetRestriction, ObjectPropertyExpression,
    OperandCountError,
};
pub use iri::{make_iri, ns, vocab, Iri, IriError};
pub use literal::{Literal, LiteralError, NumericValue};
pub use swrl::{
    Atom, DArgument, IArgument, SwrlRule, UnsafeRuleError, Variable, VARIABLE_NAMESPACE,
};
pub use validate::{validate_data_range, validate_expression, Violation};

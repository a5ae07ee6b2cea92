use std::fmt;

use super::entity::{Class, DataProperty, Datatype, NamedIndividual, ObjectProperty, OwlEntity};
use super::iri::Iri;
use super::literal::Literal;

/// A named object property or the inverse of one.
///
/// Only named properties can be inverted, so a double inverse cannot be
/// represented; [`ObjectPropertyExpression::inverse`] folds it back to the
/// named property.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectPropertyExpression {
    Named(ObjectProperty),
    Inverse(ObjectProperty),
}

impl ObjectPropertyExpression {
    pub fn named(p: ObjectProperty) -> Self {
        ObjectPropertyExpression::Named(p)
    }

    /// The inverse of this expression; `Inverse(Inverse(p))` is `p`.
    pub fn inverse(&self) -> Self {
        match self {
            ObjectPropertyExpression::Named(p) => ObjectPropertyExpression::Inverse(p.clone()),
            ObjectPropertyExpression::Inverse(p) => ObjectPropertyExpression::Named(p.clone()),
        }
    }

    pub fn property(&self) -> &ObjectProperty {
        match self {
            ObjectPropertyExpression::Named(p) | ObjectPropertyExpression::Inverse(p) => p,
        }
    }

    pub fn is_inverse(&self) -> bool {
        matches!(self, ObjectPropertyExpression::Inverse(_))
    }
}

impl From<ObjectProperty> for ObjectPropertyExpression {
    fn from(p: ObjectProperty) -> Self {
        ObjectPropertyExpression::Named(p)
    }
}

/// Constraining facets supported on numeric datatypes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Facet {
    MinInclusive,
    MinExclusive,
    MaxInclusive,
    MaxExclusive,
}

impl Facet {
    pub const ALL: [Facet; 4] = [
        Facet::MinInclusive,
        Facet::MinExclusive,
        Facet::MaxInclusive,
        Facet::MaxExclusive,
    ];

    pub fn iri(self) -> &'static str {
        match self {
            Facet::MinInclusive => "http://www.w3.org/2001/XMLSchema#minInclusive",
            Facet::MinExclusive => "http://www.w3.org/2001/XMLSchema#minExclusive",
            Facet::MaxInclusive => "http://www.w3.org/2001/XMLSchema#maxInclusive",
            Facet::MaxExclusive => "http://www.w3.org/2001/XMLSchema#maxExclusive",
        }
    }

    pub fn from_iri(iri: &str) -> Option<Facet> {
        Facet::ALL.into_iter().find(|f| f.iri() == iri)
    }

    /// Comparison symbol used by the Manchester renderer.
    pub fn symbol(self) -> &'static str {
        match self {
            Facet::MinInclusive => ">=",
            Facet::MinExclusive => ">",
            Facet::MaxInclusive => "<=",
            Facet::MaxExclusive => "<",
        }
    }

    /// Whether `value` satisfies this facet with bound `bound`.
    pub fn admits(self, value: &Literal, bound: &Literal) -> bool {
        use std::cmp::Ordering::*;
        match value.numeric_cmp(bound) {
            Some(ord) => match self {
                Facet::MinInclusive => ord != Less,
                Facet::MinExclusive => ord == Greater,
                Facet::MaxInclusive => ord != Greater,
                Facet::MaxExclusive => ord == Less,
            },
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetRestriction {
    pub facet: Facet,
    pub value: Literal,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DataRange {
    Datatype(Datatype),
    DatatypeRestriction {
        base: Datatype,
        facets: Vec<FacetRestriction>,
    },
    DataOneOf(Vec<Literal>),
}

impl DataRange {
    /// Whether a literal lies in this range. Datatype membership is by exact
    /// datatype IRI (`rdfs:Literal` admits everything); facets compare numerically.
    pub fn admits(&self, literal: &Literal) -> bool {
        fn type_matches(base: &Datatype, literal: &Literal) -> bool {
            base.0.as_str() == super::iri::vocab::RDFS_LITERAL || base.0 == *literal.datatype()
        }
        match self {
            DataRange::Datatype(dt) => type_matches(dt, literal),
            DataRange::DatatypeRestriction { base, facets } => {
                type_matches(base, literal)
                    && facets.iter().all(|f| f.facet.admits(literal, &f.value))
            }
            DataRange::DataOneOf(values) => values.contains(literal),
        }
    }

    pub(crate) fn visit_entities(&self, f: &mut dyn FnMut(OwlEntity)) {
        match self {
            DataRange::Datatype(dt) => f(dt.into()),
            DataRange::DatatypeRestriction { base, facets } => {
                f(base.into());
                for r in facets {
                    f(r.value.datatype_entity().into());
                }
            }
            DataRange::DataOneOf(values) => {
                for v in values {
                    f(v.datatype_entity().into());
                }
            }
        }
    }
}

/// Recursive AST of OWL 2 class constructors.
///
/// Operand order of the n-ary constructors is kept as written and takes part
/// in equality. Intersections and unions need at least two operands; the
/// checked constructors enforce that, and
/// [`validate_expression`](super::validate_expression) checks values built
/// directly from the variants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpression {
    Class(Class),
    ObjectIntersectionOf(Vec<ClassExpression>),
    ObjectUnionOf(Vec<ClassExpression>),
    ObjectComplementOf(Box<ClassExpression>),
    ObjectSomeValuesFrom {
        property: ObjectPropertyExpression,
        filler: Box<ClassExpression>,
    },
    ObjectAllValuesFrom {
        property: ObjectPropertyExpression,
        filler: Box<ClassExpression>,
    },
    ObjectHasValue {
        property: ObjectPropertyExpression,
        individual: NamedIndividual,
    },
    ObjectOneOf(Vec<NamedIndividual>),
    ObjectMinCardinality {
        cardinality: u32,
        property: ObjectPropertyExpression,
        filler: Box<ClassExpression>,
    },
    ObjectMaxCardinality {
        cardinality: u32,
        property: ObjectPropertyExpression,
        filler: Box<ClassExpression>,
    },
    ObjectExactCardinality {
        cardinality: u32,
        property: ObjectPropertyExpression,
        filler: Box<ClassExpression>,
    },
    DataSomeValuesFrom {
        property: DataProperty,
        range: DataRange,
    },
    DataAllValuesFrom {
        property: DataProperty,
        range: DataRange,
    },
    DataHasValue {
        property: DataProperty,
        value: Literal,
    },
}

/// Error returned by the checked n-ary constructors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{constructor} needs at least 2 operands, got {count}")]
pub struct OperandCountError {
    pub constructor: &'static str,
    pub count: usize,
}

impl ClassExpression {
    pub fn thing() -> ClassExpression {
        ClassExpression::Class(Class::thing())
    }

    pub fn nothing() -> ClassExpression {
        ClassExpression::Class(Class::nothing())
    }

    pub fn named(iri: Iri) -> ClassExpression {
        ClassExpression::Class(Class(iri))
    }

    pub fn intersection(operands: Vec<ClassExpression>) -> Result<Self, OperandCountError> {
        if operands.len() < 2 {
            return Err(OperandCountError {
                constructor: "ObjectIntersectionOf",
                count: operands.len(),
            });
        }
        Ok(ClassExpression::ObjectIntersectionOf(operands))
    }

    pub fn union(operands: Vec<ClassExpression>) -> Result<Self, OperandCountError> {
        if operands.len() < 2 {
            return Err(OperandCountError {
                constructor: "ObjectUnionOf",
                count: operands.len(),
            });
        }
        Ok(ClassExpression::ObjectUnionOf(operands))
    }

    pub fn complement(operand: ClassExpression) -> Self {
        ClassExpression::ObjectComplementOf(Box::new(operand))
    }

    pub fn some(property: impl Into<ObjectPropertyExpression>, filler: ClassExpression) -> Self {
        ClassExpression::ObjectSomeValuesFrom {
            property: property.into(),
            filler: Box::new(filler),
        }
    }

    pub fn all(property: impl Into<ObjectPropertyExpression>, filler: ClassExpression) -> Self {
        ClassExpression::ObjectAllValuesFrom {
            property: property.into(),
            filler: Box::new(filler),
        }
    }

    pub fn has_value(
        property: impl Into<ObjectPropertyExpression>,
        individual: NamedIndividual,
    ) -> Self {
        ClassExpression::ObjectHasValue {
            property: property.into(),
            individual,
        }
    }

    pub fn min(
        cardinality: u32,
        property: impl Into<ObjectPropertyExpression>,
        filler: ClassExpression,
    ) -> Self {
        ClassExpression::ObjectMinCardinality {
            cardinality,
            property: property.into(),
            filler: Box::new(filler),
        }
    }

    pub fn max(
        cardinality: u32,
        property: impl Into<ObjectPropertyExpression>,
        filler: ClassExpression,
    ) -> Self {
        ClassExpression::ObjectMaxCardinality {
            cardinality,
            property: property.into(),
            filler: Box::new(filler),
        }
    }

    pub fn exactly(
        cardinality: u32,
        property: impl Into<ObjectPropertyExpression>,
        filler: ClassExpression,
    ) -> Self {
        ClassExpression::ObjectExactCardinality {
            cardinality,
            property: property.into(),
            filler: Box::new(filler),
        }
    }

    pub fn as_class(&self) -> Option<&Class> {
        match self {
            ClassExpression::Class(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_thing(&self) -> bool {
        self.as_class().is_some_and(Class::is_thing)
    }

    pub fn is_nothing(&self) -> bool {
        self.as_class().is_some_and(Class::is_nothing)
    }

    /// Nesting depth; a named class has depth 0.
    pub fn depth(&self) -> usize {
        use ClassExpression::*;
        match self {
            Class(_) | ObjectHasValue { .. } | ObjectOneOf(_) => 0,
            DataSomeValuesFrom { .. } | DataAllValuesFrom { .. } | DataHasValue { .. } => 1,
            ObjectIntersectionOf(ops) | ObjectUnionOf(ops) => {
                1 + ops.iter().map(ClassExpression::depth).max().unwrap_or(0)
            }
            ObjectComplementOf(c) => 1 + c.depth(),
            ObjectSomeValuesFrom { filler, .. }
            | ObjectAllValuesFrom { filler, .. }
            | ObjectMinCardinality { filler, .. }
            | ObjectMaxCardinality { filler, .. }
            | ObjectExactCardinality { filler, .. } => 1 + filler.depth(),
        }
    }

    /// True if any data restriction occurs anywhere in the expression.
    pub fn has_data_restriction(&self) -> bool {
        use ClassExpression::*;
        match self {
            DataSomeValuesFrom { .. } | DataAllValuesFrom { .. } | DataHasValue { .. } => true,
            Class(_) | ObjectHasValue { .. } | ObjectOneOf(_) => false,
            ObjectIntersectionOf(ops) | ObjectUnionOf(ops) => {
                ops.iter().any(ClassExpression::has_data_restriction)
            }
            ObjectComplementOf(c) => c.has_data_restriction(),
            ObjectSomeValuesFrom { filler, .. }
            | ObjectAllValuesFrom { filler, .. }
            | ObjectMinCardinality { filler, .. }
            | ObjectMaxCardinality { filler, .. }
            | ObjectExactCardinality { filler, .. } => filler.has_data_restriction(),
        }
    }

    /// Calls `f` for every entity occurring in the expression, in pre-order.
    pub fn visit_entities(&self, f: &mut dyn FnMut(OwlEntity)) {
        use ClassExpression::*;
        match self {
            Class(c) => f(c.into()),
            ObjectIntersectionOf(ops) | ObjectUnionOf(ops) => {
                for op in ops {
                    op.visit_entities(f);
                }
            }
            ObjectComplementOf(c) => c.visit_entities(f),
            ObjectSomeValuesFrom { property, filler }
            | ObjectAllValuesFrom { property, filler }
            | ObjectMinCardinality {
                property, filler, ..
            }
            | ObjectMaxCardinality {
                property, filler, ..
            }
            | ObjectExactCardinality {
                property, filler, ..
            } => {
                f(property.property().into());
                filler.visit_entities(f);
            }
            ObjectHasValue {
                property,
                individual,
            } => {
                f(property.property().into());
                f(individual.into());
            }
            ObjectOneOf(inds) => {
                for i in inds {
                    f(i.into());
                }
            }
            DataSomeValuesFrom { property, range } | DataAllValuesFrom { property, range } => {
                f(property.into());
                range.visit_entities(f);
            }
            DataHasValue { property, value } => {
                f(property.into());
                f(value.datatype_entity().into());
            }
        }
    }
}

impl From<Class> for ClassExpression {
    fn from(c: Class) -> Self {
        ClassExpression::Class(c)
    }
}

impl fmt::Display for ClassExpression {
    /// Functional-style rendering with full IRIs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let writer = crate::serialization::functional::Writer::full_iris();
        f.write_str(&writer.class_expression(self))
    }
}

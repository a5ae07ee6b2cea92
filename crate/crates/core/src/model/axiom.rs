use std::collections::BTreeSet;

use super::entity::{AnnotationProperty, DataProperty, NamedIndividual, OwlEntity};
use super::expression::{ClassExpression, DataRange, ObjectPropertyExpression};
use super::iri::Iri;
use super::literal::Literal;
use super::swrl::SwrlRule;

/// Object of an annotation assertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnnotationValue {
    Literal(Literal),
    Iri(Iri),
}

/// The closed set of supported axiom kinds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Declaration(OwlEntity),
    SubClassOf {
        sub: ClassExpression,
        sup: ClassExpression,
    },
    EquivalentClasses(Vec<ClassExpression>),
    DisjointClasses(Vec<ClassExpression>),
    ClassAssertion {
        individual: NamedIndividual,
        class: ClassExpression,
    },
    ObjectPropertyAssertion {
        subject: NamedIndividual,
        property: ObjectPropertyExpression,
        object: NamedIndividual,
    },
    DataPropertyAssertion {
        subject: NamedIndividual,
        property: DataProperty,
        value: Literal,
    },
    SubObjectPropertyOf {
        sub: ObjectPropertyExpression,
        sup: ObjectPropertyExpression,
    },
    InverseObjectProperties(ObjectPropertyExpression, ObjectPropertyExpression),
    ObjectPropertyDomain {
        property: ObjectPropertyExpression,
        domain: ClassExpression,
    },
    ObjectPropertyRange {
        property: ObjectPropertyExpression,
        range: ClassExpression,
    },
    FunctionalObjectProperty(ObjectPropertyExpression),
    DataPropertyDomain {
        property: DataProperty,
        domain: ClassExpression,
    },
    DataPropertyRange {
        property: DataProperty,
        range: DataRange,
    },
    AnnotationAssertion {
        subject: Iri,
        property: AnnotationProperty,
        value: AnnotationValue,
    },
    Rule(SwrlRule),
}

/// Discriminant of [`Axiom`], used for indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomKind {
    Declaration,
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    ClassAssertion,
    ObjectPropertyAssertion,
    DataPropertyAssertion,
    SubObjectPropertyOf,
    InverseObjectProperties,
    ObjectPropertyDomain,
    ObjectPropertyRange,
    FunctionalObjectProperty,
    DataPropertyDomain,
    DataPropertyRange,
    AnnotationAssertion,
    Rule,
}

impl AxiomKind {
    pub const ALL: [AxiomKind; 16] = [
        AxiomKind::Declaration,
        AxiomKind::SubClassOf,
        AxiomKind::EquivalentClasses,
        AxiomKind::DisjointClasses,
        AxiomKind::ClassAssertion,
        AxiomKind::ObjectPropertyAssertion,
        AxiomKind::DataPropertyAssertion,
        AxiomKind::SubObjectPropertyOf,
        AxiomKind::InverseObjectProperties,
        AxiomKind::ObjectPropertyDomain,
        AxiomKind::ObjectPropertyRange,
        AxiomKind::FunctionalObjectProperty,
        AxiomKind::DataPropertyDomain,
        AxiomKind::DataPropertyRange,
        AxiomKind::AnnotationAssertion,
        AxiomKind::Rule,
    ];

    /// ABox kinds: facts about individuals.
    pub fn is_assertion(self) -> bool {
        matches!(
            self,
            AxiomKind::ClassAssertion
                | AxiomKind::ObjectPropertyAssertion
                | AxiomKind::DataPropertyAssertion
        )
    }
}

impl Axiom {
    pub fn kind(&self) -> AxiomKind {
        match self {
            Axiom::Declaration(_) => AxiomKind::Declaration,
            Axiom::SubClassOf { .. } => AxiomKind::SubClassOf,
            Axiom::EquivalentClasses(_) => AxiomKind::EquivalentClasses,
            Axiom::DisjointClasses(_) => AxiomKind::DisjointClasses,
            Axiom::ClassAssertion { .. } => AxiomKind::ClassAssertion,
            Axiom::ObjectPropertyAssertion { .. } => AxiomKind::ObjectPropertyAssertion,
            Axiom::DataPropertyAssertion { .. } => AxiomKind::DataPropertyAssertion,
            Axiom::SubObjectPropertyOf { .. } => AxiomKind::SubObjectPropertyOf,
            Axiom::InverseObjectProperties(..) => AxiomKind::InverseObjectProperties,
            Axiom::ObjectPropertyDomain { .. } => AxiomKind::ObjectPropertyDomain,
            Axiom::ObjectPropertyRange { .. } => AxiomKind::ObjectPropertyRange,
            Axiom::FunctionalObjectProperty(_) => AxiomKind::FunctionalObjectProperty,
            Axiom::DataPropertyDomain { .. } => AxiomKind::DataPropertyDomain,
            Axiom::DataPropertyRange { .. } => AxiomKind::DataPropertyRange,
            Axiom::AnnotationAssertion { .. } => AxiomKind::AnnotationAssertion,
            Axiom::Rule(_) => AxiomKind::Rule,
        }
    }

    pub fn class_assertion(
        individual: NamedIndividual,
        class: impl Into<ClassExpression>,
    ) -> Axiom {
        Axiom::ClassAssertion {
            individual,
            class: class.into(),
        }
    }

    pub fn sub_class_of(sub: impl Into<ClassExpression>, sup: impl Into<ClassExpression>) -> Axiom {
        Axiom::SubClassOf {
            sub: sub.into(),
            sup: sup.into(),
        }
    }

    pub fn object_property_assertion(
        property: impl Into<ObjectPropertyExpression>,
        subject: NamedIndividual,
        object: NamedIndividual,
    ) -> Axiom {
        Axiom::ObjectPropertyAssertion {
            subject,
            property: property.into(),
            object,
        }
    }

    pub fn declaration(entity: impl Into<OwlEntity>) -> Axiom {
        Axiom::Declaration(entity.into())
    }

    /// Calls `f` for each entity occurrence in the axiom, in syntactic order.
    /// Entities may be reported more than once.
    pub fn visit_entities(&self, f: &mut dyn FnMut(OwlEntity)) {
        let ope =
            |p: &ObjectPropertyExpression, f: &mut dyn FnMut(OwlEntity)| f(p.property().into());
        match self {
            Axiom::Declaration(e) => f(e.clone()),
            Axiom::SubClassOf { sub, sup } => {
                sub.visit_entities(f);
                sup.visit_entities(f);
            }
            Axiom::EquivalentClasses(ces) | Axiom::DisjointClasses(ces) => {
                for ce in ces {
                    ce.visit_entities(f);
                }
            }
            Axiom::ClassAssertion { individual, class } => {
                class.visit_entities(f);
                f(individual.into());
            }
            Axiom::ObjectPropertyAssertion {
                subject,
                property,
                object,
            } => {
                ope(property, f);
                f(subject.into());
                f(object.into());
            }
            Axiom::DataPropertyAssertion {
                subject,
                property,
                value,
            } => {
                f(property.into());
                f(subject.into());
                f(value.datatype_entity().into());
            }
            Axiom::SubObjectPropertyOf { sub, sup } | Axiom::InverseObjectProperties(sub, sup) => {
                ope(sub, f);
                ope(sup, f);
            }
            Axiom::ObjectPropertyDomain {
                property,
                domain: ce,
            }
            | Axiom::ObjectPropertyRange {
                property,
                range: ce,
            } => {
                ope(property, f);
                ce.visit_entities(f);
            }
            Axiom::FunctionalObjectProperty(p) => ope(p, f),
            Axiom::DataPropertyDomain { property, domain } => {
                f(property.into());
                domain.visit_entities(f);
            }
            Axiom::DataPropertyRange { property, range } => {
                f(property.into());
                range.visit_entities(f);
            }
            Axiom::AnnotationAssertion {
                property, value, ..
            } => {
                f(property.into());
                if let AnnotationValue::Literal(l) = value {
                    f(l.datatype_entity().into());
                }
            }
            Axiom::Rule(rule) => rule.visit_entities(f),
        }
    }

    /// Entities in first-occurrence order, without duplicates.
    pub fn signature_ordered(&self) -> Vec<OwlEntity> {
        let mut seen = indexmap::IndexSet::new();
        self.visit_entities(&mut |e| {
            seen.insert(e);
        });
        seen.into_iter().collect()
    }
}

/// Exactly the entities occurring in `axiom`, including `owl:Thing`/`owl:Nothing`
/// when they are mentioned and the datatypes of literals.
pub fn signature_of(axiom: &Axiom) -> BTreeSet<OwlEntity> {
    let mut out = BTreeSet::new();
    axiom.visit_entities(&mut |e| {
        out.insert(e);
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Class, EntityKind, ObjectProperty};

    const NS: &str = "http://example.com/father#";

    fn class(n: &str) -> Class {
        Class::parse(&format!("{NS}{n}")).unwrap()
    }

    fn ind(n: &str) -> NamedIndividual {
        NamedIndividual::parse(&format!("{NS}{n}")).unwrap()
    }

    #[test]
    fn class_assertion_signature() {
        let ax = Axiom::class_assertion(ind("alkid"), class("male"));
        let expected: BTreeSet<OwlEntity> = [class("male").into(), ind("alkid").into()]
            .into_iter()
            .collect();
        assert_eq!(signature_of(&ax), expected);
    }

    #[test]
    fn declaration_signature() {
        let ax = Axiom::declaration(class("C"));
        assert_eq!(
            signature_of(&ax).into_iter().collect::<Vec<_>>(),
            vec![OwlEntity::new(EntityKind::Class, class("C").0)]
        );
    }

    #[test]
    fn nested_signature() {
        let r = ObjectProperty::parse(&format!("{NS}r")).unwrap();
        let lhs = ClassExpression::intersection(vec![
            class("C").into(),
            ClassExpression::some(r.clone(), class("D").into()),
        ])
        .unwrap();
        let ax = Axiom::sub_class_of(lhs, class("E"));
        let expected: BTreeSet<OwlEntity> = [
            class("C").into(),
            class("D").into(),
            class("E").into(),
            r.into(),
        ]
        .into_iter()
        .collect();
        assert_eq!(signature_of(&ax), expected);
    }

    #[test]
    fn thing_is_reported_when_mentioned() {
        let ax = Axiom::sub_class_of(class("C"), Class::thing());
        assert!(signature_of(&ax).contains(&Class::thing().into()));
    }

    #[test]
    fn data_assertion_includes_literal_datatype() {
        let ax = Axiom::DataPropertyAssertion {
            subject: ind("anna"),
            property: DataProperty::parse(&format!("{NS}hasAge")).unwrap(),
            value: Literal::integer(42),
        };
        let sig = signature_of(&ax);
        assert_eq!(sig.len(), 3);
        assert!(sig.iter().any(|e| e.kind == EntityKind::Datatype));
    }

    #[test]
    fn ordered_signature_deduplicates() {
        let r = ObjectProperty::parse(&format!("{NS}r")).unwrap();
        let ax = Axiom::object_property_assertion(r, ind("a"), ind("a"));
        assert_eq!(ax.signature_ordered().len(), 2);
    }
}

//! OWL-to-RDF mapping for the supported axiom subset.

use std::fmt;

use thiserror::Error;

use crate::model::{
    ns, vocab, AnnotationValue, Axiom, ClassExpression, DataRange, EntityKind, Iri, Literal,
    ObjectPropertyExpression,
};
use crate::ontology::Ontology;

use super::functional::Writer;

/// A node in a triple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    /// Blank node label without the `_:` prefix.
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => write!(f, "<{i}>"),
            Term::Blank(b) => write!(f, "_:{b}"),
            Term::Literal(l) => write!(f, "{l}"),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Term {
        Term::Iri(iri)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> Triple {
        Triple {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <{}> {} .", self.subject, self.predicate, self.object)
    }
}

/// Raised for axioms that have no RDF encoding here (SWRL rules).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("axiom has no RDF mapping: {axiom}")]
pub struct UnmappableAxiom {
    pub axiom: String,
}

fn owl(local: &str) -> Iri {
    Iri::new(&format!("{}{local}", ns::OWL)).expect("owl vocabulary")
}

fn rdf(local: &str) -> Iri {
    Iri::new(&format!("{}{local}", ns::RDF)).expect("rdf vocabulary")
}

fn rdfs(local: &str) -> Iri {
    Iri::new(&format!("{}{local}", ns::RDFS)).expect("rdfs vocabulary")
}

fn rdf_type() -> Iri {
    Iri::new(vocab::RDF_TYPE).expect("rdf:type")
}

/// Accumulates triples and hands out blank node labels `b0`, `b1`, ...
/// Labels are unique for the lifetime of one mapper.
#[derive(Debug, Default)]
pub struct TripleMapper {
    next_blank: usize,
    triples: Vec<Triple>,
}

impl TripleMapper {
    pub fn new() -> TripleMapper {
        TripleMapper::default()
    }

    pub fn into_triples(self) -> Vec<Triple> {
        self.triples
    }

    fn blank(&mut self) -> Term {
        let t = Term::Blank(format!("b{}", self.next_blank));
        self.next_blank += 1;
        t
    }

    fn emit(&mut self, s: Term, p: Iri, o: Term) {
        self.triples.push(Triple {
            subject: s,
            predicate: p,
            object: o,
        });
    }

    fn list(&mut self, items: Vec<Term>) -> Term {
        let nil = Term::Iri(rdf("nil"));
        if items.is_empty() {
            return nil;
        }
        let head = self.blank();
        let mut node = head.clone();
        let count = items.len();
        for (i, item) in items.into_iter().enumerate() {
            self.emit(node.clone(), rdf("first"), item);
            let rest = if i + 1 == count {
                nil.clone()
            } else {
                self.blank()
            };
            self.emit(node, rdf("rest"), rest.clone());
            node = rest;
        }
        head
    }

    fn property(&mut self, p: &ObjectPropertyExpression) -> Term {
        match p {
            ObjectPropertyExpression::Named(p) => Term::Iri(p.0.clone()),
            ObjectPropertyExpression::Inverse(p) => {
                let b = self.blank();
                self.emit(b.clone(), owl("inverseOf"), Term::Iri(p.0.clone()));
                b
            }
        }
    }

    fn data_range(&mut self, range: &DataRange) -> Term {
        match range {
            DataRange::Datatype(dt) => Term::Iri(dt.0.clone()),
            DataRange::DatatypeRestriction { base, facets } => {
                let b = self.blank();
                self.emit(b.clone(), rdf_type(), Term::Iri(rdfs("Datatype")));
                self.emit(b.clone(), owl("onDatatype"), Term::Iri(base.0.clone()));
                let mut items = Vec::with_capacity(facets.len());
                for f in facets {
                    let node = self.blank();
                    let facet = Iri::new(f.facet.iri()).expect("facet IRI");
                    self.emit(node.clone(), facet, Term::Literal(f.value.clone()));
                    items.push(node);
                }
                let list = self.list(items);
                self.emit(b.clone(), owl("withRestrictions"), list);
                b
            }
            DataRange::DataOneOf(values) => {
                let b = self.blank();
                self.emit(b.clone(), rdf_type(), Term::Iri(rdfs("Datatype")));
                let items = values.iter().cloned().map(Term::Literal).collect();
                let list = self.list(items);
                self.emit(b.clone(), owl("oneOf"), list);
                b
            }
        }
    }

    fn restriction(&mut self, property: Term) -> Term {
        let b = self.blank();
        self.emit(b.clone(), rdf_type(), Term::Iri(owl("Restriction")));
        self.emit(b.clone(), owl("onProperty"), property);
        b
    }

    fn cardinality(
        &mut self,
        plain: &str,
        qualified: &str,
        n: u32,
        property: &ObjectPropertyExpression,
        filler: &ClassExpression,
    ) -> Term {
        let p = self.property(property);
        let b = self.restriction(p);
        let count = Literal::new(
            n.to_string(),
            Iri::new(vocab::XSD_NON_NEGATIVE_INTEGER).expect("xsd IRI"),
        )
        .expect("cardinality literal");
        if filler.is_thing() {
            self.emit(b.clone(), owl(plain), Term::Literal(count));
        } else {
            self.emit(b.clone(), owl(qualified), Term::Literal(count));
            let f = self.class_expression(filler);
            self.emit(b.clone(), owl("onClass"), f);
        }
        b
    }

    /// Maps a class expression, returning the node that denotes it.
    pub fn class_expression(&mut self, ce: &ClassExpression) -> Term {
        use ClassExpression::*;
        match ce {
            Class(c) => Term::Iri(c.0.clone()),
            ObjectIntersectionOf(ops) | ObjectUnionOf(ops) => {
                let b = self.blank();
                self.emit(b.clone(), rdf_type(), Term::Iri(owl("Class")));
                let items = ops.iter().map(|c| self.class_expression(c)).collect();
                let list = self.list(items);
                let pred = if matches!(ce, ObjectIntersectionOf(_)) {
                    "intersectionOf"
                } else {
                    "unionOf"
                };
                self.emit(b.clone(), owl(pred), list);
                b
            }
            ObjectComplementOf(c) => {
                let b = self.blank();
                self.emit(b.clone(), rdf_type(), Term::Iri(owl("Class")));
                let inner = self.class_expression(c);
                self.emit(b.clone(), owl("complementOf"), inner);
                b
            }
            ObjectOneOf(inds) => {
                let b = self.blank();
                self.emit(b.clone(), rdf_type(), Term::Iri(owl("Class")));
                let items = inds.iter().map(|i| Term::Iri(i.0.clone())).collect();
                let list = self.list(items);
                self.emit(b.clone(), owl("oneOf"), list);
                b
            }
            ObjectSomeValuesFrom { property, filler }
            | ObjectAllValuesFrom { property, filler } => {
                let p = self.property(property);
                let b = self.restriction(p);
                let f = self.class_expression(filler);
                let pred = if matches!(ce, ObjectSomeValuesFrom { .. }) {
                    "someValuesFrom"
                } else {
                    "allValuesFrom"
                };
                self.emit(b.clone(), owl(pred), f);
                b
            }
            ObjectHasValue {
                property,
                individual,
            } => {
                let p = self.property(property);
                let b = self.restriction(p);
                self.emit(b.clone(), owl("hasValue"), Term::Iri(individual.0.clone()));
                b
            }
            ObjectMinCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality(
                "minCardinality",
                "minQualifiedCardinality",
                *cardinality,
                property,
                filler,
            ),
            ObjectMaxCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality(
                "maxCardinality",
                "maxQualifiedCardinality",
                *cardinality,
                property,
                filler,
            ),
            ObjectExactCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality(
                "cardinality",
                "qualifiedCardinality",
                *cardinality,
                property,
                filler,
            ),
            DataSomeValuesFrom { property, range } | DataAllValuesFrom { property, range } => {
                let b = self.restriction(Term::Iri(property.0.clone()));
                let r = self.data_range(range);
                let pred = if matches!(ce, DataSomeValuesFrom { .. }) {
                    "someValuesFrom"
                } else {
                    "allValuesFrom"
                };
                self.emit(b.clone(), owl(pred), r);
                b
            }
            DataHasValue { property, value } => {
                let b = self.restriction(Term::Iri(property.0.clone()));
                self.emit(b.clone(), owl("hasValue"), Term::Literal(value.clone()));
                b
            }
        }
    }

    pub fn axiom(&mut self, axiom: &Axiom) -> Result<(), UnmappableAxiom> {
        match axiom {
            Axiom::Declaration(e) => {
                let class = match e.kind {
                    EntityKind::Class => owl("Class"),
                    EntityKind::ObjectProperty => owl("ObjectProperty"),
                    EntityKind::DataProperty => owl("DatatypeProperty"),
                    EntityKind::NamedIndividual => owl("NamedIndividual"),
                    EntityKind::Datatype => rdfs("Datatype"),
                    EntityKind::AnnotationProperty => owl("AnnotationProperty"),
                };
                self.emit(Term::Iri(e.iri.clone()), rdf_type(), Term::Iri(class));
            }
            Axiom::SubClassOf { sub, sup } => {
                let s = self.class_expression(sub);
                let o = self.class_expression(sup);
                self.emit(s, rdfs("subClassOf"), o);
            }
            Axiom::EquivalentClasses(list) => {
                let nodes: Vec<Term> = list.iter().map(|c| self.class_expression(c)).collect();
                for pair in nodes.windows(2) {
                    self.emit(pair[0].clone(), owl("equivalentClass"), pair[1].clone());
                }
            }
            Axiom::DisjointClasses(list) => {
                let nodes: Vec<Term> = list.iter().map(|c| self.class_expression(c)).collect();
                if nodes.len() == 2 {
                    self.emit(nodes[0].clone(), owl("disjointWith"), nodes[1].clone());
                } else {
                    let b = self.blank();
                    self.emit(b.clone(), rdf_type(), Term::Iri(owl("AllDisjointClasses")));
                    let l = self.list(nodes);
                    self.emit(b, owl("members"), l);
                }
            }
            Axiom::ClassAssertion { individual, class } => {
                let o = self.class_expression(class);
                self.emit(Term::Iri(individual.0.clone()), rdf_type(), o);
            }
            Axiom::ObjectPropertyAssertion {
                subject,
                property,
                object,
            } => {
                let (s, o) = if property.is_inverse() {
                    (object, subject)
                } else {
                    (subject, object)
                };
                self.emit(
                    Term::Iri(s.0.clone()),
                    property.property().0.clone(),
                    Term::Iri(o.0.clone()),
                );
            }
            Axiom::DataPropertyAssertion {
                subject,
                property,
                value,
            } => self.emit(
                Term::Iri(subject.0.clone()),
                property.0.clone(),
                Term::Literal(value.clone()),
            ),
            Axiom::SubObjectPropertyOf { sub, sup } => {
                let s = self.property(sub);
                let o = self.property(sup);
                self.emit(s, rdfs("subPropertyOf"), o);
            }
            Axiom::InverseObjectProperties(a, b) => {
                let s = self.property(a);
                let o = self.property(b);
                self.emit(s, owl("inverseOf"), o);
            }
            Axiom::ObjectPropertyDomain { property, domain } => {
                let s = self.property(property);
                let o = self.class_expression(domain);
                self.emit(s, rdfs("domain"), o);
            }
            Axiom::ObjectPropertyRange { property, range } => {
                let s = self.property(property);
                let o = self.class_expression(range);
                self.emit(s, rdfs("range"), o);
            }
            Axiom::FunctionalObjectProperty(p) => {
                let s = self.property(p);
                self.emit(s, rdf_type(), Term::Iri(owl("FunctionalProperty")));
            }
            Axiom::DataPropertyDomain { property, domain } => {
                let o = self.class_expression(domain);
                self.emit(Term::Iri(property.0.clone()), rdfs("domain"), o);
            }
            Axiom::DataPropertyRange { property, range } => {
                let o = self.data_range(range);
                self.emit(Term::Iri(property.0.clone()), rdfs("range"), o);
            }
            Axiom::AnnotationAssertion {
                subject,
                property,
                value,
            } => {
                let o = match value {
                    AnnotationValue::Literal(l) => Term::Literal(l.clone()),
                    AnnotationValue::Iri(i) => Term::Iri(i.clone()),
                };
                self.emit(Term::Iri(subject.clone()), property.0.clone(), o);
            }
            Axiom::Rule(_) => {
                return Err(UnmappableAxiom {
                    axiom: Writer::full_iris().axiom(axiom),
                })
            }
        }
        Ok(())
    }
}

/// Maps one axiom with a fresh mapper, so blank labels start at `b0`.
pub fn map_axiom_to_triples(axiom: &Axiom) -> Result<Vec<Triple>, UnmappableAxiom> {
    let mut m = TripleMapper::new();
    m.axiom(axiom)?;
    Ok(m.into_triples())
}

/// Maps every axiom of `onto` in insertion order with one shared mapper.
/// Unmappable axioms are returned separately instead of aborting.
pub fn ontology_to_triples(onto: &Ontology) -> (Vec<Triple>, Vec<UnmappableAxiom>) {
    let mut m = TripleMapper::new();
    let mut skipped = Vec::new();
    for axiom in onto.axioms() {
        if let Err(e) = m.axiom(axiom) {
            skipped.push(e);
        }
    }
    (m.into_triples(), skipped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Class, DataProperty, NamedIndividual, ObjectProperty};

    const NS: &str = "http://example.com/father#";

    fn iri(n: &str) -> Iri {
        Iri::new(&format!("{NS}{n}")).unwrap()
    }

    #[test]
    fn class_assertion_is_one_type_triple() {
        let ax = Axiom::class_assertion(NamedIndividual(iri("alkid")), Class(iri("male")));
        assert_eq!(
            map_axiom_to_triples(&ax).unwrap(),
            vec![Triple::new(iri("alkid"), rdf_type(), iri("male"))]
        );
    }

    #[test]
    fn data_assertion_keeps_typed_literal() {
        let ax = Axiom::DataPropertyAssertion {
            subject: NamedIndividual(iri("anna")),
            property: DataProperty(iri("hasAge")),
            value: Literal::integer(42),
        };
        let t = map_axiom_to_triples(&ax).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].object, Term::Literal(Literal::integer(42)));
    }

    #[test]
    fn existential_subclass_uses_restriction_node() {
        let ax = Axiom::sub_class_of(
            Class(iri("father")),
            ClassExpression::some(ObjectProperty(iri("hasChild")), Class(iri("person")).into()),
        );
        let t = map_axiom_to_triples(&ax).unwrap();
        let b = Term::Blank("b0".into());
        assert_eq!(
            t,
            vec![
                Triple::new(b.clone(), rdf_type(), owl("Restriction")),
                Triple::new(b.clone(), owl("onProperty"), iri("hasChild")),
                Triple::new(b.clone(), owl("someValuesFrom"), iri("person")),
                Triple::new(iri("father"), rdfs("subClassOf"), b),
            ]
        );
    }

    #[test]
    fn intersection_builds_rdf_list() {
        let ce =
            ClassExpression::intersection(vec![Class(iri("a")).into(), Class(iri("b")).into()])
                .unwrap();
        let mut m = TripleMapper::new();
        let node = m.class_expression(&ce);
        assert_eq!(node, Term::Blank("b0".into()));
        let t = m.into_triples();
        let rests: Vec<_> = t.iter().filter(|t| t.predicate == rdf("rest")).collect();
        assert_eq!(rests.len(), 2);
        assert_eq!(rests[1].object, Term::Iri(rdf("nil")));
    }

    #[test]
    fn inverse_assertion_swaps_positions() {
        let ax = Axiom::ObjectPropertyAssertion {
            subject: NamedIndividual(iri("a")),
            property: ObjectPropertyExpression::named(ObjectProperty(iri("r"))).inverse(),
            object: NamedIndividual(iri("b")),
        };
        let t = map_axiom_to_triples(&ax).unwrap();
        assert_eq!(t, vec![Triple::new(iri("b"), iri("r"), iri("a"))]);
    }

    #[test]
    fn rules_are_unmappable() {
        use crate::model::{Atom, IArgument, SwrlRule, Variable};
        let x = IArgument::Variable(Variable::named("x").unwrap());
        let atom = Atom::Class {
            class: Class(iri("a")).into(),
            arg: x,
        };
        let rule = SwrlRule::new(vec![atom.clone()], vec![atom]).unwrap();
        assert!(map_axiom_to_triples(&Axiom::Rule(rule)).is_err());
    }

    #[test]
    fn blank_labels_unique_across_axioms() {
        let mut onto = Ontology::new();
        for n in ["a", "b"] {
            onto.add_axiom(Axiom::sub_class_of(
                Class(iri(n)),
                ClassExpression::some(ObjectProperty(iri("r")), ClassExpression::thing()),
            ));
        }
        let (t, skipped) = ontology_to_triples(&onto);
        assert!(skipped.is_empty());
        let blanks: std::collections::BTreeSet<_> = t
            .iter()
            .filter_map(|t| match &t.subject {
                Term::Blank(b) => Some(b.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(blanks.len(), 2);
    }
}

//! Brute-force closed-world retrieval written straight from the semantics:
//! every query rescans the axioms, hierarchies are closed by naive
//! fixpoint iteration and membership is decided one individual at a time.
//! It shares no code with the indexed reasoner.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use owlkit::model::{
    vocab, Axiom, Class, ClassExpression, DataRange, EntityKind, Facet, Literal, NamedIndividual,
    ObjectProperty, ObjectPropertyExpression,
};
use owlkit::reasoner::ReasonerConfig;
use owlkit::Ontology;

type Fact = (NamedIndividual, ObjectProperty, NamedIndividual);

pub struct NaiveReasoner<'a> {
    onto: &'a Ontology,
    config: ReasonerConfig,
    universe: BTreeSet<NamedIndividual>,
    subsumptions: HashSet<(Class, Class)>,
    facts: HashSet<Fact>,
}

/// `pe(x, y)` as a fact about a named property.
fn orient(x: &NamedIndividual, pe: &ObjectPropertyExpression, y: &NamedIndividual) -> Fact {
    if pe.is_inverse() {
        (y.clone(), pe.property().clone(), x.clone())
    } else {
        (x.clone(), pe.property().clone(), y.clone())
    }
}

/// Every `(x, y)` with `pe(x, y)` among `facts`.
fn pairs(
    facts: &HashSet<Fact>,
    pe: &ObjectPropertyExpression,
) -> Vec<(NamedIndividual, NamedIndividual)> {
    facts
        .iter()
        .filter(|(_, p, _)| p == pe.property())
        .map(|(s, _, o)| {
            if pe.is_inverse() {
                (o.clone(), s.clone())
            } else {
                (s.clone(), o.clone())
            }
        })
        .collect()
}

impl<'a> NaiveReasoner<'a> {
    pub fn new(onto: &'a Ontology, config: ReasonerConfig) -> NaiveReasoner<'a> {
        let mut universe = BTreeSet::new();
        let mut facts = HashSet::new();
        for ax in onto.axioms() {
            match ax {
                Axiom::Declaration(e) if e.kind == EntityKind::NamedIndividual => {
                    universe.insert(NamedIndividual(e.iri.clone()));
                }
                Axiom::ClassAssertion { individual, .. } => {
                    universe.insert(individual.clone());
                }
                Axiom::ObjectPropertyAssertion {
                    subject,
                    property,
                    object,
                } => {
                    universe.insert(subject.clone());
                    universe.insert(object.clone());
                    facts.insert(orient(subject, property, object));
                }
                Axiom::DataPropertyAssertion { subject, .. } => {
                    universe.insert(subject.clone());
                }
                _ => {}
            }
        }

        loop {
            let mut derived = Vec::new();
            for ax in onto.axioms() {
                let mut imply =
                    |from: &ObjectPropertyExpression, to: &ObjectPropertyExpression, flip: bool| {
                        for (x, y) in pairs(&facts, from) {
                            let f = if flip {
                                orient(&y, to, &x)
                            } else {
                                orient(&x, to, &y)
                            };
                            if !facts.contains(&f) {
                                derived.push(f);
                            }
                        }
                    };
                match ax {
                    Axiom::SubObjectPropertyOf { sub, sup } => imply(sub, sup, false),
                    Axiom::InverseObjectProperties(a, b) => {
                        imply(a, b, true);
                        imply(b, a, true);
                    }
                    _ => {}
                }
            }
            if derived.is_empty() {
                break;
            }
            facts.extend(derived);
        }

        let mut classes: Vec<Class> = onto.classes_in_signature();
        classes.push(Class::thing());
        classes.push(Class::nothing());
        let mut subsumptions = HashSet::new();
        for c in &classes {
            subsumptions.insert((c.clone(), Class::thing()));
            subsumptions.insert((Class::nothing(), c.clone()));
        }
        for ax in onto.axioms() {
            match ax {
                Axiom::SubClassOf { sub, sup } => {
                    if let (ClassExpression::Class(a), ClassExpression::Class(b)) = (sub, sup) {
                        subsumptions.insert((a.clone(), b.clone()));
                    }
                }
                Axiom::EquivalentClasses(members) => {
                    for a in members {
                        for b in members {
                            if let (ClassExpression::Class(a), ClassExpression::Class(b)) = (a, b) {
                                subsumptions.insert((a.clone(), b.clone()));
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        loop {
            let mut new = Vec::new();
            for (a, b) in &subsumptions {
                for (c, d) in &subsumptions {
                    if b == c && !subsumptions.contains(&(a.clone(), d.clone())) {
                        new.push((a.clone(), d.clone()));
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            subsumptions.extend(new);
        }

        NaiveReasoner {
            onto,
            config,
            universe,
            subsumptions,
            facts,
        }
    }

    pub fn universe(&self) -> &BTreeSet<NamedIndividual> {
        &self.universe
    }

    pub fn instances(&self, ce: &ClassExpression) -> BTreeSet<NamedIndividual> {
        self.universe
            .iter()
            .filter(|x| self.holds(x, ce))
            .cloned()
            .collect()
    }

    fn successors(
        &self,
        x: &NamedIndividual,
        pe: &ObjectPropertyExpression,
    ) -> Vec<NamedIndividual> {
        pairs(&self.facts, pe)
            .into_iter()
            .filter(|(s, _)| s == x)
            .map(|(_, o)| o)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn asserted(&self, x: &NamedIndividual) -> Vec<&Class> {
        self.onto
            .axioms()
            .filter_map(|ax| match ax {
                Axiom::ClassAssertion {
                    individual,
                    class: ClassExpression::Class(c),
                } if individual == x => Some(c),
                _ => None,
            })
            .collect()
    }

    fn literals(&self, x: &NamedIndividual, dp: &owlkit::model::DataProperty) -> Vec<&Literal> {
        self.onto
            .axioms()
            .filter_map(|ax| match ax {
                Axiom::DataPropertyAssertion {
                    subject,
                    property,
                    value,
                } if subject == x && property == dp => Some(value),
                _ => None,
            })
            .collect()
    }

    fn count(
        &self,
        x: &NamedIndividual,
        pe: &ObjectPropertyExpression,
        filler: &ClassExpression,
    ) -> u32 {
        self.successors(x, pe)
            .iter()
            .filter(|y| self.holds(y, filler))
            .count() as u32
    }

    fn holds(&self, x: &NamedIndividual, ce: &ClassExpression) -> bool {
        use ClassExpression::*;
        match ce {
            Class(c) if c.is_thing() => true,
            Class(c) if c.is_nothing() => false,
            Class(c) => self.asserted(x).into_iter().any(|d| {
                if self.config.infer_hierarchy {
                    !d.is_nothing()
                        && (d == c || self.subsumptions.contains(&(d.clone(), c.clone())))
                } else {
                    d == c
                }
            }),
            ObjectIntersectionOf(ops) => ops.iter().all(|o| self.holds(x, o)),
            ObjectUnionOf(ops) => ops.iter().any(|o| self.holds(x, o)),
            ObjectComplementOf(c) => !self.holds(x, c),
            ObjectSomeValuesFrom { property, filler } => self
                .successors(x, property)
                .iter()
                .any(|y| self.holds(y, filler)),
            ObjectAllValuesFrom { property, filler } => {
                let succ = self.successors(x, property);
                if succ.is_empty() {
                    self.config.universal_vacuous
                } else {
                    succ.iter().all(|y| self.holds(y, filler))
                }
            }
            ObjectHasValue {
                property,
                individual,
            } => self.successors(x, property).contains(individual),
            ObjectOneOf(inds) => inds.contains(x),
            ObjectMinCardinality {
                cardinality,
                property,
                filler,
            } => self.count(x, property, filler) >= *cardinality,
            ObjectMaxCardinality {
                cardinality,
                property,
                filler,
            } => self.count(x, property, filler) <= *cardinality,
            ObjectExactCardinality {
                cardinality,
                property,
                filler,
            } => self.count(x, property, filler) == *cardinality,
            DataSomeValuesFrom { property, range } => self
                .literals(x, property)
                .into_iter()
                .any(|l| in_range(l, range)),
            DataAllValuesFrom { property, range } => {
                let values = self.literals(x, property);
                if values.is_empty() {
                    self.config.universal_vacuous
                } else {
                    values.into_iter().all(|l| in_range(l, range))
                }
            }
            DataHasValue { property, value } => self.literals(x, property).contains(&value),
        }
    }
}

fn numeric(l: &Literal) -> Option<f64> {
    match l.datatype().as_str() {
        vocab::XSD_INTEGER | vocab::XSD_DECIMAL | vocab::XSD_DOUBLE | vocab::XSD_FLOAT => {
            match l.lexical() {
                "INF" | "+INF" => Some(f64::INFINITY),
                "-INF" => Some(f64::NEG_INFINITY),
                "NaN" => Some(f64::NAN),
                s => s.parse().ok(),
            }
        }
        _ => None,
    }
}

fn in_range(l: &Literal, range: &DataRange) -> bool {
    let type_ok = |dt: &owlkit::model::Datatype| {
        dt.0.as_str() == vocab::RDFS_LITERAL || &dt.0 == l.datatype()
    };
    match range {
        DataRange::Datatype(dt) => type_ok(dt),
        DataRange::DatatypeRestriction { base, facets } => {
            type_ok(base)
                && facets.iter().all(|f| {
                    let ord = match (numeric(l), numeric(&f.value)) {
                        (Some(a), Some(b)) => a.partial_cmp(&b),
                        _ => None,
                    };
                    match (ord, f.facet) {
                        (None, _) => false,
                        (Some(o), Facet::MinInclusive) => o != Ordering::Less,
                        (Some(o), Facet::MinExclusive) => o == Ordering::Greater,
                        (Some(o), Facet::MaxInclusive) => o != Ordering::Greater,
                        (Some(o), Facet::MaxExclusive) => o == Ordering::Less,
                    }
                })
        }
        DataRange::DataOneOf(values) => values.contains(l),
    }
}

/// Instances of `ce` in `onto` computed by brute force.
pub fn naive_instances(
    onto: &Ontology,
    ce: &ClassExpression,
    config: ReasonerConfig,
) -> BTreeSet<NamedIndividual> {
    NaiveReasoner::new(onto, config).instances(ce)
}

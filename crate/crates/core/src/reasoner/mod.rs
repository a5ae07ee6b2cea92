//! Closed-world structural reasoner over an immutable snapshot of an
//! ontology.
//!
//! Instance retrieval evaluates class expressions as set operations over the
//! individuals the ontology knows about. Class and property hierarchies are
//! the told ones: SubClassOf and EquivalentClasses between named classes,
//! SubObjectPropertyOf and InverseObjectProperties between property
//! expressions. Domain/range axioms, complex TBox axioms and SWRL rules do
//! not contribute to retrieval.

mod retrieval;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::model::{
    Axiom, Class, ClassExpression, DataProperty, Iri, Literal, NamedIndividual, ObjectProperty,
    ObjectPropertyExpression,
};
use crate::ontology::Ontology;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReasonerConfig {
    /// Propagate asserted types up the class hierarchy.
    pub infer_hierarchy: bool,
    /// Individuals without successors satisfy every universal restriction.
    pub universal_vacuous: bool,
}

impl Default for ReasonerConfig {
    fn default() -> Self {
        ReasonerConfig {
            infer_hierarchy: true,
            universal_vacuous: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("unknown individual {0}")]
    UnknownIndividual(Iri),
}

pub(crate) type Ix = usize;
pub(crate) type IxSet = BTreeSet<Ix>;

/// One `DisjointClasses` clash: the individual and the two disjoint classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DisjointnessViolation {
    pub individual: NamedIndividual,
    pub first: Class,
    pub second: Class,
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    config: ReasonerConfig,
    individuals: Vec<NamedIndividual>,
    index: HashMap<NamedIndividual, Ix>,
    asserted: Vec<BTreeSet<Class>>,
    /// Reflexive-transitive superclasses of every class in the signature,
    /// owl:Thing and owl:Nothing.
    supers: BTreeMap<Class, BTreeSet<Class>>,
    forward: HashMap<(Ix, ObjectProperty), IxSet>,
    backward: HashMap<(Ix, ObjectProperty), IxSet>,
    data: HashMap<(Ix, DataProperty), BTreeSet<Literal>>,
    disjoint: Vec<Vec<Class>>,
}

fn reach<T: Ord + Clone>(edges: &BTreeMap<T, BTreeSet<T>>, start: &T) -> BTreeSet<T> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start.clone()];
    while let Some(n) = stack.pop() {
        for m in edges.get(&n).into_iter().flatten() {
            if seen.insert(m.clone()) {
                stack.push(m.clone());
            }
        }
    }
    seen
}

fn individuals_of(axiom: &Axiom) -> Vec<&NamedIndividual> {
    match axiom {
        Axiom::ClassAssertion { individual, .. } => vec![individual],
        Axiom::ObjectPropertyAssertion {
            subject, object, ..
        } => vec![subject, object],
        Axiom::DataPropertyAssertion { subject, .. } => vec![subject],
        _ => vec![],
    }
}

impl Snapshot {
    pub fn build(onto: &Ontology, config: ReasonerConfig) -> Snapshot {
        let mut universe: BTreeSet<NamedIndividual> = BTreeSet::new();
        for ax in onto.axioms() {
            if let Axiom::Declaration(e) = ax {
                if e.kind == crate::model::EntityKind::NamedIndividual {
                    universe.insert(NamedIndividual(e.iri.clone()));
                }
            }
            universe.extend(individuals_of(ax).into_iter().cloned());
        }
        let individuals: Vec<NamedIndividual> = universe.into_iter().collect();
        let index: HashMap<NamedIndividual, Ix> = individuals
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();

        let mut classes: BTreeSet<Class> = onto.classes_in_signature().into_iter().collect();
        classes.insert(Class::thing());
        classes.insert(Class::nothing());
        let mut class_edges: BTreeMap<Class, BTreeSet<Class>> = BTreeMap::new();
        for c in &classes {
            class_edges
                .entry(c.clone())
                .or_default()
                .insert(Class::thing());
            class_edges
                .entry(Class::nothing())
                .or_default()
                .insert(c.clone());
        }
        let mut prop_edges: BTreeMap<ObjectPropertyExpression, BTreeSet<ObjectPropertyExpression>> =
            BTreeMap::new();
        let mut link = |a: &ObjectPropertyExpression, b: &ObjectPropertyExpression| {
            prop_edges.entry(a.clone()).or_default().insert(b.clone());
            prop_edges
                .entry(a.inverse())
                .or_default()
                .insert(b.inverse());
        };
        let mut asserted = vec![BTreeSet::new(); individuals.len()];
        let mut data: HashMap<(Ix, DataProperty), BTreeSet<Literal>> = HashMap::new();
        let mut disjoint = Vec::new();
        let mut facts = Vec::new();
        for ax in onto.axioms() {
            match ax {
                Axiom::SubClassOf { sub, sup } => {
                    if let (Some(a), Some(b)) = (sub.as_class(), sup.as_class()) {
                        class_edges.entry(a.clone()).or_default().insert(b.clone());
                    }
                }
                Axiom::EquivalentClasses(members) => {
                    let named: Vec<&Class> = members.iter().filter_map(|m| m.as_class()).collect();
                    for a in &named {
                        for b in &named {
                            class_edges
                                .entry((*a).clone())
                                .or_default()
                                .insert((*b).clone());
                        }
                    }
                }
                Axiom::DisjointClasses(members) => {
                    let named: Vec<Class> = members
                        .iter()
                        .filter_map(|m| m.as_class())
                        .cloned()
                        .collect();
                    if named.len() >= 2 {
                        disjoint.push(named);
                    }
                }
                Axiom::ClassAssertion { individual, class } => {
                    if let Some(c) = class.as_class() {
                        asserted[index[individual]].insert(c.clone());
                    }
                }
                Axiom::ObjectPropertyAssertion {
                    subject,
                    property,
                    object,
                } => {
                    let (s, o) = (index[subject], index[object]);
                    if property.is_inverse() {
                        facts.push((o, property.property().clone(), s));
                    } else {
                        facts.push((s, property.property().clone(), o));
                    }
                }
                Axiom::DataPropertyAssertion {
                    subject,
                    property,
                    value,
                } => {
                    data.entry((index[subject], property.clone()))
                        .or_default()
                        .insert(value.clone());
                }
                Axiom::SubObjectPropertyOf { sub, sup } => link(sub, sup),
                Axiom::InverseObjectProperties(a, b) => {
                    link(a, &b.inverse());
                    link(&b.inverse(), a);
                }
                _ => {}
            }
        }

        let supers = classes
            .iter()
            .map(|c| (c.clone(), reach(&class_edges, c)))
            .collect();

        let mut prop_supers: HashMap<ObjectProperty, BTreeSet<ObjectPropertyExpression>> =
            HashMap::new();
        let mut forward: HashMap<(Ix, ObjectProperty), IxSet> = HashMap::new();
        let mut backward: HashMap<(Ix, ObjectProperty), IxSet> = HashMap::new();
        for (s, p, o) in facts {
            let sups = prop_supers
                .entry(p.clone())
                .or_insert_with(|| reach(&prop_edges, &ObjectPropertyExpression::named(p)));
            for e in sups.iter() {
                let (a, b) = if e.is_inverse() { (o, s) } else { (s, o) };
                let q = e.property().clone();
                forward.entry((a, q.clone())).or_default().insert(b);
                backward.entry((b, q)).or_default().insert(a);
            }
        }

        Snapshot {
            config,
            individuals,
            index,
            asserted,
            supers,
            forward,
            backward,
            data,
            disjoint,
        }
    }

    pub fn config(&self) -> ReasonerConfig {
        self.config
    }

    /// Every declared or asserted individual, sorted by IRI.
    pub fn individuals(&self) -> &[NamedIndividual] {
        &self.individuals
    }

    pub fn contains_individual(&self, individual: &NamedIndividual) -> bool {
        self.index.contains_key(individual)
    }

    fn ix(&self, individual: &NamedIndividual) -> Result<Ix, ReasonerError> {
        self.index
            .get(individual)
            .copied()
            .ok_or_else(|| ReasonerError::UnknownIndividual(individual.0.clone()))
    }

    fn to_individuals(&self, set: IxSet) -> BTreeSet<NamedIndividual> {
        set.into_iter()
            .map(|i| self.individuals[i].clone())
            .collect()
    }

    pub(crate) fn successors(&self, x: Ix, p: &ObjectPropertyExpression) -> Option<&IxSet> {
        let key = (x, p.property().clone());
        if p.is_inverse() {
            self.backward.get(&key)
        } else {
            self.forward.get(&key)
        }
    }

    pub(crate) fn literals(&self, x: Ix, p: &DataProperty) -> Option<&BTreeSet<Literal>> {
        self.data.get(&(x, p.clone()))
    }

    /// Reflexive-transitive superclasses, always including owl:Thing.
    fn supers_of(&self, c: &Class) -> BTreeSet<Class> {
        self.supers
            .get(c)
            .cloned()
            .unwrap_or_else(|| BTreeSet::from([c.clone(), Class::thing()]))
    }

    pub(crate) fn subsumed(&self, sub: &Class, sup: &Class) -> bool {
        sub == sup
            || sup.is_thing()
            || sub.is_nothing()
            || self.supers.get(sub).is_some_and(|s| s.contains(sup))
    }

    fn strictly_below(&self, a: &Class, b: &Class) -> bool {
        self.subsumed(a, b) && !self.subsumed(b, a)
    }

    fn candidates<'a>(&'a self, c: &'a Class) -> impl Iterator<Item = &'a Class> + 'a {
        self.supers
            .keys()
            .chain(std::iter::once(c))
            .filter(|d| !d.is_nothing())
    }

    pub(crate) fn asserted_types(&self, x: Ix) -> &BTreeSet<Class> {
        &self.asserted[x]
    }

    /// Individuals satisfying `ce` under closed-world set semantics.
    pub fn instances(&self, ce: &ClassExpression) -> BTreeSet<NamedIndividual> {
        self.to_individuals(self.eval(ce))
    }

    /// Named types of an individual: the upward closure of its asserted
    /// named types plus owl:Thing, or only the minimal elements when `direct`.
    pub fn types(
        &self,
        individual: &NamedIndividual,
        direct: bool,
    ) -> Result<BTreeSet<Class>, ReasonerError> {
        let x = self.ix(individual)?;
        let mut all = BTreeSet::from([Class::thing()]);
        for d in &self.asserted[x] {
            all.extend(self.supers_of(d));
        }
        if !direct {
            return Ok(all);
        }
        Ok(all
            .iter()
            .filter(|d| !all.iter().any(|e| self.strictly_below(e, d)))
            .cloned()
            .collect())
    }

    /// Named subclasses of `c`, reflexive unless `direct`. owl:Nothing is
    /// never reported.
    pub fn sub_classes(&self, c: &Class, direct: bool) -> BTreeSet<Class> {
        let below: BTreeSet<Class> = self
            .candidates(c)
            .filter(|d| self.subsumed(d, c))
            .cloned()
            .collect();
        if !direct {
            return below;
        }
        below
            .iter()
            .filter(|d| {
                self.strictly_below(d, c)
                    && !below
                        .iter()
                        .any(|e| self.strictly_below(d, e) && self.strictly_below(e, c))
            })
            .cloned()
            .collect()
    }

    /// Named superclasses of `c`, reflexive unless `direct`. owl:Thing is
    /// an implicit superclass of every class.
    pub fn super_classes(&self, c: &Class, direct: bool) -> BTreeSet<Class> {
        let above: BTreeSet<Class> = self
            .candidates(c)
            .filter(|d| self.subsumed(c, d))
            .cloned()
            .collect();
        if !direct {
            return above;
        }
        above
            .iter()
            .filter(|d| {
                self.strictly_below(c, d)
                    && !above
                        .iter()
                        .any(|e| self.strictly_below(c, e) && self.strictly_below(e, d))
            })
            .cloned()
            .collect()
    }

    /// Classes equivalent to `c` under the told hierarchy, excluding `c`.
    pub fn equivalent_classes(&self, c: &Class) -> BTreeSet<Class> {
        self.candidates(c)
            .filter(|d| *d != c && self.subsumed(d, c) && self.subsumed(c, d))
            .cloned()
            .collect()
    }

    pub fn object_property_values(
        &self,
        individual: &NamedIndividual,
        property: &ObjectPropertyExpression,
    ) -> Result<BTreeSet<NamedIndividual>, ReasonerError> {
        let x = self.ix(individual)?;
        Ok(self.to_individuals(self.successors(x, property).cloned().unwrap_or_default()))
    }

    pub fn data_property_values(
        &self,
        individual: &NamedIndividual,
        property: &DataProperty,
    ) -> Result<BTreeSet<Literal>, ReasonerError> {
        let x = self.ix(individual)?;
        Ok(self.literals(x, property).cloned().unwrap_or_default())
    }

    /// Individuals that are instances of two classes declared disjoint,
    /// with membership lifted through the class hierarchy.
    pub fn disjointness_violations(&self) -> Vec<DisjointnessViolation> {
        let mut out = BTreeSet::new();
        for members in &self.disjoint {
            for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    let both: IxSet = self
                        .hierarchy_instances(a)
                        .intersection(&self.hierarchy_instances(b))
                        .copied()
                        .collect();
                    for x in both {
                        out.insert(DisjointnessViolation {
                            individual: self.individuals[x].clone(),
                            first: a.clone(),
                            second: b.clone(),
                        });
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

pub fn build_snapshot(onto: &Ontology, config: ReasonerConfig) -> Snapshot {
    Snapshot::build(onto, config)
}

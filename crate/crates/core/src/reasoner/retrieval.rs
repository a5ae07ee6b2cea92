use crate::model::{Class, ClassExpression, DataProperty, Literal};

use super::{Ix, IxSet, Snapshot};

impl Snapshot {
    fn universe(&self) -> IxSet {
        (0..self.individuals.len()).collect()
    }

    fn filter(&self, keep: impl Fn(Ix) -> bool) -> IxSet {
        (0..self.individuals.len()).filter(|&x| keep(x)).collect()
    }

    /// Individuals with an asserted type below `c` in the told hierarchy.
    pub(crate) fn hierarchy_instances(&self, c: &Class) -> IxSet {
        self.filter(|x| {
            self.asserted_types(x)
                .iter()
                .any(|d| !d.is_nothing() && self.subsumed(d, c))
        })
    }

    fn named(&self, c: &Class) -> IxSet {
        if c.is_thing() {
            self.universe()
        } else if c.is_nothing() {
            IxSet::new()
        } else if self.config.infer_hierarchy {
            self.hierarchy_instances(c)
        } else {
            self.filter(|x| self.asserted_types(x).contains(c))
        }
    }

    fn literals_or_empty(&self, x: Ix, p: &DataProperty) -> Vec<&Literal> {
        self.literals(x, p).into_iter().flatten().collect()
    }

    pub(crate) fn eval(&self, ce: &ClassExpression) -> IxSet {
        use ClassExpression::*;
        let empty = IxSet::new();
        let count = |x: Ix, p, filler: &IxSet| {
            self.successors(x, p)
                .unwrap_or(&empty)
                .intersection(filler)
                .count() as u64
        };
        match ce {
            Class(c) => self.named(c),
            ObjectIntersectionOf(ops) => {
                let mut acc = self.eval(&ops[0]);
                for o in &ops[1..] {
                    let next = self.eval(o);
                    acc.retain(|x| next.contains(x));
                }
                acc
            }
            ObjectUnionOf(ops) => ops.iter().flat_map(|o| self.eval(o)).collect(),
            ObjectComplementOf(c) => {
                let inner = self.eval(c);
                self.filter(|x| !inner.contains(&x))
            }
            ObjectSomeValuesFrom { property, filler } => {
                let f = self.eval(filler);
                self.filter(|x| count(x, property, &f) > 0)
            }
            ObjectAllValuesFrom { property, filler } => {
                let f = self.eval(filler);
                self.filter(|x| match self.successors(x, property) {
                    Some(s) if !s.is_empty() => s.is_subset(&f),
                    _ => self.config.universal_vacuous,
                })
            }
            ObjectHasValue {
                property,
                individual,
            } => match self.index.get(individual) {
                Some(&a) => {
                    self.filter(|x| self.successors(x, property).is_some_and(|s| s.contains(&a)))
                }
                None => IxSet::new(),
            },
            ObjectOneOf(inds) => inds
                .iter()
                .filter_map(|i| self.index.get(i).copied())
                .collect(),
            ObjectMinCardinality {
                cardinality,
                property,
                filler,
            } => {
                let f = self.eval(filler);
                self.filter(|x| count(x, property, &f) >= u64::from(*cardinality))
            }
            ObjectMaxCardinality {
                cardinality,
                property,
                filler,
            } => {
                let f = self.eval(filler);
                self.filter(|x| count(x, property, &f) <= u64::from(*cardinality))
            }
            ObjectExactCardinality {
                cardinality,
                property,
                filler,
            } => {
                let f = self.eval(filler);
                self.filter(|x| count(x, property, &f) == u64::from(*cardinality))
            }
            DataSomeValuesFrom { property, range } => self.filter(|x| {
                self.literals_or_empty(x, property)
                    .into_iter()
                    .any(|l| range.admits(l))
            }),
            DataAllValuesFrom { property, range } => self.filter(|x| {
                let values = self.literals_or_empty(x, property);
                if values.is_empty() {
                    self.config.universal_vacuous
                } else {
                    values.into_iter().all(|l| range.admits(l))
                }
            }),
            DataHasValue { property, value } => self.filter(|x| {
                self.literals(x, property)
                    .is_some_and(|s| s.contains(value))
            }),
        }
    }
}

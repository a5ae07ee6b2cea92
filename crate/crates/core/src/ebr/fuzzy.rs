use std::collections::BTreeSet;

use num_traits::Float;

use crate::model::{Class, ClassExpression, NamedIndividual, ObjectProperty};
use crate::reasoner::Snapshot;

use super::model::{sigmoid, EmbeddingModel};
use super::{type_relation, EbrError};

/// Source of membership probabilities over a fixed universe of individuals.
pub trait Scorer<F> {
    /// `μ_C(x)` for every `x` in `universe`.
    fn class_memberships(
        &self,
        class: &Class,
        universe: &[NamedIndividual],
    ) -> Result<Vec<F>, EbrError>;

    /// Row-major matrix whose `[x][y]` entry is the probability of the
    /// edge `x property y`.
    fn edge_probabilities(
        &self,
        property: &ObjectProperty,
        universe: &[NamedIndividual],
    ) -> Result<Vec<Vec<F>>, EbrError>;
}

/// Individuals unseen during training score zero: nothing is known about
/// them, which under the closed-world reading means "not a member".
impl<F: Float> Scorer<F> for EmbeddingModel<F> {
    fn class_memberships(
        &self,
        class: &Class,
        universe: &[NamedIndividual],
    ) -> Result<Vec<F>, EbrError> {
        let c = self
            .entity_id(&class.0)
            .ok_or_else(|| EbrError::UnknownSymbol(class.0.clone()))?;
        let ty = self
            .relation_id(&type_relation())
            .ok_or_else(|| EbrError::UnknownSymbol(class.0.clone()))?;
        Ok(universe
            .iter()
            .map(|x| match self.entity_id(&x.0) {
                Some(x) => sigmoid(self.score_ids(x, ty, c)),
                None => F::zero(),
            })
            .collect())
    }

    fn edge_probabilities(
        &self,
        property: &ObjectProperty,
        universe: &[NamedIndividual],
    ) -> Result<Vec<Vec<F>>, EbrError> {
        let r = self
            .relation_id(&property.0)
            .ok_or_else(|| EbrError::UnknownSymbol(property.0.clone()))?;
        let ids: Vec<Option<usize>> = universe.iter().map(|x| self.entity_id(&x.0)).collect();
        Ok(ids
            .iter()
            .map(|x| {
                ids.iter()
                    .map(|y| match (x, y) {
                        (Some(x), Some(y)) => sigmoid(self.score_ids(*x, r, *y)),
                        _ => F::zero(),
                    })
                    .collect()
            })
            .collect())
    }
}

/// 0/1 memberships read off a closed-world snapshot.
#[derive(Debug, Clone, Copy)]
pub struct CrispScorer<'a> {
    pub snapshot: &'a Snapshot,
}

impl<F: Float> Scorer<F> for CrispScorer<'_> {
    fn class_memberships(
        &self,
        class: &Class,
        universe: &[NamedIndividual],
    ) -> Result<Vec<F>, EbrError> {
        let members = self.snapshot.instances(&class.clone().into());
        Ok(universe
            .iter()
            .map(|x| {
                if members.contains(x) {
                    F::one()
                } else {
                    F::zero()
                }
            })
            .collect())
    }

    fn edge_probabilities(
        &self,
        property: &ObjectProperty,
        universe: &[NamedIndividual],
    ) -> Result<Vec<Vec<F>>, EbrError> {
        Ok(universe
            .iter()
            .map(|x| {
                let succ = self
                    .snapshot
                    .object_property_values(x, &property.clone().into())
                    .unwrap_or_default();
                universe
                    .iter()
                    .map(|y| {
                        if succ.contains(y) {
                            F::one()
                        } else {
                            F::zero()
                        }
                    })
                    .collect()
            })
            .collect())
    }
}

/// Fuzzy membership degree of every individual of a universe.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipMap<F> {
    entries: Vec<(NamedIndividual, F)>,
}

impl<F: Float> MembershipMap<F> {
    pub fn get(&self, individual: &NamedIndividual) -> Option<F> {
        self.entries
            .iter()
            .find(|(x, _)| x == individual)
            .map(|(_, m)| *m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NamedIndividual, F)> {
        self.entries.iter().map(|(x, m)| (x, *m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Individuals whose degree is at least `gamma`.
    pub fn at_least(&self, gamma: F) -> BTreeSet<NamedIndividual> {
        self.iter()
            .filter(|(_, m)| *m >= gamma)
            .map(|(x, _)| x.clone())
            .collect()
    }
}

struct Evaluator<'a, S, F> {
    scorer: &'a S,
    snapshot: &'a Snapshot,
    universe: &'a [NamedIndividual],
    half: F,
}

fn crisp<F: Float>(b: bool) -> F {
    if b {
        F::one()
    } else {
        F::zero()
    }
}

impl<S: Scorer<F>, F: Float> Evaluator<'_, S, F> {
    fn edges(&self, p: &crate::model::ObjectPropertyExpression) -> Result<Vec<Vec<F>>, EbrError> {
        let m = self
            .scorer
            .edge_probabilities(p.property(), self.universe)?;
        if !p.is_inverse() {
            return Ok(m);
        }
        let n = self.universe.len();
        Ok((0..n).map(|x| (0..n).map(|y| m[y][x]).collect()).collect())
    }

    fn counts(
        &self,
        p: &crate::model::ObjectPropertyExpression,
        filler: &ClassExpression,
    ) -> Result<Vec<u64>, EbrError> {
        let e = self.edges(p)?;
        let f = self.eval(filler)?;
        Ok(e.iter()
            .map(|row| {
                row.iter()
                    .zip(&f)
                    .filter(|(pxy, fy)| pxy.min(**fy) >= self.half)
                    .count() as u64
            })
            .collect())
    }

    fn eval(&self, ce: &ClassExpression) -> Result<Vec<F>, EbrError> {
        use ClassExpression::*;
        let n = self.universe.len();
        Ok(match ce {
            Class(c) if c.is_thing() => vec![F::one(); n],
            Class(c) if c.is_nothing() => vec![F::zero(); n],
            Class(c) => self.scorer.class_memberships(c, self.universe)?,
            ObjectIntersectionOf(ops) | ObjectUnionOf(ops) => {
                let union = matches!(ce, ObjectUnionOf(_));
                let mut acc = self.eval(&ops[0])?;
                for o in &ops[1..] {
                    for (a, b) in acc.iter_mut().zip(self.eval(o)?) {
                        *a = if union { a.max(b) } else { a.min(b) };
                    }
                }
                acc
            }
            ObjectComplementOf(c) => self.eval(c)?.into_iter().map(|m| F::one() - m).collect(),
            ObjectSomeValuesFrom { property, filler } => {
                let e = self.edges(property)?;
                let f = self.eval(filler)?;
                e.iter()
                    .map(|row| {
                        row.iter()
                            .zip(&f)
                            .fold(F::zero(), |acc, (pxy, fy)| acc.max(pxy.min(*fy)))
                    })
                    .collect()
            }
            ObjectAllValuesFrom { property, filler } => {
                let e = self.edges(property)?;
                let f = self.eval(filler)?;
                e.iter()
                    .map(|row| {
                        row.iter().zip(&f).fold(F::one(), |acc, (pxy, fy)| {
                            acc.min((F::one() - *pxy).max(*fy))
                        })
                    })
                    .collect()
            }
            ObjectHasValue {
                property,
                individual,
            } => self.eval(&ClassExpression::some(
                property.clone(),
                ObjectOneOf(vec![individual.clone()]),
            ))?,
            ObjectOneOf(inds) => self
                .universe
                .iter()
                .map(|x| crisp(inds.contains(x)))
                .collect(),
            ObjectMinCardinality {
                cardinality,
                property,
                filler,
            } => self
                .counts(property, filler)?
                .into_iter()
                .map(|c| crisp(c >= u64::from(*cardinality)))
                .collect(),
            ObjectMaxCardinality {
                cardinality,
                property,
                filler,
            } => self
                .counts(property, filler)?
                .into_iter()
                .map(|c| crisp(c <= u64::from(*cardinality)))
                .collect(),
            ObjectExactCardinality {
                cardinality,
                property,
                filler,
            } => self
                .counts(property, filler)?
                .into_iter()
                .map(|c| crisp(c == u64::from(*cardinality)))
                .collect(),
            DataSomeValuesFrom { .. } | DataAllValuesFrom { .. } | DataHasValue { .. } => {
                let members = self.snapshot.instances(ce);
                self.universe
                    .iter()
                    .map(|x| crisp(members.contains(x)))
                    .collect()
            }
        })
    }
}

/// Gödel fuzzy membership of every individual of `snapshot` in `ce`.
/// Cardinalities and nominals are crisp, counting successors whose edge and
/// filler degrees are both at least 0.5; data restrictions are evaluated
/// exactly against the asserted literals.
pub fn membership<F: Float, S: Scorer<F>>(
    scorer: &S,
    ce: &ClassExpression,
    snapshot: &Snapshot,
) -> Result<MembershipMap<F>, EbrError> {
    let universe = snapshot.individuals();
    let ev = Evaluator {
        scorer,
        snapshot,
        universe,
        half: F::from(0.5).expect("representable"),
    };
    let degrees = ev.eval(ce)?;
    Ok(MembershipMap {
        entries: universe.iter().cloned().zip(degrees).collect(),
    })
}

/// Individuals whose membership in `ce` is at least `gamma`.
pub fn retrieve<F: Float, S: Scorer<F>>(
    scorer: &S,
    ce: &ClassExpression,
    snapshot: &Snapshot,
    gamma: F,
) -> Result<BTreeSet<NamedIndividual>, EbrError> {
    Ok(membership(scorer, ce, snapshot)?.at_least(gamma))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetrievalMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Set-based precision, recall and F1 of `predicted` against `gold`. An
/// empty prediction has precision 1 and an empty gold set recall 1.
pub fn retrieval_metrics(
    predicted: &BTreeSet<NamedIndividual>,
    gold: &BTreeSet<NamedIndividual>,
) -> RetrievalMetrics {
    let tp = predicted.intersection(gold).count() as f64;
    let ratio = |den: usize| if den == 0 { 1.0 } else { tp / den as f64 };
    let (precision, recall) = (ratio(predicted.len()), ratio(gold.len()));
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    RetrievalMetrics {
        precision,
        recall,
        f1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Axiom;
    use crate::ontology::Ontology;
    use crate::reasoner::ReasonerConfig;

    const NS: &str = "http://e.org/";

    fn c(n: &str) -> Class {
        Class::parse(&format!("{NS}{n}")).unwrap()
    }
    fn i(n: &str) -> NamedIndividual {
        NamedIndividual::parse(&format!("{NS}{n}")).unwrap()
    }
    fn r(n: &str) -> ObjectProperty {
        ObjectProperty::parse(&format!("{NS}{n}")).unwrap()
    }

    fn snapshot() -> Snapshot {
        let mut o = Ontology::new();
        o.add_axiom(Axiom::class_assertion(i("a"), c("A")));
        o.add_axiom(Axiom::class_assertion(i("b"), c("B")));
        o.add_axiom(Axiom::object_property_assertion(r("r"), i("a"), i("b")));
        o.add_axiom(Axiom::declaration(i("z")));
        Snapshot::build(&o, ReasonerConfig::default())
    }

    #[test]
    fn crisp_scorer_agrees_on_examples() {
        let s = snapshot();
        let scorer = CrispScorer { snapshot: &s };
        let exprs = [
            ClassExpression::some(r("r"), c("B").into()),
            ClassExpression::all(r("r"), c("A").into()),
            ClassExpression::max(0, r("r"), ClassExpression::thing()),
            ClassExpression::has_value(
                crate::model::ObjectPropertyExpression::named(r("r")).inverse(),
                i("a"),
            ),
            ClassExpression::complement(c("A").into()),
        ];
        for ce in exprs {
            assert_eq!(
                retrieve::<f64, _>(&scorer, &ce, &s, 0.5).unwrap(),
                s.instances(&ce),
                "{ce:?}"
            );
        }
    }

    #[test]
    fn top_bottom_and_thresholds() {
        let s = snapshot();
        let scorer = CrispScorer { snapshot: &s };
        let top = membership::<f64, _>(&scorer, &ClassExpression::thing(), &s).unwrap();
        assert!(top.iter().all(|(_, m)| m == 1.0));
        assert!(
            retrieve::<f64, _>(&scorer, &ClassExpression::nothing(), &s, 1e-9)
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            retrieve::<f64, _>(&scorer, &c("A").into(), &s, 0.0)
                .unwrap()
                .len(),
            s.individuals().len()
        );
    }

    #[test]
    fn model_reports_unknown_symbols() {
        let m = EmbeddingModel::<f64>::zeros(2, &[i("a").0], &[type_relation()]);
        let s = snapshot();
        assert!(matches!(
            membership(&m, &c("Nope").into(), &s),
            Err(EbrError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn metrics() {
        let gold: BTreeSet<_> = [i("a"), i("b")].into();
        let pred: BTreeSet<_> = [i("a"), i("z")].into();
        let m = retrieval_metrics(&pred, &gold);
        assert_eq!((m.precision, m.recall, m.f1), (0.5, 0.5, 0.5));
        let e = retrieval_metrics(&BTreeSet::new(), &BTreeSet::new());
        assert_eq!(e.f1, 1.0);
    }
}

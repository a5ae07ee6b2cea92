//! Evaluator for exactly the SPARQL subset produced by [`super::to_sparql`].
//!
//! Patterns of a group are applied left to right to the incoming solutions;
//! the translator places every FILTER after the patterns binding its
//! variables, so this matches SPARQL's group-level filter scoping.
//! Sub-selects are evaluated on their own and joined on the key variable.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::model::Iri;
use crate::serialization::{Term, Triple};

use super::query::{FilterExpr, Pattern, SparqlQuery, TermPattern};
use super::SparqlError;

type Binding = BTreeMap<String, Term>;

struct Graph<'a> {
    by_predicate: HashMap<&'a Iri, Vec<&'a Triple>>,
}

fn bound(t: &TermPattern, b: &Binding) -> Option<Term> {
    match t {
        TermPattern::Var(v) => b.get(v).cloned(),
        TermPattern::Iri(i) => Some(Term::Iri(i.clone())),
        TermPattern::Literal(l) => Some(Term::Literal(l.clone())),
    }
}

fn unify(t: &TermPattern, value: &Term, b: &mut Binding) -> bool {
    match t {
        TermPattern::Var(v) => match b.get(v) {
            Some(existing) => existing == value,
            None => {
                b.insert(v.clone(), value.clone());
                true
            }
        },
        other => bound(other, b).as_ref() == Some(value),
    }
}

impl Graph<'_> {
    fn group(
        &self,
        patterns: &[Pattern],
        seeds: Vec<Binding>,
    ) -> Result<Vec<Binding>, SparqlError> {
        let mut sols = seeds;
        for p in patterns {
            if sols.is_empty() {
                break;
            }
            sols = self.apply(p, sols)?;
        }
        Ok(sols)
    }

    fn apply(&self, p: &Pattern, sols: Vec<Binding>) -> Result<Vec<Binding>, SparqlError> {
        let mut out = Vec::new();
        match p {
            Pattern::Triple(s, pred, o) => {
                let pred = match pred {
                    TermPattern::Iri(i) => i,
                    _ => {
                        return Err(SparqlError::UnsupportedConstruct(
                            "variable predicate".into(),
                        ))
                    }
                };
                let candidates = self
                    .by_predicate
                    .get(pred)
                    .map(Vec::as_slice)
                    .unwrap_or(&[]);
                for sol in sols {
                    for t in candidates {
                        let mut b = sol.clone();
                        if unify(s, &t.subject, &mut b) && unify(o, &t.object, &mut b) {
                            out.push(b);
                        }
                    }
                }
            }
            Pattern::Union(branches) => {
                for sol in sols {
                    for branch in branches {
                        out.extend(self.group(branch, vec![sol.clone()])?);
                    }
                }
            }
            Pattern::NotExists(inner) => {
                for sol in sols {
                    if self.group(inner, vec![sol.clone()])?.is_empty() {
                        out.push(sol);
                    }
                }
            }
            Pattern::Values { var, values } => {
                for sol in sols {
                    for v in values {
                        let value = bound(v, &sol).ok_or_else(|| {
                            SparqlError::UnsupportedConstruct("variable inside VALUES".into())
                        })?;
                        let mut b = sol.clone();
                        if unify(&TermPattern::Var(var.clone()), &value, &mut b) {
                            out.push(b);
                        }
                    }
                }
            }
            Pattern::CountSelect {
                key,
                counted,
                count,
                inner,
                op,
                bound: n,
            } => {
                let rows = self.group(inner, vec![Binding::new()])?;
                let mut groups: BTreeMap<Term, BTreeSet<Term>> = BTreeMap::new();
                for row in rows {
                    if let Some(k) = row.get(key) {
                        let entry = groups.entry(k.clone()).or_default();
                        if let Some(c) = row.get(counted) {
                            entry.insert(c.clone());
                        }
                    }
                }
                let passing: Vec<(Term, usize)> = groups
                    .into_iter()
                    .filter(|(_, members)| op.holds((members.len() as u64).cmp(&u64::from(*n))))
                    .map(|(k, members)| (k, members.len()))
                    .collect();
                for sol in sols {
                    for (k, c) in &passing {
                        let mut b = sol.clone();
                        let count_term = Term::Literal(crate::model::Literal::integer(*c as i64));
                        if unify(&TermPattern::Var(key.clone()), k, &mut b)
                            && unify(&TermPattern::Var(count.clone()), &count_term, &mut b)
                        {
                            out.push(b);
                        }
                    }
                }
            }
            Pattern::Filter(f) => {
                for sol in sols {
                    if filter(f, &sol)? {
                        out.push(sol);
                    }
                }
            }
        }
        Ok(out)
    }
}

fn filter(f: &FilterExpr, b: &Binding) -> Result<bool, SparqlError> {
    Ok(match f {
        FilterExpr::False => false,
        FilterExpr::DatatypeIs { var, datatype } => match b.get(var) {
            Some(Term::Literal(l)) => l.datatype() == datatype,
            _ => false,
        },
        FilterExpr::Compare { var, op, value } => {
            if value.numeric().is_none() {
                return Err(SparqlError::UnsupportedConstruct(format!(
                    "comparison against non-numeric literal \"{}\"",
                    value.lexical()
                )));
            }
            match b.get(var) {
                Some(Term::Literal(l)) => l.numeric_cmp(value).is_some_and(|o| op.holds(o)),
                _ => false,
            }
        }
    })
}

/// Evaluates `query` over `triples`, returning the IRIs bound to the
/// projected variable.
pub fn eval_query(query: &SparqlQuery, triples: &[Triple]) -> Result<BTreeSet<Iri>, SparqlError> {
    let mut by_predicate: HashMap<&Iri, Vec<&Triple>> = HashMap::new();
    for t in triples {
        by_predicate.entry(&t.predicate).or_default().push(t);
    }
    let graph = Graph { by_predicate };
    let sols = graph.group(&query.patterns, vec![Binding::new()])?;
    Ok(sols
        .into_iter()
        .filter_map(|mut b| match b.remove(&query.var) {
            Some(Term::Iri(i)) => Some(i),
            _ => None,
        })
        .collect())
}

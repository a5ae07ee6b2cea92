use crate::model::{
    validate_expression, vocab, ClassExpression, DataProperty, DataRange, Facet, Iri,
    ObjectPropertyExpression,
};

use super::query::{CompareOp, FilterExpr, Pattern, SparqlQuery, TermPattern};
use super::SparqlError;

fn rdf_type() -> TermPattern {
    TermPattern::Iri(Iri::new(vocab::RDF_TYPE).expect("rdf:type"))
}

fn var(v: &str) -> TermPattern {
    TermPattern::Var(v.to_string())
}

/// Membership in the individual universe: every individual carries an
/// `rdf:type owl:NamedIndividual` triple from its declaration.
fn top(x: &str) -> Pattern {
    Pattern::Triple(
        var(x),
        rdf_type(),
        TermPattern::Iri(
            Iri::new(&format!("{}NamedIndividual", crate::model::ns::OWL)).expect("owl"),
        ),
    )
}

struct Translator {
    next_y: usize,
    next_c: usize,
}

impl Translator {
    fn fresh_y(&mut self) -> String {
        let v = format!("y{}", self.next_y);
        self.next_y += 1;
        v
    }

    fn fresh_c(&mut self) -> String {
        let v = format!("c{}", self.next_c);
        self.next_c += 1;
        v
    }

    fn edge(x: &str, p: &ObjectPropertyExpression, y: &str) -> Pattern {
        let pred = TermPattern::Iri(p.property().0.clone());
        if p.is_inverse() {
            Pattern::Triple(var(y), pred, var(x))
        } else {
            Pattern::Triple(var(x), pred, var(y))
        }
    }

    fn data_edge(x: &str, p: &DataProperty, y: &str) -> Pattern {
        Pattern::Triple(var(x), TermPattern::Iri(p.0.clone()), var(y))
    }

    fn range(y: &str, range: &DataRange) -> Vec<Pattern> {
        let datatype = |dt: &Iri| {
            if dt.as_str() == vocab::RDFS_LITERAL {
                None
            } else {
                Some(Pattern::Filter(FilterExpr::DatatypeIs {
                    var: y.to_string(),
                    datatype: dt.clone(),
                }))
            }
        };
        match range {
            DataRange::Datatype(dt) => datatype(&dt.0).into_iter().collect(),
            DataRange::DatatypeRestriction { base, facets } => {
                let mut out: Vec<Pattern> = datatype(&base.0).into_iter().collect();
                for f in facets {
                    let op = match f.facet {
                        Facet::MinInclusive => CompareOp::Ge,
                        Facet::MinExclusive => CompareOp::Gt,
                        Facet::MaxInclusive => CompareOp::Le,
                        Facet::MaxExclusive => CompareOp::Lt,
                    };
                    out.push(Pattern::Filter(FilterExpr::Compare {
                        var: y.to_string(),
                        op,
                        value: f.value.clone(),
                    }));
                }
                out
            }
            DataRange::DataOneOf(values) => vec![Pattern::Values {
                var: y.to_string(),
                values: values.iter().cloned().map(TermPattern::Literal).collect(),
            }],
        }
    }

    fn cardinality(
        &mut self,
        x: &str,
        op: CompareOp,
        n: u32,
        p: &ObjectPropertyExpression,
        filler: &ClassExpression,
    ) -> Vec<Pattern> {
        let y = self.fresh_y();
        let mut inner = vec![Self::edge(x, p, &y)];
        inner.extend(self.translate(filler, &y));
        let zero = || vec![top(x), Pattern::NotExists(inner.clone())];
        match (op, n) {
            (CompareOp::Ge, 0) => vec![top(x)],
            (CompareOp::Eq, 0) => zero(),
            _ => {
                let count = Pattern::CountSelect {
                    key: x.to_string(),
                    counted: y.clone(),
                    count: self.fresh_c(),
                    inner: inner.clone(),
                    op,
                    bound: n,
                };
                if op == CompareOp::Le {
                    vec![Pattern::Union(vec![zero(), vec![count]])]
                } else {
                    vec![count]
                }
            }
        }
    }

    fn translate(&mut self, ce: &ClassExpression, x: &str) -> Vec<Pattern> {
        use ClassExpression::*;
        match ce {
            Class(c) if c.is_thing() => vec![top(x)],
            Class(c) if c.is_nothing() => vec![top(x), Pattern::Filter(FilterExpr::False)],
            Class(c) => vec![Pattern::Triple(
                var(x),
                rdf_type(),
                TermPattern::Iri(c.0.clone()),
            )],
            ObjectIntersectionOf(ops) => ops.iter().flat_map(|o| self.translate(o, x)).collect(),
            ObjectUnionOf(ops) => {
                vec![Pattern::Union(
                    ops.iter().map(|o| self.translate(o, x)).collect(),
                )]
            }
            ObjectComplementOf(c) => vec![top(x), Pattern::NotExists(self.translate(c, x))],
            ObjectSomeValuesFrom { property, filler } => {
                let y = self.fresh_y();
                let mut out = vec![Self::edge(x, property, &y)];
                out.extend(self.translate(filler, &y));
                out
            }
            ObjectAllValuesFrom { property, filler } => {
                let y = self.fresh_y();
                let inner = self.translate(filler, &y);
                vec![
                    top(x),
                    Pattern::NotExists(vec![
                        Self::edge(x, property, &y),
                        Pattern::NotExists(inner),
                    ]),
                ]
            }
            ObjectHasValue {
                property,
                individual,
            } => {
                let a = TermPattern::Iri(individual.0.clone());
                let pred = TermPattern::Iri(property.property().0.clone());
                if property.is_inverse() {
                    vec![Pattern::Triple(a, pred, var(x))]
                } else {
                    vec![Pattern::Triple(var(x), pred, a)]
                }
            }
            ObjectOneOf(inds) => vec![
                Pattern::Values {
                    var: x.to_string(),
                    values: inds.iter().map(|i| TermPattern::Iri(i.0.clone())).collect(),
                },
                top(x),
            ],
            ObjectMinCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality(x, CompareOp::Ge, *cardinality, property, filler),
            ObjectMaxCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality(x, CompareOp::Le, *cardinality, property, filler),
            ObjectExactCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality(x, CompareOp::Eq, *cardinality, property, filler),
            DataSomeValuesFrom { property, range } => {
                let y = self.fresh_y();
                let mut out = vec![Self::data_edge(x, property, &y)];
                out.extend(Self::range(&y, range));
                out
            }
            DataAllValuesFrom { property, range } => {
                let y = self.fresh_y();
                vec![
                    top(x),
                    Pattern::NotExists(vec![
                        Self::data_edge(x, property, &y),
                        Pattern::NotExists(Self::range(&y, range)),
                    ]),
                ]
            }
            DataHasValue { property, value } => vec![Pattern::Triple(
                var(x),
                TermPattern::Iri(property.0.clone()),
                TermPattern::Literal(value.clone()),
            )],
        }
    }
}

/// Compiles `ce` into a `SELECT DISTINCT ?var` query over the RDF encoding
/// of the assertions. Fresh variables are `?y0, ?y1, ...` in pre-order and
/// count variables `?c0, ?c1, ...`.
pub fn to_sparql(ce: &ClassExpression, var: &str) -> Result<SparqlQuery, SparqlError> {
    let well_formed = !var.is_empty()
        && var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !var.starts_with(|c: char| c.is_ascii_digit());
    let reserved = var.len() > 1
        && (var.starts_with('y') || var.starts_with('c'))
        && var[1..].chars().all(|c| c.is_ascii_digit());
    if !well_formed || reserved {
        return Err(SparqlError::InvalidVariable(var.to_string()));
    }
    if let Err(violations) = validate_expression(ce) {
        return Err(SparqlError::InvalidExpression(
            violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    let mut t = Translator {
        next_y: 0,
        next_c: 0,
    };
    let patterns = t.translate(ce, var);
    Ok(SparqlQuery {
        var: var.to_string(),
        patterns,
    })
}

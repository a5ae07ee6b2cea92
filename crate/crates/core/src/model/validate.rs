use std::fmt;

use super::expression::{ClassExpression, DataRange};

/// A structural rule broken by a class expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An intersection or union with fewer than two operands.
    OperandCount {
        constructor: &'static str,
        count: usize,
    },
    /// `ObjectOneOf` / `DataOneOf` without members.
    EmptyEnumeration { constructor: &'static str },
    /// A facet bound that is not numeric on a numeric base datatype.
    NonNumericFacet { base: String, lexical: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OperandCount { constructor, count } => {
                write!(f, "{constructor}: operand count {count} < 2")
            }
            Violation::EmptyEnumeration { constructor } => {
                write!(f, "{constructor}: needs at least one member")
            }
            Violation::NonNumericFacet { base, lexical } => {
                write!(f, "facet value `{lexical}` is not numeric for <{base}>")
            }
        }
    }
}

/// Checks the structural rules that the checked constructors enforce, for
/// values assembled directly (e.g. by a deserializer). Never fails; returns
/// every violation found. Cardinalities are unsigned, so negative values are
/// rejected when parsing rather than here.
pub fn validate_expression(ce: &ClassExpression) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    walk(ce, &mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

pub fn validate_data_range(range: &DataRange) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    walk_range(range, &mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn walk(ce: &ClassExpression, out: &mut Vec<Violation>) {
    use ClassExpression::*;
    match ce {
        Class(_) | ObjectHasValue { .. } | DataHasValue { .. } => {}
        ObjectIntersectionOf(ops) | ObjectUnionOf(ops) => {
            if ops.len() < 2 {
                out.push(Violation::OperandCount {
                    constructor: if matches!(ce, ObjectIntersectionOf(_)) {
                        "ObjectIntersectionOf"
                    } else {
                        "ObjectUnionOf"
                    },
                    count: ops.len(),
                });
            }
            for op in ops {
                walk(op, out);
            }
        }
        ObjectComplementOf(c) => walk(c, out),
        ObjectOneOf(inds) => {
            if inds.is_empty() {
                out.push(Violation::EmptyEnumeration {
                    constructor: "ObjectOneOf",
                });
            }
        }
        ObjectSomeValuesFrom { filler, .. }
        | ObjectAllValuesFrom { filler, .. }
        | ObjectMinCardinality { filler, .. }
        | ObjectMaxCardinality { filler, .. }
        | ObjectExactCardinality { filler, .. } => walk(filler, out),
        DataSomeValuesFrom { range, .. } | DataAllValuesFrom { range, .. } => {
            walk_range(range, out)
        }
    }
}

fn walk_range(range: &DataRange, out: &mut Vec<Violation>) {
    match range {
        DataRange::Datatype(_) => {}
        DataRange::DatatypeRestriction { base, facets } => {
            if base.is_numeric() {
                for f in facets.iter().filter(|f| f.value.numeric().is_none()) {
                    out.push(Violation::NonNumericFacet {
                        base: base.0.to_string(),
                        lexical: f.value.lexical().to_string(),
                    });
                }
            }
        }
        DataRange::DataOneOf(values) => {
            if values.is_empty() {
                out.push(Violation::EmptyEnumeration {
                    constructor: "DataOneOf",
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Class, Datatype, Facet, FacetRestriction, Literal, ObjectProperty};

    fn c(n: &str) -> ClassExpression {
        Class::parse(&format!("http://e.org/{n}")).unwrap().into()
    }

    #[test]
    fn single_operand_intersection_is_flagged() {
        let ce = ClassExpression::ObjectIntersectionOf(vec![c("C")]);
        assert_eq!(
            validate_expression(&ce),
            Err(vec![Violation::OperandCount {
                constructor: "ObjectIntersectionOf",
                count: 1
            }])
        );
        assert_eq!(
            validate_expression(&ce).unwrap_err()[0].to_string(),
            "ObjectIntersectionOf: operand count 1 < 2"
        );
    }

    #[test]
    fn zero_min_cardinality_is_legal() {
        let r = ObjectProperty::parse("http://e.org/r").unwrap();
        assert_eq!(
            validate_expression(&ClassExpression::min(0, r, ClassExpression::thing())),
            Ok(())
        );
    }

    #[test]
    fn nested_violations_are_all_reported() {
        let ce = ClassExpression::complement(ClassExpression::ObjectUnionOf(vec![
            ClassExpression::ObjectIntersectionOf(vec![]),
        ]));
        assert_eq!(validate_expression(&ce).unwrap_err().len(), 2);
    }

    #[test]
    fn non_numeric_facet_is_flagged() {
        let range = DataRange::DatatypeRestriction {
            base: Datatype::xsd_integer(),
            facets: vec![FacetRestriction {
                facet: Facet::MinInclusive,
                value: Literal::string("x"),
            }],
        };
        assert!(validate_data_range(&range).is_err());
    }
}

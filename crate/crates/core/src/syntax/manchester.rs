//! Manchester notation: `male and (hasChild some person)`.

use crate::model::{
    ClassExpression, DataProperty, DataRange, Iri, ObjectProperty, ObjectPropertyExpression,
};

use super::cursor::{Cursor, SResult};
use super::lexer::Tok;
use super::{render_literal, PrefixContext, SyntaxError};

const KEYWORDS: [&str; 10] = [
    "and", "or", "not", "some", "only", "value", "min", "max", "exactly", "inverse",
];

const RESTRICTION_KEYWORDS: [&str; 6] = ["some", "only", "value", "min", "max", "exactly"];

struct Renderer<'a> {
    ctx: &'a PrefixContext,
}

impl Renderer<'_> {
    fn name(&self, iri: &Iri) -> String {
        self.ctx.shorten(iri, &KEYWORDS)
    }

    fn property(&self, p: &ObjectPropertyExpression) -> String {
        match p {
            ObjectPropertyExpression::Named(p) => self.name(&p.0),
            ObjectPropertyExpression::Inverse(p) => format!("inverse {}", self.name(&p.0)),
        }
    }

    fn range(&self, r: &DataRange) -> String {
        match r {
            DataRange::Datatype(dt) => self.name(&dt.0),
            DataRange::DatatypeRestriction { base, facets } => {
                let fs: Vec<String> = facets
                    .iter()
                    .map(|f| {
                        format!(
                            "{} {}",
                            f.facet.symbol(),
                            render_literal(&f.value, self.ctx)
                        )
                    })
                    .collect();
                format!("{}[{}]", self.name(&base.0), fs.join(", "))
            }
            DataRange::DataOneOf(values) => {
                let vs: Vec<String> = values.iter().map(|v| render_literal(v, self.ctx)).collect();
                format!("{{{}}}", vs.join(", "))
            }
        }
    }

    /// Atoms and negations go bare; everything else is parenthesized.
    fn nested(&self, ce: &ClassExpression) -> String {
        use ClassExpression::*;
        match ce {
            Class(_) | ObjectOneOf(_) | ObjectComplementOf(_) => self.render(ce),
            _ => format!("({})", self.render(ce)),
        }
    }

    fn render(&self, ce: &ClassExpression) -> String {
        use ClassExpression::*;
        match ce {
            Class(c) if c.is_thing() => "owl:Thing".to_string(),
            Class(c) if c.is_nothing() => "owl:Nothing".to_string(),
            Class(c) => self.name(&c.0),
            ObjectIntersectionOf(ops) => ops
                .iter()
                .map(|o| self.nested(o))
                .collect::<Vec<_>>()
                .join(" and "),
            ObjectUnionOf(ops) => ops
                .iter()
                .map(|o| self.nested(o))
                .collect::<Vec<_>>()
                .join(" or "),
            ObjectComplementOf(c) => match c.as_ref() {
                Class(_) | ObjectOneOf(_) => format!("not {}", self.render(c)),
                _ => format!("not ({})", self.render(c)),
            },
            ObjectSomeValuesFrom { property, filler } => {
                format!("{} some {}", self.property(property), self.nested(filler))
            }
            ObjectAllValuesFrom { property, filler } => {
                format!("{} only {}", self.property(property), self.nested(filler))
            }
            ObjectHasValue {
                property,
                individual,
            } => format!(
                "{} value {}",
                self.property(property),
                self.name(&individual.0)
            ),
            ObjectOneOf(inds) => {
                let names: Vec<String> = inds.iter().map(|i| self.name(&i.0)).collect();
                format!("{{{}}}", names.join(", "))
            }
            ObjectMinCardinality {
                cardinality,
                property,
                filler,
            } => format!(
                "{} min {cardinality} {}",
                self.property(property),
                self.nested(filler)
            ),
            ObjectMaxCardinality {
                cardinality,
                property,
                filler,
            } => format!(
                "{} max {cardinality} {}",
                self.property(property),
                self.nested(filler)
            ),
            ObjectExactCardinality {
                cardinality,
                property,
                filler,
            } => format!(
                "{} exactly {cardinality} {}",
                self.property(property),
                self.nested(filler)
            ),
            DataSomeValuesFrom { property, range } => {
                format!("{} some {}", self.name(&property.0), self.range(range))
            }
            DataAllValuesFrom { property, range } => {
                format!("{} only {}", self.name(&property.0), self.range(range))
            }
            DataHasValue { property, value } => format!(
                "{} value {}",
                self.name(&property.0),
                render_literal(value, self.ctx)
            ),
        }
    }
}

/// Renders `ce` in Manchester notation.
pub fn render_manchester(ce: &ClassExpression, ctx: &PrefixContext) -> String {
    Renderer { ctx }.render(ce)
}

struct Parser<'a> {
    cur: Cursor<'a>,
}

fn is_kw(tok: &Tok, kw: &str) -> bool {
    matches!(tok, Tok::Name(n) if n == kw)
}

fn join(mut ops: Vec<ClassExpression>, union: bool) -> ClassExpression {
    if ops.len() == 1 {
        return ops.pop().expect("one operand");
    }
    let mut flat = Vec::with_capacity(ops.len());
    for op in ops {
        match (op, union) {
            (ClassExpression::ObjectUnionOf(inner), true)
            | (ClassExpression::ObjectIntersectionOf(inner), false) => flat.extend(inner),
            (other, _) => flat.push(other),
        }
    }
    if union {
        ClassExpression::ObjectUnionOf(flat)
    } else {
        ClassExpression::ObjectIntersectionOf(flat)
    }
}

impl Parser<'_> {
    fn expr(&mut self) -> SResult<ClassExpression> {
        let mut ops = vec![self.conjunction()?];
        while is_kw(self.cur.peek(), "or") {
            self.cur.next();
            ops.push(self.conjunction()?);
        }
        Ok(join(ops, true))
    }

    fn conjunction(&mut self) -> SResult<ClassExpression> {
        let mut ops = vec![self.nonbinary()?];
        while is_kw(self.cur.peek(), "and") {
            self.cur.next();
            ops.push(self.nonbinary()?);
        }
        Ok(join(ops, false))
    }

    fn at_restriction(&self) -> bool {
        let head = self.cur.peek();
        if is_kw(head, "inverse") {
            return true;
        }
        matches!(head, Tok::Name(_) | Tok::FullIri(_))
            && RESTRICTION_KEYWORDS
                .iter()
                .any(|k| is_kw(self.cur.peek_at(1), k))
    }

    fn nonbinary(&mut self) -> SResult<ClassExpression> {
        if is_kw(self.cur.peek(), "not") {
            self.cur.next();
            return Ok(ClassExpression::complement(self.nonbinary()?));
        }
        if self.at_restriction() {
            return self.restriction();
        }
        self.primary()
    }

    fn name_iri(&mut self, what: &str) -> SResult<Iri> {
        if let Tok::Name(n) = self.cur.peek() {
            if KEYWORDS.contains(&n.as_str()) {
                return self.cur.unexpected(what);
            }
        }
        self.cur.iri(what)
    }

    fn primary(&mut self) -> SResult<ClassExpression> {
        match self.cur.peek() {
            Tok::Name(_) | Tok::FullIri(_) => Ok(ClassExpression::named(self.name_iri("a class")?)),
            Tok::LBrace => {
                self.cur.next();
                Ok(ClassExpression::ObjectOneOf(
                    self.cur.individuals_until_brace()?,
                ))
            }
            Tok::LParen => {
                self.cur.next();
                let inner = self.expr()?;
                self.cur.expect(&Tok::RParen)?;
                Ok(inner)
            }
            _ => self.cur.unexpected("a class expression"),
        }
    }

    fn data_range(&mut self, property: &Iri) -> SResult<Option<DataRange>> {
        if self.cur.peek() == &Tok::LBrace
            && matches!(
                self.cur.peek_at(1),
                Tok::Integer(_) | Tok::Decimal(_) | Tok::Str(_)
            )
        {
            self.cur.next();
            return Ok(Some(DataRange::DataOneOf(self.cur.literals_until_brace()?)));
        }
        let named = matches!(self.cur.peek(), Tok::Name(_) | Tok::FullIri(_));
        if self.cur.at_datatype() || (named && self.cur.ctx.is_data_property(property)) {
            return Ok(Some(self.cur.datatype_range()?));
        }
        Ok(None)
    }

    fn can_start_filler(&self) -> bool {
        match self.cur.peek() {
            Tok::Name(n) => n != "and" && n != "or",
            Tok::FullIri(_) | Tok::LBrace | Tok::LParen => true,
            _ => false,
        }
    }

    fn restriction(&mut self) -> SResult<ClassExpression> {
        let col = self.cur.col();
        let inverse = if is_kw(self.cur.peek(), "inverse") {
            self.cur.next();
            true
        } else {
            false
        };
        let iri = if inverse && self.cur.eat(&Tok::LParen) {
            let iri = self.name_iri("a property name")?;
            self.cur.expect(&Tok::RParen)?;
            iri
        } else {
            self.name_iri("a property name")?
        };
        let object = || {
            let p = ObjectPropertyExpression::Named(ObjectProperty(iri.clone()));
            if inverse {
                p.inverse()
            } else {
                p
            }
        };
        let data = || {
            if inverse {
                Err(SyntaxError::new(col, "a data property cannot be inverted"))
            } else {
                Ok(DataProperty(iri.clone()))
            }
        };
        let kw = match self.cur.next() {
            Tok::Name(k) if RESTRICTION_KEYWORDS.contains(&k.as_str()) => k,
            other => {
                return Err(SyntaxError::new(
                    col,
                    format!("expected a restriction keyword, found {other}"),
                ))
            }
        };
        match kw.as_str() {
            "some" | "only" => {
                if let Some(range) = self.data_range(&iri)? {
                    let property = data()?;
                    return Ok(if kw == "some" {
                        ClassExpression::DataSomeValuesFrom { property, range }
                    } else {
                        ClassExpression::DataAllValuesFrom { property, range }
                    });
                }
                let filler = self.nonbinary()?;
                Ok(if kw == "some" {
                    ClassExpression::some(object(), filler)
                } else {
                    ClassExpression::all(object(), filler)
                })
            }
            "value" => {
                if self.cur.at_literal() {
                    let value = self.cur.literal()?;
                    Ok(ClassExpression::DataHasValue {
                        property: data()?,
                        value,
                    })
                } else {
                    let individual = self.cur.individual()?;
                    Ok(ClassExpression::has_value(object(), individual))
                }
            }
            _ => {
                let ncol = self.cur.col();
                let n = match self.cur.next() {
                    Tok::Integer(s) => s.parse::<u32>().map_err(|_| {
                        SyntaxError::new(ncol, format!("invalid cardinality `{s}`"))
                    })?,
                    other => {
                        return Err(SyntaxError::new(
                            ncol,
                            format!("expected a cardinality, found {other}"),
                        ))
                    }
                };
                let filler = if self.can_start_filler() {
                    self.nonbinary()?
                } else {
                    ClassExpression::thing()
                };
                Ok(match kw.as_str() {
                    "min" => ClassExpression::min(n, object(), filler),
                    "max" => ClassExpression::max(n, object(), filler),
                    _ => ClassExpression::exactly(n, object(), filler),
                })
            }
        }
    }
}

/// Parses Manchester notation. Keywords are case-sensitive; nested
/// same-operator intersections and unions are flattened.
pub fn parse_manchester(text: &str, ctx: &PrefixContext) -> Result<ClassExpression, SyntaxError> {
    let mut p = Parser {
        cur: Cursor::new(text, ctx)?,
    };
    let ce = p.expr()?;
    p.cur.expect_end()?;
    Ok(ce)
}

/// Parses a Manchester expression that must be followed by `)`; used for
/// complex class atoms in rules.
pub(crate) fn parse_nested(cur: Cursor<'_>) -> SResult<(ClassExpression, Cursor<'_>)> {
    let mut p = Parser { cur };
    let ce = p.expr()?;
    Ok((ce, p.cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Class, Datatype, Facet, FacetRestriction, Literal, NamedIndividual};
    use crate::syntax::normalize;

    const NS: &str = "http://example.com/father#";

    fn ctx() -> PrefixContext {
        PrefixContext::new(NS)
    }

    fn c(n: &str) -> ClassExpression {
        Class::parse(&format!("{NS}{n}")).unwrap().into()
    }

    fn r(n: &str) -> ObjectProperty {
        ObjectProperty::parse(&format!("{NS}{n}")).unwrap()
    }

    fn roundtrip(ce: &ClassExpression) {
        let text = render_manchester(ce, &ctx());
        let back = parse_manchester(&text, &ctx()).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(back, normalize(ce), "{text}");
    }

    #[test]
    fn intersection_with_restriction() {
        let ce = ClassExpression::intersection(vec![
            c("male"),
            ClassExpression::some(r("hasChild"), c("person")),
        ])
        .unwrap();
        assert_eq!(
            render_manchester(&ce, &ctx()),
            "male and (hasChild some person)"
        );
        assert_eq!(
            parse_manchester("male and (hasChild some person)", &ctx()).unwrap(),
            ce
        );
        assert_eq!(
            parse_manchester("male and hasChild some person", &ctx()).unwrap(),
            ce
        );
    }

    #[test]
    fn reserved_classes() {
        assert_eq!(
            render_manchester(&ClassExpression::nothing(), &ctx()),
            "owl:Nothing"
        );
        roundtrip(&ClassExpression::nothing());
        roundtrip(&ClassExpression::thing());
    }

    #[test]
    fn not_and_max() {
        assert_eq!(
            parse_manchester("not child", &ctx()).unwrap(),
            ClassExpression::complement(c("child"))
        );
        assert_eq!(
            parse_manchester("hasChild max 0 person", &ctx()).unwrap(),
            ClassExpression::max(0, r("hasChild"), c("person"))
        );
        assert_eq!(
            parse_manchester("hasChild min 2", &ctx()).unwrap(),
            ClassExpression::min(2, r("hasChild"), ClassExpression::thing())
        );
    }

    #[test]
    fn data_facet_rendering() {
        let age = DataProperty::parse(&format!("{NS}hasAge")).unwrap();
        let ce = ClassExpression::DataSomeValuesFrom {
            property: age.clone(),
            range: DataRange::DatatypeRestriction {
                base: Datatype::xsd_integer(),
                facets: vec![FacetRestriction {
                    facet: Facet::MinInclusive,
                    value: Literal::integer(18),
                }],
            },
        };
        assert_eq!(
            render_manchester(&ce, &ctx()),
            "hasAge some xsd:integer[>= 18]"
        );
        roundtrip(&ce);
        roundtrip(&ClassExpression::DataHasValue {
            property: age.clone(),
            value: Literal::string("x y"),
        });
        roundtrip(&ClassExpression::DataAllValuesFrom {
            property: age,
            range: DataRange::DataOneOf(vec![Literal::integer(3)]),
        });
    }

    #[test]
    fn inverse_and_values() {
        let a = NamedIndividual::parse(&format!("{NS}anna")).unwrap();
        let p = ObjectPropertyExpression::Named(r("hasChild")).inverse();
        let ce = ClassExpression::has_value(p.clone(), a.clone());
        assert_eq!(
            render_manchester(&ce, &ctx()),
            "inverse hasChild value anna"
        );
        roundtrip(&ce);
        assert_eq!(
            parse_manchester("inverse(hasChild) value anna", &ctx()).unwrap(),
            ce
        );
        roundtrip(&ClassExpression::some(
            p,
            ClassExpression::ObjectOneOf(vec![a]),
        ));
    }

    #[test]
    fn keyword_named_entities_use_full_iris() {
        let ce = c("some");
        assert_eq!(
            render_manchester(&ce, &ctx()),
            "<http://example.com/father#some>"
        );
        roundtrip(&ce);
    }

    #[test]
    fn keywords_are_case_sensitive() {
        assert!(parse_manchester("male AND female", &ctx()).is_err());
    }
}

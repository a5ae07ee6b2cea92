//! Description-logic notation: `male ⊓ (∃ hasChild.⊤)`.

use crate::model::{
    ClassExpression, DataProperty, DataRange, Facet, Iri, ObjectProperty, ObjectPropertyExpression,
};

use super::cursor::{Cursor, SResult};
use super::lexer::Tok;
use super::{render_literal, PrefixContext, SyntaxError};

fn facet_symbol(f: Facet) -> &'static str {
    match f {
        Facet::MinInclusive => "≥",
        Facet::MinExclusive => ">",
        Facet::MaxInclusive => "≤",
        Facet::MaxExclusive => "<",
    }
}

struct Renderer<'a> {
    ctx: &'a PrefixContext,
}

impl Renderer<'_> {
    fn name(&self, iri: &Iri) -> String {
        self.ctx.shorten(iri, &[])
    }

    fn role(&self, p: &ObjectPropertyExpression) -> String {
        match p {
            ObjectPropertyExpression::Named(p) => self.name(&p.0),
            ObjectPropertyExpression::Inverse(p) => format!("{}⁻", self.name(&p.0)),
        }
    }

    fn range(&self, r: &DataRange, in_exists: bool) -> String {
        match r {
            DataRange::Datatype(dt) => self.name(&dt.0),
            DataRange::DatatypeRestriction { base, facets } => {
                let fs: Vec<String> = facets
                    .iter()
                    .map(|f| {
                        format!(
                            "{} {}",
                            facet_symbol(f.facet),
                            render_literal(&f.value, self.ctx)
                        )
                    })
                    .collect();
                format!("{}[{}]", self.name(&base.0), fs.join(", "))
            }
            DataRange::DataOneOf(values) => {
                let vs: Vec<String> = values.iter().map(|v| render_literal(v, self.ctx)).collect();
                let set = format!("{{{}}}", vs.join(", "));
                if in_exists && values.len() == 1 {
                    format!("({set})")
                } else {
                    set
                }
            }
        }
    }

    /// Operand of `⊓`/`⊔`: only atoms and complements go bare.
    fn operand(&self, ce: &ClassExpression) -> String {
        use ClassExpression::*;
        match ce {
            Class(_) | ObjectOneOf(_) | ObjectComplementOf(_) => self.render(ce),
            _ => format!("({})", self.render(ce)),
        }
    }

    fn filler(&self, ce: &ClassExpression) -> String {
        match ce {
            ClassExpression::ObjectIntersectionOf(_) | ClassExpression::ObjectUnionOf(_) => {
                format!("({})", self.render(ce))
            }
            _ => self.render(ce),
        }
    }

    fn render(&self, ce: &ClassExpression) -> String {
        use ClassExpression::*;
        match ce {
            Class(c) if c.is_thing() => "⊤".to_string(),
            Class(c) if c.is_nothing() => "⊥".to_string(),
            Class(c) => self.name(&c.0),
            ObjectIntersectionOf(ops) => ops
                .iter()
                .map(|o| self.operand(o))
                .collect::<Vec<_>>()
                .join(" ⊓ "),
            ObjectUnionOf(ops) => ops
                .iter()
                .map(|o| self.operand(o))
                .collect::<Vec<_>>()
                .join(" ⊔ "),
            ObjectComplementOf(c) => match c.as_ref() {
                Class(_) | ObjectOneOf(_) => format!("¬{}", self.render(c)),
                _ => format!("¬({})", self.render(c)),
            },
            ObjectSomeValuesFrom { property, filler } => match filler.as_ref() {
                ObjectOneOf(inds) if inds.len() == 1 => {
                    format!("∃ {}.({})", self.role(property), self.render(filler))
                }
                _ => format!("∃ {}.{}", self.role(property), self.filler(filler)),
            },
            ObjectAllValuesFrom { property, filler } => {
                format!("∀ {}.{}", self.role(property), self.filler(filler))
            }
            ObjectHasValue {
                property,
                individual,
            } => format!("∃ {}.{{{}}}", self.role(property), self.name(&individual.0)),
            ObjectOneOf(inds) => {
                let names: Vec<String> = inds.iter().map(|i| self.name(&i.0)).collect();
                format!("{{{}}}", names.join(", "))
            }
            ObjectMinCardinality {
                cardinality,
                property,
                filler,
            } => format!(
                "≥ {cardinality} {}.{}",
                self.role(property),
                self.filler(filler)
            ),
            ObjectMaxCardinality {
                cardinality,
                property,
                filler,
            } => format!(
                "≤ {cardinality} {}.{}",
                self.role(property),
                self.filler(filler)
            ),
            ObjectExactCardinality {
                cardinality,
                property,
                filler,
            } => format!(
                "= {cardinality} {}.{}",
                self.role(property),
                self.filler(filler)
            ),
            DataSomeValuesFrom { property, range } => {
                format!("∃ {}.{}", self.name(&property.0), self.range(range, true))
            }
            DataAllValuesFrom { property, range } => {
                format!("∀ {}.{}", self.name(&property.0), self.range(range, false))
            }
            DataHasValue { property, value } => format!(
                "∃ {}.{{{}}}",
                self.name(&property.0),
                render_literal(value, self.ctx)
            ),
        }
    }
}

/// Renders `ce` in DL notation, parenthesizing only where the grammar needs it.
pub fn render_dl(ce: &ClassExpression, ctx: &PrefixContext) -> String {
    Renderer { ctx }.render(ce)
}

struct Parser<'a> {
    cur: Cursor<'a>,
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
        let mut ops = vec![self.intersection()?];
        while self.cur.eat(&Tok::Or) {
            ops.push(self.intersection()?);
        }
        Ok(join(ops, true))
    }

    fn intersection(&mut self) -> SResult<ClassExpression> {
        let mut ops = vec![self.unary()?];
        while self.cur.eat(&Tok::And) {
            ops.push(self.unary()?);
        }
        Ok(join(ops, false))
    }

    fn role(&mut self) -> SResult<(Iri, bool, usize)> {
        let col = self.cur.col();
        let iri = self.cur.iri("a property name")?;
        let inverse = self.cur.eat(&Tok::Inverse);
        Ok((iri, inverse, col))
    }

    fn object_role(iri: Iri, inverse: bool) -> ObjectPropertyExpression {
        let p = ObjectPropertyExpression::Named(ObjectProperty(iri));
        if inverse {
            p.inverse()
        } else {
            p
        }
    }

    fn data_property(iri: Iri, inverse: bool, col: usize) -> SResult<DataProperty> {
        if inverse {
            return Err(SyntaxError::new(col, "a data property cannot be inverted"));
        }
        Ok(DataProperty(iri))
    }

    /// `(` `{` literal: a parenthesized one-element data enumeration.
    fn at_paren_literal_set(&self) -> bool {
        self.cur.peek() == &Tok::LParen
            && self.cur.peek_at(1) == &Tok::LBrace
            && matches!(
                self.cur.peek_at(2),
                Tok::Integer(_) | Tok::Decimal(_) | Tok::Str(_)
            )
    }

    fn at_literal_set(&self) -> bool {
        self.cur.peek() == &Tok::LBrace
            && matches!(
                self.cur.peek_at(1),
                Tok::Integer(_) | Tok::Decimal(_) | Tok::Str(_)
            )
    }

    fn data_filler(&mut self, iri: &Iri) -> SResult<Option<DataRange>> {
        if self.at_paren_literal_set() {
            self.cur.next();
            self.cur.next();
            let values = self.cur.literals_until_brace()?;
            self.cur.expect(&Tok::RParen)?;
            return Ok(Some(DataRange::DataOneOf(values)));
        }
        if self.at_literal_set() {
            self.cur.next();
            return Ok(Some(DataRange::DataOneOf(self.cur.literals_until_brace()?)));
        }
        let named = matches!(self.cur.peek(), Tok::Name(_) | Tok::FullIri(_));
        if self.cur.at_datatype() || (named && self.cur.ctx.is_data_property(iri)) {
            return Ok(Some(self.cur.datatype_range()?));
        }
        Ok(None)
    }

    fn exists(&mut self) -> SResult<ClassExpression> {
        let (iri, inverse, col) = self.role()?;
        self.cur.expect(&Tok::Dot)?;
        if self.at_literal_set() {
            self.cur.next();
            let mut values = self.cur.literals_until_brace()?;
            let property = Self::data_property(iri, inverse, col)?;
            return Ok(if values.len() == 1 {
                ClassExpression::DataHasValue {
                    property,
                    value: values.pop().expect("one value"),
                }
            } else {
                ClassExpression::DataSomeValuesFrom {
                    property,
                    range: DataRange::DataOneOf(values),
                }
            });
        }
        if let Some(range) = self.data_filler(&iri)? {
            return Ok(ClassExpression::DataSomeValuesFrom {
                property: Self::data_property(iri, inverse, col)?,
                range,
            });
        }
        let property = Self::object_role(iri, inverse);
        if self.cur.eat(&Tok::LBrace) {
            let mut inds = self.cur.individuals_until_brace()?;
            return Ok(if inds.len() == 1 {
                ClassExpression::ObjectHasValue {
                    property,
                    individual: inds.pop().expect("one individual"),
                }
            } else {
                ClassExpression::some(property, ClassExpression::ObjectOneOf(inds))
            });
        }
        Ok(ClassExpression::some(property, self.unary()?))
    }

    fn forall(&mut self) -> SResult<ClassExpression> {
        let (iri, inverse, col) = self.role()?;
        self.cur.expect(&Tok::Dot)?;
        if let Some(range) = self.data_filler(&iri)? {
            return Ok(ClassExpression::DataAllValuesFrom {
                property: Self::data_property(iri, inverse, col)?,
                range,
            });
        }
        Ok(ClassExpression::all(
            Self::object_role(iri, inverse),
            self.unary()?,
        ))
    }

    fn cardinality(&mut self) -> SResult<ClassExpression> {
        let op = self.cur.next();
        let col = self.cur.col();
        let n = match self.cur.next() {
            Tok::Integer(s) => s
                .parse::<u32>()
                .map_err(|_| SyntaxError::new(col, format!("invalid cardinality `{s}`")))?,
            other => {
                return Err(SyntaxError::new(
                    col,
                    format!("expected a cardinality, found {other}"),
                ))
            }
        };
        let (iri, inverse, _) = self.role()?;
        self.cur.expect(&Tok::Dot)?;
        let p = Self::object_role(iri, inverse);
        let filler = self.unary()?;
        Ok(match op {
            Tok::Geq => ClassExpression::min(n, p, filler),
            Tok::Leq => ClassExpression::max(n, p, filler),
            _ => ClassExpression::exactly(n, p, filler),
        })
    }

    fn unary(&mut self) -> SResult<ClassExpression> {
        match self.cur.peek() {
            Tok::Not => {
                self.cur.next();
                Ok(ClassExpression::complement(self.unary()?))
            }
            Tok::Exists => {
                self.cur.next();
                self.exists()
            }
            Tok::Forall => {
                self.cur.next();
                self.forall()
            }
            Tok::Geq | Tok::Leq | Tok::Eq => self.cardinality(),
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> SResult<ClassExpression> {
        match self.cur.peek() {
            Tok::Top => {
                self.cur.next();
                Ok(ClassExpression::thing())
            }
            Tok::Bottom => {
                self.cur.next();
                Ok(ClassExpression::nothing())
            }
            Tok::Name(_) | Tok::FullIri(_) => Ok(ClassExpression::named(self.cur.iri("a class")?)),
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
}

/// Parses DL notation. Nested same-operator intersections and unions are
/// flattened into one n-ary node.
pub fn parse_dl(text: &str, ctx: &PrefixContext) -> Result<ClassExpression, SyntaxError> {
    let mut p = Parser {
        cur: Cursor::new(text, ctx)?,
    };
    let ce = p.expr()?;
    p.cur.expect_end()?;
    Ok(ce)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Class, Datatype, FacetRestriction, Literal, NamedIndividual};
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
        let text = render_dl(ce, &ctx());
        let back = parse_dl(&text, &ctx()).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(back, normalize(ce), "{text}");
    }

    #[test]
    fn named_class() {
        assert_eq!(render_dl(&c("male"), &ctx()), "male");
    }

    #[test]
    fn intersection_with_existential() {
        let ce = ClassExpression::intersection(vec![
            c("male"),
            ClassExpression::some(r("hasChild"), ClassExpression::thing()),
        ])
        .unwrap();
        assert_eq!(render_dl(&ce, &ctx()), "male ⊓ (∃ hasChild.⊤)");
        assert_eq!(parse_dl("male ⊓ (∃ hasChild.⊤)", &ctx()).unwrap(), ce);
        roundtrip(&ce);
    }

    #[test]
    fn complement_of_union_is_parenthesized() {
        let ce = ClassExpression::complement(ClassExpression::union(vec![c("C"), c("D")]).unwrap());
        assert_eq!(render_dl(&ce, &ctx()), "¬(C ⊔ D)");
        roundtrip(&ce);
    }

    #[test]
    fn top_and_min_cardinality() {
        assert_eq!(parse_dl("⊤", &ctx()).unwrap(), ClassExpression::thing());
        assert_eq!(
            parse_dl("≥ 2 hasChild.female", &ctx()).unwrap(),
            ClassExpression::min(2, r("hasChild"), c("female"))
        );
    }

    #[test]
    fn escapes_are_accepted() {
        assert_eq!(
            parse_dl(r"male \sqcap \neg female", &ctx()).unwrap(),
            parse_dl("male ⊓ ¬female", &ctx()).unwrap()
        );
        assert!(parse_dl("male and female", &ctx()).is_err());
    }

    #[test]
    fn has_value_versus_one_of() {
        let a = NamedIndividual::parse(&format!("{NS}anna")).unwrap();
        let hv = ClassExpression::has_value(r("hasChild"), a.clone());
        assert_eq!(render_dl(&hv, &ctx()), "∃ hasChild.{anna}");
        roundtrip(&hv);
        let some = ClassExpression::some(r("hasChild"), ClassExpression::ObjectOneOf(vec![a]));
        assert_eq!(render_dl(&some, &ctx()), "∃ hasChild.({anna})");
        roundtrip(&some);
    }

    #[test]
    fn inverse_role() {
        let ce = ClassExpression::all(
            ObjectPropertyExpression::Named(r("hasChild")).inverse(),
            c("person"),
        );
        assert_eq!(render_dl(&ce, &ctx()), "∀ hasChild⁻.person");
        roundtrip(&ce);
    }

    #[test]
    fn data_restrictions() {
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
        assert_eq!(render_dl(&ce, &ctx()), "∃ hasAge.xsd:integer[≥ 18]");
        roundtrip(&ce);
        let hv = ClassExpression::DataHasValue {
            property: age.clone(),
            value: Literal::integer(42),
        };
        assert_eq!(render_dl(&hv, &ctx()), "∃ hasAge.{42}");
        roundtrip(&hv);
        let one = ClassExpression::DataSomeValuesFrom {
            property: age.clone(),
            range: DataRange::DataOneOf(vec![Literal::integer(1)]),
        };
        roundtrip(&one);
        let all = ClassExpression::DataAllValuesFrom {
            property: age,
            range: DataRange::DataOneOf(vec![Literal::integer(1), Literal::double(2.5)]),
        };
        roundtrip(&all);
    }

    #[test]
    fn nested_intersection_flattens() {
        assert_eq!(
            parse_dl("A ⊓ (B ⊓ C)", &ctx()).unwrap(),
            ClassExpression::ObjectIntersectionOf(vec![c("A"), c("B"), c("C")])
        );
    }

    #[test]
    fn errors_carry_columns() {
        let err = parse_dl("male ⊓", &ctx()).unwrap_err();
        assert_eq!(err.column, 7);
        assert!(parse_dl("nope:x", &ctx())
            .unwrap_err()
            .message
            .contains("nope:x"));
    }
}

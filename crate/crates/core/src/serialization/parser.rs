use crate::model::{
    AnnotationProperty, AnnotationValue, Atom, Axiom, Class, ClassExpression, DArgument,
    DataProperty, DataRange, Datatype, EntityKind, Facet, FacetRestriction, IArgument, Iri,
    Literal, NamedIndividual, ObjectProperty, ObjectPropertyExpression, OwlEntity, SwrlRule,
    Variable,
};
use crate::ontology::{Ontology, PrefixMap};

use super::lexer::{tokenize, Pos, Token};
use super::ParseError;

/// Productions of the full functional-style grammar that this parser knows
/// about but does not support.
const UNSUPPORTED: &[&str] = &[
    "DisjointUnion",
    "SubDataPropertyOf",
    "EquivalentObjectProperties",
    "EquivalentDataProperties",
    "DisjointObjectProperties",
    "DisjointDataProperties",
    "InverseFunctionalObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "TransitiveObjectProperty",
    "FunctionalDataProperty",
    "DatatypeDefinition",
    "HasKey",
    "SameIndividual",
    "DifferentIndividuals",
    "NegativeObjectPropertyAssertion",
    "NegativeDataPropertyAssertion",
    "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain",
    "AnnotationPropertyRange",
    "ObjectHasSelf",
    "ObjectPropertyChain",
    "DataMinCardinality",
    "DataMaxCardinality",
    "DataExactCardinality",
    "DataIntersectionOf",
    "DataUnionOf",
    "DataComplementOf",
    "Annotation",
    "BuiltInAtom",
    "SameIndividualAtom",
    "DifferentIndividualsAtom",
    "DataRangeAtom",
    "DescriptionGraphRule",
];

/// Parses an OWL 2 Functional-Style Syntax document.
pub fn parse_functional(text: &str) -> Result<Ontology, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        at: 0,
        prefixes: PrefixMap::new(),
    };
    p.document()
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
    prefixes: PrefixMap,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> (Token, Pos) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::syntax(
            self.pos(),
            self.peek().to_string(),
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn expect(&mut self, token: Token, name: &str) -> PResult<()> {
        if *self.peek() == token {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn open(&mut self) -> PResult<()> {
        self.expect(Token::LParen, "(")
    }

    fn close(&mut self) -> PResult<()> {
        self.expect(Token::RParen, ")")
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Token::Word(x) if x == w)
    }

    /// Consumes `Keyword(` and returns the keyword.
    fn keyword_open(&mut self, expected: &[&str]) -> PResult<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Token::Word(w) => {
                self.bump();
                if UNSUPPORTED.contains(&w.as_str()) {
                    return Err(ParseError::unsupported(pos, &w));
                }
                self.open()?;
                Ok((w, pos))
            }
            _ => Err(self.error(expected)),
        }
    }

    fn document(&mut self) -> PResult<Ontology> {
        while self.is_word("Prefix") {
            self.bump();
            self.open()?;
            let name = match self.peek().clone() {
                Token::PrefixedName(p, l) if l.is_empty() => p,
                _ => return Err(self.error(&["prefix name"])),
            };
            self.bump();
            self.expect(Token::Equals, "=")?;
            let ns = match self.peek().clone() {
                Token::FullIri(i) => i,
                _ => return Err(self.error(&["full IRI"])),
            };
            self.bump();
            self.close()?;
            self.prefixes.insert(name, ns);
        }

        if !self.is_word("Ontology") {
            return Err(self.error(&["Prefix", "Ontology"]));
        }
        self.bump();
        self.open()?;
        let mut onto = Ontology::new();
        *onto.prefixes_mut() = self.prefixes.clone();

        if matches!(self.peek(), Token::FullIri(_) | Token::PrefixedName(..)) {
            onto.set_iri(Some(self.iri()?));
            if matches!(self.peek(), Token::FullIri(_) | Token::PrefixedName(..)) {
                onto.set_version_iri(Some(self.iri()?));
            }
        }
        while self.is_word("Import") {
            self.bump();
            self.open()?;
            let iri = self.iri()?;
            self.close()?;
            onto.add_import(iri);
        }
        loop {
            match self.peek() {
                Token::RParen => break,
                Token::Word(_) => {
                    let axiom = self.axiom()?;
                    onto.add_axiom(axiom);
                }
                _ => return Err(self.error(&["axiom", ")"])),
            }
        }
        self.close()?;
        if *self.peek() != Token::Eof {
            return Err(self.error(&["EOF"]));
        }
        Ok(onto)
    }

    fn iri(&mut self) -> PResult<Iri> {
        let pos = self.pos();
        let text = match self.peek().clone() {
            Token::FullIri(i) => i,
            Token::PrefixedName(p, l) => match self.prefixes.expand(&p, &l) {
                Some(full) => full,
                None => return Err(ParseError::unknown_prefix(pos, &p)),
            },
            _ => return Err(self.error(&["IRI"])),
        };
        self.bump();
        Iri::new(&text).map_err(|e| ParseError::invalid(pos, e.to_string()))
    }

    fn axiom(&mut self) -> PResult<Axiom> {
        let (kw, pos) = self.keyword_open(&["axiom"])?;
        if self.is_word("Annotation") {
            return Err(ParseError::unsupported(self.pos(), "axiom annotations"));
        }
        let axiom = match kw.as_str() {
            "Declaration" => {
                let (kind_kw, kpos) = self.keyword_open(&["entity kind"])?;
                let kind = EntityKind::from_keyword(&kind_kw).ok_or_else(|| {
                    ParseError::syntax(kpos, format!("`{kind_kw}`"), vec!["entity kind".into()])
                })?;
                let iri = self.iri()?;
                self.close()?;
                Axiom::Declaration(OwlEntity::new(kind, iri))
            }
            "SubClassOf" => {
                let sub = self.class_expression()?;
                let sup = self.class_expression()?;
                Axiom::SubClassOf { sub, sup }
            }
            "EquivalentClasses" | "DisjointClasses" => {
                let ces = self.class_expressions(2, &kw, pos)?;
                if kw == "EquivalentClasses" {
                    Axiom::EquivalentClasses(ces)
                } else {
                    Axiom::DisjointClasses(ces)
                }
            }
            "ClassAssertion" => {
                let class = self.class_expression()?;
                let individual = self.individual()?;
                Axiom::ClassAssertion { individual, class }
            }
            "ObjectPropertyAssertion" => {
                let property = self.object_property_expression()?;
                let subject = self.individual()?;
                let object = self.individual()?;
                Axiom::ObjectPropertyAssertion {
                    subject,
                    property,
                    object,
                }
            }
            "DataPropertyAssertion" => {
                let property = DataProperty(self.iri()?);
                let subject = self.individual()?;
                let value = self.literal()?;
                Axiom::DataPropertyAssertion {
                    subject,
                    property,
                    value,
                }
            }
            "SubObjectPropertyOf" => {
                let sub = self.object_property_expression()?;
                let sup = self.object_property_expression()?;
                Axiom::SubObjectPropertyOf { sub, sup }
            }
            "InverseObjectProperties" => {
                let a = self.object_property_expression()?;
                let b = self.object_property_expression()?;
                Axiom::InverseObjectProperties(a, b)
            }
            "ObjectPropertyDomain" => {
                let property = self.object_property_expression()?;
                let domain = self.class_expression()?;
                Axiom::ObjectPropertyDomain { property, domain }
            }
            "ObjectPropertyRange" => {
                let property = self.object_property_expression()?;
                let range = self.class_expression()?;
                Axiom::ObjectPropertyRange { property, range }
            }
            "FunctionalObjectProperty" => {
                Axiom::FunctionalObjectProperty(self.object_property_expression()?)
            }
            "DataPropertyDomain" => {
                let property = DataProperty(self.iri()?);
                let domain = self.class_expression()?;
                Axiom::DataPropertyDomain { property, domain }
            }
            "DataPropertyRange" => {
                let property = DataProperty(self.iri()?);
                let range = self.data_range()?;
                Axiom::DataPropertyRange { property, range }
            }
            "AnnotationAssertion" => {
                let property = AnnotationProperty(self.iri()?);
                let subject = self.iri()?;
                let value = match self.peek() {
                    Token::Str(_) => AnnotationValue::Literal(self.literal()?),
                    _ => AnnotationValue::Iri(self.iri()?),
                };
                Axiom::AnnotationAssertion {
                    subject,
                    property,
                    value,
                }
            }
            "DLSafeRule" => {
                let (b, _) = self.keyword_open(&["Body"])?;
                if b != "Body" {
                    return Err(ParseError::syntax(
                        pos,
                        format!("`{b}`"),
                        vec!["Body".into()],
                    ));
                }
                let body = self.atoms()?;
                let (h, hpos) = self.keyword_open(&["Head"])?;
                if h != "Head" {
                    return Err(ParseError::syntax(
                        hpos,
                        format!("`{h}`"),
                        vec!["Head".into()],
                    ));
                }
                let head = self.atoms()?;
                let rule = SwrlRule::new(body, head)
                    .map_err(|e| ParseError::invalid(pos, e.to_string()))?;
                Axiom::Rule(rule)
            }
            _ => {
                return Err(ParseError::syntax(
                    pos,
                    format!("`{kw}`"),
                    vec!["axiom".into()],
                ));
            }
        };
        self.close()?;
        Ok(axiom)
    }

    /// Reads at least `min` class expressions up to (not including) `)`.
    fn class_expressions(
        &mut self,
        min: usize,
        kw: &str,
        pos: Pos,
    ) -> PResult<Vec<ClassExpression>> {
        let mut out = Vec::new();
        while *self.peek() != Token::RParen {
            out.push(self.class_expression()?);
        }
        if out.len() < min {
            return Err(ParseError::invalid(
                pos,
                format!("{kw} needs at least {min} operands, got {}", out.len()),
            ));
        }
        Ok(out)
    }

    fn individual(&mut self) -> PResult<NamedIndividual> {
        if matches!(self.peek(), Token::Word(w) if w.starts_with('_')) {
            return Err(ParseError::unsupported(self.pos(), "anonymous individuals"));
        }
        Ok(NamedIndividual(self.iri()?))
    }

    fn object_property_expression(&mut self) -> PResult<ObjectPropertyExpression> {
        if self.is_word("ObjectInverseOf") {
            self.bump();
            self.open()?;
            let inner = self.object_property_expression()?;
            self.close()?;
            return Ok(inner.inverse());
        }
        if let Token::Word(w) = self.peek() {
            if UNSUPPORTED.contains(&w.as_str()) {
                return Err(ParseError::unsupported(self.pos(), w));
            }
            return Err(self.error(&["object property expression"]));
        }
        Ok(ObjectPropertyExpression::Named(ObjectProperty(self.iri()?)))
    }

    fn cardinality(&mut self) -> PResult<u32> {
        let pos = self.pos();
        match self.peek().clone() {
            Token::Word(w) if w.bytes().all(|b| b.is_ascii_digit()) => {
                self.bump();
                w.parse::<u32>().map_err(|_| {
                    ParseError::invalid(pos, format!("cardinality `{w}` out of range"))
                })
            }
            _ => Err(self.error(&["non-negative integer"])),
        }
    }

    fn class_expression(&mut self) -> PResult<ClassExpression> {
        if matches!(self.peek(), Token::FullIri(_) | Token::PrefixedName(..)) {
            return Ok(ClassExpression::Class(Class(self.iri()?)));
        }
        let (kw, pos) = self.keyword_open(&["class expression"])?;
        let ce = match kw.as_str() {
            "ObjectIntersectionOf" => {
                ClassExpression::ObjectIntersectionOf(self.class_expressions(2, &kw, pos)?)
            }
            "ObjectUnionOf" => ClassExpression::ObjectUnionOf(self.class_expressions(2, &kw, pos)?),
            "ObjectComplementOf" => ClassExpression::complement(self.class_expression()?),
            "ObjectOneOf" => {
                let mut inds = vec![self.individual()?];
                while *self.peek() != Token::RParen {
                    inds.push(self.individual()?);
                }
                ClassExpression::ObjectOneOf(inds)
            }
            "ObjectSomeValuesFrom" | "ObjectAllValuesFrom" => {
                let property = self.object_property_expression()?;
                let filler = Box::new(self.class_expression()?);
                if kw == "ObjectSomeValuesFrom" {
                    ClassExpression::ObjectSomeValuesFrom { property, filler }
                } else {
                    ClassExpression::ObjectAllValuesFrom { property, filler }
                }
            }
            "ObjectHasValue" => {
                let property = self.object_property_expression()?;
                let individual = self.individual()?;
                ClassExpression::ObjectHasValue {
                    property,
                    individual,
                }
            }
            "ObjectMinCardinality" | "ObjectMaxCardinality" | "ObjectExactCardinality" => {
                let cardinality = self.cardinality()?;
                let property = self.object_property_expression()?;
                let filler = if *self.peek() == Token::RParen {
                    ClassExpression::thing()
                } else {
                    self.class_expression()?
                };
                match kw.as_str() {
                    "ObjectMinCardinality" => ClassExpression::min(cardinality, property, filler),
                    "ObjectMaxCardinality" => ClassExpression::max(cardinality, property, filler),
                    _ => ClassExpression::exactly(cardinality, property, filler),
                }
            }
            "DataSomeValuesFrom" | "DataAllValuesFrom" => {
                let property = DataProperty(self.iri()?);
                let range = self.data_range()?;
                if *self.peek() != Token::RParen {
                    return Err(ParseError::unsupported(
                        self.pos(),
                        "data restrictions over several data properties",
                    ));
                }
                if kw == "DataSomeValuesFrom" {
                    ClassExpression::DataSomeValuesFrom { property, range }
                } else {
                    ClassExpression::DataAllValuesFrom { property, range }
                }
            }
            "DataHasValue" => {
                let property = DataProperty(self.iri()?);
                let value = self.literal()?;
                ClassExpression::DataHasValue { property, value }
            }
            _ => {
                return Err(ParseError::syntax(
                    pos,
                    format!("`{kw}`"),
                    vec!["class expression".into()],
                ));
            }
        };
        self.close()?;
        Ok(ce)
    }

    fn data_range(&mut self) -> PResult<DataRange> {
        if matches!(self.peek(), Token::FullIri(_) | Token::PrefixedName(..)) {
            return Ok(DataRange::Datatype(Datatype(self.iri()?)));
        }
        let (kw, pos) = self.keyword_open(&["data range"])?;
        let range = match kw.as_str() {
            "DatatypeRestriction" => {
                let base = Datatype(self.iri()?);
                let mut facets = Vec::new();
                while *self.peek() != Token::RParen {
                    let fpos = self.pos();
                    let facet_iri = self.iri()?;
                    let facet = Facet::from_iri(facet_iri.as_str()).ok_or_else(|| {
                        ParseError::unsupported(fpos, &format!("facet <{facet_iri}>"))
                    })?;
                    let value = self.literal()?;
                    facets.push(FacetRestriction { facet, value });
                }
                if facets.is_empty() {
                    return Err(self.error(&["facet"]));
                }
                let range = DataRange::DatatypeRestriction { base, facets };
                crate::model::validate_data_range(&range).map_err(|v| {
                    ParseError::invalid(
                        pos,
                        v.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join("; "),
                    )
                })?;
                range
            }
            "DataOneOf" => {
                let mut values = vec![self.literal()?];
                while *self.peek() != Token::RParen {
                    values.push(self.literal()?);
                }
                DataRange::DataOneOf(values)
            }
            _ => {
                return Err(ParseError::syntax(
                    pos,
                    format!("`{kw}`"),
                    vec!["data range".into()],
                ))
            }
        };
        self.close()?;
        Ok(range)
    }

    fn literal(&mut self) -> PResult<Literal> {
        let pos = self.pos();
        let lexical = match self.peek().clone() {
            Token::Str(s) => s,
            _ => return Err(self.error(&["literal"])),
        };
        self.bump();
        match self.peek() {
            Token::DoubleCaret => {
                self.bump();
                let dt = self.iri()?;
                Literal::new(lexical, dt).map_err(|e| ParseError::invalid(pos, e.to_string()))
            }
            Token::LangTag(_) => Err(ParseError::unsupported(
                self.pos(),
                "language-tagged literals",
            )),
            _ => Ok(Literal::string(lexical)),
        }
    }

    fn atoms(&mut self) -> PResult<Vec<Atom>> {
        let mut out = Vec::new();
        while *self.peek() != Token::RParen {
            out.push(self.atom()?);
        }
        self.close()?;
        Ok(out)
    }

    fn atom(&mut self) -> PResult<Atom> {
        let (kw, pos) = self.keyword_open(&["atom"])?;
        let atom = match kw.as_str() {
            "ClassAtom" => {
                let class = self.class_expression()?;
                let arg = self.iarg()?;
                Atom::Class { class, arg }
            }
            "ObjectPropertyAtom" => {
                let property = self.object_property_expression()?;
                let subject = self.iarg()?;
                let object = self.iarg()?;
                Atom::ObjectProperty {
                    property,
                    subject,
                    object,
                }
            }
            "DataPropertyAtom" => {
                let property = DataProperty(self.iri()?);
                let subject = self.iarg()?;
                let value = if self.is_word("Variable") {
                    DArgument::Variable(self.variable()?)
                } else {
                    DArgument::Literal(self.literal()?)
                };
                Atom::DataProperty {
                    property,
                    subject,
                    value,
                }
            }
            _ => {
                return Err(ParseError::syntax(
                    pos,
                    format!("`{kw}`"),
                    vec!["atom".into()],
                ))
            }
        };
        self.close()?;
        Ok(atom)
    }

    fn variable(&mut self) -> PResult<Variable> {
        self.bump();
        self.open()?;
        let iri = self.iri()?;
        self.close()?;
        Ok(Variable(iri))
    }

    fn iarg(&mut self) -> PResult<IArgument> {
        if self.is_word("Variable") {
            Ok(IArgument::Variable(self.variable()?))
        } else {
            Ok(IArgument::Individual(self.individual()?))
        }
    }
}

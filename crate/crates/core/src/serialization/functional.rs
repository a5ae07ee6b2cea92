use std::fmt::Write as _;

use crate::model::{
    vocab, AnnotationValue, Atom, Axiom, ClassExpression, DArgument, DataRange, IArgument, Iri,
    Literal, ObjectPropertyExpression,
};
use crate::ontology::{Ontology, PrefixMap};

/// Renders model values in functional-style syntax, abbreviating IRIs
/// with the configured prefixes where the local part is a plain name.
#[derive(Debug, Clone, Default)]
pub struct Writer {
    prefixes: Vec<(String, String)>,
}

fn is_plain_local(local: &str) -> bool {
    local
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-'))
}

pub(crate) fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

impl Writer {
    /// A writer that never abbreviates.
    pub fn full_iris() -> Writer {
        Writer::default()
    }

    pub fn with_prefixes(prefixes: &PrefixMap) -> Writer {
        Writer {
            prefixes: prefixes
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    pub fn iri(&self, iri: &Iri) -> String {
        let text = iri.as_str();
        let best = self
            .prefixes
            .iter()
            .filter(|(_, ns)| text.len() > ns.len() && text.starts_with(ns.as_str()))
            .filter(|(_, ns)| is_plain_local(&text[ns.len()..]))
            .max_by_key(|(_, ns)| ns.len());
        match best {
            Some((name, ns)) => format!("{name}:{}", &text[ns.len()..]),
            None => format!("<{text}>"),
        }
    }

    pub fn literal(&self, lit: &Literal) -> String {
        let body = escape_string(lit.lexical());
        if lit.datatype().as_str() == vocab::XSD_STRING {
            format!("\"{body}\"")
        } else {
            format!("\"{body}\"^^{}", self.iri(lit.datatype()))
        }
    }

    pub fn object_property(&self, p: &ObjectPropertyExpression) -> String {
        match p {
            ObjectPropertyExpression::Named(p) => self.iri(&p.0),
            ObjectPropertyExpression::Inverse(p) => format!("ObjectInverseOf({})", self.iri(&p.0)),
        }
    }

    pub fn data_range(&self, range: &DataRange) -> String {
        match range {
            DataRange::Datatype(dt) => self.iri(&dt.0),
            DataRange::DatatypeRestriction { base, facets } => {
                let mut out = format!("DatatypeRestriction({}", self.iri(&base.0));
                for f in facets {
                    let facet = Iri::new(f.facet.iri()).expect("facet IRI");
                    let _ = write!(out, " {} {}", self.iri(&facet), self.literal(&f.value));
                }
                out.push(')');
                out
            }
            DataRange::DataOneOf(values) => {
                let items: Vec<String> = values.iter().map(|l| self.literal(l)).collect();
                format!("DataOneOf({})", items.join(" "))
            }
        }
    }

    pub fn class_expression(&self, ce: &ClassExpression) -> String {
        use ClassExpression::*;
        let list = |ops: &[ClassExpression]| {
            ops.iter()
                .map(|c| self.class_expression(c))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match ce {
            Class(c) => self.iri(&c.0),
            ObjectIntersectionOf(ops) => format!("ObjectIntersectionOf({})", list(ops)),
            ObjectUnionOf(ops) => format!("ObjectUnionOf({})", list(ops)),
            ObjectComplementOf(c) => format!("ObjectComplementOf({})", self.class_expression(c)),
            ObjectSomeValuesFrom { property, filler } => format!(
                "ObjectSomeValuesFrom({} {})",
                self.object_property(property),
                self.class_expression(filler)
            ),
            ObjectAllValuesFrom { property, filler } => format!(
                "ObjectAllValuesFrom({} {})",
                self.object_property(property),
                self.class_expression(filler)
            ),
            ObjectHasValue {
                property,
                individual,
            } => format!(
                "ObjectHasValue({} {})",
                self.object_property(property),
                self.iri(&individual.0)
            ),
            ObjectOneOf(inds) => format!(
                "ObjectOneOf({})",
                inds.iter()
                    .map(|i| self.iri(&i.0))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            ObjectMinCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality("ObjectMinCardinality", *cardinality, property, filler),
            ObjectMaxCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality("ObjectMaxCardinality", *cardinality, property, filler),
            ObjectExactCardinality {
                cardinality,
                property,
                filler,
            } => self.cardinality("ObjectExactCardinality", *cardinality, property, filler),
            DataSomeValuesFrom { property, range } => format!(
                "DataSomeValuesFrom({} {})",
                self.iri(&property.0),
                self.data_range(range)
            ),
            DataAllValuesFrom { property, range } => format!(
                "DataAllValuesFrom({} {})",
                self.iri(&property.0),
                self.data_range(range)
            ),
            DataHasValue { property, value } => format!(
                "DataHasValue({} {})",
                self.iri(&property.0),
                self.literal(value)
            ),
        }
    }

    fn cardinality(
        &self,
        kw: &str,
        n: u32,
        property: &ObjectPropertyExpression,
        filler: &ClassExpression,
    ) -> String {
        format!(
            "{kw}({n} {} {})",
            self.object_property(property),
            self.class_expression(filler)
        )
    }

    fn iarg(&self, arg: &IArgument) -> String {
        match arg {
            IArgument::Variable(v) => format!("Variable({})", self.iri(&v.0)),
            IArgument::Individual(i) => self.iri(&i.0),
        }
    }

    fn atom(&self, atom: &Atom) -> String {
        match atom {
            Atom::Class { class, arg } => {
                format!(
                    "ClassAtom({} {})",
                    self.class_expression(class),
                    self.iarg(arg)
                )
            }
            Atom::ObjectProperty {
                property,
                subject,
                object,
            } => format!(
                "ObjectPropertyAtom({} {} {})",
                self.object_property(property),
                self.iarg(subject),
                self.iarg(object)
            ),
            Atom::DataProperty {
                property,
                subject,
                value,
            } => {
                let value = match value {
                    DArgument::Variable(v) => format!("Variable({})", self.iri(&v.0)),
                    DArgument::Literal(l) => self.literal(l),
                };
                format!(
                    "DataPropertyAtom({} {} {value})",
                    self.iri(&property.0),
                    self.iarg(subject)
                )
            }
        }
    }

    pub fn axiom(&self, axiom: &Axiom) -> String {
        let ces = |ces: &[ClassExpression]| {
            ces.iter()
                .map(|c| self.class_expression(c))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match axiom {
            Axiom::Declaration(e) => {
                format!("Declaration({}({}))", e.kind.keyword(), self.iri(&e.iri))
            }
            Axiom::SubClassOf { sub, sup } => format!(
                "SubClassOf({} {})",
                self.class_expression(sub),
                self.class_expression(sup)
            ),
            Axiom::EquivalentClasses(list) => format!("EquivalentClasses({})", ces(list)),
            Axiom::DisjointClasses(list) => format!("DisjointClasses({})", ces(list)),
            Axiom::ClassAssertion { individual, class } => format!(
                "ClassAssertion({} {})",
                self.class_expression(class),
                self.iri(&individual.0)
            ),
            Axiom::ObjectPropertyAssertion {
                subject,
                property,
                object,
            } => format!(
                "ObjectPropertyAssertion({} {} {})",
                self.object_property(property),
                self.iri(&subject.0),
                self.iri(&object.0)
            ),
            Axiom::DataPropertyAssertion {
                subject,
                property,
                value,
            } => format!(
                "DataPropertyAssertion({} {} {})",
                self.iri(&property.0),
                self.iri(&subject.0),
                self.literal(value)
            ),
            Axiom::SubObjectPropertyOf { sub, sup } => format!(
                "SubObjectPropertyOf({} {})",
                self.object_property(sub),
                self.object_property(sup)
            ),
            Axiom::InverseObjectProperties(a, b) => format!(
                "InverseObjectProperties({} {})",
                self.object_property(a),
                self.object_property(b)
            ),
            Axiom::ObjectPropertyDomain { property, domain } => format!(
                "ObjectPropertyDomain({} {})",
                self.object_property(property),
                self.class_expression(domain)
            ),
            Axiom::ObjectPropertyRange { property, range } => format!(
                "ObjectPropertyRange({} {})",
                self.object_property(property),
                self.class_expression(range)
            ),
            Axiom::FunctionalObjectProperty(p) => {
                format!("FunctionalObjectProperty({})", self.object_property(p))
            }
            Axiom::DataPropertyDomain { property, domain } => format!(
                "DataPropertyDomain({} {})",
                self.iri(&property.0),
                self.class_expression(domain)
            ),
            Axiom::DataPropertyRange { property, range } => format!(
                "DataPropertyRange({} {})",
                self.iri(&property.0),
                self.data_range(range)
            ),
            Axiom::AnnotationAssertion {
                subject,
                property,
                value,
            } => {
                let value = match value {
                    AnnotationValue::Literal(l) => self.literal(l),
                    AnnotationValue::Iri(i) => self.iri(i),
                };
                format!(
                    "AnnotationAssertion({} {} {value})",
                    self.iri(&property.0),
                    self.iri(subject)
                )
            }
            Axiom::Rule(rule) => {
                let atoms = |atoms: &[Atom]| {
                    atoms
                        .iter()
                        .map(|a| self.atom(a))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                format!(
                    "DLSafeRule(Body({}) Head({}))",
                    atoms(rule.body()),
                    atoms(rule.head())
                )
            }
        }
    }
}

/// Writes `onto` as a functional-syntax document: prefix declarations first,
/// then one axiom per line in insertion order.
pub fn serialize_functional(onto: &Ontology) -> String {
    let writer = Writer::with_prefixes(onto.prefixes());
    let mut out = String::new();
    for (name, ns) in onto.prefixes().iter() {
        let _ = writeln!(out, "Prefix({name}:=<{ns}>)");
    }
    out.push_str("Ontology(");
    if let Some(iri) = onto.iri() {
        let _ = write!(out, "<{iri}>");
        if let Some(v) = onto.version_iri() {
            let _ = write!(out, " <{v}>");
        }
    }
    out.push('\n');
    for import in onto.imports() {
        let _ = writeln!(out, "Import(<{import}>)");
    }
    for axiom in onto.axioms() {
        out.push_str(&writer.axiom(axiom));
        out.push('\n');
    }
    out.push_str(")\n");
    out
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&Writer::full_iris().axiom(self))
    }
}

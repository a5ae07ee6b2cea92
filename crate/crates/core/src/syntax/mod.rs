//! Conversions between class expressions and their DL and Manchester text
//! forms, and the string-rule SWRL parser.

mod cursor;
mod dl;
mod lexer;
mod manchester;
mod swrl;

use std::collections::HashSet;

use indexmap::IndexMap;
use thiserror::Error;

use crate::model::{ns, vocab, ClassExpression, DataProperty, Iri, Literal};
use crate::ontology::{Ontology, PrefixMap};

pub use dl::{parse_dl, render_dl};
pub use manchester::{parse_manchester, render_manchester};
pub use swrl::{parse_swrl, render_swrl};

/// Error from one of the text parsers. `column` counts characters from 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn new(column: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            column,
            message: message.into(),
        }
    }
}

/// Name resolution for the text syntaxes. Bare names resolve against the
/// default namespace, `p:local` against the prefix table.
#[derive(Debug, Clone)]
pub struct PrefixContext {
    prefixes: IndexMap<String, String>,
    default_ns: String,
    data_properties: HashSet<Iri>,
}

impl PrefixContext {
    pub fn new(default_ns: impl Into<String>) -> PrefixContext {
        let prefixes = PrefixMap::STANDARD
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        PrefixContext {
            prefixes,
            default_ns: default_ns.into(),
            data_properties: HashSet::new(),
        }
    }

    /// Context taking prefixes and data properties from `onto`. Without an
    /// explicit default namespace, the empty prefix is used, then the
    /// namespace of the ontology IRI.
    pub fn for_ontology(onto: &Ontology, default_ns: Option<&str>) -> PrefixContext {
        let fallback = onto
            .prefixes()
            .get("")
            .map(str::to_string)
            .or_else(|| onto.iri().map(|i| format!("{}#", i.as_str())))
            .unwrap_or_default();
        let mut ctx = PrefixContext::new(default_ns.map(str::to_string).unwrap_or(fallback));
        for (k, v) in onto.prefixes().iter() {
            if !k.is_empty() {
                ctx.add_prefix(k, v);
            }
        }
        for dp in onto.data_properties_in_signature() {
            ctx.add_data_property(&dp);
        }
        ctx
    }

    pub fn with_prefix(mut self, name: &str, namespace: &str) -> PrefixContext {
        self.add_prefix(name, namespace);
        self
    }

    pub fn add_prefix(&mut self, name: &str, namespace: &str) {
        self.prefixes
            .insert(name.to_string(), namespace.to_string());
    }

    pub fn add_data_property(&mut self, property: &DataProperty) {
        self.data_properties.insert(property.0.clone());
    }

    pub fn default_namespace(&self) -> &str {
        &self.default_ns
    }

    pub fn is_data_property(&self, iri: &Iri) -> bool {
        self.data_properties.contains(iri)
    }

    /// Resolves a bare or prefixed name.
    pub fn resolve(&self, name: &str) -> Option<Iri> {
        let full = match name.split_once(':') {
            Some((p, local)) => format!("{}{local}", self.prefixes.get(p)?),
            None => format!("{}{name}", self.default_ns),
        };
        Iri::new(&full).ok()
    }

    /// Shortest name that resolves back to `iri`, avoiding `reserved` words;
    /// falls back to `<full>`.
    pub(crate) fn shorten(&self, iri: &Iri, reserved: &[&str]) -> String {
        let text = iri.as_str();
        if !self.default_ns.is_empty() {
            if let Some(local) = text.strip_prefix(self.default_ns.as_str()) {
                if is_identifier(local) && !reserved.contains(&local) {
                    return local.to_string();
                }
            }
        }
        let best = self
            .prefixes
            .iter()
            .filter(|(_, ns)| !ns.is_empty() && text.starts_with(ns.as_str()))
            .filter(|(_, ns)| is_identifier(&text[ns.len()..]))
            .max_by_key(|(_, ns)| ns.len());
        match best {
            Some((p, ns)) => format!("{p}:{}", &text[ns.len()..]),
            None => format!("<{text}>"),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if lexer::is_name_start(c) => {}
        _ => return false,
    }
    let rest: Vec<char> = chars.collect();
    rest.iter()
        .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-'))
        && !rest.ends_with(&['-'])
}

pub(crate) fn is_datatype_iri(iri: &Iri) -> bool {
    iri.as_str().starts_with(ns::XSD) || iri.as_str() == vocab::RDFS_LITERAL
}

/// Literal in the shared text form: bare integers, quoted strings, and
/// `"lex"^^datatype` otherwise.
pub(crate) fn render_literal(lit: &Literal, ctx: &PrefixContext) -> String {
    let lex = lit.lexical();
    match lit.datatype().as_str() {
        vocab::XSD_INTEGER if is_plain_integer(lex) => lex.to_string(),
        vocab::XSD_STRING => format!(
            "\"{}\"",
            crate::serialization::functional::escape_string(lex)
        ),
        _ => format!(
            "\"{}\"^^{}",
            crate::serialization::functional::escape_string(lex),
            ctx.shorten(lit.datatype(), &[])
        ),
    }
}

fn is_plain_integer(s: &str) -> bool {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Flattens nested intersections inside intersections and unions inside
/// unions, recursively. Parsers return expressions in this form.
pub fn normalize(ce: &ClassExpression) -> ClassExpression {
    use ClassExpression::*;
    fn flatten(ops: &[ClassExpression], union: bool) -> Vec<ClassExpression> {
        let mut out = Vec::with_capacity(ops.len());
        for op in ops {
            match (normalize(op), union) {
                (ObjectIntersectionOf(inner), false) | (ObjectUnionOf(inner), true) => {
                    out.extend(inner)
                }
                (other, _) => out.push(other),
            }
        }
        out
    }
    match ce {
        ObjectIntersectionOf(ops) => ObjectIntersectionOf(flatten(ops, false)),
        ObjectUnionOf(ops) => ObjectUnionOf(flatten(ops, true)),
        ObjectComplementOf(c) => ObjectComplementOf(Box::new(normalize(c))),
        ObjectSomeValuesFrom { property, filler } => ObjectSomeValuesFrom {
            property: property.clone(),
            filler: Box::new(normalize(filler)),
        },
        ObjectAllValuesFrom { property, filler } => ObjectAllValuesFrom {
            property: property.clone(),
            filler: Box::new(normalize(filler)),
        },
        ObjectMinCardinality {
            cardinality,
            property,
            filler,
        } => ObjectMinCardinality {
            cardinality: *cardinality,
            property: property.clone(),
            filler: Box::new(normalize(filler)),
        },
        ObjectMaxCardinality {
            cardinality,
            property,
            filler,
        } => ObjectMaxCardinality {
            cardinality: *cardinality,
            property: property.clone(),
            filler: Box::new(normalize(filler)),
        },
        ObjectExactCardinality {
            cardinality,
            property,
            filler,
        } => ObjectExactCardinality {
            cardinality: *cardinality,
            property: property.clone(),
            filler: Box::new(normalize(filler)),
        },
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Class;

    const NS: &str = "http://example.com/father#";

    fn c(n: &str) -> ClassExpression {
        Class::parse(&format!("{NS}{n}")).unwrap().into()
    }

    #[test]
    fn normalize_flattens_same_operator_only() {
        let inner = ClassExpression::intersection(vec![c("b"), c("c")]).unwrap();
        let outer = ClassExpression::intersection(vec![c("a"), inner]).unwrap();
        assert_eq!(
            normalize(&outer),
            ClassExpression::ObjectIntersectionOf(vec![c("a"), c("b"), c("c")])
        );
        let u = ClassExpression::union(vec![c("b"), c("c")]).unwrap();
        let mixed = ClassExpression::intersection(vec![c("a"), u]).unwrap();
        assert_eq!(normalize(&mixed), mixed);
    }

    #[test]
    fn resolve_and_shorten() {
        let ctx = PrefixContext::new(NS).with_prefix("ex", "http://example.org/");
        let male = ctx.resolve("male").unwrap();
        assert_eq!(male.as_str(), "http://example.com/father#male");
        assert_eq!(ctx.shorten(&male, &[]), "male");
        assert_eq!(
            ctx.shorten(&male, &["male"]),
            "<http://example.com/father#male>"
        );
        let x = ctx.resolve("ex:x").unwrap();
        assert_eq!(ctx.shorten(&x, &[]), "ex:x");
        assert!(ctx.resolve("nope:x").is_none());
        let odd = Iri::new("http://example.org/a.b").unwrap();
        assert_eq!(ctx.shorten(&odd, &[]), "<http://example.org/a.b>");
    }

    #[test]
    fn literal_forms() {
        let ctx = PrefixContext::new(NS);
        assert_eq!(render_literal(&Literal::integer(-3), &ctx), "-3");
        assert_eq!(render_literal(&Literal::string("a\"b"), &ctx), "\"a\\\"b\"");
        assert_eq!(
            render_literal(&Literal::double(1.5), &ctx),
            "\"1.5\"^^xsd:double"
        );
    }
}

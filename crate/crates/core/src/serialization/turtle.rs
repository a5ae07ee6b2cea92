use std::collections::HashMap;
use std::fmt::Write as _;

use crate::model::{ns, vocab, Iri, Literal};
use crate::ontology::Ontology;

use super::rdf::{ontology_to_triples, Term, Triple, UnmappableAxiom};

/// Turtle writer settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct TurtleOptions {
    /// Fail on the first axiom without an RDF mapping instead of skipping it.
    pub strict: bool,
}

const HEADER: [(&str, &str); 4] = [
    ("owl", ns::OWL),
    ("rdf", ns::RDF),
    ("rdfs", ns::RDFS),
    ("xsd", ns::XSD),
];

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

fn iri(iri: &Iri) -> String {
    let text = iri.as_str();
    for (name, namespace) in HEADER {
        if let Some(local) = text.strip_prefix(namespace) {
            if !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return format!("{name}:{local}");
            }
        }
    }
    format!("<{text}>")
}

fn literal(lit: &Literal) -> String {
    let body = escape(lit.lexical());
    if lit.datatype().as_str() == vocab::XSD_STRING {
        format!("\"{body}\"")
    } else {
        format!("\"{body}\"^^{}", iri(lit.datatype()))
    }
}

fn term(t: &Term) -> String {
    match t {
        Term::Iri(i) => iri(i),
        Term::Blank(b) => format!("_:{b}"),
        Term::Literal(l) => literal(l),
    }
}

/// Writes triples one per line, grouped by subject in order of first appearance.
pub(crate) fn write_triples(triples: &[Triple]) -> String {
    let mut out = String::new();
    for (name, namespace) in HEADER {
        let _ = writeln!(out, "@prefix {name}: <{namespace}> .");
    }
    let mut first_seen: HashMap<&Term, usize> = HashMap::new();
    for t in triples {
        let n = first_seen.len();
        first_seen.entry(&t.subject).or_insert(n);
    }
    let mut order: Vec<&Triple> = triples.iter().collect();
    order.sort_by_key(|t| first_seen[&t.subject]);
    let mut previous: Option<&Term> = None;
    for t in order {
        if previous != Some(&t.subject) {
            out.push('\n');
            previous = Some(&t.subject);
        }
        let _ = writeln!(
            out,
            "{} {} {} .",
            term(&t.subject),
            iri(&t.predicate),
            term(&t.object)
        );
    }
    out
}

/// Serializes `onto` as Turtle. SWRL rules have no RDF form: they are
/// skipped with a warning unless `options.strict` is set.
pub fn serialize_turtle(
    onto: &Ontology,
    options: &TurtleOptions,
) -> Result<String, UnmappableAxiom> {
    let (triples, skipped) = ontology_to_triples(onto);
    if let Some(first) = skipped.into_iter().next() {
        if options.strict {
            return Err(first);
        }
        log::warn!(
            "skipping axioms without RDF mapping, first: {}",
            first.axiom
        );
    }
    Ok(write_triples(&triples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Axiom, Class, DataProperty, NamedIndividual};

    const NS: &str = "http://example.com/father#";

    fn ind(n: &str) -> NamedIndividual {
        NamedIndividual::parse(&format!("{NS}{n}")).unwrap()
    }

    #[test]
    fn empty_ontology_is_header_only() {
        let text = serialize_turtle(&Ontology::new(), &TurtleOptions::default()).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().all(|l| l.starts_with("@prefix")));
    }

    #[test]
    fn class_assertion_line() {
        let mut onto = Ontology::new();
        onto.add_axiom(Axiom::class_assertion(
            ind("alkid"),
            Class::parse(&format!("{NS}male")).unwrap(),
        ));
        let text = serialize_turtle(&onto, &TurtleOptions::default()).unwrap();
        assert!(text.contains(
            "<http://example.com/father#alkid> rdf:type <http://example.com/father#male> ."
        ));
    }

    #[test]
    fn quotes_are_escaped() {
        let mut onto = Ontology::new();
        onto.add_axiom(Axiom::DataPropertyAssertion {
            subject: ind("a"),
            property: DataProperty::parse(&format!("{NS}name")).unwrap(),
            value: Literal::string("say \"hi\"\n"),
        });
        let text = serialize_turtle(&onto, &TurtleOptions::default()).unwrap();
        assert!(text.contains(r#""say \"hi\"\n" ."#), "{text}");
    }

    #[test]
    fn subjects_grouped_in_first_appearance_order() {
        let mut onto = Ontology::new();
        let c = Class::parse(&format!("{NS}c")).unwrap();
        onto.add_axiom(Axiom::class_assertion(ind("b"), c.clone()));
        onto.add_axiom(Axiom::class_assertion(ind("a"), c.clone()));
        onto.add_axiom(Axiom::declaration(ind("b")));
        let text = serialize_turtle(&onto, &TurtleOptions::default()).unwrap();
        let body: Vec<&str> = text.lines().filter(|l| l.starts_with('<')).collect();
        assert!(body[0].starts_with("<http://example.com/father#b>"));
        assert!(body[1].starts_with("<http://example.com/father#b>"));
        assert!(body[2].starts_with("<http://example.com/father#a>"));
    }
}

//! Ontology generation from natural-language text.
//!
//! The pipeline asks a chat-completion model for `(subject | predicate | object)`
//! lines, asks it again for a class per entity, and turns the answers into
//! individuals, property assertions and class assertions. Numeric objects
//! become data property assertions.
//!
//! ```
//! use owlkit_textgen::{generate_ontology, GenerationConfig, MockClient, Prompts};
//!
//! let config = GenerationConfig::open("http://example.org/kb#").unwrap();
//! let text = "Marie Curie was born in 1867.";
//! let client = MockClient::new()
//!     .with_response(
//!         &Prompts::default().render_extract(text),
//!         "(Marie Curie | birth year | 1867)",
//!     )
//!     .with_fallback("Marie Curie: Person");
//! let onto = generate_ontology(text, &client, &config).unwrap();
//! assert_eq!(onto.individuals_in_signature().len(), 1);
//! ```

pub mod client;
pub mod prompts;
pub mod sanitize;

use std::collections::HashSet;
use std::path::PathBuf;

use indexmap::{IndexMap, IndexSet};
use log::warn;
use owlkit::model::{
    Axiom, Class, DataProperty, Datatype, Iri, Literal, NamedIndividual, ObjectProperty,
};
use owlkit::Ontology;
use thiserror::Error;

pub use client::{
    ClientError, ExtractorClient, HttpChatClient, MockClient, RecordingClient, ScriptedClient,
    Transcript,
};
pub use prompts::Prompts;

pub const DEFAULT_MODEL: &str = "gpt-4o-mini";
pub const DEFAULT_BASE_URL: &str = "https://api.openai.com/v1";

#[derive(Debug, Error)]
pub enum TextgenError {
    #[error("input text is empty")]
    EmptyText,
    #[error("no entities to type")]
    NoEntities,
    #[error("no triple could be parsed after {attempts} attempt(s)")]
    ExtractionEmpty { attempts: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Client(#[from] ClientError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Object of an extracted triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ObjectValue {
    Entity(String),
    /// Lexical form that passed [`sanitize::is_decimal_number`].
    Number(String),
}

impl ObjectValue {
    pub fn classify(text: &str) -> ObjectValue {
        if sanitize::is_decimal_number(text) {
            ObjectValue::Number(text.to_string())
        } else {
            ObjectValue::Entity(text.to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtractionTriple {
    pub subject: String,
    pub predicate: String,
    pub object: ObjectValue,
}

#[derive(Debug, Clone)]
pub struct GenerationConfig {
    /// Namespace for minted IRIs; must end in `#` or `/`.
    pub namespace: String,
    /// Prefix name bound to the namespace in the output ontology.
    pub prefix: String,
    pub predefined_classes: Vec<Class>,
    pub allow_llm_classes: bool,
    pub model: String,
    pub max_retries: usize,
    pub prompts: Prompts,
}

impl GenerationConfig {
    /// A configuration that lets the model name classes freely.
    pub fn open(namespace: &str) -> Result<GenerationConfig, TextgenError> {
        let config = GenerationConfig {
            namespace: namespace.to_string(),
            prefix: "ex".to_string(),
            predefined_classes: Vec::new(),
            allow_llm_classes: true,
            model: DEFAULT_MODEL.to_string(),
            max_retries: 2,
            prompts: Prompts::default(),
        };
        config.validate()?;
        Ok(config)
    }

    /// A configuration restricted to `classes`.
    pub fn predefined(
        namespace: &str,
        classes: Vec<Class>,
    ) -> Result<GenerationConfig, TextgenError> {
        let config = GenerationConfig {
            predefined_classes: classes,
            allow_llm_classes: false,
            ..GenerationConfig::open(namespace)?
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), TextgenError> {
        if self.predefined_classes.is_empty() && !self.allow_llm_classes {
            return Err(TextgenError::InvalidConfig(
                "either predefined classes or model-named classes are required".into(),
            ));
        }
        if !self.namespace.ends_with(['#', '/']) {
            return Err(TextgenError::InvalidConfig(format!(
                "namespace `{}` must end in `#` or `/`",
                self.namespace
            )));
        }
        Iri::with_namespace(&self.namespace, "x")
            .map_err(|e| TextgenError::InvalidConfig(format!("namespace: {e}")))?;
        Ok(())
    }

    fn mint(&self, local: &str) -> Option<Iri> {
        if local.is_empty() {
            return None;
        }
        Iri::with_namespace(&self.namespace, local).ok()
    }

    pub fn individual(&self, surface: &str) -> Option<NamedIndividual> {
        self.mint(&sanitize::individual_name(surface))
            .map(NamedIndividual)
    }

    pub fn object_property(&self, surface: &str) -> Option<ObjectProperty> {
        self.mint(&sanitize::property_name(surface))
            .map(ObjectProperty)
    }

    pub fn data_property(&self, surface: &str) -> Option<DataProperty> {
        self.mint(&sanitize::property_name(surface))
            .map(DataProperty)
    }

    pub fn class(&self, surface: &str) -> Option<Class> {
        self.mint(&sanitize::class_name(surface)).map(Class)
    }
}

fn strip_bullet(line: &str) -> &str {
    let line = line.trim();
    line.strip_prefix(['-', '*'])
        .map(str::trim_start)
        .unwrap_or(line)
}

fn parse_triple_line(line: &str) -> Option<ExtractionTriple> {
    let inner = strip_bullet(line).strip_prefix('(')?.strip_suffix(')')?;
    let parts: Vec<&str> = inner.split('|').map(str::trim).collect();
    match parts[..] {
        [s, p, o] if !s.is_empty() && !p.is_empty() && !o.is_empty() => Some(ExtractionTriple {
            subject: s.to_string(),
            predicate: p.to_string(),
            object: ObjectValue::classify(o),
        }),
        _ => None,
    }
}

/// Parses a completion in the `(subject | predicate | object)` line format.
/// Returns the triples and the number of non-blank lines that did not parse.
pub fn parse_triples(completion: &str) -> (Vec<ExtractionTriple>, usize) {
    let mut triples = Vec::new();
    let mut malformed = 0;
    for line in completion.lines().filter(|l| !l.trim().is_empty()) {
        match parse_triple_line(line) {
            Some(t) => triples.push(t),
            None => malformed += 1,
        }
    }
    (triples, malformed)
}

/// Asks `client` for triples, retrying up to `config.max_retries` times
/// while no line of the answer parses.
pub fn extract_triples(
    text: &str,
    client: &dyn ExtractorClient,
    config: &GenerationConfig,
) -> Result<Vec<ExtractionTriple>, TextgenError> {
    if text.trim().is_empty() {
        return Err(TextgenError::EmptyText);
    }
    let prompt = config.prompts.render_extract(text);
    let attempts = config.max_retries + 1;
    for attempt in 1..=attempts {
        let (triples, malformed) = parse_triples(&client.send(&prompt)?);
        if malformed > 0 {
            warn!("extraction attempt {attempt}: skipped {malformed} malformed line(s)");
        }
        if !triples.is_empty() {
            return Ok(triples);
        }
    }
    Err(TextgenError::ExtractionEmpty { attempts })
}

/// Entity surface forms in order of first appearance, subjects and
/// non-numeric objects alike.
pub fn entities_of(triples: &[ExtractionTriple]) -> Vec<String> {
    let mut seen = IndexSet::new();
    for t in triples {
        seen.insert(t.subject.clone());
        if let ObjectValue::Entity(o) = &t.object {
            seen.insert(o.clone());
        }
    }
    seen.into_iter().collect()
}

fn resolve_class(answer: &str, config: &GenerationConfig) -> Class {
    let wanted = sanitize::class_name(answer);
    if wanted.is_empty() || wanted.eq_ignore_ascii_case("thing") {
        return Class::thing();
    }
    if let Some(c) = config
        .predefined_classes
        .iter()
        .find(|c| sanitize::class_name(c.0.remainder()).eq_ignore_ascii_case(&wanted))
    {
        return c.clone();
    }
    if config.allow_llm_classes {
        config.class(answer).unwrap_or_else(Class::thing)
    } else {
        Class::thing()
    }
}

/// Asks `client` for one class per entity. Entities the answer does not
/// cover, and answers outside the allowed classes, map to `owl:Thing`.
pub fn assign_types(
    entities: &[String],
    client: &dyn ExtractorClient,
    config: &GenerationConfig,
) -> Result<IndexMap<String, Class>, TextgenError> {
    if entities.is_empty() {
        return Err(TextgenError::NoEntities);
    }
    let prompt = if config.predefined_classes.is_empty() {
        config.prompts.render_type_open(entities)
    } else {
        let names: Vec<String> = config
            .predefined_classes
            .iter()
            .map(|c| c.0.remainder().to_string())
            .collect();
        config
            .prompts
            .render_type_predefined(entities, &names, config.allow_llm_classes)
    };
    let completion = client.send(&prompt)?;
    let mut answers: IndexMap<String, Class> = IndexMap::new();
    for line in completion.lines() {
        let Some((entity, class)) = strip_bullet(line).rsplit_once(':') else {
            continue;
        };
        let key = sanitize::individual_name(entity);
        if !key.is_empty() {
            answers
                .entry(key)
                .or_insert_with(|| resolve_class(class.trim(), config));
        }
    }
    Ok(entities
        .iter()
        .map(|e| {
            let class = answers
                .get(&sanitize::individual_name(e))
                .cloned()
                .unwrap_or_else(Class::thing);
            (e.clone(), class)
        })
        .collect())
}

/// Integral values that fit in 64 bits become `xsd:integer`; everything else,
/// including larger integers, `xsd:double`.
fn numeric_literal(lexical: &str) -> Literal {
    if !lexical.contains('.') {
        if let Ok(v) = lexical.parse::<i64>() {
            return Literal::integer(v);
        }
    }
    Literal::new(lexical, Datatype::xsd_double().0)
        .unwrap_or_else(|_| Literal::double(lexical.parse().unwrap_or(f64::NAN)))
}

/// Materializes triples and a typing as axioms: declarations first, then
/// class assertions, then property assertions, each without duplicates.
/// Surface forms that sanitize to the same IRI denote one individual.
/// Entities missing from `typing` are asserted into `owl:Thing`.
pub fn triples_to_axioms(
    triples: &[ExtractionTriple],
    typing: &IndexMap<String, Class>,
    config: &GenerationConfig,
) -> Vec<Axiom> {
    let mut declarations = IndexSet::new();
    let mut types: IndexMap<NamedIndividual, Class> = IndexMap::new();
    let mut facts = IndexSet::new();
    let mut typed = |ind: &NamedIndividual, surface: &str, declarations: &mut IndexSet<Axiom>| {
        declarations.insert(Axiom::declaration(ind.clone()));
        let class = typing.get(surface).cloned().unwrap_or_else(Class::thing);
        match types.get(ind) {
            Some(c) if !c.is_thing() => {}
            _ => {
                types.insert(ind.clone(), class);
            }
        }
    };
    let mut skipped = 0usize;
    for t in triples {
        let Some(subject) = config.individual(&t.subject) else {
            skipped += 1;
            continue;
        };
        let (fact, object) = match &t.object {
            ObjectValue::Entity(o) => {
                match (config.object_property(&t.predicate), config.individual(o)) {
                    (Some(p), Some(object)) => {
                        declarations.insert(Axiom::declaration(p.clone()));
                        let fact =
                            Axiom::object_property_assertion(p, subject.clone(), object.clone());
                        (fact, Some((object, o)))
                    }
                    _ => {
                        skipped += 1;
                        continue;
                    }
                }
            }
            ObjectValue::Number(n) => match config.data_property(&t.predicate) {
                Some(p) => {
                    declarations.insert(Axiom::declaration(p.clone()));
                    let fact = Axiom::DataPropertyAssertion {
                        subject: subject.clone(),
                        property: p,
                        value: numeric_literal(n),
                    };
                    (fact, None)
                }
                None => {
                    skipped += 1;
                    continue;
                }
            },
        };
        typed(&subject, &t.subject, &mut declarations);
        if let Some((object, surface)) = object {
            typed(&object, surface, &mut declarations);
        }
        facts.insert(fact);
    }
    if skipped > 0 {
        warn!("skipped {skipped} triple(s) whose names sanitize to nothing");
    }
    let mut classes = IndexSet::new();
    let mut assertions = Vec::new();
    for (ind, class) in &types {
        if !class.is_thing() {
            classes.insert(Axiom::declaration(class.clone()));
        }
        assertions.push(Axiom::class_assertion(ind.clone(), class.clone()));
    }
    let mut seen = HashSet::new();
    classes
        .into_iter()
        .chain(declarations)
        .chain(assertions)
        .chain(facts)
        .filter(|a| seen.insert(a.clone()))
        .collect()
}

/// Extracts, types and materializes `text` into a fresh ontology whose IRI
/// is the namespace without its trailing separator. An answer from which no
/// triple parses yields an ontology without axioms. Client errors abort the
/// whole run.
pub fn generate_ontology(
    text: &str,
    client: &dyn ExtractorClient,
    config: &GenerationConfig,
) -> Result<Ontology, TextgenError> {
    config.validate()?;
    let triples = match extract_triples(text, client, config) {
        Ok(t) => t,
        Err(TextgenError::ExtractionEmpty { attempts }) => {
            warn!("nothing extracted after {attempts} attempt(s)");
            Vec::new()
        }
        Err(e) => return Err(e),
    };
    let entities = entities_of(&triples);
    let typing = if entities.is_empty() {
        IndexMap::new()
    } else {
        assign_types(&entities, client, config)?
    };
    let iri = Iri::new(config.namespace.trim_end_matches(['#', '/'])).ok();
    let mut onto = match iri {
        Some(iri) => Ontology::with_iri(iri),
        None => Ontology::new(),
    };
    onto.prefixes_mut()
        .insert(config.prefix.clone(), config.namespace.clone());
    onto.extend(triples_to_axioms(&triples, &typing, config));
    Ok(onto)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NS: &str = "http://example.org/kb#";

    fn open() -> GenerationConfig {
        GenerationConfig::open(NS).unwrap()
    }

    #[test]
    fn parses_the_line_format() {
        let (t, bad) =
            parse_triples("(Marie Curie | won | Nobel Prize)\n(Marie Curie | birth year | 1867)\n");
        assert_eq!(bad, 0);
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].object, ObjectValue::Entity("Nobel Prize".into()));
        assert_eq!(t[1].object, ObjectValue::Number("1867".into()));
        assert_eq!(t[1].predicate, "birth year");
    }

    #[test]
    fn malformed_lines_are_counted() {
        let (t, bad) =
            parse_triples("Here you go:\n- (a | b | c)\n(a | b)\n( | b | c)\n\n(a|b|c|d)");
        assert_eq!(t.len(), 1);
        assert_eq!(bad, 4);
    }

    #[test]
    fn config_invariants() {
        assert!(GenerationConfig::predefined(NS, vec![]).is_err());
        assert!(GenerationConfig::open("http://example.org/kb").is_err());
        assert!(GenerationConfig::open("not an iri#").is_err());
    }

    #[test]
    fn extraction_retries_until_something_parses() {
        let client = ScriptedClient::new(["nonsense", "still nonsense", "(a | r | b)"]);
        let t = extract_triples("x", &client, &open()).unwrap();
        assert_eq!(t.len(), 1);

        let client = ScriptedClient::new(["nonsense", "nonsense", "nonsense", "(a | r | b)"]);
        assert!(matches!(
            extract_triples("x", &client, &open()),
            Err(TextgenError::ExtractionEmpty { attempts: 3 })
        ));
        assert!(matches!(
            extract_triples("  ", &client, &open()),
            Err(TextgenError::EmptyText)
        ));
    }

    #[test]
    fn numeric_literals() {
        assert_eq!(numeric_literal("1867"), Literal::integer(1867));
        assert_eq!(numeric_literal("+5"), Literal::integer(5));
        let big = numeric_literal("123456789012345678901234567890");
        assert_eq!(big.datatype(), &Datatype::xsd_double().0);
        let d = numeric_literal("3.25");
        assert_eq!(
            (d.lexical(), d.datatype()),
            ("3.25", &Datatype::xsd_double().0)
        );
    }

    #[test]
    fn collisions_merge() {
        let triples = vec![
            ExtractionTriple {
                subject: "Marie Curie".into(),
                predicate: "won".into(),
                object: ObjectValue::Entity("Nobel  Prize".into()),
            },
            ExtractionTriple {
                subject: "marie curie".into(),
                predicate: "won".into(),
                object: ObjectValue::Entity("Nobel Prize".into()),
            },
        ];
        let axioms = triples_to_axioms(&triples, &IndexMap::new(), &open());
        let opas = axioms
            .iter()
            .filter(|a| matches!(a, Axiom::ObjectPropertyAssertion { .. }))
            .count();
        assert_eq!(opas, 1);
        let classes = axioms
            .iter()
            .filter(|a| matches!(a, Axiom::ClassAssertion { .. }))
            .count();
        assert_eq!(classes, 2);
    }
}

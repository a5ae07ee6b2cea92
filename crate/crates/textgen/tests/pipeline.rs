use std::path::{Path, PathBuf};
use std::time::Instant;

use owlkit::model::{validate_expression, Axiom, Class, Datatype, Literal};
use owlkit::ontology::Ontology;
use owlkit::serialization::{parse_functional, serialize_functional};
use owlkit_textgen::sanitize::is_decimal_number;
use owlkit_textgen::{
    assign_types, extract_triples, generate_ontology, triples_to_axioms, ClientError,
    ExtractionTriple, ExtractorClient, GenerationConfig, MockClient, ObjectValue, Prompts,
    ScriptedClient, TextgenError, Transcript,
};
use proptest::prelude::*;

const NS: &str = "http://example.org/curie#";

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn curie_text() -> String {
    std::fs::read_to_string(data("data/curie.txt")).unwrap()
}

fn curie_mock() -> MockClient {
    MockClient::from_transcript(&Transcript::load(data("data/curie_transcript.json")).unwrap())
}

fn curie() -> Ontology {
    generate_ontology(
        &curie_text(),
        &curie_mock(),
        &GenerationConfig::open(NS).unwrap(),
    )
    .unwrap()
}

fn class(name: &str) -> Class {
    Class::parse(&format!("{NS}{name}")).unwrap()
}

#[test]
fn golden_transcript_gives_frozen_output() {
    let start = Instant::now();
    let text = serialize_functional(&curie());
    assert!(start.elapsed().as_secs_f64() < 1.0);
    let golden = std::fs::read_to_string(data("golden/curie.ofn")).unwrap();
    assert_eq!(text, golden);
    assert_eq!(serialize_functional(&curie()), text);
}

#[test]
fn generated_ontology_is_well_formed() {
    let onto = curie();
    for axiom in onto.axioms() {
        if let Axiom::ClassAssertion { class, .. } = axiom {
            validate_expression(class).unwrap();
        }
    }
    let back = parse_functional(&serialize_functional(&onto)).unwrap();
    assert_eq!(back, onto);
    let individuals = onto.individuals_in_signature();
    assert_eq!(individuals.len(), 5);
    for ind in &individuals {
        assert!(onto
            .axioms()
            .any(|a| matches!(a, Axiom::ClassAssertion { individual, .. } if individual == ind)));
    }
    assert!(onto
        .classes_in_signature()
        .contains(&class("ChemicalElement")));
}

#[test]
fn numeric_triples_become_data_assertions() {
    let config = GenerationConfig::open(NS).unwrap();
    let t = ExtractionTriple {
        subject: "Marie Curie".into(),
        predicate: "birth year".into(),
        object: ObjectValue::Number("1867".into()),
    };
    let axioms = triples_to_axioms(&[t.clone(), t], &Default::default(), &config);
    let expected = Axiom::DataPropertyAssertion {
        subject: config.individual("Marie Curie").unwrap(),
        property: owlkit::model::DataProperty::parse(&format!("{NS}birthYear")).unwrap(),
        value: Literal::integer(1867),
    };
    assert_eq!(axioms.iter().filter(|a| **a == expected).count(), 1);
    assert_eq!(
        config.individual("Marie Curie").unwrap().0.as_str(),
        format!("{NS}marie_curie")
    );
    let onto = curie();
    let masses: Vec<&Literal> = onto
        .axioms()
        .filter_map(|a| match a {
            Axiom::DataPropertyAssertion {
                property, value, ..
            } if property.0.remainder() == "atomicMass" => Some(value),
            _ => None,
        })
        .collect();
    assert_eq!(masses.len(), 1);
    assert_eq!(masses[0].datatype(), &Datatype::xsd_double().0);
}

#[test]
fn extraction_example() {
    let client = MockClient::new()
        .with_fallback("(Marie Curie | won | Nobel Prize)\n(Marie Curie | birth year | 1867)");
    let t = extract_triples("text", &client, &GenerationConfig::open(NS).unwrap()).unwrap();
    assert_eq!(t.len(), 2);
    assert!(matches!(t[0].object, ObjectValue::Entity(_)));
    assert_eq!(t[1].object, ObjectValue::Number("1867".into()));
    let garbage = MockClient::new().with_fallback("I cannot help with that.");
    assert!(matches!(
        extract_triples("text", &garbage, &GenerationConfig::open(NS).unwrap()),
        Err(TextgenError::ExtractionEmpty { .. })
    ));
}

#[test]
fn predefined_typing() {
    let config = GenerationConfig::predefined(NS, vec![class("Person"), class("Award")]).unwrap();
    let entities = vec![
        "Marie Curie".to_string(),
        "Radium".to_string(),
        "Nobel Prize".to_string(),
    ];
    let client = MockClient::new()
        .with_fallback("Marie Curie: Person\nRadium: ChemicalElement\n- Nobel Prize: award");
    let typing = assign_types(&entities, &client, &config).unwrap();
    assert_eq!(typing["Marie Curie"], class("Person"));
    assert_eq!(typing["Radium"], Class::thing());
    assert_eq!(typing["Nobel Prize"], class("Award"));

    let prompt = Prompts::default().render_type_predefined(
        &entities,
        &["Person".into(), "Award".into()],
        false,
    );
    let seen = MockClient::new().with_response(&prompt, "Marie Curie: Person");
    let typing = assign_types(&entities, &seen, &config).unwrap();
    assert_eq!(typing["Marie Curie"], class("Person"));
    assert_eq!(typing["Radium"], Class::thing());
}

#[test]
fn open_typing_mints_classes() {
    let config = GenerationConfig::open(NS).unwrap();
    let client = MockClient::new().with_fallback("Radium: ChemicalElement");
    let typing = assign_types(&["Radium".to_string()], &client, &config).unwrap();
    assert_eq!(typing["Radium"], class("ChemicalElement"));
    let axioms = triples_to_axioms(
        &[ExtractionTriple {
            subject: "Radium".into(),
            predicate: "atomic number".into(),
            object: ObjectValue::Number("88".into()),
        }],
        &typing,
        &config,
    );
    assert!(axioms.contains(&Axiom::declaration(class("ChemicalElement"))));
}

#[test]
fn predefined_with_open_classes() {
    let mut config = GenerationConfig::predefined(NS, vec![class("Person")]).unwrap();
    config.allow_llm_classes = true;
    let client = MockClient::new().with_fallback("Radium: Chemical Element\nCurie: person");
    let typing = assign_types(
        &["Radium".to_string(), "Curie".to_string()],
        &client,
        &config,
    )
    .unwrap();
    assert_eq!(typing["Radium"], class("ChemicalElement"));
    assert_eq!(typing["Curie"], class("Person"));
}

#[test]
fn empty_extraction_gives_empty_ontology() {
    let client = MockClient::new().with_fallback("nothing here");
    let onto =
        generate_ontology("Some text.", &client, &GenerationConfig::open(NS).unwrap()).unwrap();
    assert_eq!(onto.axiom_count(), 0);
}

#[test]
fn client_failure_is_atomic() {
    let client = ScriptedClient::new(["(a | r | b)"]).then_fail("connection reset");
    let result = generate_ontology("text", &client, &GenerationConfig::open(NS).unwrap());
    assert!(matches!(
        result,
        Err(TextgenError::Client(ClientError::Transport(_)))
    ));
    assert!(matches!(
        generate_ontology("", &client, &GenerationConfig::open(NS).unwrap()),
        Err(TextgenError::EmptyText)
    ));
}

#[test]
fn mock_is_deterministic() {
    let mock = curie_mock();
    let prompt = Prompts::default().render_extract(&curie_text());
    let first = mock.send(&prompt).unwrap();
    assert!(!first.is_empty());
    assert_eq!(mock.send(&prompt).unwrap(), first);
}

fn object_string() -> impl Strategy<Value = String> {
    prop_oneof![
        "[+-]?[0-9]{1,12}(\\.[0-9]{1,6})?",
        "[0-9a-zA-Z .,+eE-]{0,12}",
        "[+-]?[0-9]{0,4}\\.?[0-9]{0,4}",
        ".{0,8}",
    ]
}

fn reference_decimal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    if i == start {
        return false;
    }
    if i == b.len() {
        return true;
    }
    if b[i] != b'.' {
        return false;
    }
    i += 1;
    let frac = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    i > frac && i == b.len()
}

proptest! {
    #[test]
    fn numeric_detection_matches_lexical_rule(s in object_string()) {
        prop_assert_eq!(is_decimal_number(&s), reference_decimal(&s));
        let classified = ObjectValue::classify(&s);
        prop_assert_eq!(matches!(classified, ObjectValue::Number(_)), reference_decimal(&s));
    }

    #[test]
    fn pipeline_is_deterministic(lines in prop::collection::vec(("[A-Z][a-z]{1,6}( [A-Z][a-z]{1,6})?", "[a-z]{2,6}( [a-z]{2,6})?", "[A-Z][a-z]{1,6}|[0-9]{1,4}(\\.[0-9]{1,2})?"), 1..8)) {
        let answer: String = lines.iter().map(|(s, p, o)| format!("({s} | {p} | {o})\n")).collect();
        let client = MockClient::new().with_fallback(&answer);
        let config = GenerationConfig::open(NS).unwrap();
        let a = generate_ontology("text", &client, &config).unwrap();
        let b = generate_ontology("text", &client, &config).unwrap();
        prop_assert_eq!(serialize_functional(&a), serialize_functional(&b));
        for ind in a.individuals_in_signature() {
            let typed = a.axioms().any(|ax| matches!(ax, Axiom::ClassAssertion { individual, .. } if *individual == ind));
            prop_assert!(typed, "untyped individual");
        }
        prop_assert_eq!(parse_functional(&serialize_functional(&a)).unwrap(), a);
    }
}

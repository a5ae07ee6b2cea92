use owlkit::model::{Axiom, ClassExpression};
use owlkit::reasoner::{ReasonerConfig, Snapshot};
use owlkit::serialization::ontology_to_triples;
use owlkit::sparql::{eval_query, to_sparql};
use owlkit_testkit::gen::{self, CeOptions, KbOptions};
use owlkit_testkit::{class, family, individual, local_names};

fn plain_abox() -> KbOptions {
    KbOptions {
        tbox: false,
        declare_all: true,
        ..Default::default()
    }
}

#[test]
fn translation_agrees_with_reasoner_without_hierarchy() {
    let config = ReasonerConfig {
        infer_hierarchy: false,
        ..Default::default()
    };
    for seed in 0..100u64 {
        let mut rng = gen::rng(seed);
        let (onto, vocab) = gen::knowledge_base(&mut rng, &plain_abox());
        let (triples, skipped) = ontology_to_triples(&onto);
        assert!(skipped.is_empty());
        let snapshot = Snapshot::build(&onto, config);
        for _ in 0..3 {
            let ce = gen::class_expression(&mut rng, &vocab, 4, &CeOptions::default());
            let query = to_sparql(&ce, "x").unwrap();
            let answers = eval_query(&query, &triples).unwrap();
            let expected: std::collections::BTreeSet<_> =
                snapshot.instances(&ce).into_iter().map(|i| i.0).collect();
            assert_eq!(answers, expected, "seed {seed}\n{}", query.text());
        }
    }
}

#[test]
fn family_named_class_query() {
    let mut onto = family();
    onto.add_axiom(Axiom::class_assertion(individual("alkid"), class("male")));
    onto.add_axiom(Axiom::declaration(individual("alkid")));
    let (triples, _) = ontology_to_triples(&onto);
    let q = to_sparql(&class("male").into(), "x").unwrap();
    assert!(q
        .text()
        .ends_with("SELECT DISTINCT ?x WHERE { ?x rdf:type <http://example.com/father#male> . }"));
    let names: Vec<_> = eval_query(&q, &triples)
        .unwrap()
        .into_iter()
        .map(|i| i.remainder().to_string())
        .collect();
    assert_eq!(names, ["alkid", "heinz", "markus"]);
    assert!(eval_query(
        &to_sparql(&ClassExpression::nothing(), "x").unwrap(),
        &triples
    )
    .unwrap()
    .is_empty());
}

#[test]
fn family_queries_match_closed_world_answers() {
    let onto = family();
    let (triples, _) = ontology_to_triples(&onto);
    let s = Snapshot::build(
        &onto,
        ReasonerConfig {
            infer_hierarchy: false,
            ..Default::default()
        },
    );
    let ce = ClassExpression::some(
        owlkit_testkit::object_property("hasChild"),
        class("female").into(),
    );
    let answers = eval_query(&to_sparql(&ce, "x").unwrap(), &triples).unwrap();
    assert_eq!(answers.len(), 1);
    assert_eq!(local_names(&s.instances(&ce)), ["heinz"]);
}

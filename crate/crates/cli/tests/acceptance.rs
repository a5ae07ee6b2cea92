//! End-to-end acceptance checks. Each criterion runs under a wall-clock
//! budget and prints one PASS/FAIL line; the test fails if any criterion does.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use owlkit::ebr::{
    self, gradient_check, retrieval_metrics, retrieve, train, CrispScorer, EmbeddingModel64,
    TrainingConfig64,
};
use owlkit::model::{Axiom, Class, ClassExpression};
use owlkit::ontology::{Format, Ontology};
use owlkit::reasoner::{ReasonerConfig, Snapshot};
use owlkit::serialization::{ontology_to_triples, parse_functional, serialize_functional};
use owlkit::sparql::{eval_query, to_sparql};
use owlkit::syntax::{normalize, parse_dl, parse_manchester, render_dl, render_manchester};
use owlkit_testkit::gen::{self, CeOptions, KbOptions, Vocab};
use owlkit_testkit::oracle::NaiveReasoner;
use owlkit_testkit::{class, family, family_path, individual};
use owlkit_textgen::{generate_ontology, GenerationConfig, MockClient, Transcript};
use rand::Rng;

fn say(line: &str) {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = writeln!(lock, "{line}");
    let _ = lock.flush();
}

fn edit_and_reload_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("updated_family.ofn");
    let mut onto = Ontology::load(family_path(), Format::Functional).unwrap();
    let alkid = individual("alkid");
    assert!(onto.add_axiom(Axiom::class_assertion(alkid.clone(), class("male"))));
    onto.save(&path, Format::Functional).unwrap();
    let reloaded = Ontology::load(&path, Format::Functional).unwrap();
    assert_eq!(reloaded, onto);
    let snapshot = Snapshot::build(&reloaded, ReasonerConfig::default());
    assert!(snapshot.instances(&class("male").into()).contains(&alkid));
    let types = snapshot.types(&alkid, false).unwrap();
    assert!(types.contains(&class("male")) && types.contains(&class("person")));
}

fn serialization_roundtrip() {
    for seed in 0..100 {
        let mut rng = gen::rng(seed);
        let onto = gen::ontology(&mut rng, 50, 4);
        let back = parse_functional(&serialize_functional(&onto)).unwrap();
        assert_eq!(back, onto, "seed {seed}");
    }
}

fn reasoner_oracle() {
    let mut pairs = 0;
    for seed in 0..200u64 {
        let mut rng = gen::rng(seed);
        let (onto, vocab) = gen::knowledge_base(&mut rng, &KbOptions::default());
        let config = ReasonerConfig {
            infer_hierarchy: seed % 3 != 1,
            universal_vacuous: seed % 3 != 2,
        };
        let snapshot = Snapshot::build(&onto, config);
        let naive = NaiveReasoner::new(&onto, config);
        for _ in 0..5 {
            let ce = gen::class_expression(&mut rng, &vocab, 4, &CeOptions::default());
            assert_eq!(snapshot.instances(&ce), naive.instances(&ce), "seed {seed}");
            pairs += 1;
        }
    }
    assert_eq!(pairs, 1000);
}

fn sparql_cross_check() {
    let opts = KbOptions {
        tbox: false,
        declare_all: true,
        ..Default::default()
    };
    let config = ReasonerConfig {
        infer_hierarchy: false,
        ..Default::default()
    };
    for seed in 0..300u64 {
        let mut rng = gen::rng(10_000 + seed);
        let (onto, vocab) = gen::knowledge_base(&mut rng, &opts);
        let (triples, _) = ontology_to_triples(&onto);
        let ce = gen::class_expression(&mut rng, &vocab, 4, &CeOptions::default());
        let answers = eval_query(&to_sparql(&ce, "x").unwrap(), &triples).unwrap();
        let expected: BTreeSet<_> = Snapshot::build(&onto, config)
            .instances(&ce)
            .into_iter()
            .map(|i| i.0)
            .collect();
        assert_eq!(answers, expected, "seed {seed}");
    }
}

fn syntax_roundtrip() {
    let vocab = Vocab::new(5, 3, 2, 6);
    let ctx = vocab.context();
    for seed in 0..500 {
        let mut rng = gen::rng(seed);
        let ce = gen::class_expression(&mut rng, &vocab, 4, &CeOptions::default());
        let expected = normalize(&ce);
        let m = parse_manchester(&render_manchester(&ce, &ctx), &ctx).unwrap();
        assert_eq!(normalize(&m), expected, "seed {seed}");
        let d = parse_dl(&render_dl(&ce, &ctx), &ctx).unwrap();
        assert_eq!(normalize(&d), expected, "seed {seed}");
    }
}

fn gradient_probes() -> f64 {
    let mut worst = 0.0f64;
    let mut probes = 0;
    let mut seed = 0u64;
    while probes < 100 {
        let mut rng = gen::rng(20_000 + seed);
        seed += 1;
        let (onto, _) = gen::knowledge_base(
            &mut rng,
            &KbOptions {
                individuals: 8,
                ..Default::default()
            },
        );
        let triples = ebr::extract_triples(&onto).triples;
        if triples.is_empty() {
            continue;
        }
        let dim = rng.gen_range(1..=16);
        let config = TrainingConfig64 {
            dim,
            epochs: 0,
            seed,
            ..Default::default()
        };
        let mut model: EmbeddingModel64 = train(&triples, &config).unwrap().model;
        for e in 0..model.entity_count() {
            model
                .entity_mut(e)
                .iter_mut()
                .for_each(|x| *x = rng.gen_range(-1.5..1.5));
        }
        for r in 0..model.relation_count() {
            model
                .relation_mut(r)
                .iter_mut()
                .for_each(|x| *x = rng.gen_range(-1.5..1.5));
        }
        let triple = &triples[rng.gen_range(0..triples.len())];
        let label = if rng.gen_bool(0.5) { 1.0 } else { 0.0 };
        worst = worst.max(gradient_check(&model, triple, label, 1e-5).unwrap());
        probes += 1;
    }
    assert!(worst <= 1e-4, "max relative error {worst:e}");
    worst
}

fn crisp_reduction() {
    let opts = CeOptions {
        data: false,
        ..Default::default()
    };
    let mut checked = 0;
    for seed in 0..40u64 {
        let mut rng = gen::rng(30_000 + seed);
        let (onto, vocab) = gen::knowledge_base(
            &mut rng,
            &KbOptions {
                individuals: 15,
                ..Default::default()
            },
        );
        let snapshot = Snapshot::build(&onto, ReasonerConfig::default());
        let scorer = CrispScorer {
            snapshot: &snapshot,
        };
        for _ in 0..5 {
            let ce = gen::class_expression(&mut rng, &vocab, 4, &opts);
            let got = retrieve::<f64, _>(&scorer, &ce, &snapshot, 0.5).unwrap();
            assert_eq!(got, snapshot.instances(&ce), "seed {seed}");
            checked += 1;
        }
    }
    assert_eq!(checked, 200);
}

fn training_sanity() -> String {
    let onto = family();
    let triples = ebr::extract_triples(&onto).triples;
    let config = TrainingConfig64 {
        seed: 7,
        ..Default::default()
    };
    let a = train(&triples, &config).unwrap();
    let b = train(&triples, &config).unwrap();
    let (first, last) = (a.losses[0], *a.losses.last().unwrap());
    assert!(last < first, "loss {first} -> {last}");
    assert_eq!(a.model, b.model);
    assert_eq!(
        a.losses.iter().map(|l| l.to_bits()).collect::<Vec<_>>(),
        b.losses.iter().map(|l| l.to_bits()).collect::<Vec<_>>()
    );
    let snapshot = Snapshot::build(&onto, ReasonerConfig::default());
    let f1: Vec<String> = ["male", "female", "child"]
        .iter()
        .map(|name| {
            let ce = ClassExpression::from(
                Class::parse(&format!("{}{name}", owlkit_testkit::FAMILY_NS)).unwrap(),
            );
            let predicted = retrieve(&a.model, &ce, &snapshot, 0.5).unwrap();
            let m = retrieval_metrics(&predicted, &snapshot.instances(&ce));
            format!("{name} {:.3}", m.f1)
        })
        .collect();
    format!("loss {first:.4} -> {last:.4}; F1 {}", f1.join(", "))
}

fn textgen_determinism() {
    let base = Path::new(env!("CARGO_MANIFEST_DIR")).join("../textgen/tests");
    let text = std::fs::read_to_string(base.join("data/curie.txt")).unwrap();
    let transcript = Transcript::load(base.join("data/curie_transcript.json")).unwrap();
    let config = GenerationConfig::open("http://example.org/curie#").unwrap();
    let golden = std::fs::read_to_string(base.join("golden/curie.ofn")).unwrap();
    for _ in 0..2 {
        let onto =
            generate_ontology(&text, &MockClient::from_transcript(&transcript), &config).unwrap();
        assert_eq!(serialize_functional(&onto), golden);
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = owlkit_cli::run(
        std::iter::once("owlkit").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn cli_goldens() {
    let f = family_path().to_str().unwrap().to_string();
    let golden = |name: &str| {
        std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR"))
                .join("tests/golden")
                .join(name),
        )
        .unwrap()
    };
    let cases: [(&[&str], &str); 4] = [
        (
            &[
                "reason",
                "--in",
                &f,
                "--query",
                "male",
                "--syntax",
                "manchester",
            ],
            "reason_male.txt",
        ),
        (
            &[
                "render",
                "--expr",
                "male and (hasChild some person)",
                "--from",
                "manchester",
                "--to",
                "dl",
            ],
            "render_dl.txt",
        ),
        (
            &[
                "convert",
                "--in",
                &f,
                "--from",
                "functional",
                "--to",
                "functional",
                "--out",
                "-",
            ],
            "convert.ofn",
        ),
        (&["stats", "--in", &f], "stats.txt"),
    ];
    for (args, name) in cases {
        assert_eq!(cli(args), (0, golden(name)), "{name}");
    }
    assert_eq!(cli(&["reason", "--in", &f, "--query", "male and and"]).0, 1);
    assert_eq!(
        cli(&["reason", "--in", &f, "--query", "male", "--bogus"]).0,
        2
    );
}

#[test]
fn acceptance_criteria() {
    type Check = Box<dyn Fn() -> String>;
    let done = |f: fn()| -> Check {
        Box::new(move || {
            f();
            String::new()
        })
    };
    let criteria: Vec<(u32, &str, Duration, Check)> = vec![
        (
            1,
            "edited fixture reports alkid as male and person",
            Duration::from_secs(1),
            done(edit_and_reload_scenario),
        ),
        (
            2,
            "100 random ontologies round-trip through functional syntax",
            Duration::from_secs(30),
            done(serialization_roundtrip),
        ),
        (
            3,
            "1000 retrievals agree with the naive oracle",
            Duration::from_secs(60),
            done(reasoner_oracle),
        ),
        (
            4,
            "300 SPARQL translations agree with the reasoner",
            Duration::from_secs(60),
            done(sparql_cross_check),
        ),
        (
            5,
            "500 expressions round-trip through Manchester and DL",
            Duration::from_secs(10),
            done(syntax_roundtrip),
        ),
        (
            6,
            "100 gradient probes within 1e-4",
            Duration::from_secs(5),
            Box::new(|| format!("max rel err {:.2e}", gradient_probes())),
        ),
        (
            7,
            "crisp memberships reproduce exact retrieval on 200 expressions",
            Duration::from_secs(10),
            done(crisp_reduction),
        ),
        (
            8,
            "family training lowers loss and is reproducible",
            Duration::from_secs(30),
            Box::new(training_sanity),
        ),
        (
            9,
            "mock transcript reproduces the golden ontology",
            Duration::from_secs(1),
            done(textgen_determinism),
        ),
        (
            10,
            "CLI goldens and exit codes",
            Duration::from_secs(10),
            done(cli_goldens),
        ),
    ];
    let mut failed = Vec::new();
    for (n, what, budget, check) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let (status, note) = match result {
            Ok(_) if elapsed > budget => ("FAIL", format!("over budget of {budget:?}")),
            Ok(note) => ("PASS", note),
            Err(e) => (
                "FAIL",
                e.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default(),
            ),
        };
        let note = if note.is_empty() {
            String::new()
        } else {
            format!(" [{note}]")
        };
        say(&format!(
            "criterion {n:>2}: {status} {:>8.3}s  {what}{note}",
            elapsed.as_secs_f64()
        ));
        if status == "FAIL" {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

use std::path::{Path, PathBuf};

use owlkit::model::{Axiom, ClassExpression};
use owlkit::ontology::{Format, Ontology};
use owlkit::reasoner::{ReasonerConfig, Snapshot};
use owlkit::serialization::serialize_functional;
use owlkit::syntax::{parse_manchester, render_dl, PrefixContext};
use owlkit_testkit::{class, family, family_path, individual};

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn owlkit(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = owlkit_cli::run(
        std::iter::once("owlkit").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn fixture() -> String {
    family_path().to_str().unwrap().to_string()
}

fn textgen_data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "textgen", "tests", name]
        .iter()
        .collect();
    path.to_str().unwrap().to_string()
}

fn ok(args: &[&str]) -> String {
    let o = owlkit(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.err);
    assert!(o.err.is_empty(), "{}", o.err);
    o.out
}

#[test]
fn outputs_match_goldens() {
    let f = fixture();
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec![
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
            vec![
                "reason",
                "--in",
                &f,
                "--query",
                "∃ hasChild.female",
                "--syntax",
                "dl",
            ],
            "reason_has_child_female.txt",
        ),
        (
            vec!["reason", "--in", &f, "--query", "person and not male"],
            "reason_person_not_male.txt",
        ),
        (
            vec![
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
            vec![
                "render",
                "--expr",
                "male ⊓ (∃ hasChild.person)",
                "--from",
                "dl",
                "--to",
                "manchester",
            ],
            "render_manchester.txt",
        ),
        (
            vec![
                "render",
                "--expr",
                "male and (hasChild some person)",
                "--from",
                "manchester",
                "--to",
                "sparql",
                "--default-ns",
                "http://example.com/father#",
            ],
            "render_sparql.txt",
        ),
        (vec!["stats", "--in", &f], "stats.txt"),
        (
            vec![
                "hierarchy",
                "--in",
                &f,
                "--class",
                "person",
                "--direction",
                "sub",
            ],
            "hierarchy_person_sub.txt",
        ),
        (
            vec![
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
        (
            vec!["convert", "--in", &f, "--to", "turtle", "--out", "-"],
            "convert.ttl",
        ),
    ];
    for (args, name) in cases {
        assert_eq!(ok(&args), golden(name), "{name}");
    }
    let target = dir.path().join("out.ofn");
    ok(&[
        "convert",
        "--in",
        &f,
        "--to",
        "functional",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read_to_string(&target).unwrap(),
        golden("convert.ofn")
    );
}

#[test]
fn outputs_equal_library_calls() {
    let onto = family();
    let ctx = PrefixContext::for_ontology(&onto, None);
    let ce = parse_manchester("male or hasChild some female", &ctx).unwrap();
    let snapshot = Snapshot::build(&onto, ReasonerConfig::default());
    let expected: String = snapshot
        .instances(&ce)
        .iter()
        .map(|i| format!("{}\n", i.0))
        .collect();
    assert_eq!(
        ok(&[
            "reason",
            "--in",
            &fixture(),
            "--query",
            "male or hasChild some female"
        ]),
        expected
    );

    let no_hierarchy = Snapshot::build(
        &onto,
        ReasonerConfig {
            infer_hierarchy: false,
            ..Default::default()
        },
    );
    let person = ClassExpression::from(class("person"));
    assert!(no_hierarchy.instances(&person).is_empty());
    assert_eq!(
        ok(&[
            "reason",
            "--in",
            &fixture(),
            "--query",
            "person",
            "--no-hierarchy"
        ]),
        ""
    );

    let rctx = PrefixContext::new(owlkit_cli::DEFAULT_NS);
    let ce = parse_manchester("hasChild only (male or female)", &rctx).unwrap();
    assert_eq!(
        ok(&[
            "render",
            "--expr",
            "hasChild only (male or female)",
            "--from",
            "manchester",
            "--to",
            "dl"
        ]),
        format!("{}\n", render_dl(&ce, &rctx))
    );
    assert_eq!(
        ok(&[
            "convert",
            "--in",
            &fixture(),
            "--to",
            "functional",
            "--out",
            "-"
        ]),
        serialize_functional(&onto)
    );
}

#[test]
fn edited_fixture_reports_the_new_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("updated_family.ofn");
    let mut onto = Ontology::load(family_path(), Format::Functional).unwrap();
    onto.add_axiom(Axiom::class_assertion(individual("alkid"), class("male")));
    onto.save(&path, Format::Functional).unwrap();
    let out = ok(&[
        "reason",
        "--in",
        path.to_str().unwrap(),
        "--query",
        "male",
        "--syntax",
        "manchester",
    ]);
    assert_eq!(
        out,
        "http://example.com/father#alkid\nhttp://example.com/father#heinz\nhttp://example.com/father#markus\n"
    );
}

#[test]
fn convert_is_a_fixpoint() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.ofn");
    let second = dir.path().join("b.ofn");
    ok(&[
        "convert",
        "--in",
        &fixture(),
        "--to",
        "functional",
        "--out",
        first.to_str().unwrap(),
    ]);
    ok(&[
        "convert",
        "--in",
        first.to_str().unwrap(),
        "--to",
        "functional",
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
}

#[test]
fn generate_replays_a_transcript() {
    let out = ok(&[
        "generate",
        "--text",
        &textgen_data("data/curie.txt"),
        "--mock",
        &textgen_data("data/curie_transcript.json"),
        "--namespace",
        "http://example.org/curie#",
        "--out",
        "-",
    ]);
    assert_eq!(
        out,
        std::fs::read_to_string(textgen_data("golden/curie.ofn")).unwrap()
    );
}

#[test]
fn ebr_commands_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ebr");
    let b = dir.path().join("b.ebr");
    for model in [&a, &b] {
        let out = ok(&[
            "ebr-train",
            "--in",
            &fixture(),
            "--out",
            model.to_str().unwrap(),
            "--seed",
            "7",
            "--dim",
            "8",
            "--epochs",
            "50",
        ]);
        assert!(out.starts_with("triples: 11 (skipped 0)\n"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let query = |gamma: &str| {
        ok(&[
            "ebr-query",
            "--model",
            a.to_str().unwrap(),
            "--in",
            &fixture(),
            "--query",
            "male",
            "--gamma",
            gamma,
        ])
    };
    let everyone = query("0");
    assert_eq!(everyone.lines().count(), 6);
    assert!(query("1.01").is_empty());
    let unknown = owlkit(&[
        "ebr-query",
        "--model",
        a.to_str().unwrap(),
        "--in",
        &fixture(),
        "--query",
        "person",
    ]);
    assert_eq!(unknown.code, 1);
}

#[test]
fn swrl_rules_are_echoed() {
    assert_eq!(
        ok(&[
            "swrl-parse",
            "--rule",
            "person(?x) ^ hasChild(?x, ?y) -> parent(?x)"
        ]),
        "person(?x) ^ hasChild(?x, ?y) -> parent(?x)\n"
    );
    let bad = owlkit(&["swrl-parse", "--rule", "parent(?x) -> person(?y)"]);
    assert_eq!(bad.code, 1);
    assert!(bad.err.starts_with("error: "));
}

#[test]
fn exit_code_contract() {
    let f = fixture();
    let usage: [&[&str]; 5] = [
        &["reason", "--in", &f, "--query", "male", "--bogus"],
        &["frobnicate"],
        &["convert", "--in", &f, "--to", "rdfxml", "--out", "-"],
        &["render", "--expr", "male", "--from", "manchester"],
        &[],
    ];
    for args in usage {
        let o = owlkit(args);
        assert_eq!(o.code, 2, "{args:?}");
        assert!(o.out.is_empty() && !o.err.is_empty());
    }
    let domain: [&[&str]; 5] = [
        &[
            "reason",
            "--in",
            "/definitely/missing.ofn",
            "--query",
            "male",
        ],
        &["reason", "--in", &f, "--query", "male and and"],
        &[
            "render",
            "--expr",
            "male",
            "--from",
            "manchester",
            "--to",
            "sparql",
            "--var",
            "y0",
        ],
        &[
            "hierarchy",
            "--in",
            &f,
            "--class",
            "nope:x",
            "--direction",
            "super",
        ],
        &[
            "generate",
            "--text",
            "/definitely/missing.txt",
            "--out",
            "-",
        ],
    ];
    for args in domain {
        let o = owlkit(args);
        assert_eq!(o.code, 1, "{args:?}");
        assert!(o.out.is_empty());
        assert!(o.err.starts_with("error: "), "{}", o.err);
    }
    assert_eq!(owlkit(&["--help"]).code, 0);
    assert_eq!(owlkit(&["stats", "--in", &f]).code, 0);
}

use owlkit::model::Axiom;
use owlkit::{Format, Ontology};
use owlkit_testkit::{class, family_path, individual};

#[test]
fn fixture_signature() {
    let onto = Ontology::load(family_path(), Format::Functional).unwrap();
    assert_eq!(onto.classes_in_signature().len(), 4);
    assert_eq!(onto.object_properties_in_signature().len(), 3);
    assert_eq!(onto.data_properties_in_signature().len(), 1);
    assert_eq!(onto.individuals_in_signature().len(), 6);
}

#[test]
fn edit_save_reload() {
    let dir = tempfile::tempdir().unwrap();
    let mut onto = Ontology::load(family_path(), Format::Functional).unwrap();
    let ax = Axiom::class_assertion(individual("alkid"), class("male"));
    assert!(onto.add_axiom(ax.clone()));
    assert!(!onto.add_axiom(ax.clone()));
    let path = dir.path().join("updated.ofn");
    onto.save(&path, Format::Functional).unwrap();
    let back = Ontology::load(&path, Format::Functional).unwrap();
    assert_eq!(back, onto);
    assert!(back.contains(&ax));
}

#[test]
fn turtle_output_is_write_only() {
    let dir = tempfile::tempdir().unwrap();
    let onto = owlkit_testkit::family();
    let path = dir.path().join("family.ttl");
    onto.save(&path, Format::Turtle).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"));
    assert!(text.contains(
        "<http://example.com/father#male> rdfs:subClassOf <http://example.com/father#person> .\n"
    ));
    assert!(Ontology::load(&path, Format::Turtle).is_err());
    assert!("rdfxml".parse::<Format>().is_err());
}

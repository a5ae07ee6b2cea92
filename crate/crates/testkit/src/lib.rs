//! Shared fixtures, seeded generators and an independent brute-force
//! retrieval oracle for the owlkit test suites.

pub mod gen;
pub mod oracle;

use std::path::PathBuf;

use owlkit::model::{Class, DataProperty, NamedIndividual, ObjectProperty};
use owlkit::serialization::parse_functional;
use owlkit::Ontology;

pub const FAMILY_NS: &str = "http://example.com/father#";

/// Text of the family fixture, `data/family.ofn`.
pub const FAMILY_OFN: &str = include_str!("../data/family.ofn");

pub fn family_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/family.ofn")
}

pub fn family() -> Ontology {
    parse_functional(FAMILY_OFN).expect("fixture parses")
}

pub fn class(name: &str) -> Class {
    Class::parse(&format!("{FAMILY_NS}{name}")).expect("valid IRI")
}

pub fn individual(name: &str) -> NamedIndividual {
    NamedIndividual::parse(&format!("{FAMILY_NS}{name}")).expect("valid IRI")
}

pub fn object_property(name: &str) -> ObjectProperty {
    ObjectProperty::parse(&format!("{FAMILY_NS}{name}")).expect("valid IRI")
}

pub fn data_property(name: &str) -> DataProperty {
    DataProperty::parse(&format!("{FAMILY_NS}{name}")).expect("valid IRI")
}

/// Local names of a set of individuals, in order.
pub fn local_names<'a>(individuals: impl IntoIterator<Item = &'a NamedIndividual>) -> Vec<String> {
    individuals
        .into_iter()
        .map(|i| i.0.remainder().to_string())
        .collect()
}

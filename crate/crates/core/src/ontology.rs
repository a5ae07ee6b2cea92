//! In-memory ontology: an insertion-ordered axiom set with kind and entity
//! indexes, signature accessors and format-dispatched load/save.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use crate::model::{
    ns, Axiom, AxiomKind, Class, DataProperty, EntityKind, Iri, NamedIndividual, ObjectProperty,
    OwlEntity,
};
use crate::serialization::{self, ParseError, TurtleOptions, UnmappableAxiom};

/// Ordered prefix-name to namespace bindings. The `owl`, `rdf`, `rdfs` and
/// `xsd` prefixes are always bound. The empty name is the default prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixMap {
    map: IndexMap<String, String>,
}

impl PrefixMap {
    pub const STANDARD: [(&'static str, &'static str); 4] = [
        ("owl", ns::OWL),
        ("rdf", ns::RDF),
        ("rdfs", ns::RDFS),
        ("xsd", ns::XSD),
    ];

    pub fn new() -> PrefixMap {
        let map = Self::STANDARD
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        PrefixMap { map }
    }

    /// Binds `name`. Rebinding one of the standard prefixes is ignored.
    pub fn insert(&mut self, name: impl Into<String>, namespace: impl Into<String>) {
        let name = name.into();
        if Self::STANDARD.iter().any(|(k, _)| *k == name) {
            return;
        }
        self.map.insert(name, namespace.into());
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.map.get(name).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Resolves `name:local` to a full IRI string.
    pub fn expand(&self, name: &str, local: &str) -> Option<String> {
        self.get(name).map(|ns| format!("{ns}{local}"))
    }
}

impl Default for PrefixMap {
    fn default() -> Self {
        PrefixMap::new()
    }
}

/// Serialization formats understood by [`load`] and [`save`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// OWL 2 Functional-Style Syntax (read and write).
    Functional,
    /// Turtle (write only).
    Turtle,
}

impl Format {
    pub const SUPPORTED: &'static str = "functional, turtle";
}

impl FromStr for Format {
    type Err = OntologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "functional" | "ofn" => Ok(Format::Functional),
            "turtle" | "ttl" => Ok(Format::Turtle),
            other => Err(OntologyError::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Functional => "functional",
            Format::Turtle => "turtle",
        })
    }
}

#[derive(Debug, Error)]
pub enum OntologyError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("unsupported format `{0}` (supported: {supported})", supported = Format::SUPPORTED)]
    UnsupportedFormat(String),
    #[error("format `{0}` can be written but not read")]
    WriteOnlyFormat(Format),
    #[error(transparent)]
    Unmappable(#[from] UnmappableAxiom),
}

/// An ontology: optional IRIs, imports, prefixes and a set of axioms.
///
/// Axioms keep insertion order and are deduplicated under structural
/// equality. Equality between ontologies compares IRIs, imports and the
/// axiom *set*.
#[derive(Debug, Clone, Default)]
pub struct Ontology {
    iri: Option<Iri>,
    version_iri: Option<Iri>,
    imports: Vec<Iri>,
    prefixes: PrefixMap,
    axioms: IndexSet<Arc<Axiom>>,
    by_kind: HashMap<AxiomKind, IndexSet<Arc<Axiom>>>,
    by_entity: IndexMap<OwlEntity, IndexSet<Arc<Axiom>>>,
}

impl Ontology {
    pub fn new() -> Ontology {
        Ontology::default()
    }

    pub fn with_iri(iri: Iri) -> Ontology {
        Ontology {
            iri: Some(iri),
            ..Ontology::default()
        }
    }

    pub fn iri(&self) -> Option<&Iri> {
        self.iri.as_ref()
    }

    pub fn set_iri(&mut self, iri: Option<Iri>) {
        self.iri = iri;
    }

    pub fn version_iri(&self) -> Option<&Iri> {
        self.version_iri.as_ref()
    }

    pub fn set_version_iri(&mut self, iri: Option<Iri>) {
        self.version_iri = iri;
    }

    /// Import declarations; kept but never resolved.
    pub fn imports(&self) -> &[Iri] {
        &self.imports
    }

    pub fn add_import(&mut self, iri: Iri) {
        if !self.imports.contains(&iri) {
            self.imports.push(iri);
        }
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixMap {
        &mut self.prefixes
    }

    /// Adds an axiom; returns `false` if a structurally equal axiom was present.
    pub fn add_axiom(&mut self, axiom: Axiom) -> bool {
        if self.axioms.contains(&axiom) {
            return false;
        }
        let axiom = Arc::new(axiom);
        self.by_kind
            .entry(axiom.kind())
            .or_default()
            .insert(Arc::clone(&axiom));
        for entity in axiom.signature_ordered() {
            self.by_entity
                .entry(entity)
                .or_default()
                .insert(Arc::clone(&axiom));
        }
        self.axioms.insert(axiom);
        true
    }

    /// Adds every axiom, returning how many were new.
    pub fn extend<I: IntoIterator<Item = Axiom>>(&mut self, axioms: I) -> usize {
        axioms
            .into_iter()
            .filter(|a| self.add_axiom(a.clone()))
            .count()
    }

    /// Removes an axiom; returns `false` if it was absent.
    pub fn remove_axiom(&mut self, axiom: &Axiom) -> bool {
        let Some(stored) = self.axioms.shift_take(axiom) else {
            return false;
        };
        if let Some(set) = self.by_kind.get_mut(&stored.kind()) {
            set.shift_remove(axiom);
            if set.is_empty() {
                self.by_kind.remove(&stored.kind());
            }
        }
        for entity in stored.signature_ordered() {
            if let Some(set) = self.by_entity.get_mut(&entity) {
                set.shift_remove(axiom);
                if set.is_empty() {
                    self.by_entity.shift_remove(&entity);
                }
            }
        }
        true
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(axiom)
    }

    pub fn axiom_count(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// All axioms in insertion order.
    pub fn axioms(&self) -> impl Iterator<Item = &Axiom> + '_ {
        self.axioms.iter().map(|a| a.as_ref())
    }

    pub fn axioms_of_kind(&self, kind: AxiomKind) -> Vec<&Axiom> {
        self.by_kind
            .get(&kind)
            .map(|s| s.iter().map(|a| a.as_ref()).collect())
            .unwrap_or_default()
    }

    /// Axioms whose signature contains `entity`, in insertion order.
    pub fn axioms_about(&self, entity: &OwlEntity) -> Vec<&Axiom> {
        self.by_entity
            .get(entity)
            .map(|s| s.iter().map(|a| a.as_ref()).collect())
            .unwrap_or_default()
    }

    /// The union of all axiom signatures, in first-insertion order.
    pub fn signature(&self) -> impl Iterator<Item = &OwlEntity> + '_ {
        self.by_entity.keys()
    }

    fn entities_of(&self, kind: EntityKind) -> impl Iterator<Item = &Iri> + '_ {
        self.by_entity
            .keys()
            .filter(move |e| e.kind == kind)
            .map(|e| &e.iri)
    }

    pub fn classes_in_signature(&self) -> Vec<Class> {
        self.entities_of(EntityKind::Class)
            .cloned()
            .map(Class)
            .collect()
    }

    pub fn object_properties_in_signature(&self) -> Vec<ObjectProperty> {
        self.entities_of(EntityKind::ObjectProperty)
            .cloned()
            .map(ObjectProperty)
            .collect()
    }

    pub fn data_properties_in_signature(&self) -> Vec<DataProperty> {
        self.entities_of(EntityKind::DataProperty)
            .cloned()
            .map(DataProperty)
            .collect()
    }

    pub fn individuals_in_signature(&self) -> Vec<NamedIndividual> {
        self.entities_of(EntityKind::NamedIndividual)
            .cloned()
            .map(NamedIndividual)
            .collect()
    }

    /// Compares axiom sets only, ignoring IRIs, imports and order.
    pub fn same_axioms(&self, other: &Ontology) -> bool {
        self.axioms.len() == other.axioms.len()
            && self.axioms.iter().all(|a| other.axioms.contains(a))
    }
}

impl PartialEq for Ontology {
    fn eq(&self, other: &Self) -> bool {
        self.iri == other.iri
            && self.version_iri == other.version_iri
            && self.imports == other.imports
            && self.same_axioms(other)
    }
}

impl Eq for Ontology {}

/// Reads an ontology document from `path`.
pub fn load(path: impl AsRef<Path>, format: Format) -> Result<Ontology, OntologyError> {
    let path = path.as_ref();
    if format != Format::Functional {
        return Err(OntologyError::WriteOnlyFormat(format));
    }
    let text = std::fs::read_to_string(path).map_err(|source| OntologyError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serialization::parse_functional(&text).map_err(|source| OntologyError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Renders `onto` in `format` without touching the filesystem.
pub fn to_string(onto: &Ontology, format: Format) -> Result<String, OntologyError> {
    Ok(match format {
        Format::Functional => serialization::serialize_functional(onto),
        Format::Turtle => serialization::serialize_turtle(onto, &TurtleOptions::default())?,
    })
}

/// Writes `onto` to `path` as UTF-8 with LF line endings.
pub fn save(onto: &Ontology, path: impl AsRef<Path>, format: Format) -> Result<(), OntologyError> {
    let path = path.as_ref();
    let text = to_string(onto, format)?;
    std::fs::write(path, text).map_err(|source| OntologyError::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl Ontology {
    pub fn load(path: impl AsRef<Path>, format: Format) -> Result<Ontology, OntologyError> {
        load(path, format)
    }

    pub fn save(&self, path: impl AsRef<Path>, format: Format) -> Result<(), OntologyError> {
        save(self, path, format)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ClassExpression;

    const NS: &str = "http://example.com/father#";

    fn class(n: &str) -> Class {
        Class::parse(&format!("{NS}{n}")).unwrap()
    }

    fn ind(n: &str) -> NamedIndividual {
        NamedIndividual::parse(&format!("{NS}{n}")).unwrap()
    }

    #[test]
    fn standard_prefixes_always_bound() {
        let mut p = PrefixMap::new();
        p.insert("owl", "http://evil/");
        assert_eq!(p.get("owl"), Some(ns::OWL));
        assert_eq!(p.get("xsd"), Some(ns::XSD));
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn add_is_idempotent() {
        let mut o = Ontology::new();
        let ax = Axiom::class_assertion(ind("alkid"), class("male"));
        assert!(o.add_axiom(ax.clone()));
        assert!(!o.add_axiom(ax));
        assert_eq!(o.axiom_count(), 1);
    }

    #[test]
    fn add_remove_restores_indexes() {
        let mut o = Ontology::new();
        let ax = Axiom::class_assertion(ind("alkid"), class("male"));
        o.add_axiom(ax.clone());
        assert_eq!(o.individuals_in_signature(), vec![ind("alkid")]);
        assert!(o.remove_axiom(&ax));
        assert!(!o.contains(&ax));
        assert!(o.axioms_of_kind(AxiomKind::ClassAssertion).is_empty());
        assert!(o.axioms_about(&ind("alkid").into()).is_empty());
        assert!(o.individuals_in_signature().is_empty());
        assert!(!o.remove_axiom(&ax));
    }

    #[test]
    fn signature_is_insertion_ordered() {
        let mut o = Ontology::new();
        o.add_axiom(Axiom::declaration(class("b")));
        o.add_axiom(Axiom::declaration(class("a")));
        o.add_axiom(Axiom::sub_class_of(class("a"), class("b")));
        assert_eq!(o.classes_in_signature(), vec![class("b"), class("a")]);
    }

    #[test]
    fn entity_index_is_shared_between_axioms() {
        let mut o = Ontology::new();
        let a1 = Axiom::declaration(class("a"));
        let a2 = Axiom::sub_class_of(class("a"), ClassExpression::thing());
        o.add_axiom(a1.clone());
        o.add_axiom(a2.clone());
        o.remove_axiom(&a1);
        assert_eq!(o.axioms_about(&class("a").into()), vec![&a2]);
    }

    #[test]
    fn rdfxml_is_rejected_with_supported_list() {
        let err = "rdfxml".parse::<Format>().unwrap_err();
        assert_eq!(
            err.to_string(),
            "unsupported format `rdfxml` (supported: functional, turtle)"
        );
    }

    #[test]
    fn equality_ignores_order() {
        let mut a = Ontology::new();
        let mut b = Ontology::new();
        let x = Axiom::declaration(class("x"));
        let y = Axiom::declaration(class("y"));
        a.add_axiom(x.clone());
        a.add_axiom(y.clone());
        b.add_axiom(y);
        b.add_axiom(x);
        assert_eq!(a, b);
    }
}

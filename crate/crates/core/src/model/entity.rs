use std::fmt;

use super::iri::{vocab, Iri};

/// The six kinds of named entity that make up an ontology signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    DataProperty,
    NamedIndividual,
    Datatype,
    AnnotationProperty,
}

impl EntityKind {
    pub const ALL: [EntityKind; 6] = [
        EntityKind::Class,
        EntityKind::ObjectProperty,
        EntityKind::DataProperty,
        EntityKind::NamedIndividual,
        EntityKind::Datatype,
        EntityKind::AnnotationProperty,
    ];

    /// Keyword used for this kind in functional-style `Declaration(...)`.
    pub fn keyword(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DataProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
            EntityKind::Datatype => "Datatype",
            EntityKind::AnnotationProperty => "AnnotationProperty",
        }
    }

    pub fn from_keyword(keyword: &str) -> Option<EntityKind> {
        EntityKind::ALL.into_iter().find(|k| k.keyword() == keyword)
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A named entity: a kind together with its IRI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OwlEntity {
    pub kind: EntityKind,
    pub iri: Iri,
}

impl OwlEntity {
    pub fn new(kind: EntityKind, iri: Iri) -> OwlEntity {
        OwlEntity { kind, iri }
    }
}

impl fmt::Display for OwlEntity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(<{}>)", self.kind, self.iri)
    }
}

macro_rules! named_entity {
    ($(#[$meta:meta])* $name:ident, $kind:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub Iri);

        impl $name {
            pub fn new(iri: Iri) -> Self {
                $name(iri)
            }

            /// Convenience constructor from IRI text.
            pub fn parse(text: &str) -> Result<Self, super::iri::IriError> {
                Iri::new(text).map($name)
            }

            pub fn iri(&self) -> &Iri {
                &self.0
            }
        }

        impl From<$name> for OwlEntity {
            fn from(e: $name) -> OwlEntity {
                OwlEntity::new(EntityKind::$kind, e.0)
            }
        }

        impl From<&$name> for OwlEntity {
            fn from(e: &$name) -> OwlEntity {
                OwlEntity::new(EntityKind::$kind, e.0.clone())
            }
        }

        impl From<Iri> for $name {
            fn from(iri: Iri) -> Self {
                $name(iri)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }
    };
}

named_entity!(Class, Class);
named_entity!(ObjectProperty, ObjectProperty);
named_entity!(DataProperty, DataProperty);
named_entity!(NamedIndividual, NamedIndividual);
named_entity!(Datatype, Datatype);
named_entity!(AnnotationProperty, AnnotationProperty);

impl Class {
    /// `owl:Thing`
    pub fn thing() -> Class {
        Class(Iri::builtin(vocab::OWL_THING))
    }

    /// `owl:Nothing`
    pub fn nothing() -> Class {
        Class(Iri::builtin(vocab::OWL_NOTHING))
    }

    pub fn is_thing(&self) -> bool {
        self.0.as_str() == vocab::OWL_THING
    }

    pub fn is_nothing(&self) -> bool {
        self.0.as_str() == vocab::OWL_NOTHING
    }
}

impl Datatype {
    pub fn xsd_integer() -> Datatype {
        Datatype(Iri::builtin(vocab::XSD_INTEGER))
    }

    pub fn xsd_double() -> Datatype {
        Datatype(Iri::builtin(vocab::XSD_DOUBLE))
    }

    pub fn xsd_string() -> Datatype {
        Datatype(Iri::builtin(vocab::XSD_STRING))
    }

    pub fn rdfs_literal() -> Datatype {
        Datatype(Iri::builtin(vocab::RDFS_LITERAL))
    }

    /// True for the XSD types whose literals carry a parsed numeric value.
    pub fn is_numeric(&self) -> bool {
        super::literal::is_numeric_datatype(&self.0)
    }
}

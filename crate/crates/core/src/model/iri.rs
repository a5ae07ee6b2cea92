use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// Errors raised while building an [`Iri`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IriError {
    #[error("IRI must not be empty")]
    Empty,
    #[error("IRI `{0}` contains whitespace")]
    Whitespace(String),
    #[error("IRI `{0}` has an empty remainder after its last `#` or `/`")]
    EmptyRemainder(String),
    #[error("IRI `{0}` contains the illegal character `{1}`")]
    IllegalCharacter(String, char),
}

/// Characters excluded from IRI references in Turtle and SPARQL.
const ILLEGAL: &[char] = &['<', '>', '"', '{', '}', '|', '\\', '^', '`'];

/// An internationalized resource identifier.
///
/// Equality, ordering and hashing use the full string only. The split into
/// namespace and remainder is derived from the last `#` or `/`; IRIs without
/// either separator are not split and their remainder is the whole string.
#[derive(Clone)]
pub struct Iri {
    full: Arc<str>,
    split: Option<usize>,
}

impl Iri {
    pub fn new(text: &str) -> Result<Iri, IriError> {
        if text.is_empty() {
            return Err(IriError::Empty);
        }
        if text.chars().any(char::is_whitespace) {
            return Err(IriError::Whitespace(text.to_string()));
        }
        if let Some(c) = text.chars().find(|c| ILLEGAL.contains(c)) {
            return Err(IriError::IllegalCharacter(text.to_string(), c));
        }
        let split = text.rfind(['#', '/']).map(|i| i + 1);
        if split == Some(text.len()) {
            return Err(IriError::EmptyRemainder(text.to_string()));
        }
        Ok(Iri {
            full: Arc::from(text),
            split,
        })
    }

    /// Builds an IRI from a namespace and a local name.
    pub fn with_namespace(namespace: &str, local: &str) -> Result<Iri, IriError> {
        Iri::new(&format!("{namespace}{local}"))
    }

    pub fn as_str(&self) -> &str {
        &self.full
    }

    /// Namespace part including the trailing separator, if the IRI was split.
    pub fn namespace(&self) -> Option<&str> {
        self.split.map(|i| &self.full[..i])
    }

    pub fn remainder(&self) -> &str {
        match self.split {
            Some(i) => &self.full[i..],
            None => &self.full,
        }
    }

    /// Pseudo-constructor used for the built-in vocabulary, which is known to be valid.
    pub(crate) fn builtin(text: &'static str) -> Iri {
        Iri::new(text).expect("built-in IRI is valid")
    }
}

/// Parses `text` into an IRI, computing the remainder from the last `#` or `/`.
pub fn make_iri(text: &str) -> Result<Iri, IriError> {
    Iri::new(text)
}

impl PartialEq for Iri {
    fn eq(&self, other: &Self) -> bool {
        self.full == other.full
    }
}

impl Eq for Iri {}

impl std::hash::Hash for Iri {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.full.hash(state)
    }
}

impl PartialOrd for Iri {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Iri {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.full.cmp(&other.full)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.full)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.full)
    }
}

impl FromStr for Iri {
    type Err = IriError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Iri::new(s)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.full
    }
}

/// Well-known vocabulary namespaces.
pub mod ns {
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
}

/// IRIs of the vocabulary terms the crate needs to refer to.
pub mod vocab {
    pub const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
    pub const OWL_NOTHING: &str = "http://www.w3.org/2002/07/owl#Nothing";
    pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const RDFS_LITERAL: &str = "http://www.w3.org/2000/01/rdf-schema#Literal";
    pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const XSD_FLOAT: &str = "http://www.w3.org/2001/XMLSchema#float";
    pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
    pub const XSD_NON_NEGATIVE_INTEGER: &str =
        "http://www.w3.org/2001/XMLSchema#nonNegativeInteger";
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splits_on_hash() {
        let iri = make_iri("http://example.com/father#male").unwrap();
        assert_eq!(iri.remainder(), "male");
        assert_eq!(iri.namespace(), Some("http://example.com/father#"));
    }

    #[test]
    fn splits_on_last_separator() {
        let iri = make_iri("http://example.com/a#b/c").unwrap();
        assert_eq!(iri.remainder(), "c");
    }

    #[test]
    fn rejects_empty_remainder() {
        assert_eq!(
            make_iri("http://x/"),
            Err(IriError::EmptyRemainder("http://x/".into()))
        );
        assert!(make_iri("http://x#").is_err());
    }

    #[test]
    fn urn_without_separator_is_unsplit() {
        let iri = make_iri("urn:a:b").unwrap();
        assert_eq!(iri.remainder(), "urn:a:b");
        assert_eq!(iri.namespace(), None);
    }

    #[test]
    fn rejects_empty_and_whitespace() {
        assert_eq!(make_iri(""), Err(IriError::Empty));
        assert!(matches!(
            make_iri("http://x/a b"),
            Err(IriError::Whitespace(_))
        ));
        assert!(matches!(
            make_iri("http://x/a\tb"),
            Err(IriError::Whitespace(_))
        ));
        assert!(matches!(
            make_iri("http://x/a>b"),
            Err(IriError::IllegalCharacter(_, '>'))
        ));
    }

    proptest! {
        #[test]
        fn equality_is_string_equality(a in "[a-z]{1,4}", b in "[a-z]{1,4}") {
            let x = make_iri(&format!("http://e.org/{a}")).unwrap();
            let y = make_iri(&format!("http://e.org/{b}")).unwrap();
            prop_assert_eq!(x == y, a == b);
            prop_assert_eq!(x.cmp(&y), x.as_str().cmp(y.as_str()));
        }
    }
}

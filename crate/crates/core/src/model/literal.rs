use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::entity::Datatype;
use super::iri::{vocab, Iri};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("`{lexical}` is not a valid lexical form for <{datatype}>")]
    InvalidLexical { lexical: String, datatype: String },
}

/// Parsed value of a numeric literal.
///
/// `xsd:decimal` values are stored as `f64`, so decimals with more than ~15
/// significant digits lose precision in comparisons (the lexical form is kept
/// verbatim and still round-trips).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NumericValue {
    Integer(i64),
    Float(f64),
}

impl NumericValue {
    pub fn as_f64(self) -> f64 {
        match self {
            NumericValue::Integer(i) => i as f64,
            NumericValue::Float(f) => f,
        }
    }

    pub fn partial_cmp_value(self, other: NumericValue) -> Option<Ordering> {
        match (self, other) {
            (NumericValue::Integer(a), NumericValue::Integer(b)) => Some(a.cmp(&b)),
            (a, b) => a.as_f64().partial_cmp(&b.as_f64()),
        }
    }
}

pub(crate) fn is_numeric_datatype(iri: &Iri) -> bool {
    matches!(
        iri.as_str(),
        vocab::XSD_INTEGER | vocab::XSD_DOUBLE | vocab::XSD_FLOAT | vocab::XSD_DECIMAL
    )
}

fn parse_numeric(lexical: &str, datatype: &Iri) -> Option<Option<NumericValue>> {
    match datatype.as_str() {
        vocab::XSD_INTEGER => {
            let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            lexical
                .parse::<i64>()
                .ok()
                .map(|v| Some(NumericValue::Integer(v)))
        }
        vocab::XSD_DECIMAL => {
            let body = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
            let (int, frac) = body.split_once('.').unwrap_or((body, ""));
            let ok = !(int.is_empty() && frac.is_empty())
                && int.bytes().all(|b| b.is_ascii_digit())
                && frac.bytes().all(|b| b.is_ascii_digit());
            if !ok {
                return None;
            }
            lexical
                .parse::<f64>()
                .ok()
                .map(|v| Some(NumericValue::Float(v)))
        }
        vocab::XSD_DOUBLE | vocab::XSD_FLOAT => {
            let value = match lexical {
                "INF" | "+INF" => f64::INFINITY,
                "-INF" => f64::NEG_INFINITY,
                "NaN" => f64::NAN,
                _ => {
                    // Rust also accepts "inf"/"nan", which XSD does not.
                    if lexical
                        .bytes()
                        .any(|b| b.is_ascii_alphabetic() && b != b'e' && b != b'E')
                    {
                        return None;
                    }
                    lexical.parse::<f64>().ok()?
                }
            };
            Some(Some(NumericValue::Float(value)))
        }
        _ => Some(None),
    }
}

/// A typed literal. Equality is equality of the (lexical form, datatype) pair.
#[derive(Clone)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    numeric: Option<NumericValue>,
}

impl Literal {
    pub fn new(lexical: impl Into<String>, datatype: Iri) -> Result<Literal, LiteralError> {
        let lexical = lexical.into();
        match parse_numeric(&lexical, &datatype) {
            Some(numeric) => Ok(Literal {
                lexical,
                datatype,
                numeric,
            }),
            None => Err(LiteralError::InvalidLexical {
                lexical,
                datatype: datatype.to_string(),
            }),
        }
    }

    pub fn string(value: impl Into<String>) -> Literal {
        Literal {
            lexical: value.into(),
            datatype: Iri::builtin(vocab::XSD_STRING),
            numeric: None,
        }
    }

    pub fn integer(value: i64) -> Literal {
        Literal {
            lexical: value.to_string(),
            datatype: Iri::builtin(vocab::XSD_INTEGER),
            numeric: Some(NumericValue::Integer(value)),
        }
    }

    pub fn double(value: f64) -> Literal {
        let lexical = if value.is_nan() {
            "NaN".to_string()
        } else if value.is_infinite() {
            if value > 0.0 { "INF" } else { "-INF" }.to_string()
        } else {
            format!("{value:?}")
        };
        Literal {
            lexical,
            datatype: Iri::builtin(vocab::XSD_DOUBLE),
            numeric: Some(NumericValue::Float(value)),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn datatype_entity(&self) -> Datatype {
        Datatype(self.datatype.clone())
    }

    pub fn numeric(&self) -> Option<NumericValue> {
        self.numeric
    }

    pub fn is_string(&self) -> bool {
        self.datatype.as_str() == vocab::XSD_STRING
    }

    /// Orders two literals by numeric value; `None` unless both are numeric.
    pub fn numeric_cmp(&self, other: &Literal) -> Option<Ordering> {
        self.numeric?.partial_cmp_value(other.numeric?)
    }
}

impl PartialEq for Literal {
    fn eq(&self, other: &Self) -> bool {
        self.lexical == other.lexical && self.datatype == other.datatype
    }
}

impl Eq for Literal {}

impl std::hash::Hash for Literal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.lexical.hash(state);
        self.datatype.hash(state);
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lexical
            .cmp(&other.lexical)
            .then_with(|| self.datatype.cmp(&other.datatype))
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}^^<{}>", self.lexical, self.datatype)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"^^<{}>", self.lexical, self.datatype)
    }
}

use std::fmt;

use crate::model::{ns, Iri, Literal};

/// A position in a triple pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermPattern {
    Var(String),
    Iri(Iri),
    Literal(Literal),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
}

impl CompareOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Ge => ">=",
            CompareOp::Gt => ">",
            CompareOp::Le => "<=",
            CompareOp::Lt => "<",
            CompareOp::Eq => "=",
        }
    }

    pub fn holds(self, ord: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            CompareOp::Ge => ord != Less,
            CompareOp::Gt => ord == Greater,
            CompareOp::Le => ord != Greater,
            CompareOp::Lt => ord == Less,
            CompareOp::Eq => ord == Equal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterExpr {
    /// `?v op literal`
    Compare {
        var: String,
        op: CompareOp,
        value: Literal,
    },
    /// `DATATYPE(?v) = dt`
    DatatypeIs {
        var: String,
        datatype: Iri,
    },
    False,
}

/// One element of a group graph pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Triple(TermPattern, TermPattern, TermPattern),
    /// `{ a } UNION { b } ...`
    Union(Vec<Vec<Pattern>>),
    /// `FILTER NOT EXISTS { ... }`
    NotExists(Vec<Pattern>),
    /// `VALUES ?v { ... }`
    Values {
        var: String,
        values: Vec<TermPattern>,
    },
    /// `{ SELECT ?key (COUNT(DISTINCT ?counted) AS ?count) WHERE { ... }
    /// GROUP BY ?key HAVING(?count op bound) }`
    CountSelect {
        key: String,
        counted: String,
        count: String,
        inner: Vec<Pattern>,
        op: CompareOp,
        bound: u32,
    },
    Filter(FilterExpr),
}

/// A `SELECT DISTINCT` query over one projected variable, kept in
/// structured form; the text is generated from the structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparqlQuery {
    pub var: String,
    pub patterns: Vec<Pattern>,
}

const PREFIXES: [(&str, &str); 3] = [("rdf", ns::RDF), ("owl", ns::OWL), ("xsd", ns::XSD)];

fn iri(i: &Iri) -> String {
    for (p, namespace) in PREFIXES {
        if let Some(local) = i.as_str().strip_prefix(namespace) {
            if !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return format!("{p}:{local}");
            }
        }
    }
    format!("<{i}>")
}

fn literal(l: &Literal) -> String {
    let mut body = String::new();
    for c in l.lexical().chars() {
        match c {
            '"' => body.push_str("\\\""),
            '\\' => body.push_str("\\\\"),
            '\n' => body.push_str("\\n"),
            '\r' => body.push_str("\\r"),
            '\t' => body.push_str("\\t"),
            c => body.push(c),
        }
    }
    format!("\"{body}\"^^{}", iri(l.datatype()))
}

fn term(t: &TermPattern) -> String {
    match t {
        TermPattern::Var(v) => format!("?{v}"),
        TermPattern::Iri(i) => iri(i),
        TermPattern::Literal(l) => literal(l),
    }
}

fn group(patterns: &[Pattern]) -> String {
    if patterns.is_empty() {
        return "{ }".to_string();
    }
    let parts: Vec<String> = patterns.iter().map(pattern).collect();
    format!("{{ {} }}", parts.join(" "))
}

fn pattern(p: &Pattern) -> String {
    match p {
        Pattern::Triple(s, p, o) => format!("{} {} {} .", term(s), term(p), term(o)),
        Pattern::Union(branches) => branches
            .iter()
            .map(|b| group(b))
            .collect::<Vec<_>>()
            .join(" UNION "),
        Pattern::NotExists(inner) => format!("FILTER NOT EXISTS {}", group(inner)),
        Pattern::Values { var, values } => {
            let vs: Vec<String> = values.iter().map(term).collect();
            format!("VALUES ?{var} {{ {} }}", vs.join(" "))
        }
        Pattern::CountSelect {
            key,
            counted,
            count,
            inner,
            op,
            bound,
        } => format!(
            "{{ SELECT ?{key} (COUNT(DISTINCT ?{counted}) AS ?{count}) WHERE {} GROUP BY ?{key} HAVING(?{count} {} {bound}) }}",
            group(inner),
            op.symbol()
        ),
        Pattern::Filter(f) => match f {
            FilterExpr::Compare { var, op, value } => {
                format!("FILTER(?{var} {} {})", op.symbol(), literal(value))
            }
            FilterExpr::DatatypeIs { var, datatype } => {
                format!("FILTER(DATATYPE(?{var}) = {})", iri(datatype))
            }
            FilterExpr::False => "FILTER(false)".to_string(),
        },
    }
}

impl SparqlQuery {
    /// Full query text: prefix lines, then the query on a single line.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (p, namespace) in PREFIXES {
            out.push_str(&format!("PREFIX {p}: <{namespace}>\n"));
        }
        out.push_str(&format!(
            "SELECT DISTINCT ?{} WHERE {}",
            self.var,
            group(&self.patterns)
        ));
        out
    }

    /// The `WHERE` group alone.
    pub fn body(&self) -> String {
        group(&self.patterns)
    }
}

impl fmt::Display for SparqlQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

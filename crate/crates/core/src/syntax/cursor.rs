use crate::model::{
    validate_data_range, vocab, DataRange, Datatype, Facet, FacetRestriction, Iri, Literal,
    NamedIndividual,
};

use super::lexer::{tokenize, Tok};
use super::{is_datatype_iri, PrefixContext, SyntaxError};

/// Token stream with the pieces shared by the DL, Manchester and SWRL parsers.
pub(crate) struct Cursor<'a> {
    tokens: Vec<(Tok, usize)>,
    at: usize,
    pub ctx: &'a PrefixContext,
}

pub(crate) type SResult<T> = Result<T, SyntaxError>;

impl<'a> Cursor<'a> {
    pub fn new(text: &str, ctx: &'a PrefixContext) -> SResult<Cursor<'a>> {
        Ok(Cursor {
            tokens: tokenize(text)?,
            at: 0,
            ctx,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.at].0
    }

    pub fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.at + offset).min(self.tokens.len() - 1);
        &self.tokens[i].0
    }

    pub fn col(&self) -> usize {
        self.tokens[self.at].1
    }

    pub fn next(&mut self) -> Tok {
        let t = self.tokens[self.at].0.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn unexpected<T>(&self, expected: &str) -> SResult<T> {
        Err(SyntaxError::new(
            self.col(),
            format!("expected {expected}, found {}", self.peek()),
        ))
    }

    pub fn expect(&mut self, tok: &Tok) -> SResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.unexpected(&tok.to_string())
        }
    }

    pub fn expect_end(&self) -> SResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    /// Resolves the next name or full IRI.
    pub fn iri(&mut self, what: &str) -> SResult<Iri> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Name(n) => {
                self.next();
                self.ctx
                    .resolve(&n)
                    .ok_or_else(|| SyntaxError::new(col, format!("cannot resolve name `{n}`")))
            }
            Tok::FullIri(i) => {
                self.next();
                Iri::new(&i).map_err(|e| SyntaxError::new(col, e.to_string()))
            }
            _ => self.unexpected(what),
        }
    }

    /// Whether the next token names a datatype.
    pub fn at_datatype(&self) -> bool {
        match self.peek() {
            Tok::Name(n) => self.ctx.resolve(n).is_some_and(|i| is_datatype_iri(&i)),
            Tok::FullIri(i) => Iri::new(i).is_ok_and(|i| is_datatype_iri(&i)),
            _ => false,
        }
    }

    pub fn at_literal(&self) -> bool {
        matches!(self.peek(), Tok::Integer(_) | Tok::Decimal(_) | Tok::Str(_))
    }

    pub fn literal(&mut self) -> SResult<Literal> {
        let col = self.col();
        let built = match self.next() {
            Tok::Integer(s) => Literal::new(s, Iri::new(vocab::XSD_INTEGER).expect("xsd")),
            Tok::Decimal(s) => Literal::new(s, Iri::new(vocab::XSD_DECIMAL).expect("xsd")),
            Tok::Str(s) => {
                if self.eat(&Tok::DoubleCaret) {
                    let dt = self.iri("a datatype")?;
                    Literal::new(s, dt)
                } else {
                    Ok(Literal::string(s))
                }
            }
            other => {
                return Err(SyntaxError::new(
                    col,
                    format!("expected a literal, found {other}"),
                ))
            }
        };
        built.map_err(|e| SyntaxError::new(col, e.to_string()))
    }

    pub fn individual(&mut self) -> SResult<NamedIndividual> {
        self.iri("an individual name").map(NamedIndividual)
    }

    /// `{a, b}` after the opening brace has been seen, for individuals.
    pub fn individuals_until_brace(&mut self) -> SResult<Vec<NamedIndividual>> {
        let mut out = vec![self.individual()?];
        while self.eat(&Tok::Comma) {
            out.push(self.individual()?);
        }
        self.expect(&Tok::RBrace)?;
        Ok(out)
    }

    pub fn literals_until_brace(&mut self) -> SResult<Vec<Literal>> {
        let mut out = vec![self.literal()?];
        while self.eat(&Tok::Comma) {
            out.push(self.literal()?);
        }
        self.expect(&Tok::RBrace)?;
        Ok(out)
    }

    /// A datatype optionally followed by `[facet value, ...]`.
    pub fn datatype_range(&mut self) -> SResult<DataRange> {
        let col = self.col();
        let base = Datatype(self.iri("a datatype")?);
        if !self.eat(&Tok::LBracket) {
            return Ok(DataRange::Datatype(base));
        }
        let mut facets = Vec::new();
        loop {
            let facet = match self.peek() {
                Tok::Geq => Facet::MinInclusive,
                Tok::Gt => Facet::MinExclusive,
                Tok::Leq => Facet::MaxInclusive,
                Tok::Lt => Facet::MaxExclusive,
                _ => return self.unexpected("a facet (`>=`, `>`, `<=`, `<`)"),
            };
            self.next();
            let value = self.literal()?;
            facets.push(FacetRestriction { facet, value });
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::RBracket)?;
        let range = DataRange::DatatypeRestriction { base, facets };
        if let Err(v) = validate_data_range(&range) {
            return Err(SyntaxError::new(col, v[0].to_string()));
        }
        Ok(range)
    }
}

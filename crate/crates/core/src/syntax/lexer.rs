use std::fmt;

use super::SyntaxError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Bare or prefixed name.
    Name(String),
    FullIri(String),
    /// Signed integer, lexical form as written.
    Integer(String),
    /// Number with a fractional part.
    Decimal(String),
    Str(String),
    /// `?name`
    Var(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Dot,
    DoubleCaret,
    Caret,
    Arrow,
    And,
    Or,
    Not,
    Exists,
    Forall,
    Top,
    Bottom,
    Geq,
    Leq,
    Gt,
    Lt,
    Eq,
    Inverse,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Name(n) => return write!(f, "`{n}`"),
            Tok::FullIri(i) => return write!(f, "`<{i}>`"),
            Tok::Integer(n) | Tok::Decimal(n) => return write!(f, "`{n}`"),
            Tok::Str(s) => return write!(f, "string {s:?}"),
            Tok::Var(v) => return write!(f, "`?{v}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::DoubleCaret => "`^^`",
            Tok::Caret => "`^`",
            Tok::Arrow => "`->`",
            Tok::And => "`⊓`",
            Tok::Or => "`⊔`",
            Tok::Not => "`¬`",
            Tok::Exists => "`∃`",
            Tok::Forall => "`∀`",
            Tok::Top => "`⊤`",
            Tok::Bottom => "`⊥`",
            Tok::Geq => "`≥`",
            Tok::Leq => "`≤`",
            Tok::Gt => "`>`",
            Tok::Lt => "`<`",
            Tok::Eq => "`=`",
            Tok::Inverse => "`⁻`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | ':')
}

pub(crate) fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn escape(word: &str) -> Option<Tok> {
    Some(match word {
        "sqcap" => Tok::And,
        "sqcup" => Tok::Or,
        "neg" => Tok::Not,
        "exists" => Tok::Exists,
        "forall" => Tok::Forall,
        "top" => Tok::Top,
        "bot" => Tok::Bottom,
        "geq" => Tok::Geq,
        "leq" => Tok::Leq,
        _ => return None,
    })
}

/// Tokens paired with their 1-based character column.
pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let peek = |i: usize| chars.get(i).copied();
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '⊓' => Some(Tok::And),
            '⊔' => Some(Tok::Or),
            '¬' => Some(Tok::Not),
            '∃' => Some(Tok::Exists),
            '∀' => Some(Tok::Forall),
            '⊤' => Some(Tok::Top),
            '⊥' => Some(Tok::Bottom),
            '≥' => Some(Tok::Geq),
            '≤' => Some(Tok::Leq),
            '=' => Some(Tok::Eq),
            '⁻' => Some(Tok::Inverse),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, col));
            i += 1;
            continue;
        }
        match c {
            '^' => {
                if peek(i + 1) == Some('^') {
                    out.push((Tok::DoubleCaret, col));
                    i += 2;
                } else {
                    out.push((Tok::Caret, col));
                    i += 1;
                }
            }
            '>' => {
                if peek(i + 1) == Some('=') {
                    out.push((Tok::Geq, col));
                    i += 2;
                } else {
                    out.push((Tok::Gt, col));
                    i += 1;
                }
            }
            '<' => {
                if peek(i + 1) == Some('=') {
                    out.push((Tok::Leq, col));
                    i += 2;
                    continue;
                }
                // `<` starts a full IRI when a `>` closes it before any whitespace.
                let close = chars[i + 1..]
                    .iter()
                    .position(|c| *c == '>' || c.is_whitespace())
                    .map(|p| p + i + 1);
                match close {
                    Some(j) if chars[j] == '>' && j > i + 1 => {
                        out.push((Tok::FullIri(chars[i + 1..j].iter().collect()), col));
                        i = j + 1;
                    }
                    _ => {
                        out.push((Tok::Lt, col));
                        i += 1;
                    }
                }
            }
            '-' if peek(i + 1) == Some('>') => {
                out.push((Tok::Arrow, col));
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match peek(i) {
                        None => return Err(SyntaxError::new(col, "unterminated string")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            let e = peek(i + 1)
                                .ok_or_else(|| SyntaxError::new(col, "unterminated string"))?;
                            s.push(match e {
                                '"' => '"',
                                '\\' => '\\',
                                'n' => '\n',
                                't' => '\t',
                                other => {
                                    return Err(SyntaxError::new(
                                        i + 1,
                                        format!("unsupported escape `\\{other}`"),
                                    ))
                                }
                            });
                            i += 2;
                        }
                        Some(c) => {
                            s.push(c);
                            i += 1;
                        }
                    }
                }
                out.push((Tok::Str(s), col));
            }
            '\\' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_alphabetic() {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let tok = escape(&word)
                    .ok_or_else(|| SyntaxError::new(col, format!("unknown escape `\\{word}`")))?;
                out.push((tok, col));
                i = j;
            }
            '?' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                if j == start {
                    return Err(SyntaxError::new(col, "expected a variable name after `?`"));
                }
                out.push((Tok::Var(chars[start..j].iter().collect()), col));
                i = j;
            }
            c if c.is_ascii_digit()
                || ((c == '-' || c == '+') && peek(i + 1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                let start = i;
                i += 1;
                while peek(i).is_some_and(|d| d.is_ascii_digit()) {
                    i += 1;
                }
                let fractional =
                    peek(i) == Some('.') && peek(i + 1).is_some_and(|d| d.is_ascii_digit());
                if fractional {
                    i += 1;
                    while peek(i).is_some_and(|d| d.is_ascii_digit()) {
                        i += 1;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                out.push((
                    if fractional {
                        Tok::Decimal(text)
                    } else {
                        Tok::Integer(text)
                    },
                    col,
                ));
            }
            c if is_name_start(c) => {
                let start = i;
                while let Some(c) = peek(i) {
                    if !is_name_char(c) || (c == '-' && peek(i + 1) == Some('>')) {
                        break;
                    }
                    i += 1;
                }
                out.push((Tok::Name(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(SyntaxError::new(
                    col,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    out.push((Tok::Eof, chars.len() + 1));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn dl_symbols_and_dot() {
        assert_eq!(
            toks("∃ hasChild⁻.⊤"),
            vec![
                Tok::Exists,
                Tok::Name("hasChild".into()),
                Tok::Inverse,
                Tok::Dot,
                Tok::Top,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn escapes_map_to_symbols() {
        assert_eq!(toks(r"\sqcap \bot"), vec![Tok::And, Tok::Bottom, Tok::Eof]);
        assert!(tokenize(r"\and").is_err());
    }

    #[test]
    fn numbers_and_comparisons() {
        assert_eq!(
            toks("[>= -18, < 2.5]"),
            vec![
                Tok::LBracket,
                Tok::Geq,
                Tok::Integer("-18".into()),
                Tok::Comma,
                Tok::Lt,
                Tok::Decimal("2.5".into()),
                Tok::RBracket,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn full_iri_versus_less_than() {
        assert_eq!(
            toks("<http://x/a>"),
            vec![Tok::FullIri("http://x/a".into()), Tok::Eof]
        );
        assert_eq!(
            toks("< 5"),
            vec![Tok::Lt, Tok::Integer("5".into()), Tok::Eof]
        );
    }

    #[test]
    fn arrow_ends_name() {
        assert_eq!(
            toks("p(?x)->q"),
            vec![
                Tok::Name("p".into()),
                Tok::LParen,
                Tok::Var("x".into()),
                Tok::RParen,
                Tok::Arrow,
                Tok::Name("q".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn integer_followed_by_dot_name() {
        assert_eq!(
            toks("≥ 2 r.C"),
            vec![
                Tok::Geq,
                Tok::Integer("2".into()),
                Tok::Name("r".into()),
                Tok::Dot,
                Tok::Name("C".into()),
                Tok::Eof
            ]
        );
    }
}

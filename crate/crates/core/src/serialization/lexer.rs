use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    LParen,
    RParen,
    Equals,
    DoubleCaret,
    /// `@tag` after a string.
    LangTag(String),
    /// `<...>`
    FullIri(String),
    /// `prefix:local`, either part possibly empty.
    PrefixedName(String, String),
    /// Unescaped contents of `"..."`.
    Str(String),
    /// Bare word: a keyword or an unsigned integer.
    Word(String),
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Equals => f.write_str("`=`"),
            Token::DoubleCaret => f.write_str("`^^`"),
            Token::LangTag(t) => write!(f, "`@{t}`"),
            Token::FullIri(i) => write!(f, "`<{i}>`"),
            Token::PrefixedName(p, l) => write!(f, "`{p}:{l}`"),
            Token::Str(s) => write!(f, "string {s:?}"),
            Token::Word(w) => write!(f, "`{w}`"),
            Token::Eof => f.write_str("EOF"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':')
}

/// Splits functional-style text into tokens. `#` starts a comment that runs
/// to the end of the line when it appears where a token could start.
pub fn tokenize(text: &str) -> Result<Vec<(Token, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };

    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };

    while let Some(&c) = chars.peek() {
        let start = pos;
        match c {
            c if c.is_whitespace() => {
                chars.next();
                advance(c, &mut pos);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    advance(c, &mut pos);
                }
            }
            '(' | ')' | '=' => {
                chars.next();
                advance(c, &mut pos);
                out.push((
                    match c {
                        '(' => Token::LParen,
                        ')' => Token::RParen,
                        _ => Token::Equals,
                    },
                    start,
                ));
            }
            '^' => {
                chars.next();
                advance(c, &mut pos);
                if chars.peek() != Some(&'^') {
                    return Err(ParseError::lex(start, "expected `^^`"));
                }
                chars.next();
                advance('^', &mut pos);
                out.push((Token::DoubleCaret, start));
            }
            '<' => {
                chars.next();
                advance(c, &mut pos);
                let mut iri = String::new();
                loop {
                    match chars.next() {
                        Some('>') => {
                            advance('>', &mut pos);
                            break;
                        }
                        Some(c) if c.is_whitespace() => {
                            return Err(ParseError::lex(start, "whitespace inside `<...>`"));
                        }
                        Some(c) => {
                            advance(c, &mut pos);
                            iri.push(c);
                        }
                        None => return Err(ParseError::lex(start, "unterminated `<` at EOF")),
                    }
                }
                out.push((Token::FullIri(iri), start));
            }
            '"' => {
                chars.next();
                advance(c, &mut pos);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            advance('"', &mut pos);
                            break;
                        }
                        Some('\\') => {
                            let esc_pos = pos;
                            advance('\\', &mut pos);
                            let e = chars.next().ok_or_else(|| {
                                ParseError::lex(start, "unterminated string at EOF")
                            })?;
                            advance(e, &mut pos);
                            s.push(match e {
                                '"' => '"',
                                '\\' => '\\',
                                'n' => '\n',
                                't' => '\t',
                                other => {
                                    return Err(ParseError::lex(
                                        esc_pos,
                                        &format!("unsupported escape `\\{other}`"),
                                    ))
                                }
                            });
                        }
                        Some(c) => {
                            advance(c, &mut pos);
                            s.push(c);
                        }
                        None => return Err(ParseError::lex(start, "unterminated string at EOF")),
                    }
                }
                out.push((Token::Str(s), start));
            }
            '@' => {
                chars.next();
                advance(c, &mut pos);
                let mut tag = String::new();
                while let Some(&c) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '-') {
                        break;
                    }
                    chars.next();
                    advance(c, &mut pos);
                    tag.push(c);
                }
                out.push((Token::LangTag(tag), start));
            }
            c if is_word_char(c) => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_word_char(c) {
                        break;
                    }
                    chars.next();
                    advance(c, &mut pos);
                    word.push(c);
                }
                let token = match word.split_once(':') {
                    Some((p, l)) => Token::PrefixedName(p.to_string(), l.to_string()),
                    None => Token::Word(word),
                };
                out.push((token, start));
            }
            other => {
                return Err(ParseError::lex(
                    start,
                    &format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    out.push((Token::Eof, pos));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Token> {
        tokenize(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn prefix_declaration() {
        assert_eq!(
            toks("Prefix(f:=<http://x/f#>)"),
            vec![
                Token::Word("Prefix".into()),
                Token::LParen,
                Token::PrefixedName("f".into(), "".into()),
                Token::Equals,
                Token::FullIri("http://x/f#".into()),
                Token::RParen,
                Token::Eof
            ]
        );
    }

    #[test]
    fn default_prefix_name() {
        assert_eq!(
            toks(":male")[0],
            Token::PrefixedName("".into(), "male".into())
        );
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(
            toks("# hello (\nA # x\n"),
            vec![Token::Word("A".into()), Token::Eof]
        );
    }

    #[test]
    fn string_escapes() {
        assert_eq!(
            toks(r#""a\"b\\c\nd\te"^^xsd:string"#)[0],
            Token::Str("a\"b\\c\nd\te".into())
        );
        assert!(tokenize(r#""a\qb""#).is_err());
    }

    #[test]
    fn positions_track_lines() {
        let t = tokenize("A\n  B").unwrap();
        assert_eq!(t[1].1, Pos { line: 2, col: 3 });
    }

    #[test]
    fn unterminated_iri() {
        let err = tokenize("Ontology(<http://x").unwrap_err();
        assert!(err.to_string().contains("EOF"));
    }
}

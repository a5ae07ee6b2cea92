//! String rules: `male(?x) ^ hasChild(?x, ?y) -> parentOf(?x, ?y)`.

use crate::model::{
    Atom, ClassExpression, DArgument, DataProperty, IArgument, ObjectProperty,
    ObjectPropertyExpression, SwrlRule, Variable,
};

use super::cursor::{Cursor, SResult};
use super::lexer::Tok;
use super::manchester::{parse_nested, render_manchester};
use super::{render_literal, PrefixContext, SyntaxError};

enum Arg {
    I(IArgument),
    Literal(crate::model::Literal),
}

fn variable(name: &str, col: usize) -> SResult<Variable> {
    Variable::named(name).map_err(|e| SyntaxError::new(col, e.to_string()))
}

fn arg(cur: &mut Cursor<'_>) -> SResult<Arg> {
    let col = cur.col();
    if let Tok::Var(v) = cur.peek().clone() {
        cur.next();
        return Ok(Arg::I(IArgument::Variable(variable(&v, col)?)));
    }
    if cur.at_literal() {
        return Ok(Arg::Literal(cur.literal()?));
    }
    match cur.peek() {
        Tok::Name(_) | Tok::FullIri(_) => Ok(Arg::I(IArgument::Individual(cur.individual()?))),
        _ => cur.unexpected("a variable, individual or literal"),
    }
}

fn atom<'a>(mut cur: Cursor<'a>) -> SResult<(Atom, Cursor<'a>)> {
    let col = cur.col();
    if cur.eat(&Tok::LParen) {
        let (class, mut cur) = parse_nested(cur)?;
        cur.expect(&Tok::RParen)?;
        cur.expect(&Tok::LParen)?;
        let a = match arg(&mut cur)? {
            Arg::I(a) => a,
            Arg::Literal(_) => {
                return Err(SyntaxError::new(
                    col,
                    "a class atom needs an individual argument",
                ))
            }
        };
        cur.expect(&Tok::RParen)?;
        return Ok((Atom::Class { class, arg: a }, cur));
    }
    let predicate = cur.iri("a predicate name")?;
    cur.expect(&Tok::LParen)?;
    let first = arg(&mut cur)?;
    let second = if cur.eat(&Tok::Comma) {
        Some(arg(&mut cur)?)
    } else {
        None
    };
    cur.expect(&Tok::RParen)?;
    let subject = match first {
        Arg::I(a) => a,
        Arg::Literal(_) => {
            return Err(SyntaxError::new(
                col,
                "the first argument cannot be a literal",
            ))
        }
    };
    let atom = match second {
        None => Atom::Class {
            class: ClassExpression::named(predicate),
            arg: subject,
        },
        Some(Arg::Literal(l)) => Atom::DataProperty {
            property: DataProperty(predicate),
            subject,
            value: DArgument::Literal(l),
        },
        Some(Arg::I(IArgument::Variable(v))) if cur.ctx.is_data_property(&predicate) => {
            Atom::DataProperty {
                property: DataProperty(predicate),
                subject,
                value: DArgument::Variable(v),
            }
        }
        Some(Arg::I(object)) => Atom::ObjectProperty {
            property: ObjectPropertyExpression::Named(ObjectProperty(predicate)),
            subject,
            object,
        },
    };
    Ok((atom, cur))
}

fn atoms<'a>(cur: Cursor<'a>) -> SResult<(Vec<Atom>, Cursor<'a>)> {
    let (first, mut cur) = atom(cur)?;
    let mut out = vec![first];
    while cur.eat(&Tok::Caret) {
        let (next, rest) = atom(cur)?;
        out.push(next);
        cur = rest;
    }
    Ok((out, cur))
}

/// Parses `body -> head`. Two-argument atoms are data atoms when the second
/// argument is a literal or the predicate is a known data property.
pub fn parse_swrl(text: &str, ctx: &PrefixContext) -> Result<SwrlRule, SyntaxError> {
    let cur = Cursor::new(text, ctx)?;
    let (body, mut cur) = atoms(cur)?;
    cur.expect(&Tok::Arrow)?;
    let arrow_col = cur.col();
    let (head, cur) = atoms(cur)?;
    cur.expect_end()?;
    SwrlRule::new(body, head).map_err(|e| SyntaxError::new(arrow_col, e.to_string()))
}

fn render_iarg(a: &IArgument, ctx: &PrefixContext) -> String {
    match a {
        IArgument::Variable(v) => format!("?{}", v.name()),
        IArgument::Individual(i) => ctx.shorten(&i.0, &[]),
    }
}

fn render_atom(atom: &Atom, ctx: &PrefixContext) -> String {
    match atom {
        Atom::Class { class, arg } => match class {
            ClassExpression::Class(c) => {
                format!("{}({})", ctx.shorten(&c.0, &[]), render_iarg(arg, ctx))
            }
            complex => format!(
                "({})({})",
                render_manchester(complex, ctx),
                render_iarg(arg, ctx)
            ),
        },
        Atom::ObjectProperty {
            property,
            subject,
            object,
        } => {
            let (s, o) = if property.is_inverse() {
                (object, subject)
            } else {
                (subject, object)
            };
            format!(
                "{}({}, {})",
                ctx.shorten(&property.property().0, &[]),
                render_iarg(s, ctx),
                render_iarg(o, ctx)
            )
        }
        Atom::DataProperty {
            property,
            subject,
            value,
        } => {
            let v = match value {
                DArgument::Variable(v) => format!("?{}", v.name()),
                DArgument::Literal(l) => render_literal(l, ctx),
            };
            format!(
                "{}({}, {v})",
                ctx.shorten(&property.0, &[]),
                render_iarg(subject, ctx)
            )
        }
    }
}

/// Renders a rule in the same surface syntax `parse_swrl` reads.
pub fn render_swrl(rule: &SwrlRule, ctx: &PrefixContext) -> String {
    let side = |atoms: &[Atom]| {
        atoms
            .iter()
            .map(|a| render_atom(a, ctx))
            .collect::<Vec<_>>()
            .join(" ^ ")
    };
    format!("{} -> {}", side(rule.body()), side(rule.head()))
}

use std::collections::BTreeSet;

use super::entity::{DataProperty, NamedIndividual, OwlEntity};
use super::expression::{ClassExpression, ObjectPropertyExpression};
use super::iri::{Iri, IriError};
use super::literal::Literal;

/// Namespace under which variable names are minted as IRIs.
pub const VARIABLE_NAMESPACE: &str = "urn:swrl:var#";

/// A rule variable. Variables are IRIs; the name is the IRI remainder.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(pub Iri);

impl Variable {
    /// Variable `?name` in the default variable namespace.
    pub fn named(name: &str) -> Result<Variable, IriError> {
        Iri::with_namespace(VARIABLE_NAMESPACE, name).map(Variable)
    }

    pub fn name(&self) -> &str {
        self.0.remainder()
    }
}

/// Individual-valued atom argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IArgument {
    Variable(Variable),
    Individual(NamedIndividual),
}

/// Data-valued atom argument.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DArgument {
    Variable(Variable),
    Literal(Literal),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Class {
        class: ClassExpression,
        arg: IArgument,
    },
    ObjectProperty {
        property: ObjectPropertyExpression,
        subject: IArgument,
        object: IArgument,
    },
    DataProperty {
        property: DataProperty,
        subject: IArgument,
        value: DArgument,
    },
}

impl Atom {
    /// Variables occurring in the atom, in argument order.
    pub fn variables(&self) -> Vec<&Variable> {
        fn ivar(arg: &IArgument) -> Option<&Variable> {
            match arg {
                IArgument::Variable(v) => Some(v),
                IArgument::Individual(_) => None,
            }
        }
        match self {
            Atom::Class { arg, .. } => ivar(arg).into_iter().collect(),
            Atom::ObjectProperty {
                subject, object, ..
            } => ivar(subject).into_iter().chain(ivar(object)).collect(),
            Atom::DataProperty { subject, value, .. } => {
                let dvar = match value {
                    DArgument::Variable(v) => Some(v),
                    DArgument::Literal(_) => None,
                };
                ivar(subject).into_iter().chain(dvar).collect()
            }
        }
    }

    pub(crate) fn visit_entities(&self, f: &mut dyn FnMut(OwlEntity)) {
        let iarg = |arg: &IArgument, f: &mut dyn FnMut(OwlEntity)| {
            if let IArgument::Individual(i) = arg {
                f(i.into());
            }
        };
        match self {
            Atom::Class { class, arg } => {
                class.visit_entities(f);
                iarg(arg, f);
            }
            Atom::ObjectProperty {
                property,
                subject,
                object,
            } => {
                f(property.property().into());
                iarg(subject, f);
                iarg(object, f);
            }
            Atom::DataProperty {
                property,
                subject,
                value,
            } => {
                f(property.into());
                iarg(subject, f);
                if let DArgument::Literal(l) = value {
                    f(l.datatype_entity().into());
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unsafe rule: head variable ?{0} does not occur in the body")]
pub struct UnsafeRuleError(pub String);

/// A Horn-style rule `body -> head`. Every head variable occurs in the body.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwrlRule {
    body: Vec<Atom>,
    head: Vec<Atom>,
}

impl SwrlRule {
    pub fn new(body: Vec<Atom>, head: Vec<Atom>) -> Result<SwrlRule, UnsafeRuleError> {
        let bound: BTreeSet<&Variable> = body.iter().flat_map(|a| a.variables()).collect();
        if let Some(v) = head
            .iter()
            .flat_map(|a| a.variables())
            .find(|v| !bound.contains(v))
        {
            return Err(UnsafeRuleError(v.name().to_string()));
        }
        Ok(SwrlRule { body, head })
    }

    pub fn body(&self) -> &[Atom] {
        &self.body
    }

    pub fn head(&self) -> &[Atom] {
        &self.head
    }

    pub(crate) fn visit_entities(&self, f: &mut dyn FnMut(OwlEntity)) {
        for atom in self.body.iter().chain(&self.head) {
            atom.visit_entities(f);
        }
    }
}

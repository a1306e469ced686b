//! The JSON form of terms and resource terms.
//!
//! Binders get the same names as in printed output (`x0`, `x1`, … skipping
//! the free names of the whole term), so a JSON document and the concrete
//! syntax of the same term agree.

use std::collections::BTreeSet;
use std::fmt;

use cbvb_core::{Bag, Name, Resource, Simple, Term, TermSet, Value, Var};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ast {
    Var(String),
    Abs { binder: String, body: Box<Ast> },
    App(Box<Ast>, Box<Ast>),
    Bot(bool),
    Bag(Vec<Ast>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AstError(pub String);

impl fmt::Display for AstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for AstError {}

struct Binders {
    taken: BTreeSet<Name>,
}

impl Binders {
    fn name_at(&self, depth: usize) -> Name {
        (0..)
            .map(|i| Name::new(&format!("x{i}")))
            .filter(|n| !self.taken.contains(n))
            .nth(depth)
            .unwrap()
    }
}

pub fn term_to_ast(t: &Term) -> Ast {
    fn go(t: &Term, depth: usize, b: &Binders) -> Ast {
        match t {
            Term::Var(Var::Free(n)) => Ast::Var(n.as_str().into()),
            // only reachable on open terms
            Term::Var(Var::Bound(i)) => Ast::Var(format!("#{i}")),
            Term::Abs(body) => {
                let x = b.name_at(depth);
                Ast::Abs {
                    binder: x.as_str().into(),
                    body: Box::new(go(&body.open(&x), depth + 1, b)),
                }
            }
            Term::App(f, a) => Ast::App(Box::new(go(f, depth, b)), Box::new(go(a, depth, b))),
            Term::Bot => Ast::Bot(true),
        }
    }
    go(t, 0, &Binders { taken: t.free_vars() })
}

pub fn ast_to_term(a: &Ast) -> Result<Term, AstError> {
    Ok(match a {
        Ast::Var(x) => Term::var(x.as_str()),
        Ast::Abs { binder, body } => Term::lam(binder.as_str(), ast_to_term(body)?),
        Ast::App(f, x) => Term::app(ast_to_term(f)?, ast_to_term(x)?),
        Ast::Bot(true) => Term::Bot,
        Ast::Bot(false) => return Err(AstError("\"bot\" must be true".into())),
        Ast::Bag(_) => return Err(AstError("bags only occur in resource terms".into())),
    })
}

pub fn resource_to_ast(r: &Resource) -> Ast {
    let b = Binders { taken: r.free_vars() };
    match r {
        Resource::Value(v) => value_ast(v, 0, &b),
        Resource::Simple(s) => simple_ast(s, 0, &b),
    }
}

fn value_ast(v: &Value, depth: usize, b: &Binders) -> Ast {
    match v {
        Value::Var(Var::Free(n)) => Ast::Var(n.as_str().into()),
        Value::Var(Var::Bound(i)) => Ast::Var(format!("#{i}")),
        Value::Abs(body) => {
            let x = b.name_at(depth);
            Ast::Abs {
                binder: x.as_str().into(),
                body: Box::new(simple_ast(&body.open(&x), depth + 1, b)),
            }
        }
    }
}

fn simple_ast(s: &Simple, depth: usize, b: &Binders) -> Ast {
    match s {
        Simple::App(f, a) => Ast::App(Box::new(simple_ast(f, depth, b)), Box::new(simple_ast(a, depth, b))),
        Simple::Bag(bag) => Ast::Bag(bag.iter().map(|v| value_ast(v, depth, b)).collect()),
    }
}

pub fn ast_to_resource(a: &Ast) -> Result<Resource, AstError> {
    match a {
        Ast::Var(_) | Ast::Abs { .. } => ast_to_value(a).map(Resource::Value),
        _ => ast_to_simple(a).map(Resource::Simple),
    }
}

fn ast_to_value(a: &Ast) -> Result<Value, AstError> {
    match a {
        Ast::Var(x) => Ok(Value::var(x)),
        Ast::Abs { binder, body } => Ok(Value::lam(binder, ast_to_simple(body)?)),
        _ => Err(AstError("bag elements must be variables or abstractions".into())),
    }
}

fn ast_to_simple(a: &Ast) -> Result<Simple, AstError> {
    match a {
        Ast::App(f, x) => Ok(Simple::app(ast_to_simple(f)?, ast_to_simple(x)?)),
        Ast::Bag(vs) => Ok(Simple::Bag(Bag::new(
            vs.iter().map(ast_to_value).collect::<Result<_, _>>()?,
        ))),
        Ast::Bot(_) => Err(AstError("resource terms have no bot".into())),
        _ => Err(AstError(
            "abstraction bodies and application sides must be simple terms".into(),
        )),
    }
}

pub fn termset_to_ast(s: &TermSet) -> Vec<Ast> {
    s.iter().map(resource_to_ast).collect()
}

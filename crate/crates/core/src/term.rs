//! Λ⊥ terms in locally nameless form.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// A free-variable name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A variable occurrence: a de Bruijn index for bound variables (0 is the
/// innermost binder) or a name for free ones.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Bound(u32),
    Free(Name),
}

/// A term of Λ⊥. The variant order gives the canonical order
/// `Var < Abs < App < Bot` on head constructors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(Var),
    Abs(Box<Term>),
    App(Box<Term>, Box<Term>),
    Bot,
}

impl Term {
    /// A free variable.
    pub fn var(name: impl Into<Name>) -> Term {
        Term::Var(Var::Free(name.into()))
    }

    /// `λname.body`, binding every free occurrence of `name` in `body`.
    pub fn lam(name: impl Into<Name>, body: Term) -> Term {
        let name = name.into();
        Term::Abs(Box::new(body.close(&name, 0)))
    }

    /// `λx1…xn.body`.
    pub fn lams<I, N>(names: I, body: Term) -> Term
    where
        I: IntoIterator<Item = N>,
        I::IntoIter: DoubleEndedIterator,
        N: Into<Name>,
    {
        names.into_iter().rev().fold(body, |acc, n| Term::lam(n, acc))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// `head a1 … an`, associating to the left.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn is_value(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Abs(_) | Term::Bot)
    }

    pub fn is_abs(&self) -> bool {
        matches!(self, Term::Abs(_))
    }

    pub fn contains_bot(&self) -> bool {
        match self {
            Term::Bot => true,
            Term::Var(_) => false,
            Term::Abs(b) => b.contains_bot(),
            Term::App(f, a) => f.contains_bot() || a.contains_bot(),
        }
    }

    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Bot => 1,
            Term::Abs(b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// Head and arguments of an application spine: `h a1 … an`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(Var::Free(n)) => {
                out.insert(n.clone());
            }
            Term::Var(Var::Bound(_)) | Term::Bot => {}
            Term::Abs(b) => b.collect_free(out),
            Term::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
        }
    }

    fn map_vars(&self, depth: u32, f: &mut impl FnMut(&Var, u32) -> Term) -> Term {
        match self {
            Term::Var(v) => f(v, depth),
            Term::Bot => Term::Bot,
            Term::Abs(b) => Term::Abs(Box::new(b.map_vars(depth + 1, f))),
            Term::App(g, a) => Term::App(Box::new(g.map_vars(depth, f)), Box::new(a.map_vars(depth, f))),
        }
    }

    /// Adds `by` to every bound index that escapes `cutoff` binders.
    pub(crate) fn shift(&self, by: u32, cutoff: u32) -> Term {
        if by == 0 {
            return self.clone();
        }
        self.map_vars(cutoff, &mut |v, d| match v {
            Var::Bound(i) if *i >= d => Term::Var(Var::Bound(i + by)),
            _ => Term::Var(v.clone()),
        })
    }

    /// Replaces the loose index 0 by `value` and lowers the other loose
    /// indices by one. This is the body-side half of a β-contraction.
    pub(crate) fn instantiate(&self, value: &Term) -> Term {
        self.map_vars(0, &mut |v, d| match v {
            Var::Bound(i) if *i == d => value.shift(d, 0),
            Var::Bound(i) if *i > d => Term::Var(Var::Bound(i - 1)),
            _ => Term::Var(v.clone()),
        })
    }

    /// Turns free `name` into the loose index `depth`.
    fn close(&self, name: &Name, depth: u32) -> Term {
        self.map_vars(depth, &mut |v, d| match v {
            Var::Free(n) if n == name => Term::Var(Var::Bound(d)),
            _ => Term::Var(v.clone()),
        })
    }

    /// Replaces loose index 0 by the free variable `name`.
    pub fn open(&self, name: &Name) -> Term {
        self.instantiate(&Term::Var(Var::Free(name.clone())))
    }

    /// Capture-avoiding substitution of `n` for the free variable `x`.
    pub fn subst(&self, x: &Name, n: &Term) -> Term {
        self.map_vars(0, &mut |v, d| match v {
            Var::Free(y) if y == x => n.shift(d, 0),
            _ => Term::Var(v.clone()),
        })
    }

    /// The subterm at `path` (child 0 is an abstraction body or an
    /// application's function, child 1 an application's argument).
    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = match (cur, i) {
                (Term::Abs(b), 0) => b,
                (Term::App(f, _), 0) => f,
                (Term::App(_, a), 1) => a,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Rebuilds `self` with the subterm at `path` replaced. `None` when the
    /// path does not exist.
    pub fn replace_at(&self, path: &[usize], new: Term) -> Option<Term> {
        match path.split_first() {
            None => Some(new),
            Some((&i, rest)) => match (self, i) {
                (Term::Abs(b), 0) => Some(Term::Abs(Box::new(b.replace_at(rest, new)?))),
                (Term::App(f, a), 0) => Some(Term::App(Box::new(f.replace_at(rest, new)?), a.clone())),
                (Term::App(f, a), 1) => Some(Term::App(f.clone(), Box::new(a.replace_at(rest, new)?))),
                _ => None,
            },
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self, false))
    }
}

pub fn free_vars(t: &Term) -> BTreeSet<Name> {
    t.free_vars()
}

pub fn is_value(t: &Term) -> bool {
    t.is_value()
}

pub fn subst(m: &Term, x: &Name, n: &Term) -> Term {
    m.subst(x, n)
}

/// `(λx1…xn.[-]) V1 … Vm`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeadContext {
    pub binders: Vec<Name>,
    pub args: Vec<Term>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonValueArg {
    pub index: usize,
}

impl fmt::Display for NonValueArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "head context argument {} is not a value", self.index)
    }
}

impl HeadContext {
    pub fn new(binders: Vec<Name>, args: Vec<Term>) -> Result<Self, NonValueArg> {
        if let Some(index) = args.iter().position(|a| !a.is_value()) {
            return Err(NonValueArg { index });
        }
        Ok(HeadContext { binders, args })
    }

    /// Fills the hole. Free variables of `m` named like a binder are captured.
    pub fn plug(&self, m: &Term) -> Result<Term, NonValueArg> {
        if let Some(index) = self.args.iter().position(|a| !a.is_value()) {
            return Err(NonValueArg { index });
        }
        let body = Term::lams(self.binders.iter().cloned(), m.clone());
        Ok(Term::apps(body, self.args.iter().cloned()))
    }
}

pub fn plug_head_context(c: &HeadContext, m: &Term) -> Result<Term, NonValueArg> {
    c.plug(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use alloc::vec;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(t(r"\x.x y").free_vars(), [Name::new("y")].into_iter().collect());
        assert!(t("bot").free_vars().is_empty());
        assert_eq!(
            t(r"(\y.\x.\x.(\z.z z)(x x))(x x)").free_vars(),
            [Name::new("x")].into_iter().collect()
        );
    }

    #[test]
    fn values() {
        assert!(t("x").is_value());
        assert!(!t("x x").is_value());
        assert!(t("bot").is_value());
        assert!(t(r"\x.x x").is_value());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(t("x x").subst(&"x".into(), &t(r"\y.y")), t(r"(\y.y)(\y.y)"));
        assert_eq!(t(r"\y.x").subst(&"x".into(), &t("y")), t(r"\z.y"));
        assert_eq!(t("x").subst(&"x".into(), &t("bot")), t("bot"));
        // the substituted y must stay free under the binder
        assert_ne!(t(r"\y.x").subst(&"x".into(), &t("y")), t(r"\y.y"));
    }

    #[test]
    fn alpha_equivalence_is_equality() {
        assert_eq!(t(r"\x.x"), t(r"\y.y"));
        assert_ne!(t(r"\x.x y"), t(r"\y.y y"));
        assert_eq!(t(r"\x.\y.x"), t(r"\a.\b.a"));
    }

    #[test]
    fn plug_examples() {
        let c = HeadContext::new(vec!["x".into()], vec![t(r"\y.y")]).unwrap();
        assert_eq!(c.plug(&t("x x")).unwrap(), t(r"(\x.x x)(\y.y)"));
        let empty = HeadContext::default();
        let m = t(r"(\x.x) z");
        assert_eq!(empty.plug(&m).unwrap(), m);
        assert_eq!(
            HeadContext::new(vec!["x".into()], vec![t("z z")]),
            Err(NonValueArg { index: 0 })
        );
        let bad = HeadContext {
            binders: vec!["x".into()],
            args: vec![t("z z")],
        };
        assert_eq!(bad.plug(&t("x")), Err(NonValueArg { index: 0 }));
    }

    #[test]
    fn instantiate_shifts_under_binders() {
        // (λx.λy.x y)[x := z] style: body λy.#1 #0, value with a loose index
        let body = t(r"\x.\y.x y");
        let Term::Abs(inner) = body else { panic!() };
        let r = inner.instantiate(&t("w"));
        assert_eq!(r, t(r"\y.w y"));
    }
}

//! Named combinators used throughout the examples and tests.

use crate::syntax::parse_term;
use crate::term::Term;

/// Name and source of every built-in term.
pub const TABLE: &[(&str, &str)] = &[
    ("I", r"\x.x"),
    ("Delta", r"\x.x x"),
    ("Omega", r"(\x.x x)(\x.x x)"),
    ("B", r"\f g x.f (g x)"),
    ("K", r"\x y.x"),
    ("F", r"\x y.y"),
    ("Z", r"\f.(\y.f (\z.y y z))(\y.f (\z.y y z))"),
    ("Kstar", r"(\f.(\y.f (\z.y y z))(\y.f (\z.y y z)))(\x y.x)"),
    ("ZB", r"(\f.(\y.f (\z.y y z))(\y.f (\z.y y z)))(\f g x.f (g x))"),
    ("Xi", r"(\f.(\y.f (\z.y y z))(\y.f (\z.y y z)))(\f.(\y.f (\x.x))(z z))"),
    ("A", r"(\z.(\y.y)(z z))(x x)"),
];

/// Looks a combinator up by name, ignoring case.
pub fn lookup(name: &str) -> Option<Term> {
    TABLE
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, src)| parse_term(src).expect("built-in terms parse"))
}

pub fn i() -> Term {
    lookup("I").unwrap()
}

pub fn delta() -> Term {
    lookup("Delta").unwrap()
}

pub fn omega() -> Term {
    lookup("Omega").unwrap()
}

pub fn k() -> Term {
    lookup("K").unwrap()
}

pub fn f() -> Term {
    lookup("F").unwrap()
}

pub fn b() -> Term {
    lookup("B").unwrap()
}

pub fn z() -> Term {
    lookup("Z").unwrap()
}

pub fn kstar() -> Term {
    lookup("Kstar").unwrap()
}

pub fn zb() -> Term {
    lookup("ZB").unwrap()
}

pub fn xi() -> Term {
    lookup("Xi").unwrap()
}

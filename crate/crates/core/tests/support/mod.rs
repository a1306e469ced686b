//! Seeded term generators and small oracles shared by the integration tests.
#![allow(dead_code)]

use cbvb_core::combinators;
use cbvb_core::{parse_term, Bag, Name, Resource, Simple, Term, TermSet, Value, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FREE: &[&str] = &["x", "y", "z"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn t(src: &str) -> Term {
    parse_term(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn leaf(rng: &mut ChaCha8Rng, depth: u32, bot: bool) -> Term {
    let bound = depth as usize;
    let choices = bound + FREE.len() + usize::from(bot);
    let k = rng.random_range(0..choices);
    if k < bound {
        Term::Var(Var::Bound(k as u32))
    } else if k < bound + FREE.len() {
        Term::var(FREE[k - bound])
    } else {
        Term::Bot
    }
}

fn gen(rng: &mut ChaCha8Rng, size: usize, depth: u32, bot: bool) -> Term {
    if size <= 1 {
        return leaf(rng, depth, bot);
    }
    if size == 2 || rng.random_bool(0.35) {
        return Term::Abs(Box::new(gen(rng, size - 1, depth + 1, bot)));
    }
    let left = rng.random_range(1..size - 1);
    Term::app(gen(rng, left, depth, bot), gen(rng, size - 1 - left, depth, bot))
}

/// A λ-term of exactly `size` constructors over the free variables `x y z`.
pub fn term(rng: &mut ChaCha8Rng, size: usize) -> Term {
    gen(rng, size, 0, false)
}

/// Same, with `⊥` among the leaves.
pub fn term_bot(rng: &mut ChaCha8Rng, size: usize) -> Term {
    gen(rng, size, 0, true)
}

/// A term whose size is drawn from `1..=max`.
pub fn term_upto(rng: &mut ChaCha8Rng, max: usize) -> Term {
    let n = rng.random_range(1..=max);
    term(rng, n)
}

/// Same as [`term_upto`], with `⊥` among the leaves.
pub fn term_bot_upto(rng: &mut ChaCha8Rng, max: usize) -> Term {
    let n = rng.random_range(1..=max);
    term_bot(rng, n)
}

/// A value of at most `max` constructors.
pub fn value(rng: &mut ChaCha8Rng, max: usize) -> Term {
    let n = rng.random_range(1..=max);
    if n == 1 {
        leaf(rng, 0, false)
    } else {
        Term::Abs(Box::new(gen(rng, n - 1, 1, false)))
    }
}

/// Every term of exactly `size` constructors under `depth` binders, with the
/// given free variables and optionally `⊥`.
pub fn all_terms(size: usize, depth: u32, free: &[&str], bot: bool) -> Vec<Term> {
    let mut out = Vec::new();
    if size == 0 {
        return out;
    }
    if size == 1 {
        out.extend((0..depth).map(|i| Term::Var(Var::Bound(i))));
        out.extend(free.iter().map(|x| Term::var(*x)));
        if bot {
            out.push(Term::Bot);
        }
        return out;
    }
    out.extend(
        all_terms(size - 1, depth + 1, free, bot)
            .into_iter()
            .map(|b| Term::Abs(Box::new(b))),
    );
    for left in 1..size - 1 {
        let fs = all_terms(left, depth, free, bot);
        let args = all_terms(size - 1 - left, depth, free, bot);
        for f in &fs {
            for a in &args {
                out.push(Term::app(f.clone(), a.clone()));
            }
        }
    }
    out
}

fn rvalue(rng: &mut ChaCha8Rng, size: usize, depth: u32) -> Value {
    if size <= 1 {
        let bound = depth as usize;
        let k = rng.random_range(0..bound + FREE.len());
        return if k < bound {
            Value::Var(Var::Bound(k as u32))
        } else {
            Value::Var(Var::Free(Name::new(FREE[k - bound])))
        };
    }
    Value::Abs(std::sync::Arc::new(rsimple(rng, size - 1, depth + 1)))
}

fn rsimple(rng: &mut ChaCha8Rng, size: usize, depth: u32) -> Simple {
    if size >= 3 && rng.random_bool(0.45) {
        let left = rng.random_range(1..size - 1);
        return Simple::app(rsimple(rng, left, depth), rsimple(rng, size - 1 - left, depth));
    }
    // a bag of size-1 constructors split among at most three values
    let mut left = size.saturating_sub(1);
    let mut elems = Vec::new();
    while left > 0 && elems.len() < 3 {
        let n = rng.random_range(1..=left);
        elems.push(rvalue(rng, n, depth));
        left -= n;
    }
    Simple::Bag(Bag::new(elems))
}

/// A simple resource term of roughly `size` constructors.
pub fn simple(rng: &mut ChaCha8Rng, size: usize) -> Simple {
    rsimple(rng, size, 0)
}

pub fn resource(rng: &mut ChaCha8Rng, size: usize) -> Resource {
    if rng.random_bool(0.2) {
        Resource::Value(rvalue(rng, size, 0))
    } else {
        Resource::Simple(simple(rng, size))
    }
}

pub fn termset(rng: &mut ChaCha8Rng, max_elems: usize, size: usize) -> TermSet {
    let n = rng.random_range(0..=max_elems);
    (0..n)
        .map(|_| {
            let k = rng.random_range(1..=size);
            Resource::Simple(simple(rng, k))
        })
        .collect()
}

/// Named test terms: the built-in combinators plus a few small examples.
pub fn corpus() -> Vec<(String, Term)> {
    let mut out: Vec<(String, Term)> = combinators::TABLE
        .iter()
        .map(|(n, _)| (n.to_string(), combinators::lookup(n).unwrap()))
        .collect();
    for (n, src) in [
        ("DeltaI", r"(\x.x x)(\x.x)"),
        ("lamOmega", r"\x.(\x.x x)(\x.x x)"),
        ("Izz", r"(\x.x)(z z)"),
        ("IDxx", r"(\x.x)((\x.x x)(x x))"),
        ("stuck", r"(\y.\x.x x)(x x)(\x.x x)"),
        ("Ix", r"(\x.x) x"),
        ("Ixy", r"(\x.x)(x y)"),
    ] {
        out.push((n.to_string(), t(src)));
    }
    out
}

/// Lifts a seeded generator into a proptest strategy. Shrinking works on the
/// seed only, which is enough to make failures reproducible.
pub fn seeded<T, F>(f: F) -> impl proptest::strategy::Strategy<Value = T>
where
    T: std::fmt::Debug,
    F: Fn(&mut ChaCha8Rng) -> T,
{
    use proptest::strategy::Strategy;
    proptest::arbitrary::any::<u64>().prop_map(move |s| f(&mut rng(s)))
}

//! Approximants, the ⊑ preorder on Λ⊥ and finite Böhm-tree prefixes.
//!
//! ```text
//! A ::= B | C
//! B ::= x | λx.A | ⊥ | x B A1 … Ak
//! C ::= (λx.A)(y B A1 … Ak)
//! ```

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::reduction::{find_redexes, reduce_with, step, ReductionStatus, Strategy};
use crate::term::Term;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ApproxClass {
    B,
    C,
}

/// A term that matches the approximant grammar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Approximant {
    pub term: Term,
}

impl Approximant {
    pub fn new(term: Term) -> Option<Self> {
        is_approximant(&term).map(|_| Approximant { term })
    }

    pub fn class(&self) -> ApproxClass {
        is_approximant(&self.term).expect("checked on construction")
    }

    pub fn bot() -> Self {
        Approximant { term: Term::Bot }
    }
}

impl fmt::Display for Approximant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.term.fmt(f)
    }
}

/// The production matched by `t`, or `None` when `t` is not an approximant.
pub fn is_approximant(t: &Term) -> Option<ApproxClass> {
    if is_b(t) {
        Some(ApproxClass::B)
    } else if is_c(t) {
        Some(ApproxClass::C)
    } else {
        None
    }
}

fn is_a(t: &Term) -> bool {
    is_b(t) || is_c(t)
}

fn is_b(t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Bot => true,
        Term::Abs(b) => is_a(b),
        Term::App(..) => is_var_spine(t),
    }
}

/// `x B A1 … Ak`
fn is_var_spine(t: &Term) -> bool {
    let (head, args) = t.spine();
    matches!(head, Term::Var(_)) && !args.is_empty() && is_b(args[0]) && args[1..].iter().all(|a| is_a(a))
}

fn is_c(t: &Term) -> bool {
    match t {
        Term::App(f, a) => matches!(&**f, Term::Abs(body) if is_a(body)) && is_var_spine(a),
        _ => false,
    }
}

/// `a ⊑ n`: equal up to `⊥` in `a` standing below values of `n`.
pub fn leq(a: &Term, n: &Term) -> bool {
    match (a, n) {
        (Term::Bot, n) => n.is_value(),
        (Term::Var(x), Term::Var(y)) => x == y,
        (Term::Abs(p), Term::Abs(q)) => leq(p, q),
        (Term::App(f, x), Term::App(g, y)) => leq(f, g) && leq(x, y),
        _ => false,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Incompatible;

impl fmt::Display for Incompatible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("approximants have no common upper bound")
    }
}

fn join_terms(a: &Term, b: &Term) -> Result<Term, Incompatible> {
    match (a, b) {
        (Term::Bot, v) | (v, Term::Bot) if v.is_value() => Ok(v.clone()),
        (Term::Var(x), Term::Var(y)) if x == y => Ok(a.clone()),
        (Term::Abs(p), Term::Abs(q)) => Ok(Term::Abs(Box::new(join_terms(p, q)?))),
        (Term::App(f, x), Term::App(g, y)) => Ok(Term::app(join_terms(f, g)?, join_terms(x, y)?)),
        _ => Err(Incompatible),
    }
}

/// Least upper bound of two approximants.
pub fn join(a: &Approximant, b: &Approximant) -> Result<Approximant, Incompatible> {
    let t = join_terms(&a.term, &b.term)?;
    Approximant::new(t).ok_or(Incompatible)
}

/// The ⊑-greatest approximant below `n`, if any.
pub fn direct_approximant(n: &Term) -> Option<Approximant> {
    da(n).map(|term| Approximant { term })
}

fn da(n: &Term) -> Option<Term> {
    match n {
        Term::Var(_) | Term::Bot => Some(n.clone()),
        Term::Abs(p) => Some(match da(p) {
            Some(d) => Term::Abs(Box::new(d)),
            None => Term::Bot,
        }),
        Term::App(_, a) => {
            let (head, args) = n.spine();
            match head {
                Term::Var(_) => da_var_spine(n),
                Term::Abs(body) if args.len() == 1 && !a.is_value() && matches!(a.spine().0, Term::Var(_)) => {
                    let d_body = da(body)?;
                    let d_arg = da_var_spine(a)?;
                    Some(Term::app(Term::Abs(Box::new(d_body)), d_arg))
                }
                _ => None,
            }
        }
    }
}

/// `x N1 … Nk` ↦ `x D1 … Dk` when every `Di` exists and `D1` is a B-term.
fn da_var_spine(n: &Term) -> Option<Term> {
    let (head, args) = n.spine();
    let mut acc = head.clone();
    for (i, a) in args.iter().enumerate() {
        let d = da(a)?;
        if i == 0 && !is_b(&d) {
            return None;
        }
        acc = Term::app(acc, d);
    }
    Some(acc)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BtStatus {
    /// A v-normal form was reached and nothing was cut: the tree is the
    /// whole Böhm tree.
    Exact,
    /// The tree is a lower bound of the Böhm tree.
    Partial,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BtResult {
    /// `None` is the empty supremum (no approximant at all).
    pub tree: Option<Approximant>,
    pub status: BtStatus,
    /// Positions where an abstraction deeper than the depth bound became `⊥`.
    pub truncated: Vec<Vec<usize>>,
    pub steps: usize,
}

/// Reduces `m` leftmost-outermost for at most `fuel` steps and reads the
/// greatest approximant off the last term, cutting abstractions at depth
/// `depth` or more. Depth counts abstraction and application nodes.
pub fn boehm_tree(m: &Term, fuel: usize, depth: Option<usize>) -> BtResult {
    let mut prev: Option<Term> = da(m);
    let out = reduce_with(m, Strategy::LeftmostOutermost, fuel, |t| {
        if cfg!(debug_assertions) {
            let next = da(t);
            if let Some(p) = &prev {
                let n = next.as_ref().expect("approximants persist under reduction");
                debug_assert!(leq(p, n), "approximant shrank along the reduction");
            }
            prev = next;
        }
    });
    let mut truncated = Vec::new();
    let tree = da(&out.term).map(|t| match depth {
        Some(d) => truncate(&t, d, 0, false, &mut Vec::new(), &mut truncated),
        None => t,
    });
    let exact = out.status == ReductionStatus::NormalForm && truncated.is_empty();
    BtResult {
        tree: tree.map(|term| Approximant { term }),
        status: if exact { BtStatus::Exact } else { BtStatus::Partial },
        truncated,
        steps: out.steps_used,
    }
}

fn truncate(
    t: &Term,
    limit: usize,
    depth: usize,
    fun_pos: bool,
    path: &mut Vec<usize>,
    cut: &mut Vec<Vec<usize>>,
) -> Term {
    match t {
        Term::Var(_) | Term::Bot => t.clone(),
        Term::Abs(_) if depth >= limit && !fun_pos => {
            cut.push(path.clone());
            Term::Bot
        }
        Term::Abs(b) => {
            path.push(0);
            let b = truncate(b, limit, depth + 1, false, path, cut);
            path.pop();
            Term::Abs(Box::new(b))
        }
        Term::App(f, a) => {
            // an application spine is one n-ary node: its head and all its
            // arguments sit one level below it
            let fd = if matches!(**f, Term::App(..)) { depth } else { depth + 1 };
            path.push(0);
            let f = truncate(f, limit, fd, true, path, cut);
            path.pop();
            path.push(1);
            let a = truncate(a, limit, depth + 1, false, path, cut);
            path.pop();
            Term::app(f, a)
        }
    }
}

/// Every reduct of `m` (itself included), or `None` when there are more
/// than `limit` of them.
pub fn reducts(m: &Term, limit: usize) -> Option<BTreeSet<Term>> {
    if limit == 0 {
        return None;
    }
    let mut seen = BTreeSet::from([m.clone()]);
    let mut todo = vec![m.clone()];
    while let Some(t) = todo.pop() {
        for r in find_redexes(&t) {
            let next = step(&t, &r).expect("redex found by search");
            if !seen.contains(&next) {
                if seen.len() >= limit {
                    return None;
                }
                seen.insert(next.clone());
                todo.push(next);
            }
        }
    }
    Some(seen)
}

/// The Böhm tree of a term with at most `limit` reducts, read off its whole
/// reduction graph as the join of their direct approximants. `None` when the
/// graph is larger; `Some(None)` is the empty tree.
pub fn closed_boehm_tree(m: &Term, limit: usize) -> Option<Option<Approximant>> {
    let all = reducts(m, limit)?;
    let mut acc: Option<Term> = None;
    for d in all.iter().filter_map(da) {
        acc = Some(match acc {
            None => d,
            Some(a) => join_terms(&a, &d).expect("approximants of a term are directed"),
        });
    }
    Some(acc.map(|term| Approximant { term }))
}

/// Outcome of a semi-decision: only positive answers are certain.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Certainty {
    Yes,
    Unknown,
}

/// `Yes` when `a` lies below the greatest approximant of the reduct reached
/// within `fuel` steps, which certifies `a ∈ 𝒜(m)`.
pub fn is_approximant_of(a: &Term, m: &Term, fuel: usize) -> Certainty {
    if is_approximant(a).is_none() {
        return Certainty::Unknown;
    }
    let bt = boehm_tree(m, fuel, None);
    match bt.tree {
        Some(d) if leq(a, &d.term) => Certainty::Yes,
        _ => Certainty::Unknown,
    }
}

/// `Yes` when some approximant of `m` is found within `fuel` steps, i.e. when
/// `m` is shown to have a non-empty Böhm tree.
pub fn is_potentially_valuable(m: &Term, fuel: usize) -> Certainty {
    match boehm_tree(m, fuel, None).tree {
        Some(_) => Certainty::Yes,
        None => Certainty::Unknown,
    }
}

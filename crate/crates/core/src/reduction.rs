//! βv, σ1 and σ3 reduction of Λ⊥ terms.
//!
//! Positions are paths from the root: 0 selects an abstraction's body or an
//! application's function, 1 an application's argument.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term::Term;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RedexKind {
    /// `(λx.M) V`
    BetaV,
    /// `(λx.M) N P`
    Sigma1,
    /// `V ((λx.M) N)`
    Sigma3,
}

impl RedexKind {
    pub fn is_sigma(self) -> bool {
        matches!(self, RedexKind::Sigma1 | RedexKind::Sigma3)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RedexOccurrence {
    pub kind: RedexKind,
    pub position: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StepError {
    InvalidRedex { position: Vec<usize> },
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepError::InvalidRedex { position } => write!(f, "no such redex at position {position:?}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    LeftmostOutermost,
    /// Picks uniformly among all redexes with a ChaCha8 stream seeded here.
    RandomSeeded(u64),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReductionStatus {
    NormalForm,
    FuelExhausted,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionOutcome {
    pub term: Term,
    pub steps_used: usize,
    pub status: ReductionStatus,
}

/// The redex rooted at `t`, if any. At most one kind can match a node.
pub fn redex_at(t: &Term) -> Option<RedexKind> {
    let Term::App(f, a) = t else { return None };
    match (&**f, &**a) {
        (Term::Abs(_), a) if a.is_value() => Some(RedexKind::BetaV),
        (Term::App(g, _), _) if g.is_abs() => Some(RedexKind::Sigma1),
        (f, Term::App(g, _)) if f.is_value() && g.is_abs() => Some(RedexKind::Sigma3),
        _ => None,
    }
}

fn collect(t: &Term, path: &mut Vec<usize>, sigma_only: bool, out: &mut Vec<RedexOccurrence>) {
    if let Some(kind) = redex_at(t) {
        if !sigma_only || kind.is_sigma() {
            out.push(RedexOccurrence {
                kind,
                position: path.clone(),
            });
        }
    }
    match t {
        Term::Abs(b) => {
            path.push(0);
            collect(b, path, sigma_only, out);
            path.pop();
        }
        Term::App(f, a) => {
            path.push(0);
            collect(f, path, sigma_only, out);
            path.pop();
            path.push(1);
            collect(a, path, sigma_only, out);
            path.pop();
        }
        Term::Var(_) | Term::Bot => {}
    }
}

/// Every redex occurrence in pre-order, i.e. leftmost-outermost first.
pub fn find_redexes(m: &Term) -> Vec<RedexOccurrence> {
    let mut out = Vec::new();
    collect(m, &mut Vec::new(), false, &mut out);
    out
}

fn first_redex(t: &Term, path: &mut Vec<usize>, sigma_only: bool) -> Option<RedexKind> {
    if let Some(kind) = redex_at(t) {
        if !sigma_only || kind.is_sigma() {
            return Some(kind);
        }
    }
    match t {
        Term::Abs(b) => {
            path.push(0);
            if let Some(k) = first_redex(b, path, sigma_only) {
                return Some(k);
            }
            path.pop();
        }
        Term::App(f, a) => {
            for (c, i) in [(f, 0), (a, 1)] {
                path.push(i);
                if let Some(k) = first_redex(c, path, sigma_only) {
                    return Some(k);
                }
                path.pop();
            }
        }
        Term::Var(_) | Term::Bot => {}
    }
    None
}

pub fn is_normal(m: &Term) -> bool {
    first_redex(m, &mut Vec::new(), false).is_none()
}

/// The contractum of a redex rooted at `t`.
pub fn contract(t: &Term, kind: RedexKind) -> Option<Term> {
    if redex_at(t) != Some(kind) {
        return None;
    }
    let Term::App(f, a) = t else { return None };
    match kind {
        RedexKind::BetaV => {
            let Term::Abs(body) = &**f else { return None };
            Some(body.instantiate(a))
        }
        RedexKind::Sigma1 => {
            // (λx.M) N P → (λx.M P) N, with P moved under the binder
            let Term::App(g, n) = &**f else { return None };
            let Term::Abs(m) = &**g else { return None };
            let body = Term::app((**m).clone(), a.shift(1, 0));
            Some(Term::app(Term::Abs(Box::new(body)), (**n).clone()))
        }
        RedexKind::Sigma3 => {
            // V ((λx.M) N) → (λx.V M) N
            let Term::App(g, n) = &**a else { return None };
            let Term::Abs(m) = &**g else { return None };
            let body = Term::app(f.shift(1, 0), (**m).clone());
            Some(Term::app(Term::Abs(Box::new(body)), (**n).clone()))
        }
    }
}

/// Contracts the redex `r` of `m`.
pub fn step(m: &Term, r: &RedexOccurrence) -> Result<Term, StepError> {
    let invalid = || StepError::InvalidRedex {
        position: r.position.clone(),
    };
    let sub = m.at(&r.position).ok_or_else(invalid)?;
    let new = contract(sub, r.kind).ok_or_else(invalid)?;
    m.replace_at(&r.position, new).ok_or_else(invalid)
}

/// Reduces with `strategy` until a normal form or until `fuel` contractions
/// have been made. `on_step` sees every intermediate term after the start.
pub fn reduce_with(m: &Term, strategy: Strategy, fuel: usize, mut on_step: impl FnMut(&Term)) -> ReductionOutcome {
    let mut rng = match strategy {
        Strategy::RandomSeeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::LeftmostOutermost => None,
    };
    let mut cur = m.clone();
    let mut steps = 0;
    loop {
        let occ = match &mut rng {
            None => {
                let mut path = Vec::new();
                first_redex(&cur, &mut path, false).map(|kind| RedexOccurrence { kind, position: path })
            }
            Some(rng) => {
                let all = find_redexes(&cur);
                if all.is_empty() {
                    None
                } else {
                    let i = rng.random_range(0..all.len());
                    Some(all[i].clone())
                }
            }
        };
        let Some(occ) = occ else {
            return ReductionOutcome {
                term: cur,
                steps_used: steps,
                status: ReductionStatus::NormalForm,
            };
        };
        if steps == fuel {
            return ReductionOutcome {
                term: cur,
                steps_used: steps,
                status: ReductionStatus::FuelExhausted,
            };
        }
        cur = step(&cur, &occ).expect("redex found by search");
        steps += 1;
        on_step(&cur);
    }
}

pub fn reduce(m: &Term, strategy: Strategy, fuel: usize) -> ReductionOutcome {
    reduce_with(m, strategy, fuel, |_| {})
}

/// Leftmost-outermost reduction using σ1 and σ3 only.
pub fn reduce_sigma_only(m: &Term, fuel: usize) -> ReductionOutcome {
    let mut cur = m.clone();
    let mut steps = 0;
    loop {
        let mut path = Vec::new();
        let Some(kind) = first_redex(&cur, &mut path, true) else {
            return ReductionOutcome {
                term: cur,
                steps_used: steps,
                status: ReductionStatus::NormalForm,
            };
        };
        if steps == fuel {
            return ReductionOutcome {
                term: cur,
                steps_used: steps,
                status: ReductionStatus::FuelExhausted,
            };
        }
        cur = step(&cur, &RedexOccurrence { kind, position: path }).expect("redex found by search");
        steps += 1;
    }
}

/// Which production of the v-normal-form grammar a term matches:
///
/// ```text
/// G ::= H | R
/// H ::= x | λx.G | x H G1 … Gk
/// R ::= (λx.G)(y H G1 … Gk)
/// ```
///
/// `⊥` is accepted wherever a variable may stand alone.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NfClass {
    GH,
    GR,
    NotNormal,
}

pub fn classify_nf(m: &Term) -> NfClass {
    if is_h(m) {
        NfClass::GH
    } else if is_r(m) {
        NfClass::GR
    } else {
        NfClass::NotNormal
    }
}

fn is_g(t: &Term) -> bool {
    is_h(t) || is_r(t)
}

fn is_h(t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Bot => true,
        Term::Abs(b) => is_g(b),
        Term::App(..) => is_var_spine(t),
    }
}

/// `x H G1 … Gk`
fn is_var_spine(t: &Term) -> bool {
    let (head, args) = t.spine();
    matches!(head, Term::Var(_)) && !args.is_empty() && is_h(args[0]) && args[1..].iter().all(|a| is_g(a))
}

fn is_r(t: &Term) -> bool {
    match t {
        Term::App(f, a) => match &**f {
            Term::Abs(body) => is_g(body) && is_var_spine(a),
            _ => false,
        },
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn root(kind: RedexKind) -> RedexOccurrence {
        RedexOccurrence {
            kind,
            position: Vec::new(),
        }
    }

    #[test]
    fn find_examples() {
        assert_eq!(find_redexes(&t(r"(\x.x) x")), alloc::vec![root(RedexKind::BetaV)]);
        assert!(find_redexes(&t(r"(\x.x)(x y)")).is_empty());
        assert_eq!(
            find_redexes(&t(r"(\x.x)((\x.x x)(x x))")),
            alloc::vec![root(RedexKind::Sigma3)]
        );
    }

    #[test]
    fn step_examples() {
        let m = t(r"(\x.x)((\x.x x)(x x))");
        assert_eq!(step(&m, &root(RedexKind::Sigma3)).unwrap(), t(r"(\z.(\x.x)(z z))(x x)"));
        let omega = t(r"(\x.x x)(\x.x x)");
        assert_eq!(step(&omega, &root(RedexKind::BetaV)).unwrap(), omega);
        let m = t(r"(\y.\x.x x)(x x)((\x.x x))");
        assert_eq!(
            step(&m, &root(RedexKind::Sigma1)).unwrap(),
            t(r"(\y.(\x.x x)(\x.x x))(x x)")
        );
        assert!(step(&m, &root(RedexKind::BetaV)).is_err());
    }

    #[test]
    fn sigma_side_conditions_need_no_renaming() {
        // the σ1 argument mentions a name equal to the binder's surface name
        let m = t(r"(\x.\y.x)(z z) x");
        let r = step(&m, &root(RedexKind::Sigma1)).unwrap();
        assert_eq!(r, t(r"(\w.(\y.w) x)(z z)"));
    }

    #[test]
    fn reduce_examples() {
        let out = reduce(&t(r"(\x.x) x"), Strategy::LeftmostOutermost, 10);
        assert_eq!(
            (out.term, out.steps_used, out.status),
            (t("x"), 1, ReductionStatus::NormalForm)
        );
        let omega = t(r"(\x.x x)(\x.x x)");
        let out = reduce(&omega, Strategy::LeftmostOutermost, 50);
        assert_eq!(
            (out.term, out.steps_used, out.status),
            (omega, 50, ReductionStatus::FuelExhausted)
        );
        let nf = t(r"\x.x y");
        let out = reduce(&nf, Strategy::RandomSeeded(3), 0);
        assert_eq!(
            (out.term, out.steps_used, out.status),
            (nf, 0, ReductionStatus::NormalForm)
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_nf(&t(r"(\x.x)(z z)")), NfClass::GR);
        assert_eq!(classify_nf(&t("x")), NfClass::GH);
        assert_eq!(classify_nf(&t(r"(\y.\x.x x)(x x)(\x.x x)")), NfClass::NotNormal);
        assert_eq!(classify_nf(&t(r"x (y z) (\u.u)")), NfClass::GH);
        assert_eq!(classify_nf(&t(r"x ((\u.u)(y y))")), NfClass::NotNormal);
    }
}

//! Bounded Taylor expansion, coherence, and the comparison between the normal
//! form of the expansion and the normalized expansion of the Böhm tree.
//!
//! Every enumeration is cut by a [`Bounds`]: bags hold at most `max_bag`
//! values and terms have height at most `max_height`. The bounded set is
//! exactly the bounds-filter of the infinite one.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::approx::{boehm_tree, closed_boehm_tree, Approximant, BtStatus};
use crate::reduction::{find_redexes, RedexKind};
use crate::resource::{
    normalize_simple, r_find_redexes, singleton_abs, Bag, RRedexKind, RRedexOccurrence, Resource, Simple, TermSet,
    Value,
};
use crate::term::{HeadContext, Term, Var};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Bounds {
    pub max_bag: usize,
    pub max_height: usize,
}

impl Bounds {
    pub const fn new(max_bag: usize, max_height: usize) -> Self {
        Bounds { max_bag, max_height }
    }

    /// One more value per bag and two more levels: enough room for one more
    /// abstraction layer.
    pub const fn enlarged(self) -> Self {
        Bounds::new(self.max_bag + 1, self.max_height + 2)
    }

    fn admits(self, s: &Simple) -> bool {
        s.max_bag() <= self.max_bag && s.height() <= self.max_height
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::new(2, 8)
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(bag ≤ {}, height ≤ {})", self.max_bag, self.max_height)
    }
}

/// Every multiset of at most `max` elements drawn from `items` (sorted and
/// duplicate free), as sorted bags.
fn multisets(items: &[Value], max: usize) -> Vec<Bag> {
    fn go(items: &[Value], from: usize, left: usize, cur: &mut Vec<Value>, out: &mut Vec<Bag>) {
        out.push(Bag::from_sorted(cur.clone()));
        if left == 0 {
            return;
        }
        for i in from..items.len() {
            cur.push(items[i].clone());
            go(items, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, max, &mut Vec::new(), &mut out);
    out
}

fn var_bags(v: &Var, max: usize) -> impl Iterator<Item = Simple> + '_ {
    (0..=max).map(move |n| Simple::Bag(Bag::from_sorted(vec![Value::Var(v.clone()); n])))
}

fn abs_values(bodies: &BTreeSet<Simple>) -> Vec<Value> {
    bodies.iter().map(|t| Value::Abs(Arc::new(t.clone()))).collect()
}

fn products(fs: &BTreeSet<Simple>, args: &BTreeSet<Simple>, height: usize) -> BTreeSet<Simple> {
    let mut out = BTreeSet::new();
    for s in fs {
        for u in args {
            let e = Simple::app(s.clone(), u.clone());
            if e.height() <= height {
                out.insert(e);
            }
        }
    }
    out
}

fn enumerate(m: &Term, bag: usize, h: usize) -> BTreeSet<Simple> {
    if h == 0 {
        return BTreeSet::new();
    }
    match m {
        Term::Var(v) => var_bags(v, bag).collect(),
        Term::Bot => BTreeSet::from([Simple::empty_bag()]),
        Term::Abs(body) => {
            let bodies = if h >= 2 {
                enumerate(body, bag, h - 2)
            } else {
                BTreeSet::new()
            };
            multisets(&abs_values(&bodies), bag)
                .into_iter()
                .map(Simple::Bag)
                .collect()
        }
        Term::App(f, a) => products(&enumerate(f, bag, h - 1), &enumerate(a, bag, h - 1), h),
    }
}

/// The elements of `T(m)` within `b`.
pub fn taylor(m: &Term, b: Bounds) -> TermSet {
    enumerate(m, b.max_bag, b.max_height)
        .into_iter()
        .map(Resource::Simple)
        .collect()
}

/// Structural membership `t ∈ T(m)`, with no bounds involved.
pub fn in_taylor(t: &Resource, m: &Term) -> bool {
    match t {
        Resource::Simple(s) => in_simple(s, m),
        Resource::Value(_) => false,
    }
}

fn in_simple(s: &Simple, m: &Term) -> bool {
    match (s, m) {
        (Simple::Bag(b), Term::Var(x)) => b.iter().all(|v| matches!(v, Value::Var(y) if y == x)),
        (Simple::Bag(b), Term::Bot) => b.is_empty(),
        (Simple::Bag(b), Term::Abs(body)) => b.iter().all(|v| matches!(v, Value::Abs(t) if in_simple(t, body))),
        (Simple::App(s, u), Term::App(p, q)) => in_simple(s, p) && in_simple(u, q),
        _ => false,
    }
}

fn coh_value(v: &Value, w: &Value) -> bool {
    match (v, w) {
        (Value::Var(x), Value::Var(y)) => x == y,
        (Value::Abs(s), Value::Abs(t)) => coh_simple(s, t),
        _ => false,
    }
}

fn coh_simple(s: &Simple, t: &Simple) -> bool {
    match (s, t) {
        (Simple::Bag(a), Simple::Bag(b)) => {
            let all: Vec<&Value> = a.iter().chain(b.iter()).collect();
            all.iter()
                .enumerate()
                .all(|(i, v)| all[i..].iter().all(|w| coh_value(v, w)))
        }
        (Simple::App(f, a), Simple::App(g, b)) => coh_simple(f, g) && coh_simple(a, b),
        _ => false,
    }
}

/// The coherence relation `e1 ⌢ e2`.
pub fn coherent(e1: &Resource, e2: &Resource) -> bool {
    match (e1, e2) {
        (Resource::Value(v), Resource::Value(w)) => coh_value(v, w),
        (Resource::Simple(s), Resource::Simple(t)) => coh_simple(s, t),
        _ => false,
    }
}

/// All pairs of `set`, each element with itself included, are coherent.
///
/// Checked level by level instead of pair by pair: a set of bags is a clique
/// iff all the values they contain form one, and a set of applications iff
/// the functions and the arguments separately do.
pub fn is_clique(set: &TermSet) -> bool {
    let mut values = Vec::new();
    let mut simples = Vec::new();
    for e in set {
        match e {
            Resource::Value(v) => values.push(v),
            Resource::Simple(s) => simples.push(s),
        }
    }
    match (values.is_empty(), simples.is_empty()) {
        (_, true) => clique_values(values),
        (true, false) => clique_simples(simples),
        (false, false) => false,
    }
}

fn clique_simples(elems: Vec<&Simple>) -> bool {
    let mut values = Vec::new();
    let (mut fs, mut args) = (Vec::new(), Vec::new());
    for s in &elems {
        match s {
            Simple::Bag(b) => values.extend(b.iter()),
            Simple::App(f, a) => {
                fs.push(&**f);
                args.push(&**a);
            }
        }
    }
    if fs.is_empty() {
        clique_values(values)
    } else if fs.len() == elems.len() {
        clique_simples(dedup(fs)) && clique_simples(dedup(args))
    } else {
        false
    }
}

fn clique_values(values: Vec<&Value>) -> bool {
    let mut bodies = Vec::new();
    let mut var = None;
    for v in values {
        match v {
            Value::Var(x) => match var {
                Some(y) if y != x => return false,
                _ => var = Some(x),
            },
            Value::Abs(t) => bodies.push(&**t),
        }
    }
    if var.is_some() && !bodies.is_empty() {
        return false;
    }
    bodies.is_empty() || clique_simples(dedup(bodies))
}

fn dedup(mut v: Vec<&Simple>) -> Vec<&Simple> {
    v.sort();
    v.dedup();
    v
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InferError {
    NotAClique,
    /// Some position is only witnessed by empty bags.
    Ambiguous,
    /// The set holds a value; Taylor expansions only contain simple terms.
    NotSimple,
}

impl fmt::Display for InferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InferError::NotAClique => "the set is not a clique",
            InferError::Ambiguous => "a position is only witnessed by empty bags",
            InferError::NotSimple => "the set contains a value",
        })
    }
}

/// A term `m` whose Taylor expansion contains every element of `set`.
pub fn infer_term(set: &TermSet) -> Result<Term, InferError> {
    let mut elems = Vec::new();
    for e in set {
        match e {
            Resource::Simple(s) => elems.push(s),
            Resource::Value(_) => return Err(InferError::NotSimple),
        }
    }
    if !is_clique(set) {
        return Err(InferError::NotAClique);
    }
    if elems.is_empty() {
        return Err(InferError::Ambiguous);
    }
    infer(&elems)
}

fn infer(elems: &[&Simple]) -> Result<Term, InferError> {
    if elems.iter().all(|s| matches!(s, Simple::App(..))) {
        let (mut fs, mut args) = (Vec::new(), Vec::new());
        for s in elems {
            if let Simple::App(f, a) = s {
                fs.push(&**f);
                args.push(&**a);
            }
        }
        return Ok(Term::app(infer(&fs)?, infer(&args)?));
    }
    let mut values = Vec::new();
    for s in elems {
        match s {
            Simple::Bag(b) => values.extend(b.iter()),
            Simple::App(..) => return Err(InferError::NotAClique),
        }
    }
    match values.first() {
        None => Err(InferError::Ambiguous),
        Some(Value::Var(x)) => {
            if values.iter().all(|v| matches!(v, Value::Var(y) if y == x)) {
                Ok(Term::Var(x.clone()))
            } else {
                Err(InferError::NotAClique)
            }
        }
        Some(Value::Abs(_)) => {
            let mut bodies = Vec::new();
            for v in &values {
                match v {
                    Value::Abs(t) => bodies.push(&**t),
                    Value::Var(_) => return Err(InferError::NotAClique),
                }
            }
            Ok(Term::Abs(Box::new(infer(&bodies)?)))
        }
    }
}

// ---------------------------------------------------------------------------
// normal form of the expansion

/// What the caller will do with the normal forms of a subterm; it decides
/// which of them are worth keeping.
#[derive(Clone, Copy)]
enum Role {
    /// Part of the final answer, up to the filter.
    Output(Bounds),
    /// Function position of an application: any bag that is not a singleton
    /// would make the whole application vanish.
    Function,
    /// Argument of functions that only consume bags whose cardinality is in
    /// the mask (bit `n` for `n` values).
    Degrees(u64),
    Any,
}

impl Role {
    fn keeps(self, s: &Simple) -> bool {
        match self {
            Role::Output(f) => f.admits(s),
            Role::Function => !matches!(s, Simple::Bag(b) if b.len() != 1),
            Role::Degrees(mask) => !matches!(s, Simple::Bag(b) if !has_degree(mask, b.len())),
            Role::Any => true,
        }
    }
}

fn has_degree(mask: u64, n: usize) -> bool {
    n < 64 && mask & (1 << n) != 0
}

/// How the arguments of `fs` will be used, given that the applications
/// themselves play `role`.
fn argument_role(fs: &BTreeSet<Simple>, role: Role) -> Role {
    let var_heads = fs
        .iter()
        .all(|s| matches!(s, Simple::Bag(b) if matches!(b.iter().next(), Some(Value::Var(_)))));
    if var_heads {
        // `[x] u` is normal iff `u` is, and no larger than `u` plus one level
        return match role {
            Role::Output(f) => Role::Output(Bounds::new(f.max_bag, f.max_height.saturating_sub(1))),
            _ => Role::Any,
        };
    }
    let mut mask = 0u64;
    for s in fs {
        match singleton_abs(s) {
            Some(body) => match body.count(&Var::Bound(0), 0) {
                d if d < 64 => mask |= 1 << d,
                _ => return Role::Any,
            },
            None => return Role::Any,
        }
    }
    Role::Degrees(mask)
}

/// `NF(T(m))` within `bag`/`h`, restricted by `role`.
///
/// Normal forms are computed bottom-up: since reduction is confluent and
/// closed under contexts, `NF(s u) = NF(NF(s) NF(u))` and a bag of
/// abstractions normalizes value by value.
fn nf_enum(m: &Term, bag: usize, h: usize, role: Role) -> BTreeSet<Simple> {
    if h == 0 {
        return BTreeSet::new();
    }
    match m {
        Term::Var(v) => var_bags(v, bag).filter(|s| role.keeps(s)).collect(),
        Term::Bot => BTreeSet::from([Simple::empty_bag()])
            .into_iter()
            .filter(|s| role.keeps(s))
            .collect(),
        Term::Abs(body) => {
            let (inner, max) = match role {
                Role::Output(f) => (
                    Role::Output(Bounds::new(f.max_bag, f.max_height.saturating_sub(2))),
                    bag.min(f.max_bag),
                ),
                Role::Function => (Role::Any, bag.min(1)),
                Role::Degrees(mask) => (Role::Any, bag.min(63 - mask.leading_zeros() as usize)),
                Role::Any => (Role::Any, bag),
            };
            let bodies = if h >= 2 {
                nf_enum(body, bag, h - 2, inner)
            } else {
                BTreeSet::new()
            };
            let values = abs_values(&bodies);
            match role {
                Role::Function if max == 0 => BTreeSet::new(),
                Role::Function => values.into_iter().map(|v| Simple::bag(vec![v])).collect(),
                _ => multisets(&values, max)
                    .into_iter()
                    .map(Simple::Bag)
                    .filter(|s| role.keeps(s))
                    .collect(),
            }
        }
        Term::App(f, a) => {
            let fs = nf_enum(f, bag, h - 1, Role::Function);
            if fs.is_empty() {
                return BTreeSet::new();
            }
            let args = nf_enum(a, bag, h - 1, argument_role(&fs, role));
            apply_nf(&fs, &args).into_iter().filter(|s| role.keeps(s)).collect()
        }
    }
}

/// `NF(s u)` for every pair, skipping pairs that are known to vanish.
fn apply_nf(fs: &BTreeSet<Simple>, args: &BTreeSet<Simple>) -> BTreeSet<Simple> {
    let mut by_card: BTreeMap<usize, Vec<&Simple>> = BTreeMap::new();
    let mut apps = Vec::new();
    for u in args {
        match u {
            Simple::Bag(b) => by_card.entry(b.len()).or_default().push(u),
            Simple::App(..) => apps.push(u),
        }
    }
    let mut out = BTreeSet::new();
    for s in fs {
        let mut run = |u: &Simple| out.extend(normalize_simple(Simple::app(s.clone(), u.clone())));
        match singleton_abs(s) {
            Some(body) => {
                let d = body.count(&Var::Bound(0), 0);
                by_card.get(&d).into_iter().flatten().for_each(|u| run(u));
                apps.iter().for_each(|u| run(u));
            }
            None => args.iter().for_each(run),
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaylorNf {
    pub set: TermSet,
    /// The filtered set did not change when the enumeration bounds grew.
    pub saturated: bool,
}

fn nf_filtered(m: &Term, b: Bounds, filter: Bounds) -> BTreeSet<Simple> {
    nf_enum(m, b.max_bag, b.max_height, Role::Output(filter))
}

/// `NF(T(m))` restricted to `filter`, computed from the elements of `T(m)`
/// within `b`.
pub fn taylor_nf(m: &Term, b: Bounds, filter: Bounds) -> TaylorNf {
    let set = nf_filtered(m, b, filter);
    let saturated = nf_filtered(m, b.enlarged(), filter) == set;
    TaylorNf {
        set: set.into_iter().map(Resource::Simple).collect(),
        saturated,
    }
}

// ---------------------------------------------------------------------------
// normalized expansion of approximants

fn tn(a: &Term, bag: usize, h: usize) -> BTreeSet<Simple> {
    if h == 0 {
        return BTreeSet::new();
    }
    match a {
        Term::Var(v) => var_bags(v, bag).collect(),
        Term::Bot => BTreeSet::from([Simple::empty_bag()]),
        Term::Abs(body) => {
            let bodies = if h >= 2 { tn(body, bag, h - 2) } else { BTreeSet::new() };
            multisets(&abs_values(&bodies), bag)
                .into_iter()
                .map(Simple::Bag)
                .collect()
        }
        Term::App(f, arg) => {
            if bag == 0 {
                return BTreeSet::new();
            }
            let (head, args) = a.spine();
            match head {
                Term::Var(x) => {
                    let mut cur = BTreeSet::from([Simple::bag(vec![Value::Var(x.clone())])]);
                    for (i, arg) in args.iter().enumerate() {
                        // the i-th argument sits k - i levels below the root
                        let room = h.saturating_sub(args.len() - i);
                        cur = products(&cur, &tn(arg, bag, room), h);
                    }
                    cur
                }
                _ => {
                    let Term::Abs(body) = &**f else { return BTreeSet::new() };
                    let bodies = if h >= 3 { tn(body, bag, h - 3) } else { BTreeSet::new() };
                    let heads = abs_values(&bodies).into_iter().map(|v| Simple::bag(vec![v])).collect();
                    products(&heads, &tn(arg, bag, h - 1), h)
                }
            }
        }
    }
}

/// The normalized Taylor expansion `Tn(a)` within `b`.
pub fn normalized_taylor_of_approximant(a: &Approximant, b: Bounds) -> TermSet {
    tn(&a.term, b.max_bag, b.max_height)
        .into_iter()
        .map(Resource::Simple)
        .collect()
}

/// `Tn(BT(m))` within `b`, from the Böhm tree computed with `fuel` steps and
/// cut at depth `b.max_height`.
pub fn normalized_taylor_of_bt(m: &Term, fuel: usize, b: Bounds) -> (TermSet, BtStatus) {
    let bt = boehm_tree(m, fuel, Some(b.max_height));
    let set = match &bt.tree {
        Some(a) => normalized_taylor_of_approximant(a, b),
        None => TermSet::new(),
    };
    (set, bt.status)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Equal,
    /// A difference backed by an exact Böhm tree and saturated sets.
    Mismatch,
    Inconclusive,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutationReport {
    /// `NF(T(m))` restricted to the filter.
    pub left: TermSet,
    /// `Tn(BT(m))` restricted to the filter.
    pub right: TermSet,
    pub filter: Bounds,
    /// `Exact` when the reduction reached a v-normal form without cuts, or
    /// when the term has finitely many reducts (at most `fuel`).
    pub bt_status: BtStatus,
    pub equal: bool,
    /// Symmetric difference of the two sides.
    pub witnesses: TermSet,
    pub saturated: bool,
}

impl CommutationReport {
    pub fn verdict(&self) -> Verdict {
        if self.equal {
            Verdict::Equal
        } else if self.bt_status == BtStatus::Exact && self.saturated {
            Verdict::Mismatch
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Compares `NF(T(m))` with `Tn(BT(m))` inside `filter`.
pub fn check_commutation(m: &Term, fuel: usize, b: Bounds, filter: Bounds) -> CommutationReport {
    let nf = taylor_nf(m, b, filter);
    let (mut right, mut bt_status) = normalized_taylor_of_bt(m, fuel, b);
    if bt_status == BtStatus::Partial {
        // a finite reduction graph pins the Böhm tree down completely
        if let Some(tree) = closed_boehm_tree(m, fuel) {
            right = tree.map_or_else(TermSet::new, |a| normalized_taylor_of_approximant(&a, b));
            bt_status = BtStatus::Exact;
        }
    }
    let right = right.filter_bounds(filter.max_bag, filter.max_height);
    let left = nf.set;
    let witnesses: TermSet = left.as_set().symmetric_difference(right.as_set()).cloned().collect();
    CommutationReport {
        equal: witnesses.is_empty(),
        left,
        right,
        filter,
        bt_status,
        witnesses,
        saturated: nf.saturated,
    }
}

// ---------------------------------------------------------------------------
// redexes seen through the expansion

/// The smallest element of `T(m)`: every value becomes `[]`.
fn least(m: &Term) -> Simple {
    match m {
        Term::App(f, a) => Simple::app(least(f), least(a)),
        _ => Simple::empty_bag(),
    }
}

/// A singleton bag in `T(v)` for a value `v`.
fn singleton_of(v: &Term) -> Option<Simple> {
    match v {
        Term::Var(x) => Some(Simple::bag(vec![Value::Var(x.clone())])),
        Term::Abs(body) => Some(Simple::bag(vec![Value::Abs(Arc::new(least(body)))])),
        _ => None,
    }
}

fn witness_at(m: &Term, path: &[usize], kind: RedexKind) -> Option<Simple> {
    let Some((&i, rest)) = path.split_first() else {
        let Term::App(f, a) = m else { return None };
        return match kind {
            RedexKind::BetaV => Some(Simple::app(singleton_of(f)?, least(a))),
            RedexKind::Sigma1 => {
                let Term::App(g, n) = &**f else { return None };
                Some(Simple::app(Simple::app(singleton_of(g)?, least(n)), least(a)))
            }
            RedexKind::Sigma3 => {
                let Term::App(g, n) = &**a else { return None };
                Some(Simple::app(singleton_of(f)?, Simple::app(singleton_of(g)?, least(n))))
            }
        };
    };
    match (m, i) {
        (Term::Abs(body), 0) => Some(Simple::bag(vec![Value::Abs(Arc::new(witness_at(body, rest, kind)?))])),
        (Term::App(f, a), 0) => Some(Simple::app(witness_at(f, rest, kind)?, least(a))),
        (Term::App(f, a), 1) => Some(Simple::app(least(f), witness_at(a, rest, kind)?)),
        _ => None,
    }
}

/// An element of `T(m)` carrying a βr or σ redex, built from the first
/// v-redex of `m` that admits one, together with that resource redex.
///
/// A σ3 redex whose value is `⊥` has no such witness, since `T(⊥)` has no
/// singleton bag.
pub fn redex_witness(m: &Term) -> Option<(Simple, RRedexOccurrence)> {
    find_redexes(m).into_iter().find_map(|r| {
        let w = witness_at(m, &r.position, r.kind)?;
        let occ = r_find_redexes(&Resource::Simple(w.clone()))
            .into_iter()
            .find(|o| o.kind != RRedexKind::Zero)?;
        Some((w, occ))
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContextVerdict {
    Agree,
    /// Saturated sets that differ.
    Disagree,
    Inconclusive,
    /// `m` and `n` themselves do not have the same bounded normal form.
    PreconditionUnmet,
}

/// Given `NF(T(m)) = NF(T(n))` inside `filter`, compares `NF(T(C[m]))` and
/// `NF(T(C[n]))` inside `filter`.
pub fn taylor_context_check(m: &Term, n: &Term, c: &HeadContext, b: Bounds, filter: Bounds) -> ContextVerdict {
    // saturation is only needed to call a difference conclusive, so the
    // enlarged runs happen on disagreement only
    if nf_filtered(m, b, filter) != nf_filtered(n, b, filter) {
        return ContextVerdict::PreconditionUnmet;
    }
    let (Ok(cm), Ok(cn)) = (c.plug(m), c.plug(n)) else {
        return ContextVerdict::PreconditionUnmet;
    };
    let (l, r) = (nf_filtered(&cm, b, filter), nf_filtered(&cn, b, filter));
    if l == r {
        ContextVerdict::Agree
    } else if nf_filtered(&cm, b.enlarged(), filter) == l && nf_filtered(&cn, b.enlarged(), filter) == r {
        ContextVerdict::Disagree
    } else {
        ContextVerdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_resource, parse_term, parse_termset};

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn set(s: &str) -> TermSet {
        parse_termset(s).unwrap()
    }

    fn naive_nf(m: &Term, b: Bounds, filter: Bounds) -> TermSet {
        let all = taylor(m, b);
        crate::resource::r_normalize(&all, crate::resource::NormalizationOrder::Deterministic)
            .filter_bounds(filter.max_bag, filter.max_height)
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(taylor(&t("x"), Bounds::new(2, 1)), set("{ [] ; [x] ; [x, x] }"));
        assert_eq!(
            taylor(&t(r"\x.x"), Bounds::new(1, 3)),
            set(r"{ [] ; [\x.[]] ; [\x.[x]] }")
        );
        assert_eq!(taylor(&t("bot"), Bounds::new(3, 5)), set("{ [] }"));
    }

    #[test]
    fn membership() {
        let delta = t(r"\x.x x");
        assert!(in_taylor(
            &parse_resource(r"[\x.[x][x,x], \x.[x][x,x,x]]").unwrap(),
            &delta
        ));
        assert!(!in_taylor(&parse_resource(r"[\x.[x]]").unwrap(), &delta));
    }

    #[test]
    fn coherence_witnesses() {
        let r = |s| parse_resource(s).unwrap();
        assert!(!coherent(&r("[x, y]"), &r("[x, y]")));
        assert!(coherent(&r("[x]"), &r("[]")));
        assert!(!coherent(&r("[x]"), &r("[y]")));
        assert!(is_clique(&taylor(&t(r"\x.x"), Bounds::new(2, 3))));
    }

    #[test]
    fn inference() {
        assert_eq!(infer_term(&set("{ [x] ; [x, x] }")), Ok(t("x")));
        assert_eq!(infer_term(&set(r"{ [\x.[x]] ; [\x.[x, x]] }")), Ok(t(r"\x.x")));
        assert_eq!(infer_term(&set("{ [x] ; [y] }")), Err(InferError::NotAClique));
        assert_eq!(infer_term(&set(r"{ [\x.[]] }")), Err(InferError::Ambiguous));
    }

    #[test]
    fn nf_examples() {
        let omega = t(r"(\x.x x)(\x.x x)");
        let b = Bounds::new(2, 8);
        let r = taylor_nf(&omega, b, b);
        assert!(r.set.is_empty() && r.saturated);
        let r = taylor_nf(&Term::lam("x", omega), b, b);
        assert_eq!(r.set, set("{ [] }"));
        let f = Bounds::new(1, 4);
        let b = Bounds::new(2, 6);
        assert_eq!(
            taylor_nf(&t(r"(\x.x x)(\x.x)"), b, f).set,
            taylor_nf(&t(r"\x.x"), b, f).set
        );
    }

    #[test]
    fn compositional_nf_matches_naive() {
        let b = Bounds::new(2, 6);
        let f = Bounds::new(2, 5);
        for src in [
            r"(\x.x x)(\x.x)",
            r"(\x.x)(z z)",
            r"(\z.(\y.y)(z z))(x x)",
            r"\x.(\y.y y) x",
            r"(\x.\y.x) z",
        ] {
            let m = t(src);
            assert_eq!(taylor_nf(&m, b, f).set, naive_nf(&m, b, f), "{src}");
        }
    }

    #[test]
    fn tn_examples() {
        assert_eq!(
            normalized_taylor_of_approximant(&Approximant::bot(), Bounds::new(3, 3)),
            set("{ [] }")
        );
        let i = Approximant::new(t(r"\x.x")).unwrap();
        assert_eq!(
            normalized_taylor_of_approximant(&i, Bounds::new(1, 3)),
            set(r"{ [] ; [\x.[]] ; [\x.[x]] }")
        );
        let xb = Approximant::new(t("x bot")).unwrap();
        assert_eq!(
            normalized_taylor_of_approximant(&xb, Bounds::new(1, 3)),
            set("{ [x][] }")
        );
    }

    #[test]
    fn commutation_examples() {
        for (src, fuel, b) in [
            (r"\x.x", 5, Bounds::new(2, 5)),
            (r"\x.x x", 5, Bounds::new(2, 6)),
            (r"(\x.x x)(\x.x x)", 100, Bounds::new(2, 8)),
        ] {
            let rep = check_commutation(&t(src), fuel, b, b);
            assert!(rep.equal, "{src}: {}", rep.witnesses);
        }
    }

    #[test]
    fn witnesses_carry_redexes() {
        let (w, occ) = redex_witness(&t(r"(\x.x)(\y.y)")).unwrap();
        assert_eq!(occ.kind, RRedexKind::BetaR);
        assert!(in_taylor(&Resource::Simple(w), &t(r"(\x.x)(\y.y)")));
        let (_, occ) = redex_witness(&t(r"(\x.x)(z z) w")).unwrap();
        assert_eq!(occ.kind, RRedexKind::Sigma1R);
        let (_, occ) = redex_witness(&t(r"y ((\x.x)(z z))")).unwrap();
        assert_eq!(occ.kind, RRedexKind::Sigma3R);
        assert!(redex_witness(&t(r"x (\y.y)")).is_none());
    }

    #[test]
    fn context_examples() {
        let di = t(r"(\x.x x)(\x.x)");
        let i = t(r"\x.x");
        let b = Bounds::new(3, 8);
        let f = Bounds::new(2, 6);
        assert_eq!(
            taylor_context_check(&di, &i, &HeadContext::default(), b, f),
            ContextVerdict::Agree
        );
        let c = HeadContext::new(vec!["f".into()], vec![t(r"\u.u")]).unwrap();
        assert_eq!(taylor_context_check(&di, &i, &c, b, f), ContextVerdict::Agree);
    }
}

//! The call-by-value resource calculus: values, bags, simple terms, linear
//! substitution and the βr / 0 / σ reductions on finite sets of terms.
//!
//! Terms use the same locally nameless convention as [`crate::term`].
//! Bags keep their elements sorted, so two bags are equal exactly when they
//! are equal as multisets.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term::{Name, Var};

/// `x` or `λx.t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Value {
    Var(Var),
    Abs(Arc<Simple>),
}

/// A finite multiset of values, stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Bag(Vec<Value>);

/// `s t` or a bag.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Simple {
    App(Arc<Simple>, Arc<Simple>),
    Bag(Bag),
}

/// A resource term: a value or a simple term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Resource {
    Value(Value),
    Simple(Simple),
}

impl Bag {
    pub fn new(mut elems: Vec<Value>) -> Self {
        elems.sort();
        Bag(elems)
    }

    /// Builds a bag from elements already in canonical order.
    pub(crate) fn from_sorted(elems: Vec<Value>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] <= w[1]));
        Bag(elems)
    }

    pub fn empty() -> Self {
        Bag(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Value> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Value] {
        &self.0
    }
}

impl Value {
    pub fn var(name: &str) -> Value {
        Value::Var(Var::Free(Name::new(name)))
    }

    /// `λname.body`, binding free occurrences of `name`.
    pub fn lam(name: &str, body: Simple) -> Value {
        Value::Abs(Arc::new(body.close_name(&Name::new(name), 0)))
    }

    fn map_vars(&self, depth: u32, f: &mut impl FnMut(&Var, u32) -> Value) -> Value {
        match self {
            Value::Var(v) => f(v, depth),
            Value::Abs(b) => Value::Abs(Arc::new(b.map_vars(depth + 1, f))),
        }
    }

    pub(crate) fn shift(&self, by: u32, cutoff: u32) -> Value {
        if by == 0 {
            return self.clone();
        }
        self.map_vars(cutoff, &mut |v, d| match v {
            Var::Bound(i) if *i >= d => Value::Var(Var::Bound(i + by)),
            _ => Value::Var(v.clone()),
        })
    }

    pub fn height(&self) -> usize {
        match self {
            Value::Var(_) => 0,
            Value::Abs(b) => b.height() + 1,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Value::Var(_) => 1,
            Value::Abs(b) => b.size() + 1,
        }
    }

    fn count(&self, target: &Var, depth: u32) -> usize {
        match (self, target) {
            (Value::Var(Var::Bound(i)), Var::Bound(t)) => usize::from(*i == t + depth),
            (Value::Var(v), _) => usize::from(v == target),
            (Value::Abs(b), _) => b.count(target, depth + 1),
        }
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Value::Var(Var::Free(n)) => {
                out.insert(n.clone());
            }
            Value::Var(Var::Bound(_)) => {}
            Value::Abs(b) => b.collect_free(out),
        }
    }

    fn max_bag(&self) -> usize {
        match self {
            Value::Var(_) => 0,
            Value::Abs(b) => b.max_bag(),
        }
    }
}

impl Simple {
    pub fn app(f: Simple, a: Simple) -> Simple {
        Simple::App(Arc::new(f), Arc::new(a))
    }

    pub fn bag(elems: Vec<Value>) -> Simple {
        Simple::Bag(Bag::new(elems))
    }

    pub fn empty_bag() -> Simple {
        Simple::Bag(Bag::empty())
    }

    pub fn as_bag(&self) -> Option<&Bag> {
        match self {
            Simple::Bag(b) => Some(b),
            Simple::App(..) => None,
        }
    }

    /// Head bag and arguments of an application spine.
    pub fn spine(&self) -> (&Simple, Vec<&Simple>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Simple::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    fn map_vars(&self, depth: u32, f: &mut impl FnMut(&Var, u32) -> Value) -> Simple {
        match self {
            Simple::App(s, t) => Simple::App(Arc::new(s.map_vars(depth, f)), Arc::new(t.map_vars(depth, f))),
            Simple::Bag(b) => Simple::Bag(Bag::new(b.iter().map(|v| v.map_vars(depth, f)).collect())),
        }
    }

    pub(crate) fn shift(&self, by: u32, cutoff: u32) -> Simple {
        if by == 0 {
            return self.clone();
        }
        self.map_vars(cutoff, &mut |v, d| match v {
            Var::Bound(i) if *i >= d => Value::Var(Var::Bound(i + by)),
            _ => Value::Var(v.clone()),
        })
    }

    /// Replaces loose index 0 by the free variable `name`.
    pub fn open(&self, name: &Name) -> Simple {
        self.map_vars(0, &mut |v, d| match v {
            Var::Bound(i) if *i == d => Value::Var(Var::Free(name.clone())),
            Var::Bound(i) if *i > d => Value::Var(Var::Bound(i - 1)),
            _ => Value::Var(v.clone()),
        })
    }

    pub(crate) fn close_name(&self, name: &Name, depth: u32) -> Simple {
        self.map_vars(depth, &mut |v, d| match v {
            Var::Free(n) if n == name => Value::Var(Var::Bound(d)),
            _ => Value::Var(v.clone()),
        })
    }

    pub fn height(&self) -> usize {
        match self {
            Simple::App(s, t) => s.height().max(t.height()) + 1,
            Simple::Bag(b) => b.iter().map(Value::height).max().unwrap_or(0) + 1,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Simple::App(s, t) => s.size() + t.size() + 1,
            Simple::Bag(b) => b.iter().map(Value::size).sum::<usize>() + 1,
        }
    }

    /// Largest bag cardinality occurring anywhere in the term.
    pub fn max_bag(&self) -> usize {
        match self {
            Simple::App(s, t) => s.max_bag().max(t.max_bag()),
            Simple::Bag(b) => b.iter().map(Value::max_bag).max().unwrap_or(0).max(b.len()),
        }
    }

    pub(crate) fn count(&self, target: &Var, depth: u32) -> usize {
        match self {
            Simple::App(s, t) => s.count(target, depth) + t.count(target, depth),
            Simple::Bag(b) => b.iter().map(|v| v.count(target, depth)).sum(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Simple::App(s, t) => {
                s.collect_free(out);
                t.collect_free(out);
            }
            Simple::Bag(b) => b.iter().for_each(|v| v.collect_free(out)),
        }
    }
}

impl Resource {
    pub fn height(&self) -> usize {
        match self {
            Resource::Value(v) => v.height(),
            Resource::Simple(s) => s.height(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Resource::Value(v) => v.size(),
            Resource::Simple(s) => s.size(),
        }
    }

    pub fn max_bag(&self) -> usize {
        match self {
            Resource::Value(v) => v.max_bag(),
            Resource::Simple(s) => s.max_bag(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        match self {
            Resource::Value(v) => v.collect_free(&mut out),
            Resource::Simple(s) => s.collect_free(&mut out),
        }
        out
    }

    pub fn as_simple(&self) -> Option<&Simple> {
        match self {
            Resource::Simple(s) => Some(s),
            Resource::Value(_) => None,
        }
    }
}

impl From<Simple> for Resource {
    fn from(s: Simple) -> Self {
        Resource::Simple(s)
    }
}

impl From<Value> for Resource {
    fn from(v: Value) -> Self {
        Resource::Value(v)
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_resource(self, false))
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_simple(self, false))
    }
}

/// A finite set of resource terms in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct TermSet(BTreeSet<Resource>);

impl TermSet {
    pub fn new() -> Self {
        TermSet(BTreeSet::new())
    }

    pub fn from_set(set: BTreeSet<Resource>) -> Self {
        TermSet(set)
    }

    pub fn singleton(e: Resource) -> Self {
        let mut s = BTreeSet::new();
        s.insert(e);
        TermSet(s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Resource) -> bool {
        self.0.contains(e)
    }

    pub fn insert(&mut self, e: Resource) -> bool {
        self.0.insert(e)
    }

    pub fn iter(&self) -> alloc::collections::btree_set::Iter<'_, Resource> {
        self.0.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Resource> {
        &self.0
    }

    pub fn into_set(self) -> BTreeSet<Resource> {
        self.0
    }

    pub fn union(&self, other: &TermSet) -> TermSet {
        TermSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &TermSet) -> TermSet {
        TermSet(self.0.intersection(&other.0).cloned().collect())
    }

    /// Elements whose bags all have at most `max_bag` elements and whose
    /// height is at most `max_height`.
    pub fn filter_bounds(&self, max_bag: usize, max_height: usize) -> TermSet {
        TermSet(
            self.0
                .iter()
                .filter(|e| e.max_bag() <= max_bag && e.height() <= max_height)
                .cloned()
                .collect(),
        )
    }
}

impl FromIterator<Resource> for TermSet {
    fn from_iter<I: IntoIterator<Item = Resource>>(iter: I) -> Self {
        TermSet(iter.into_iter().collect())
    }
}

impl IntoIterator for TermSet {
    type Item = Resource;
    type IntoIter = alloc::collections::btree_set::IntoIter<Resource>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a TermSet {
    type Item = &'a Resource;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Resource>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for TermSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_termset(self, false))
    }
}

// ---------------------------------------------------------------------------
// degree and linear substitution

/// Number of free occurrences of `x` in `e`.
pub fn degree(e: &Resource, x: &Name) -> usize {
    let target = Var::Free(x.clone());
    match e {
        Resource::Value(v) => v.count(&target, 0),
        Resource::Simple(s) => s.count(&target, 0),
    }
}

/// Rearranges `v` into the next permutation in lexicographic order; false
/// once the last one has been reached. Repeated elements yield each distinct
/// arrangement once.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Replaces the occurrences of `target` (seen at depth 0) one by one with the
/// values of `assign`, in traversal order. `lower` removes the binder of
/// `target`: every other loose bound index above it drops by one.
struct Filler<'a> {
    target: &'a Var,
    assign: &'a [Value],
    next: usize,
    lower: bool,
}

impl Filler<'_> {
    fn var(&mut self, v: &Var, depth: u32) -> Value {
        let hit = match (v, self.target) {
            (Var::Bound(i), Var::Bound(t)) => *i == t + depth,
            _ => v == self.target,
        };
        if hit {
            let val = self.assign[self.next].shift(depth, 0);
            self.next += 1;
            return val;
        }
        match v {
            Var::Bound(i) if self.lower && *i > depth => Value::Var(Var::Bound(i - 1)),
            _ => Value::Var(v.clone()),
        }
    }

    fn simple(&mut self, s: &Simple, depth: u32) -> Simple {
        match s {
            Simple::App(f, a) => {
                let f = self.simple(f, depth);
                let a = self.simple(a, depth);
                Simple::App(Arc::new(f), Arc::new(a))
            }
            Simple::Bag(b) => Simple::Bag(Bag::new(b.iter().map(|v| self.value(v, depth)).collect())),
        }
    }

    fn value(&mut self, v: &Value, depth: u32) -> Value {
        match v {
            Value::Var(x) => self.var(x, depth),
            Value::Abs(b) => Value::Abs(Arc::new(self.simple(b, depth + 1))),
        }
    }
}

fn lsubst_simple(t: &Simple, target: &Var, vs: &[Value], lower: bool) -> BTreeSet<Simple> {
    let mut out = BTreeSet::new();
    if t.count(target, 0) != vs.len() {
        return out;
    }
    let mut perm: Vec<Value> = vs.to_vec();
    perm.sort();
    loop {
        let mut f = Filler {
            target,
            assign: &perm,
            next: 0,
            lower,
        };
        out.insert(f.simple(t, 0));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// `e⟨x := vs⟩`: every bijective assignment of `vs` to the free occurrences
/// of `x`, or ∅ when their numbers differ.
pub fn linear_subst(e: &Resource, x: &Name, vs: &[Value]) -> TermSet {
    let target = Var::Free(x.clone());
    match e {
        Resource::Simple(s) => lsubst_simple(s, &target, vs, false)
            .into_iter()
            .map(Resource::Simple)
            .collect(),
        Resource::Value(v) => {
            let wrapped = Simple::Bag(Bag(vec![v.clone()]));
            lsubst_simple(&wrapped, &target, vs, false)
                .into_iter()
                .map(|s| match s {
                    Simple::Bag(Bag(mut b)) => Resource::Value(b.pop().expect("singleton")),
                    Simple::App(..) => unreachable!(),
                })
                .collect()
        }
    }
}

// ---------------------------------------------------------------------------
// redexes

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RRedexKind {
    BetaR,
    Zero,
    Sigma1R,
    Sigma3R,
}

/// A redex inside a resource term. Path steps: an abstraction's body is 0,
/// an application's function 0 and argument 1, a bag's i-th element (in
/// canonical order) is i.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RRedexOccurrence {
    pub kind: RRedexKind,
    pub position: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RStepError {
    NotMember,
    InvalidRedex,
}

impl fmt::Display for RStepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RStepError::NotMember => f.write_str("term is not an element of the set"),
            RStepError::InvalidRedex => f.write_str("no redex of that kind at that position"),
        }
    }
}

fn singleton(s: &Simple) -> Option<&Value> {
    match s {
        Simple::Bag(b) if b.len() == 1 => Some(&b.0[0]),
        _ => None,
    }
}

pub(crate) fn singleton_abs(s: &Simple) -> Option<&Arc<Simple>> {
    match singleton(s) {
        Some(Value::Abs(t)) => Some(t),
        _ => None,
    }
}

/// The redex kind rooted at `s`, if any.
pub(crate) fn redex_at(s: &Simple) -> Option<RRedexKind> {
    let Simple::App(f, a) = s else { return None };
    match &**f {
        Simple::Bag(b) if b.len() != 1 => Some(RRedexKind::Zero),
        Simple::Bag(b) => match (&b.0[0], &**a) {
            (Value::Abs(_), Simple::Bag(_)) => Some(RRedexKind::BetaR),
            (_, Simple::App(g, _)) if singleton_abs(g).is_some() => Some(RRedexKind::Sigma3R),
            _ => None,
        },
        Simple::App(g, _) if singleton_abs(g).is_some() => Some(RRedexKind::Sigma1R),
        Simple::App(..) => None,
    }
}

fn collect_simple(s: &Simple, path: &mut Vec<usize>, out: &mut Vec<RRedexOccurrence>) {
    if let Some(kind) = redex_at(s) {
        out.push(RRedexOccurrence {
            kind,
            position: path.clone(),
        });
    }
    match s {
        Simple::App(f, a) => {
            path.push(0);
            collect_simple(f, path, out);
            path.pop();
            path.push(1);
            collect_simple(a, path, out);
            path.pop();
        }
        Simple::Bag(b) => {
            for (i, v) in b.iter().enumerate() {
                path.push(i);
                collect_value(v, path, out);
                path.pop();
            }
        }
    }
}

fn collect_value(v: &Value, path: &mut Vec<usize>, out: &mut Vec<RRedexOccurrence>) {
    if let Value::Abs(b) = v {
        path.push(0);
        collect_simple(b, path, out);
        path.pop();
    }
}

/// All redex occurrences, leftmost-outermost first.
pub fn r_find_redexes(e: &Resource) -> Vec<RRedexOccurrence> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    match e {
        Resource::Value(v) => collect_value(v, &mut path, &mut out),
        Resource::Simple(s) => collect_simple(s, &mut path, &mut out),
    }
    out
}

fn first_redex_simple(s: &Simple, path: &mut Vec<usize>) -> Option<RRedexKind> {
    if let Some(k) = redex_at(s) {
        return Some(k);
    }
    match s {
        Simple::App(f, a) => {
            path.push(0);
            if let Some(k) = first_redex_simple(f, path) {
                return Some(k);
            }
            path.pop();
            path.push(1);
            if let Some(k) = first_redex_simple(a, path) {
                return Some(k);
            }
            path.pop();
            None
        }
        Simple::Bag(b) => {
            for (i, v) in b.iter().enumerate() {
                if let Value::Abs(body) = v {
                    path.push(i);
                    path.push(0);
                    if let Some(k) = first_redex_simple(body, path) {
                        return Some(k);
                    }
                    path.pop();
                    path.pop();
                }
            }
            None
        }
    }
}

fn first_redex(e: &Resource) -> Option<RRedexOccurrence> {
    let mut path = Vec::new();
    let kind = match e {
        Resource::Value(Value::Abs(b)) => {
            path.push(0);
            first_redex_simple(b, &mut path)
        }
        Resource::Value(Value::Var(_)) => None,
        Resource::Simple(s) => first_redex_simple(s, &mut path),
    }?;
    Some(RRedexOccurrence { kind, position: path })
}

/// True when no subterm is a redex.
pub fn is_normal(e: &Resource) -> bool {
    first_redex(e).is_none()
}

/// Contracts the redex rooted at `s`.
fn contract(s: &Simple, kind: RRedexKind) -> Option<Vec<Simple>> {
    if redex_at(s) != Some(kind) {
        return None;
    }
    let Simple::App(f, a) = s else { return None };
    Some(match kind {
        RRedexKind::Zero => Vec::new(),
        RRedexKind::BetaR => {
            let body = singleton_abs(f)?;
            let Simple::Bag(args) = &**a else { return None };
            lsubst_simple(body, &Var::Bound(0), args.as_slice(), true)
                .into_iter()
                .collect()
        }
        RRedexKind::Sigma1R => {
            // [λx.t] s1 s2 → [λx.t s2] s1
            let Simple::App(g, s1) = &**f else { return None };
            let t = singleton_abs(g)?;
            let body = Simple::app((**t).clone(), a.shift(1, 0));
            vec![Simple::app(
                Simple::Bag(Bag(vec![Value::Abs(Arc::new(body))])),
                (**s1).clone(),
            )]
        }
        RRedexKind::Sigma3R => {
            // [v]([λx.t] s) → [λx.[v] t] s
            let v = singleton(f)?;
            let Simple::App(g, s2) = &**a else { return None };
            let t = singleton_abs(g)?;
            let inner = Simple::app(Simple::Bag(Bag(vec![v.shift(1, 0)])), (**t).clone());
            vec![Simple::app(
                Simple::Bag(Bag(vec![Value::Abs(Arc::new(inner))])),
                (**s2).clone(),
            )]
        }
    })
}

fn step_simple(s: &Simple, path: &[usize], kind: RRedexKind) -> Option<Vec<Simple>> {
    let Some((&i, rest)) = path.split_first() else {
        return contract(s, kind);
    };
    match (s, i) {
        (Simple::App(f, a), 0) => Some(
            step_simple(f, rest, kind)?
                .into_iter()
                .map(|f2| Simple::App(Arc::new(f2), a.clone()))
                .collect(),
        ),
        (Simple::App(f, a), 1) => Some(
            step_simple(a, rest, kind)?
                .into_iter()
                .map(|a2| Simple::App(f.clone(), Arc::new(a2)))
                .collect(),
        ),
        (Simple::Bag(b), i) if i < b.len() => {
            let news = step_value(&b.0[i], rest, kind)?;
            Some(
                news.into_iter()
                    .map(|v| {
                        let mut elems = b.0.clone();
                        elems[i] = v;
                        Simple::Bag(Bag::new(elems))
                    })
                    .collect(),
            )
        }
        _ => None,
    }
}

fn step_value(v: &Value, path: &[usize], kind: RRedexKind) -> Option<Vec<Value>> {
    match (v, path.split_first()) {
        (Value::Abs(b), Some((0, rest))) => Some(
            step_simple(b, rest, kind)?
                .into_iter()
                .map(|b2| Value::Abs(Arc::new(b2)))
                .collect(),
        ),
        _ => None,
    }
}

/// Contracts one redex of one term; the result is a set.
pub fn contract_occurrence(e: &Resource, occ: &RRedexOccurrence) -> Option<Vec<Resource>> {
    match e {
        Resource::Simple(s) => Some(
            step_simple(s, &occ.position, occ.kind)?
                .into_iter()
                .map(Resource::Simple)
                .collect(),
        ),
        Resource::Value(v) => Some(
            step_value(v, &occ.position, occ.kind)?
                .into_iter()
                .map(Resource::Value)
                .collect(),
        ),
    }
}

/// `(E ∖ {e}) ∪ results`, where `results` come from contracting `occ` in `e`.
pub fn r_step(set: &TermSet, element: &Resource, occ: &RRedexOccurrence) -> Result<TermSet, RStepError> {
    if !set.contains(element) {
        return Err(RStepError::NotMember);
    }
    let results = contract_occurrence(element, occ).ok_or(RStepError::InvalidRedex)?;
    let mut out = set.0.clone();
    out.remove(element);
    out.extend(results);
    Ok(TermSet(out))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NormalizationOrder {
    /// Smallest pending term first, leftmost-outermost redex.
    Deterministic,
    /// Pending term and redex drawn from a ChaCha8 stream seeded here.
    RandomSeeded(u64),
}

/// The r-normal form of a set of resource terms.
pub fn r_normalize(set: &TermSet, order: NormalizationOrder) -> TermSet {
    let mut pending: BTreeSet<Resource> = set.0.clone();
    let mut done: BTreeSet<Resource> = BTreeSet::new();
    match order {
        NormalizationOrder::Deterministic => {
            while let Some(e) = pending.pop_first() {
                match first_redex(&e) {
                    None => {
                        done.insert(e);
                    }
                    Some(occ) => {
                        let results = contract_occurrence(&e, &occ).expect("redex found by search");
                        pending.extend(results);
                    }
                }
            }
        }
        NormalizationOrder::RandomSeeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            while !pending.is_empty() {
                let k = rng.random_range(0..pending.len());
                let e = pending.iter().nth(k).cloned().expect("index in range");
                pending.remove(&e);
                let redexes = r_find_redexes(&e);
                if redexes.is_empty() {
                    done.insert(e);
                } else {
                    let occ = &redexes[rng.random_range(0..redexes.len())];
                    pending.extend(contract_occurrence(&e, occ).expect("redex found by search"));
                }
            }
        }
    }
    TermSet(done)
}

/// Normal form of a single simple term.
pub(crate) fn normalize_simple(s: Simple) -> BTreeSet<Simple> {
    let mut pending = vec![s];
    let mut done = BTreeSet::new();
    while let Some(s) = pending.pop() {
        let mut path = Vec::new();
        match first_redex_simple(&s, &mut path) {
            None => {
                done.insert(s);
            }
            Some(kind) => pending.extend(step_simple(&s, &path, kind).expect("redex found by search")),
        }
    }
    done
}

// ---------------------------------------------------------------------------
// resource approximants

/// `a ::= b | c`
/// `b ::= [x^n] | [λx.a1, …, λx.an] | [x] b a1 … ak`
/// `c ::= [λx.a]([y] b a1 … ak)`
pub fn is_resource_approximant(e: &Resource) -> bool {
    match e {
        Resource::Simple(s) => is_a(s),
        Resource::Value(_) => false,
    }
}

pub(crate) fn is_a(s: &Simple) -> bool {
    is_b(s) || is_c(s)
}

fn is_b(s: &Simple) -> bool {
    match s {
        Simple::Bag(b) => {
            let vars = b.iter().all(|v| matches!(v, Value::Var(_)));
            let abss = b.iter().all(|v| matches!(v, Value::Abs(_)));
            if vars {
                b.0.windows(2).all(|w| w[0] == w[1])
            } else if abss {
                b.iter().all(|v| match v {
                    Value::Abs(t) => is_a(t),
                    Value::Var(_) => false,
                })
            } else {
                false
            }
        }
        Simple::App(..) => is_var_spine(s),
    }
}

/// `[x] b a1 … ak`
fn is_var_spine(s: &Simple) -> bool {
    let (head, args) = s.spine();
    !args.is_empty()
        && matches!(singleton(head), Some(Value::Var(_)))
        && is_b(args[0])
        && args[1..].iter().all(|a| is_a(a))
}

fn is_c(s: &Simple) -> bool {
    match s {
        Simple::App(f, a) => match singleton_abs(f) {
            Some(body) => is_a(body) && is_var_spine(a),
            None => false,
        },
        Simple::Bag(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_resource, parse_termset};

    fn r(s: &str) -> Resource {
        parse_resource(s).unwrap()
    }

    fn set(s: &str) -> TermSet {
        parse_termset(s).unwrap()
    }

    fn vals(src: &str) -> Vec<Value> {
        match r(src) {
            Resource::Simple(Simple::Bag(b)) => b.0,
            _ => panic!("not a bag"),
        }
    }

    #[test]
    fn degree_examples() {
        let x = Name::new("x");
        assert_eq!(degree(&r("[x] [x,x]"), &x), 3);
        assert_eq!(degree(&r(r"[\x.[x]]"), &x), 0);
        assert_eq!(degree(&r("[y]"), &x), 0);
    }

    #[test]
    fn linear_subst_examples() {
        let x = Name::new("x");
        let vs = vals(r"[\y.[y], z]");
        assert_eq!(
            linear_subst(&r("[x][x]"), &x, &vs),
            set(r"{ [\y.[y]][z] ; [z][\y.[y]] }")
        );
        assert_eq!(linear_subst(&r("[x,x]"), &x, &vs), set(r"{ [\y.[y], z] }"));
        assert!(linear_subst(&r("[x][x]"), &x, &vals("[z]")).is_empty());
    }

    #[test]
    fn distinct_permutations() {
        let mut v = vec![1, 1, 2];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 3);
    }

    #[test]
    fn redex_kinds() {
        let k = |s: &str| {
            r_find_redexes(&r(s))
                .into_iter()
                .map(|o| (o.kind, o.position))
                .collect::<Vec<_>>()
        };
        assert_eq!(k(r"[\x.[x][x]][\y.[y], z]"), vec![(RRedexKind::BetaR, vec![])]);
        assert_eq!(k(r"[\y.[y], z] [w]"), vec![(RRedexKind::Zero, vec![])]);
        assert!(k(r"[z][\y.[y]]").is_empty());
        assert_eq!(k(r"[\x.[x]]([\y.[y]][z])")[0].0, RRedexKind::Sigma3R);
        assert_eq!(k(r"[\x.[x]] [z] [w]")[0].0, RRedexKind::Sigma1R);
    }

    #[test]
    fn step_examples() {
        let root = |kind| RRedexOccurrence { kind, position: vec![] };
        let e = set(r"{ [\x.[x,x]][\y.[y],z] }");
        let el = r(r"[\x.[x,x]][\y.[y],z]");
        assert_eq!(
            r_step(&e, &el, &root(RRedexKind::BetaR)).unwrap(),
            set(r"{ [\y.[y],z] }")
        );

        let el = r(r"[\y.[\x.[x,x]][y]] ([z][w]) [\x.[x],w]");
        let got = r_step(&TermSet::singleton(el.clone()), &el, &root(RRedexKind::Sigma1R)).unwrap();
        assert_eq!(got, set(r"{ [\y.[\x.[x,x]][y] [\x.[x],w]] ([z][w]) }"));

        let el = r(r"[\y.[y],z][w]");
        assert!(r_step(&TermSet::singleton(el.clone()), &el, &root(RRedexKind::Zero))
            .unwrap()
            .is_empty());
        assert_eq!(
            r_step(&TermSet::new(), &el, &root(RRedexKind::Zero)),
            Err(RStepError::NotMember)
        );
        assert_eq!(
            r_step(&TermSet::singleton(el.clone()), &el, &root(RRedexKind::BetaR)),
            Err(RStepError::InvalidRedex)
        );
    }

    #[test]
    fn normalize_examples() {
        let d = NormalizationOrder::Deterministic;
        assert_eq!(
            r_normalize(&set(r"{ [\x.[x][x]][\y.[y],z] }"), d),
            set(r"{ [z] ; [z][\y.[y]] }")
        );
        assert_eq!(
            r_normalize(&set(r"{ [\x.[x]] ([\x.[\y.[x][y]]][z]) [w] }"), d),
            set("{ [z][w] }")
        );
        // with the whole spine inside the argument, [I] meets a non-bag and stays
        assert_eq!(
            r_normalize(&set(r"{ [\x.[x]] ([\x.[\y.[x][y]]][z][w]) }"), d),
            set(r"{ [\x.[x]]([z][w]) }")
        );
        assert!(r_normalize(&TermSet::new(), d).is_empty());
    }

    #[test]
    fn approximant_examples() {
        assert!(is_resource_approximant(&r(r"[\x.[x], \x.[x,x], \x.[x,x,x]]")));
        assert!(!is_resource_approximant(&r(r"[\x.[x,x]][\y.[y],z]")));
        assert!(is_resource_approximant(&r(r"[z][\y.[y]]")));
        assert!(!is_resource_approximant(&r("[x, y]")));
        assert!(is_resource_approximant(&r(r"[\z.[\y.[y]]([z][z])]([x][x,x])")));
    }

    #[test]
    fn heights() {
        assert_eq!(r("x").height(), 0);
        assert_eq!(r("[x,x]").height(), 1);
        assert_eq!(r(r"[\x.[x]]").height(), 3);
        assert_eq!(r("[]").height(), 1);
    }
}

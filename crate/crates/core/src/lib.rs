//! Call-by-value λ-calculus with σ-permutations, its Böhm trees, the
//! call-by-value resource calculus and the Taylor expansion.
//!
//! Terms are stored in a locally nameless form: bound variables are de Bruijn
//! indices and free variables keep their names. Structural equality on that
//! form is α-equivalence, and the derived `Ord` is the canonical order used by
//! every set and bag in the crate.
//!
//! The crate is `no_std` and only needs `alloc`. Reading files, JSON and the
//! command line live in the `cbvb` companion crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod approx;
pub mod combinators;
pub mod reduction;
pub mod resource;
pub mod syntax;
pub mod taylor;
pub mod term;

pub use approx::{
    boehm_tree, direct_approximant, is_approximant, is_approximant_of, is_potentially_valuable, join, leq, ApproxClass,
    Approximant, BtResult, BtStatus, Certainty, Incompatible,
};
pub use reduction::{
    classify_nf, find_redexes, reduce, reduce_sigma_only, step, NfClass, RedexKind, RedexOccurrence, ReductionOutcome,
    ReductionStatus, StepError, Strategy,
};
pub use resource::{
    degree, is_resource_approximant, linear_subst, r_find_redexes, r_normalize, r_step, Bag, NormalizationOrder,
    RRedexKind, RRedexOccurrence, RStepError, Resource, Simple, TermSet, Value,
};
pub use syntax::{parse_resource, parse_term, parse_termset, ParseError, SourceSpan};
pub use taylor::{
    check_commutation, coherent, in_taylor, infer_term, is_clique, normalized_taylor_of_approximant,
    normalized_taylor_of_bt, redex_witness, taylor, taylor_context_check, taylor_nf, Bounds, CommutationReport,
    ContextVerdict, InferError, TaylorNf, Verdict,
};
pub use term::{free_vars, is_value, plug_head_context, subst, HeadContext, Name, NonValueArg, Term, Var};

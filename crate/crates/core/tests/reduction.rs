mod support;

use cbvb_core::combinators as comb;
use cbvb_core::Strategy;
use cbvb_core::*;
use proptest::prelude::*;
use support::{seeded, t};

fn at(kind: RedexKind, position: &[usize]) -> RedexOccurrence {
    RedexOccurrence {
        kind,
        position: position.to_vec(),
    }
}

#[test]
fn redex_discovery() {
    assert_eq!(find_redexes(&t(r"(\x.x) x")), vec![at(RedexKind::BetaV, &[])]);
    assert_eq!(find_redexes(&t(r"(\x.x)(x y)")), vec![]);
    assert_eq!(
        find_redexes(&t(r"(\x.x)((\x.x x)(x x))")),
        vec![at(RedexKind::Sigma3, &[])]
    );
}

#[test]
fn single_steps() {
    let m = t(r"(\x.x)((\x.x x)(x x))");
    assert_eq!(step(&m, &at(RedexKind::Sigma3, &[])), Ok(t(r"(\z.(\x.x)(z z))(x x)")));
    let omega = comb::omega();
    assert_eq!(step(&omega, &at(RedexKind::BetaV, &[])), Ok(omega.clone()));
    let m = t(r"(\y.\x.x x)(x x)(\x.x x)");
    assert_eq!(
        step(&m, &at(RedexKind::Sigma1, &[])),
        Ok(t(r"(\y.(\x.x x)(\x.x x))(x x)"))
    );
    assert!(matches!(
        step(&m, &at(RedexKind::BetaV, &[])),
        Err(StepError::InvalidRedex { .. })
    ));
}

#[test]
fn sigma1_renames_away_from_the_argument() {
    // the moved argument mentions the binder's name
    let m = t(r"(\x.x)(y y) x");
    let r = step(&m, &at(RedexKind::Sigma1, &[])).unwrap();
    assert_eq!(r, t(r"(\w.w x)(y y)"));
}

#[test]
fn multi_step() {
    let out = reduce(&t(r"(\x.x) x"), Strategy::LeftmostOutermost, 10);
    assert_eq!(
        (out.term, out.steps_used, out.status),
        (t("x"), 1, ReductionStatus::NormalForm)
    );
    let out = reduce(&comb::omega(), Strategy::LeftmostOutermost, 50);
    assert_eq!(
        (out.term, out.steps_used, out.status),
        (comb::omega(), 50, ReductionStatus::FuelExhausted)
    );
    let nf = t(r"(\x.x)(z z)");
    let out = reduce(&nf, Strategy::RandomSeeded(3), 0);
    assert_eq!(
        (out.term, out.steps_used, out.status),
        (nf, 0, ReductionStatus::NormalForm)
    );
}

#[test]
fn normal_form_grammar() {
    assert_eq!(classify_nf(&t(r"(\x.x)(z z)")), NfClass::GR);
    assert_eq!(classify_nf(&t("x")), NfClass::GH);
    assert_eq!(classify_nf(&t(r"(\y.\x.x x)(x x)(\x.x x)")), NfClass::NotNormal);
}

#[test]
fn grammar_agrees_with_redexes_exhaustively() {
    let mut checked = 0;
    for size in 1..=12 {
        for m in support::all_terms(size, 0, &["x", "y", "z"], false) {
            assert_eq!(
                classify_nf(&m) != NfClass::NotNormal,
                find_redexes(&m).is_empty(),
                "{m}"
            );
            checked += 1;
        }
    }
    assert!(checked > 7_000_000);
}

proptest! {
    #[test]
    fn grammar_agrees_with_redexes(m in seeded(|g| support::term_upto(g, 12))) {
        prop_assert_eq!(classify_nf(&m) != NfClass::NotNormal, find_redexes(&m).is_empty());
    }

    #[test]
    fn steps_never_add_free_variables(m in seeded(|g| support::term_upto(g, 14))) {
        let fv = free_vars(&m);
        for r in find_redexes(&m) {
            let n = step(&m, &r).unwrap();
            prop_assert!(free_vars(&n).is_subset(&fv), "{} -> {}", m, n);
        }
    }

    #[test]
    fn status_matches_redexes(m in seeded(|g| support::term_upto(g, 12)), seed in any::<u64>()) {
        let out = reduce(&m, Strategy::RandomSeeded(seed), 100);
        prop_assert_eq!(out.status == ReductionStatus::NormalForm, find_redexes(&out.term).is_empty());
        prop_assert!(out.steps_used <= 100);
    }

    #[test]
    fn sigma_reduction_terminates(m in seeded(|g| support::term_upto(g, 12))) {
        let fuel = 10 * m.size() * m.size();
        let out = reduce_sigma_only(&m, fuel);
        prop_assert_eq!(out.status, ReductionStatus::NormalForm);
        prop_assert!(find_redexes(&out.term).iter().all(|r| !r.kind.is_sigma()));
    }

    #[test]
    fn confluent_when_both_normalize(m in seeded(|g| support::term_upto(g, 12)), seed in any::<u64>()) {
        let a = reduce(&m, Strategy::LeftmostOutermost, 200);
        let b = reduce(&m, Strategy::RandomSeeded(seed), 200);
        if a.status == ReductionStatus::NormalForm && b.status == ReductionStatus::NormalForm {
            prop_assert_eq!(a.term, b.term);
        }
    }
}

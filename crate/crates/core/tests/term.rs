mod support;

use std::collections::BTreeSet;

use cbvb_core::syntax::print_term;
use cbvb_core::*;
use proptest::prelude::*;
use support::{seeded, t};

fn names(xs: &[&str]) -> BTreeSet<Name> {
    xs.iter().map(|x| Name::new(x)).collect()
}

#[test]
fn free_variables() {
    assert_eq!(free_vars(&t(r"\x.x y")), names(&["y"]));
    assert_eq!(free_vars(&Term::Bot), names(&[]));
    assert_eq!(free_vars(&t(r"(\y.\x.\x.(\z.z z)(x x))(x x)")), names(&["x"]));
}

#[test]
fn values() {
    assert!(is_value(&t("x")));
    assert!(!is_value(&t("x x")));
    assert!(is_value(&t("bot")));
    assert!(is_value(&t(r"\x.(\x.x x)(\x.x x)")));
}

#[test]
fn substitution() {
    let x = Name::new("x");
    assert_eq!(subst(&t("x x"), &x, &t(r"\y.y")), t(r"(\y.y)(\y.y)"));
    // the bound y is renamed away from the free y coming in
    let r = subst(&t(r"\y.x"), &x, &t("y"));
    assert_eq!(r, t(r"\z.y"));
    assert_eq!(free_vars(&r), names(&["y"]));
    assert_eq!(subst(&t("x"), &x, &Term::Bot), Term::Bot);
}

#[test]
fn alpha_equivalence() {
    assert_eq!(t(r"\x.x"), t(r"\y.y"));
    assert_ne!(t(r"\x.x y"), t(r"\y.y y"));
    assert_eq!(t(r"\x.\y.x"), t(r"\a.\b.a"));
}

#[test]
fn head_contexts() {
    let c = HeadContext::new(vec![Name::new("x")], vec![t(r"\y.y")]).unwrap();
    assert_eq!(plug_head_context(&c, &t("x x")), Ok(t(r"(\x.x x)(\y.y)")));
    let m = t(r"(\x.x x)(\x.x x)");
    assert_eq!(HeadContext::default().plug(&m), Ok(m));
    assert_eq!(
        HeadContext::new(vec![Name::new("x")], vec![t("z z")]),
        Err(NonValueArg { index: 0 })
    );
}

proptest! {
    #[test]
    fn substitution_free_variables(
        m in seeded(|g| support::term_upto(g, 15)),
        n in seeded(|g| support::term_upto(g, 6)),
        x in prop::sample::select(support::FREE),
    ) {
        let x = Name::new(x);
        let r = subst(&m, &x, &n);
        let mut want = free_vars(&m);
        if want.remove(&x) {
            want.extend(free_vars(&n));
        }
        prop_assert_eq!(free_vars(&r), want);
    }

    #[test]
    fn values_closed_under_value_substitution(
        m in seeded(|g| support::value(g, 10)),
        v in seeded(|g| support::value(g, 5)),
        x in prop::sample::select(support::FREE),
    ) {
        prop_assert!(is_value(&subst(&m, &Name::new(x), &v)));
    }

    #[test]
    fn canonical_form_is_idempotent(m in seeded(|g| support::term_bot(g, 12))) {
        let once = parse_term(&print_term(&m, false)).unwrap();
        let twice = parse_term(&print_term(&once, false)).unwrap();
        prop_assert_eq!(&once, &m);
        prop_assert_eq!(print_term(&once, false), print_term(&twice, false));
    }

    #[test]
    fn alpha_eq_is_an_equivalence(
        a in seeded(|g| support::term_upto(g, 4)),
        b in seeded(|g| support::term_upto(g, 4)),
        c in seeded(|g| support::term_upto(g, 4)),
    ) {
        prop_assert_eq!(&a, &a.clone());
        prop_assert_eq!(a == b, b == a);
        if a == b && b == c {
            prop_assert_eq!(&a, &c);
        }
    }
}

use cbvb::json::{ast_to_resource, ast_to_term, resource_to_ast, term_to_ast, Ast};
use cbvb::{parse_termset_file, read_termset_arg, Corpus};
use cbvb_core::{parse_resource, parse_term, parse_termset, taylor, Bounds, Term};
use serde_json::json;

#[test]
fn term_ast_schema() {
    let m = parse_term(r"\x.x bot").unwrap();
    let j = serde_json::to_value(term_to_ast(&m)).unwrap();
    assert_eq!(
        j,
        json!({ "abs": { "binder": "x0", "body": { "app": [{ "var": "x0" }, { "bot": true }] } } })
    );
    let back: Ast = serde_json::from_value(j).unwrap();
    assert_eq!(ast_to_term(&back), Ok(m));
}

#[test]
fn binders_avoid_free_names() {
    let m = parse_term(r"\y.x0 y").unwrap();
    let ast = term_to_ast(&m);
    assert!(matches!(&ast, Ast::Abs { binder, .. } if binder != "x0"));
    assert_eq!(ast_to_term(&ast), Ok(m));
}

#[test]
fn terms_round_trip() {
    let corpus = Corpus::builtin();
    for (name, m) in corpus.names() {
        assert_eq!(ast_to_term(&term_to_ast(m)).as_ref(), Ok(m), "{name}");
        for e in &taylor(m, Bounds::new(2, 5)) {
            assert_eq!(ast_to_resource(&resource_to_ast(e)).as_ref(), Ok(e), "{name}: {e}");
        }
    }
}

#[test]
fn resource_ast_schema() {
    let e = parse_resource(r"[\x.[x]][y, y]").unwrap();
    let j = serde_json::to_value(resource_to_ast(&e)).unwrap();
    let lam = json!({ "abs": { "binder": "x0", "body": { "bag": [{ "var": "x0" }] } } });
    assert_eq!(
        j,
        json!({ "app": [{ "bag": [lam] }, { "bag": [{ "var": "y" }, { "var": "y" }] }] })
    );
    let bad: Ast = serde_json::from_value(json!({ "bag": [{ "bag": [] }] })).unwrap();
    assert!(ast_to_resource(&bad).is_err());
    assert!(ast_to_term(&Ast::Bot(false)).is_err());
}

#[test]
fn corpus_lookup() {
    let mut c = Corpus::builtin();
    assert_eq!(c.resolve("delta").unwrap(), parse_term(r"\x.x x").unwrap());
    assert_eq!(c.resolve("z").unwrap(), Term::var("z"));
    assert_eq!(c.resolve("Z").unwrap(), cbvb_core::combinators::z());
    c.load("I = \\y.y y\nself = I", "extra").unwrap();
    assert_eq!(c.resolve("SELF").unwrap(), parse_term(r"\x.x x").unwrap());
    let e = c.load("\n = x", "extra").unwrap_err();
    assert_eq!(e.origin, "extra:2");
    assert!(c.load("q = (x", "f").unwrap_err().to_string().starts_with("f:1: 1:"));
}

#[test]
fn termset_lines() {
    let s = parse_termset_file("# comment\n[x]\n\n{ [y] ; [] }\n[x] # again\n", "t").unwrap();
    assert_eq!(s, parse_termset("{ [x] ; [y] ; [] }").unwrap());
    assert_eq!(parse_termset_file("[x\n", "t").unwrap_err().origin, "t:1");
    assert_eq!(read_termset_arg("[x]").unwrap().len(), 1);
    assert_eq!(read_termset_arg("{}").unwrap().len(), 0);
    assert!(read_termset_arg("@/nonexistent/file").is_err());
}

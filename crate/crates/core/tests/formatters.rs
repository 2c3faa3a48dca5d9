use frontier_pp::formatters::{json_to_doc, parse_doc_ir, sexp_to_doc};
use frontier_pp::reference::brute_force_print;
use frontier_pp::{print, Arena, Linear, Quadratic, ResolverConfig, StyleConfig};

type A = Arena<(u64, u64)>;

const JSON: &[&str] = &[
    r#"{"name": "frontier", "tags": ["a", "bb", "ccc"], "n": 3}"#,
    r#"[[1, 2], [3, [4, 5]], {"k": null}]"#,
    r#"{"deep": {"deeper": {"deepest": [true, false]}}}"#,
];

const SEXP: &[&str] = &["(define (f x) (g x y))", "(let ((a 1) (b 2)) (+ a b))", "((a b) (c d) e)"];

#[test]
fn json_matches_exhaustive_search() {
    for src in JSON {
        for width in [6, 12, 20, 40, 80] {
            let mut a = A::new();
            let d = json_to_doc(src, &StyleConfig::default(), &mut a).unwrap();
            let f = Quadratic { page_width: width };
            let oracle = brute_force_print(&a, d, &f, 100).unwrap();
            let out = print(&a, d, &ResolverConfig::new(f)).unwrap();
            assert_eq!(out.cost, oracle.cost, "{src} at {width}");
            assert_eq!(out.layout, oracle.layout, "{src} at {width}");
        }
    }
}

#[test]
fn sexp_matches_exhaustive_search() {
    for style in [StyleConfig::default(), StyleConfig { sexp_hang: true, ..StyleConfig::default() }] {
        for src in SEXP {
            for width in [4, 8, 12, 30] {
                let mut a = A::new();
                let d = sexp_to_doc(src, &style, &mut a).unwrap();
                let f = Linear { page_width: width };
                let oracle = brute_force_print(&a, d, &f, 100).unwrap();
                let out = print(&a, d, &ResolverConfig::new(f)).unwrap();
                assert_eq!(out.cost, oracle.cost, "{src} at {width}");
            }
        }
    }
}

#[test]
fn small_json_is_one_line_at_80() {
    let mut a = A::new();
    let d = json_to_doc(JSON[0], &StyleConfig::default(), &mut a).unwrap();
    let out = print(&a, d, &ResolverConfig::new(Quadratic { page_width: 80 })).unwrap();
    assert_eq!(out.layout.lines(), [JSON[0]]);
}

#[test]
fn doc_ir_sharing_and_derived_forms() {
    let src = r#"
        ; a shared argument list
        (let args (concat (text "x,") (concat (nl) (text "y")))
          (alt (concat (text "f(") (concat (ref args) (text ")")))
               (vcat (text "f(") (nest 2 (concat (ref args) (text ")"))))))
    "#;
    let mut a = A::new();
    let d = parse_doc_ir(src, &mut a).unwrap();
    let out = print(&a, d, &ResolverConfig::new(Quadratic { page_width: 80 })).unwrap();
    assert_eq!(out.layout.lines(), ["f(x,", "y)"]);
}

use frontier_pp::workloads::{generate, Family};
use frontier_pp::{print, Quadratic, ResolverConfig};
use frontier_pp_cli::{run, run_bench, BenchSpec, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_NO_LAYOUT, EXIT_OK};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str], stdin: &str) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("frontier-pp").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

#[test]
fn fmt_small_json_on_one_line() {
    let o = cli(&["fmt", "--syntax", "json", "--page-width", "80"], r#"{"a": [1, 2, 3], "b": {"c": null}}"#);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "{\"a\": [1, 2, 3], \"b\": {\"c\": null}}\n");
}

#[test]
fn fmt_reads_files() {
    let dir = std::env::temp_dir().join(format!("frontier-pp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.sexp");
    std::fs::write(&path, "(define (f x) (g x y))").unwrap();
    let o = cli(&["fmt", "--syntax", "sexp", "--page-width", "14", path.to_str().unwrap()], "");
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "(define\n (f x)\n (g x y))\n");
    let missing = cli(&["fmt", "--syntax", "sexp", dir.join("nope").to_str().unwrap()], "");
    assert_eq!(missing.code, EXIT_INPUT);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fmt_reports_tainting() {
    let o = cli(&["fmt", "--syntax", "docir", "--computation-width", "3", "--report-tainted"], r#"(text "hello")"#);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout, "hello\n");
    assert_eq!(o.stderr, "tainted: yes\n");
    let o = cli(&["fmt", "--syntax", "docir", "--report-tainted"], r#"(text "hello")"#);
    assert_eq!(o.stderr, "tainted: no\n");
}

#[test]
fn fmt_exit_codes() {
    assert_eq!(cli(&["fmt", "--syntax", "json"], "{").code, EXIT_INPUT);
    assert_eq!(cli(&["fmt", "--syntax", "docir"], "(text").code, EXIT_INPUT);
    assert_eq!(cli(&["fmt", "--syntax", "docir"], "(fail)").code, EXIT_NO_LAYOUT);
    assert_eq!(cli(&["fmt", "--syntax", "json", "--factory", "nope"], "1").code, EXIT_INPUT);
    assert_eq!(cli(&["fmt", "--syntax", "json", "--factory", "invalid-maxlex"], "1").code, EXIT_INPUT);
    assert_eq!(cli(&["fmt"], "1").code, EXIT_INPUT);
    assert_eq!(cli(&["--help"], "").code, EXIT_OK);
}

#[test]
fn fmt_factories_agree_on_easy_input() {
    for factory in ["linear", "quadratic", "max"] {
        let o = cli(&["fmt", "--syntax", "json", "--page-width", "8", "--factory", factory], r#"{"a": 1, "b": 2}"#);
        assert_eq!(o.code, EXIT_OK, "{factory}");
        assert_eq!(o.stdout, "{\n  \"a\": 1,\n  \"b\": 2\n}\n", "{factory}");
    }
}

#[test]
fn check_factory_exit_codes() {
    let pass = cli(&["check-factory", "quadratic", "--trials", "10000"], "");
    assert_eq!(pass.code, EXIT_OK);
    assert!(pass.stdout.contains("result: pass"));
    let bad = cli(&["check-factory", "invalid-maxlex"], "");
    assert_eq!(bad.code, EXIT_COUNTEREXAMPLE);
    assert!(bad.stdout.contains("result: counterexample"));
    assert_eq!(cli(&["check-factory", "nope"], "").code, EXIT_INPUT);
    assert_eq!(cli(&["check-factory", "linear", "--trials", "0"], "").code, EXIT_INPUT);
}

#[test]
fn bench_report_keys() {
    let o = cli(&["bench", "concat", "200", "--runs", "1"], "");
    assert_eq!(o.code, EXIT_OK);
    let keys: Vec<&str> = o.stdout.lines().map(|l| l.split_once(": ").unwrap().0).collect();
    for k in ["family", "size", "seed", "gen_ms", "time_ms", "lines", "tainted", "cost"] {
        assert!(keys.contains(&k), "{k}");
    }
    assert!(o.stdout.contains("lines: 1\n"));
    assert!(o.stdout.contains("tainted: yes\n"));
}

#[test]
fn bench_rejects_bad_specs() {
    assert_eq!(cli(&["bench", "nope", "10"], "").code, EXIT_INPUT);
    assert_eq!(cli(&["bench", "concat", "0"], "").code, EXIT_INPUT);
    assert_eq!(cli(&["bench", "sexpfull", "99"], "").code, EXIT_INPUT);
    assert_eq!(cli(&["bench", "concat", "5", "--runs", "0"], "").code, EXIT_INPUT);
}

#[test]
fn bench_line_count_matches_printed_layout() {
    for family in Family::ALL {
        let size = if family == Family::SexpFull { 6 } else { 300 };
        let report = run_bench(&BenchSpec { runs: 1, ..BenchSpec::new(family, size) }).unwrap();
        let w = generate(family, size, 0, 80).unwrap();
        let direct = print(&w.arena, w.doc, &ResolverConfig::new(Quadratic { page_width: 80 })).unwrap();
        assert_eq!(report.layout.line_count(), direct.layout.line_count(), "{family}");
        assert_eq!(report.layout, direct.layout, "{family}");
        assert!(report.render().contains(&format!("lines: {}\n", direct.layout.line_count())));
    }
}

#[test]
fn bench_writes_layout() {
    let path = std::env::temp_dir().join(format!("frontier-pp-layout-{}.txt", std::process::id()));
    let o = cli(&["bench", "fillsep", "50", "--runs", "1", "--layout-out", path.to_str().unwrap()], "");
    assert_eq!(o.code, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let lines = text.lines().count();
    assert!(o.stdout.contains(&format!("lines: {lines}\n")));
}

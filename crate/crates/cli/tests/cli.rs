use std::process::Command;

use comlang::{Alphabet, DplUnion, Limits};
use comlang_cli::check::check;
use comlang_cli::parse::{parse, parse_program, Expr};
use comlang_cli::{CliError, SessionConfig, Session, Value};
use proptest::prelude::*;

fn b(e: Expr) -> Box<Expr> {
    Box::new(e)
}

fn config() -> SessionConfig {
    SessionConfig::default()
}

fn over(sigma: &str) -> SessionConfig {
    SessionConfig { alphabet: Some(Alphabet::parse(sigma).unwrap()), ..SessionConfig::default() }
}

#[test]
fn parses_examples() {
    assert_eq!(
        parse("F(a,1,3) & F(a,5)").unwrap(),
        Expr::Intersect(b(Expr::Fmod('a', 1, 3)), b(Expr::Fcount('a', 5)))
    );
    assert_eq!(parse("sh*( perm(ab) )").unwrap(), Expr::IterShuffle(b(Expr::Perm("ab".into()))));
    assert_eq!(parse("{a,b}*").unwrap(), Expr::Star(vec!['a', 'b']));
    assert_eq!(parse("{b,a}+").unwrap(), Expr::Plus(vec!['a', 'b']));
    assert_eq!(parse("{ba,ab}").unwrap(), Expr::SetLit(vec!["ab".into(), "ba".into()]));
    assert_eq!(parse("ε").unwrap(), Expr::WordLit(String::new()));
    assert_eq!(
        parse("project(invproject(a), {a})").unwrap(),
        Expr::Project(b(Expr::InvProject(b(Expr::WordLit("a".into())))), vec!['a'])
    );
}

#[test]
fn precedence() {
    let a = || b(Expr::WordLit("a".into()));
    let bb = || b(Expr::WordLit("b".into()));
    // & binds tighter than <>, which binds tighter than |
    assert_eq!(
        parse("a | a <> b & b").unwrap(),
        Expr::Union(a(), b(Expr::Shuffle(a(), b(Expr::Intersect(bb(), bb())))))
    );
    assert_eq!(parse("a ⧢ b").unwrap(), parse("a <> b").unwrap());
    assert_eq!(parse("(a | b) & b").unwrap(), Expr::Intersect(b(Expr::Union(a(), bb())), bb()));
}

#[test]
fn syntax_errors() {
    let e = parse("F(a,3,2)").unwrap_err();
    assert!(e.message.contains("residue must be < modulus"), "{e}");
    assert!(parse("F(a,0,0)").unwrap_err().message.contains("modulus must be positive"));
    assert!(parse("(a | b").unwrap_err().message.contains("unbalanced"));
    assert!(parse("a)").is_err());
    assert!(parse("F(ab,1)").is_err());
    assert!(parse("{ab}*").is_err());
    assert!(parse("foo(a)").unwrap_err().message.contains("unknown function"));
    let e = parse_program("alphabet ab; abc", None).unwrap_err();
    assert_eq!(e.position, 13);
    assert!(e.message.contains("unknown letter 'c'"));
    let sigma = Alphabet::parse("ab").unwrap();
    assert!(parse_program("alphabet abc; a", Some(&sigma)).is_err());
}

#[test]
fn alphabet_statement_and_inference() {
    let s = Session::open("alphabet abc; F(a,1)", &config()).unwrap();
    assert_eq!(s.alphabet, Alphabet::parse("abc").unwrap());
    let s = Session::open("F(a,1) | ba", &config()).unwrap();
    assert_eq!(s.alphabet, Alphabet::parse("ab").unwrap());
}

#[test]
fn normalize_examples() {
    let out = comlang_cli::normalize("F(a,5) & F(a,1,3)", &config()).unwrap();
    assert_eq!(out, r#"{"alphabet":["a"],"terms":[{"progs":{"a":{"k":7,"p":3}},"support":["a"]}]}"#);
    let out = comlang_cli::normalize("project(F(a,1,2) & F(b,1,2), {a})", &config()).unwrap();
    assert_eq!(out, r#"{"alphabet":["a"],"terms":[{"progs":{"a":{"k":1,"p":2}},"support":["a"]}]}"#);
    let err = comlang_cli::normalize("sh*({ab})", &config()).unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn member_examples() {
    assert!(comlang_cli::member("abba", "sh*({ab})", &config()).unwrap());
    assert!(!comlang_cli::member("aab", "sh*({ab})", &config()).unwrap());
    assert!(comlang_cli::member("", "sh*({ab})", &config()).unwrap());
    assert!(comlang_cli::member("aab", "sh*({ab}) | {a,b}+ & F(a,2)", &config()).unwrap());
    // parsed as sh*({ab}) <> (b & F(b,3)), and the intersection is empty
    assert!(!comlang_cli::member("abbb", "sh*({ab}) <> b & F(b,3)", &config()).unwrap());
    assert!(comlang_cli::member("abbb", "sh*({ab}) <> (b | F(b,3))", &config()).unwrap());
}

#[test]
fn regular_examples() {
    assert_eq!(comlang_cli::regular("sh*({ab})", &config()).unwrap(), r#"{"status":"non-regular","witness":"a"}"#);
    let v: serde_json::Value = serde_json::from_str(&comlang_cli::regular("sh*({ab,a,b})", &config()).unwrap()).unwrap();
    assert_eq!(v["status"], "regular");
    let v: serde_json::Value = serde_json::from_str(&comlang_cli::regular("sh*({ab}) | a", &config()).unwrap()).unwrap();
    assert_eq!(v["status"], "undecided");
    let v: serde_json::Value = serde_json::from_str(&comlang_cli::regular("F(a,1,2)", &config()).unwrap()).unwrap();
    assert_eq!(v["status"], "regular");
}

#[test]
fn fragment_errors_name_what_is_missing() {
    let e = comlang_cli::normalize("project(sh*({ab}), {a})", &config()).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    assert!(e.to_string().contains("non-regular"), "{e}");
    let e = comlang_cli::normalize("sh*(sh*({ab}))", &config()).unwrap_err();
    assert_eq!(e.exit_code(), 3);
}

#[test]
fn guards_map_to_exit_four() {
    let tight = SessionConfig { limits: Limits { max_states: 10, ..Limits::default() }, ..config() };
    let e = comlang_cli::dfa("F(a,7,9) & F(b,5,7)", &tight, false).unwrap_err();
    assert_eq!(e.exit_code(), 4);
    let tight = SessionConfig { limits: Limits { max_clauses: 1, ..Limits::default() }, ..config() };
    let e = comlang_cli::normalize("(F(a,1) | F(b,1)) & (F(a,2) | F(b,2))", &tight).unwrap_err();
    assert_eq!(e.exit_code(), 4);
}

#[test]
fn dfa_and_report() {
    let d = comlang_cli::dfa("F(a,1,2)", &config(), true).unwrap();
    assert_eq!(d.state_count(), 2);
    let json = comlang_cli::render_dfa(&d, comlang_cli::DfaFormat::Json);
    assert_eq!(json, r#"{"alphabet":["a"],"delta":[[0,"a",1],[1,"a",0]],"finals":[1],"start":0,"states":2}"#);
    let r: serde_json::Value = serde_json::from_str(&comlang_cli::report("F(a,1,2) & F(b,1,3)", &config()).unwrap()).unwrap();
    assert_eq!(r["permutation"], true);
    assert_eq!(r["aperiodic"], false);
    assert_eq!(r["commutative"], true);
    let r: serde_json::Value = serde_json::from_str(&comlang_cli::report("F(a,2) <> {b}*", &config()).unwrap()).unwrap();
    assert_eq!(r["aperiodic"], true);
}

#[test]
fn check_examples() {
    for e in [
        "sh*( F(a,1,2) )",
        "sh*({ab})",
        "sh*({ab,a,b})",
        "F(a,1,2) <> F(b,2) | {ab}",
        "project(F(a,1,2) & F(b,1,2), {a}) | a",
        "invproject(project(F(a,2,3) & F(b,1), {a}))",
        "sh*({ab}) <> {a}+",
        "sh*({ab}) & F(a,2)",
    ] {
        let report = comlang_cli::check(e, &config()).unwrap_or_else(|err| panic!("{e}: {err}"));
        assert!(report.passed());
    }
    let abc = over("abc");
    assert!(comlang_cli::check("sh*(perm(aab) <> {c}* | b)", &SessionConfig { bound: 9, ..abc }).is_ok());
}

#[test]
fn check_reports_counterexamples() {
    let session = Session::open("F(a,1,2)", &config()).unwrap();
    let wrong = Value::Regular(DplUnion::full(session.alphabet.clone()));
    let report = check(&session.expr, &wrong, &session.alphabet, 10).unwrap();
    assert!(!report.passed());
    assert!(report.render().starts_with("FAIL"));
    assert_eq!(report.counterexample.clone().unwrap().counts(), &[0]);
    assert!(matches!(CliError::Mismatch(report).exit_code(), 5));
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_comlang"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_exit_codes() {
    assert_eq!(run(&["member", "abba", "sh*({ab})"]).1.trim(), "true");
    assert_eq!(run(&["member", "aab", "sh*({ab})"]).1.trim(), "false");
    assert_eq!(run(&["check", "sh*( F(a,1,2) )", "--bound", "10"]).1.trim(), "PASS: 11 vectors agree up to bound 10");
    assert_eq!(run(&["regular?", "sh*({ab})"]).1.trim(), r#"{"status":"non-regular","witness":"a"}"#);
    assert_eq!(run(&["regular", "sh*({ab})"]).0, 0);
    let (code, out, err) = run(&["normalize", "F(a,3,2)"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("residue must be < modulus"));
    assert_eq!(run(&["--alphabet", "ab", "normalize", "c"]).0, 2);
    assert_eq!(run(&["normalize", "sh*({ab})"]).0, 3);
    assert_eq!(run(&["--guard-states", "5", "dfa", "F(a,7,9)"]).0, 4);
    let (code, out, _) = run(&["dfa", "--dot", "--minimize", "F(a,1,2)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert_eq!(run(&["frobnicate"]).0, 2);
}

fn expr_strategy() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        "[ab]{0,3}".prop_map(|w| if w.is_empty() { "ε".to_string() } else { w }),
        (prop::sample::select(vec!['a', 'b']), 0..4u64).prop_map(|(a, t)| format!("F({a},{t})")),
        (prop::sample::select(vec!['a', 'b']), 1..5u64).prop_flat_map(|(a, n)| (0..n).prop_map(move |r| format!("F({a},{r},{n})"))),
        Just("{a,b}*".to_string()),
        Just("{a}+".to_string()),
        Just("{ab,b}".to_string()),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x} | {y})")),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x} & {y})")),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x} <> {y})")),
            inner.clone().prop_map(|x| format!("sh*({x})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_output_is_canonical(e in expr_strategy()) {
        let cfg = over("ab");
        if let Ok(out) = comlang_cli::normalize(&e, &cfg) {
            let again = DplUnion::from_json_str(&out).unwrap().to_json_string();
            prop_assert_eq!(again, out);
        }
    }

    #[test]
    fn evaluation_matches_the_brute_force_evaluator(e in expr_strategy()) {
        let cfg = SessionConfig { bound: 8, ..over("ab") };
        match comlang_cli::check(&e, &cfg) {
            Ok(r) => prop_assert!(r.passed()),
            Err(CliError::Mismatch(r)) => prop_assert!(false, "{}: {}", e, r.render()),
            Err(_) => {}
        }
    }
}

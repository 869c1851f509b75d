use super::*;

macro_rules! script {
    ($name:literal) => {
        ($name, include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/scripts/", $name)))
    };
}

const CORPUS: [(&str, &str); 8] = [
    script!("problem1.geo"),
    script!("problem1star.geo"),
    script!("problem2.geo"),
    script!("problem3.geo"),
    script!("problem4.geo"),
    script!("thm6.geo"),
    script!("thm7.geo"),
    script!("thm8.geo"),
];

fn run(src: &str) -> Evaluation {
    evaluate(&parse(src).unwrap())
}

#[test]
fn point_declaration() {
    let s = parse("point A = (0,0)").unwrap();
    assert_eq!(
        s.statements,
        vec![Stmt::Decl {
            kind: Kind::Point,
            name: "A".into(),
            expr: Expr::Coords(Rational::from_integer(0.into()), Rational::from_integer(0.into())),
        }]
    );
    assert_eq!(s.source_map[0], Pos { line: 1, col: 1, offset: 0 });
}

#[test]
fn omega_is_reserved() {
    let s = parse("line g = omega").unwrap();
    assert!(matches!(&s.statements[0], Stmt::Decl { expr: Expr::Omega, .. }));
    assert!(matches!(parse("point omega = (1, 2)"), Err(DslError::Syntax { .. })));
}

#[test]
fn use_before_declaration_points_at_token() {
    let src = "point M = (0, 0)\npoint N = (1, 0)\nassert collinear(M, N, W)";
    match parse(src) {
        Err(DslError::UseBeforeDecl { pos, name }) => {
            assert_eq!(name, "W");
            assert_eq!((pos.line, pos.col), (3, 24));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn redeclaration() {
    let err = parse("point A = (0, 0)\npoint A = (1, 0)").unwrap_err();
    assert!(matches!(err, DslError::Redeclaration { pos: Pos { line: 2, col: 7, .. }, .. }));
}

#[test]
fn arity_and_types() {
    let err = parse("point A = (0,0)\npoint B = (1,0)\nline l = join(A, B, A)").unwrap_err();
    assert!(matches!(err, DslError::ArityMismatch { found: 3, .. }), "{err}");
    let err = parse("point A = (0,0)\npoint B = (1,0)\npoint P = meet(A, B)").unwrap_err();
    assert!(matches!(err, DslError::TypeMismatch { found: Kind::Point, .. }), "{err}");
    let err = parse("point A = (0,0)\npoint B = (1,0)\nassert collinear(A, B)").unwrap_err();
    assert!(matches!(err, DslError::ArityMismatch { .. }), "{err}");
}

#[test]
fn harmonic_separator() {
    let ok = "point A = (0,0)\npoint B = (2,0)\npoint C = (1,0)\npoint D = harmonic(A, B; C)";
    assert!(parse(ok).is_ok());
    let bad = "point A = (0,0)\npoint B = (2,0)\npoint C = (1,0)\npoint D = harmonic(A, B, C)";
    match parse(bad) {
        Err(DslError::Syntax { expected, .. }) => assert_eq!(expected, vec!["';'"]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn syntax_error_lists_expected_tokens() {
    match parse("point A = (0, 0\n") {
        Err(DslError::Syntax { pos, expected, found }) => {
            assert_eq!((pos.line, pos.col), (1, 16));
            assert_eq!(expected, vec!["')'"]);
            assert_eq!(found, "end of line");
        }
        other => panic!("{other:?}"),
    }
    match parse("lines g = omega") {
        Err(DslError::Syntax { expected, .. }) => assert_eq!(expected.len(), 4),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse("point A = (1/0, 0)"), Err(DslError::Syntax { .. })));
}

#[test]
fn identical_lines_error_is_positioned() {
    let e = run("point A = (0,0)\npoint B = (1,0)\nline l = join(A, B)\npoint P = meet(l, l)\nassert on(A, l)");
    match e.error {
        Some(DslError::Evaluation { pos, message }) => {
            assert_eq!(pos.line, 4);
            assert!(message.contains("itself"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    // evaluation stopped before the assertion
    assert!(e.results.is_empty());
}

#[test]
fn failed_assertion_does_not_stop_evaluation() {
    let e = run(include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/scripts/failing_assert.geo")));
    assert!(e.error.is_none());
    assert_eq!(e.results.len(), 2);
    assert!(!e.results[0].passed);
    assert!(e.results[1].passed);
    let text = format_diagnostics(&e);
    assert!(text.starts_with("FAIL 5:1 collinear(A, B, C): A = (0:0:1), B = (1:0:1), C = (0:1:1)"), "{text}");
    assert!(text.ends_with("2 assertions, 1 passed\n"));
}

#[test]
fn empty_script() {
    let e = run("# nothing here\n\n");
    assert_eq!(format_diagnostics(&e), "0 assertions, 0 passed\n");
}

#[test]
fn corpus_passes() {
    for (name, src) in CORPUS {
        let e = run(src);
        assert!(e.error.is_none(), "{name}: {:?}", e.error);
        assert!(!e.results.is_empty(), "{name}");
        assert!(e.all_passed(), "{name}:\n{}", format_diagnostics(&e));
        let n = e.results.len();
        assert!(format_diagnostics(&e).ends_with(&format!("{n} assertions, {n} passed\n")));
    }
}

#[test]
fn problem1_values() {
    let e = run(CORPUS[0].1);
    assert_eq!(e.env.point("M").unwrap().to_string(), "(80:48:17)");
    assert_eq!(e.env.point("N").unwrap().to_string(), "(16:48:13)");
}

#[test]
fn malformed_corpus() {
    let broken = [
        script!("broken_syntax.geo"),
        script!("broken_undeclared.geo"),
        script!("broken_arity.geo"),
    ];
    let pos: Vec<(usize, usize)> = broken
        .iter()
        .map(|(_, src)| {
            let p = parse(src).unwrap_err().pos();
            (p.line, p.col)
        })
        .collect();
    assert_eq!(pos, vec![(2, 16), (4, 24), (4, 18)]);
}

#[test]
fn canonical_printing_round_trips() {
    for (name, src) in CORPUS {
        let s = parse(src).unwrap();
        let printed = s.to_string();
        let again = parse(&printed).unwrap();
        assert_eq!(again.statements, s.statements, "{name}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn evaluation_is_deterministic() {
    for (_, src) in CORPUS {
        assert_eq!(run(src), run(src));
    }
}

#[test]
fn harmonic_point_and_assertion() {
    let e = run("point A = (0,0)\npoint B = (3,0)\npoint C = (1,0)\npoint D = harmonic(A, B; C)\nassert harmonic(A, B; C, D)\nassert harmonic(A, C; B, D)");
    assert_eq!(e.env.point("D").unwrap().to_string(), "(3:0:-1)");
    assert!(e.results[0].passed);
    assert!(!e.results[1].passed);
    assert!(e.results[1].note.is_some());
}

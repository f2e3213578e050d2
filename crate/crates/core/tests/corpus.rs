use w22_core::identities::{builtin_corpus, parse_corpus, verify_corpus, verify_identity};
use w22_core::ParseError;

#[test]
fn builtin_corpus_behaves_as_recorded() {
    let outcomes = verify_corpus(&builtin_corpus()).unwrap();
    assert!(outcomes.len() >= 20);
    for o in &outcomes {
        assert!(o.as_expected(), "{o}");
        assert_eq!(o.passed(), o.expect_pass, "{o}");
    }
    let statuses: Vec<_> = outcomes
        .iter()
        .filter(|o| !o.expect_pass)
        .map(|o| o.status())
        .collect();
    assert_eq!(statuses, ["expected-fail", "expected-fail"]);
}

#[test]
fn anchors_are_reported_per_case() {
    let corpus = builtin_corpus();
    let first = verify_identity(&corpus[0]).unwrap();
    assert_eq!(first.name, "[L-2,I4]=6I2");
    assert_eq!(
        first.to_string(),
        format!("pass: [L-2,I4]=6I2 [{}]", corpus[0].anchor)
    );
}

const CUSTOM: &str = r#"
[[case]]
name = "[L2,L-2]"
anchor = "central term of the Virasoro part"
expr = "(br (L 2) (L -2))"
expected = "(add (scale -4 (L 0)) (scale 1/2 C))"
expect_pass = true

[[case]]
name = "wrong sign"
anchor = "deliberately misprinted"
expr = "(br (L n) (I 0))"
expected = "(scale n (I n))"
expect_pass = false
residual = "(scale -2*n (I n))"
param = "n"
range = [1, 3]
"#;

#[test]
fn custom_corpus_round_trip() {
    let err = parse_corpus(CUSTOM);
    // `2*n` is not an affine index form; the parser rejects it
    assert!(matches!(err, Err(ParseError::Corpus(_))), "{err:?}");

    let fixed = CUSTOM
        .replace("(scale -2*n (I n))", "(scale -n (I n))")
        .replace("(scale n (I n))", "(scale 0 (I n))");
    let cases = parse_corpus(&fixed).unwrap();
    let outcomes = verify_corpus(&cases).unwrap();
    assert_eq!(outcomes[0].status(), "pass");
    // [L(n), I(0)] = -n I(n), so expecting 0 leaves -n I(n)
    assert_eq!(outcomes[1].status(), "expected-fail");
    assert_eq!(outcomes[1].instances.len(), 3);
}

#[test]
fn recorded_residual_must_match_exactly() {
    let src = r#"
[[case]]
name = "off by one"
anchor = "x"
expr = "(br (L 1) (L -1))"
expected = "(scale -1/2 (L 0))"
expect_pass = false
residual = "(scale -1 (L 0))"
"#;
    let outcomes = verify_corpus(&parse_corpus(src).unwrap()).unwrap();
    assert_eq!(outcomes[0].status(), "FAIL");
}

#[test]
fn unexpected_pass_is_flagged() {
    let src = r#"
[[case]]
name = "actually true"
anchor = "x"
expr = "(br (I 1) (I 2))"
expected = "(scale 0 (I 3))"
expect_pass = false
residual = "(I 3)"
"#;
    let outcomes = verify_corpus(&parse_corpus(src).unwrap()).unwrap();
    assert_eq!(outcomes[0].status(), "UNEXPECTED-PASS");
}

#[test]
fn malformed_corpora_are_rejected() {
    let base = r#"
[[case]]
name = "a"
anchor = "b"
expr = "(L 1)"
expected = "(L 1)"
"#;
    let cases = [
        format!("{base}expect_pass = true\nbogus = 1\n"),
        format!("{base}expect_pass = false\n"),
        format!("{base}expect_pass = true\nresidual = \"(L 1)\"\n"),
        format!("{base}expect_pass = true\nparam = \"k\"\n"),
        format!("{base}expect_pass = true\nparam = \"k\"\nrange = [3, 1]\n"),
        base.replace("(L 1)\"\nexpected", "(L k)\"\nexpected") + "expect_pass = true\n",
        base.replace("(L 1)\"\nexpected", "(frob 1)\"\nexpected") + "expect_pass = true\n",
    ];
    for src in &cases {
        assert!(parse_corpus(src).is_err(), "accepted:\n{src}");
    }
    assert!(parse_corpus(&format!("{base}expect_pass = true\n")).is_ok());
}

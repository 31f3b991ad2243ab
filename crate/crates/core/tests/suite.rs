use relalg::report::Status;
use relalg::suite::*;
use relalg::Error;

const ACCEPTANCE: &str = include_str!("../corpus/acceptance.json");
const PLANTED: &str = include_str!("../corpus/planted.json");

const MINIMAL: &str = r#"{
  "monoids": { "Z2": { "elements": ["e", "g"], "unit": "e", "table": [["e", "g"], ["g", "e"]] } },
  "checks": [{ "op": "check_comm_monoid", "monoid": "Z2" }]
}"#;

fn run(text: &str) -> Vec<SuiteReport> {
    run_suite(&parse_suite(text).unwrap(), &RunOptions::default())
}

#[test]
fn minimal_document_runs_one_check() {
    let rows = run(MINIMAL);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].report.id, "check_comm_monoid[0]");
    assert_eq!(rows[0].report.status, Status::Pass);
}

#[test]
fn empty_suite_gives_no_rows() {
    let rows = run("{}");
    assert!(rows.is_empty());
    let human = emit_report(&rows, Format::Human);
    assert_eq!(human.lines().count(), 1);
    let s: StructuredReport =
        serde_json::from_str(&emit_report(&rows, Format::Structured)).unwrap();
    assert_eq!(s.summary.total, 0);
}

#[test]
fn undeclared_codomain_is_a_resolution_error() {
    let text = r#"{
      "monoids": { "T": { "elements": ["e"], "unit": "e", "table": [["e"]] } },
      "morphisms": { "u": { "dom": "T", "cod": "Z9", "map": { "e": "e" } } }
    }"#;
    match parse_suite(text) {
        Err(Error::Resolution { name, .. }) => assert_eq!(name, "Z9"),
        other => panic!("expected a resolution error, got {:?}", other.err()),
    }
}

#[test]
fn undeclared_check_target_is_a_resolution_error() {
    let text = r#"{ "checks": [{ "op": "check_module_laws", "module": "m" }] }"#;
    assert!(matches!(parse_suite(text), Err(Error::Resolution { .. })));
}

#[test]
fn syntax_errors_carry_a_location() {
    let text = "{\n  \"monoids\": {\n    \"T\": [\n}";
    match parse_suite(text) {
        Err(Error::Parse { line, column, .. }) => {
            assert_eq!(line, 4);
            assert!(column >= 1);
        }
        other => panic!("expected a parse error, got {:?}", other.err()),
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let typo = MINIMAL.replace("\"monoid\": \"Z2\"", "\"monoid\": \"Z2\", \"monid\": 1");
    assert!(matches!(parse_suite(&typo), Err(Error::Parse { .. })));
    let top = MINIMAL.replacen('{', "{ \"extra\": true,", 1);
    assert!(matches!(parse_suite(&top), Err(Error::Parse { .. })));
}

#[test]
fn unknown_op_is_rejected() {
    let text = r#"{ "checks": [{ "op": "prove_everything" }] }"#;
    assert!(matches!(parse_suite(text), Err(Error::Parse { .. })));
}

#[test]
fn duplicate_check_ids_are_rejected() {
    let text = MINIMAL.replace(
        "[{ \"op\": \"check_comm_monoid\", \"monoid\": \"Z2\" }]",
        "[{ \"id\": \"a\", \"op\": \"check_comm_monoid\", \"monoid\": \"Z2\" }, { \"id\": \"a\", \"op\": \"check_comm_monoid\", \"monoid\": \"Z2\" }]",
    );
    assert!(matches!(parse_suite(&text), Err(Error::Validation { .. })));
}

#[test]
fn broken_objects_fail_validation_unless_deferred() {
    let text = r#"{
      "monoids": { "L": { "elements": ["1", "a", "b"], "unit": "1",
                          "table": [["1", "a", "b"], ["a", "a", "a"], ["b", "b", "b"]] } }
    }"#;
    assert!(matches!(parse_suite(text), Err(Error::Validation { .. })));
    let deferred = text.replacen('{', "{ \"defer_validation\": true,", 1);
    assert!(parse_suite(&deferred).is_ok());
}

#[test]
fn corpus_round_trips_through_the_schema() {
    for text in [ACCEPTANCE, PLANTED] {
        let doc = parse_document(text).unwrap();
        let again = parse_document(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(doc, again);
    }
}

#[test]
fn acceptance_corpus_passes() {
    let rows = run(ACCEPTANCE);
    let bad: Vec<_> = rows.iter().filter(|r| !r.report.is_ok()).collect();
    assert!(bad.is_empty(), "{}", emit_report(&rows, Format::Human));
    assert!(rows.len() >= 60);
}

#[test]
fn exactly_the_planted_checks_fail() {
    for r in run(PLANTED) {
        let planted = r.report.id.starts_with("planted.");
        assert_eq!(r.report.status == Status::Fail, planted, "{}", r.report.id);
        if planted {
            assert!(r.report.witness.is_some(), "{}", r.report.id);
        }
    }
}

#[test]
fn structured_report_round_trips_and_is_stable() {
    let suite = parse_suite(ACCEPTANCE).unwrap();
    let a = emit_report(
        &run_suite(&suite, &RunOptions::default()),
        Format::Structured,
    );
    let b = emit_report(
        &run_suite(&suite, &RunOptions::default()),
        Format::Structured,
    );
    assert_eq!(a, b);
    let parsed: StructuredReport = serde_json::from_str(&a).unwrap();
    assert_eq!(parsed.summary.total, suite.checks.len());
    assert!(parsed.reports.iter().all(|r| r.report.timing_us.is_none()));
}

#[test]
fn human_report_shows_labelled_witnesses() {
    let out = emit_report(&run(PLANTED), Format::Human);
    let line = out
        .lines()
        .position(|l| l.contains("planted.non_commutative_monoid"))
        .unwrap();
    let block: Vec<&str> = out.lines().skip(line).take(6).collect();
    assert!(block[0].starts_with("FAIL"));
    assert!(block.iter().any(|l| l.contains("a·b differs from b·a")));
    assert!(block.iter().any(|l| l.trim() == "a: a"));
}

#[test]
fn construction_errors_become_error_rows() {
    let text = r#"{
      "monoids": {
        "T": { "elements": ["e"], "unit": "e", "table": [["e"]] },
        "Z2": { "elements": ["e", "g"], "unit": "e", "table": [["e", "g"], ["g", "e"]] }
      },
      "morphisms": {
        "u": { "dom": "T", "cod": "Z2", "map": { "e": "e" } },
        "id": { "dom": "T", "cod": "T", "map": { "e": "e" } }
      },
      "checks": [{ "op": "assoc_iso", "alpha": "u", "beta": "u", "gamma": "id",
                   "modules": { "action": "sets", "max_size": 1 } }],
      "actions": { "sets": { "kind": "self", "base": "sets" } }
    }"#;
    let rows = run(text);
    assert_eq!(rows[0].report.status, Status::Error);
    assert!(rows[0].report.witness.is_some());
}

#[test]
fn budget_precedence() {
    let text = r#"{
      "seed": 3,
      "budget": { "max_module_size": 1, "max_test_morphisms": 50 },
      "checks": [{ "budget": { "max_test_morphisms": 9 }, "op": "check_category_laws", "category": "C" }],
      "categories": { "C": { "builtin": "terminal" } }
    }"#;
    let suite = parse_suite(text).unwrap();
    let mut opts = RunOptions::default();
    let b = opts.budget_for(&suite.document, &suite.checks[0]);
    assert_eq!((b.seed, b.max_module_size, b.max_test_morphisms), (3, 1, 9));
    opts.seed = Some(5);
    opts.max_size = Some(3);
    let b = opts.budget_for(&suite.document, &suite.checks[0]);
    assert_eq!((b.seed, b.max_module_size, b.max_test_morphisms), (5, 3, 9));
}

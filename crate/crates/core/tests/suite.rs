use crossint_core::cross::SearchGuards;
use crossint_core::report::{reports_to_csv, reports_to_json};
use crossint_core::suite::{claim_ids, random_cross_tuple, random_family, instance_rng, run_suite, SuiteConfig, OUT_OF_SCOPE};
use crossint_core::{alpha, is_cross_t_intersecting, Error, Quantity};

fn comparable(cfg: &SuiteConfig) -> Vec<serde_json::Value> {
    run_suite(cfg).unwrap().iter().map(|r| r.comparable_json()).collect()
}

#[test]
fn powerset_beta_claim_gives_three_passing_reports() {
    let reps = run_suite(&SuiteConfig::with_claims(&["thm-3.6"])).unwrap();
    assert_eq!(reps.len(), 3);
    assert!(reps.iter().all(|r| r.passed));
    assert!(reps.iter().all(|r| r.get("beta") == Some(&Quantity::from(crossint_core::Rational::new(1, 2)))));
}

#[test]
fn line_claim_restricted_to_p3() {
    let mut cfg = SuiteConfig::with_claims(&["thm-5.4"]);
    cfg.line_p = Some(3);
    let reps = run_suite(&cfg).unwrap();
    // t in {1,2}, k in {2,3}
    assert_eq!(reps.len(), 4);
    assert!(reps.iter().all(|r| r.passed), "{reps:?}");
    assert!(reps.iter().all(|r| r.instance.contains("p=3")));
}

#[test]
fn unknown_and_out_of_scope_claims() {
    let e = run_suite(&SuiteConfig::with_claims(&["unknown"])).unwrap_err();
    assert!(matches!(e, Error::UnknownClaim(_)));
    assert!(e.to_string().contains("unknown claim id"));
    for (id, _) in OUT_OF_SCOPE {
        let e = run_suite(&SuiteConfig::with_claims(&[*id])).unwrap_err();
        assert_eq!(e.code(), "E_OUT_OF_SCOPE");
    }
}

#[test]
fn guard_overrides_are_validated() {
    let mut cfg = SuiteConfig::with_claims(&["thm-3.6"]);
    cfg.guards.labeling_log2 = 60;
    assert_eq!(run_suite(&cfg).unwrap_err().code(), "E_GUARD");
    let mut cfg = SuiteConfig::with_claims(&["thm-5.4"]);
    cfg.line_p = Some(5);
    assert_eq!(run_suite(&cfg).unwrap_err().code(), "E_GUARD");
}

#[test]
fn guard_violations_are_reported_per_claim() {
    let mut cfg = SuiteConfig::with_claims(&["thm-3.6", "ex-3.3"]);
    cfg.beta_guard = 6;
    let reps = run_suite(&cfg).unwrap();
    let n4 = reps.iter().find(|r| r.claim_id == "thm-3.6" && r.instance.contains("n=4")).unwrap();
    assert!(!n4.passed);
    assert_eq!(n4.get("error_code"), Some(&Quantity::from("E_GUARD")));
    assert!(reps.iter().filter(|r| r.claim_id == "thm-3.6").count() == 3);
    assert!(reps.iter().any(|r| r.claim_id == "ex-3.3" && r.passed));
    let mut cfg = SuiteConfig::with_claims(&["thm-5.4"]);
    cfg.guards = SearchGuards { labeling_log2: 4, ..SearchGuards::default() };
    let reps = run_suite(&cfg).unwrap();
    assert!(reps.iter().all(|r| !r.passed));
}

#[test]
fn reports_are_sorted_and_cover_every_claim() {
    let reps = run_suite(&SuiteConfig::default()).unwrap();
    let keys: Vec<_> = reps.iter().map(|r| (r.claim_id.clone(), r.instance.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for id in claim_ids() {
        assert!(reps.iter().any(|r| r.claim_id == id), "no report for {id}");
    }
    for r in &reps {
        assert!(r.passed, "{} {} {:?}", r.claim_id, r.instance, r.failures);
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let mut cfg = SuiteConfig::with_claims(&["thm-1.1", "thm-1.2", "lem-2.1", "lem-5.3", "symmetry"]);
    cfg.threads = 1;
    let one = comparable(&cfg);
    cfg.threads = 4;
    let four = comparable(&cfg);
    assert_eq!(one, four);
    let reps = run_suite(&cfg).unwrap();
    let a: Vec<_> = reps.iter().map(|r| r.comparable_json()).collect();
    assert_eq!(a, four);
    // The serialized comparable payload is bit-stable as well.
    let strip = |s: String| s.lines().filter(|l| !l.contains("runtime_ms")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(reports_to_json(&reps)), strip(reports_to_json(&run_suite(&cfg).unwrap())));
    assert!(reports_to_csv(&reps).unwrap().starts_with("claim_id,instance,passed"));
}

#[test]
fn seed_changes_random_instances() {
    let mut cfg = SuiteConfig::with_claims(&["thm-1.2"]);
    cfg.random_instances = 6;
    let a = comparable(&cfg);
    cfg.seed += 1;
    assert_ne!(a, comparable(&cfg));
}

#[test]
fn suite_writes_its_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = SuiteConfig::with_claims(&["ex-4.6"]);
    cfg.output = Some(dir.path().join("out.json"));
    let reps = run_suite(&cfg).unwrap();
    let text = std::fs::read_to_string(dir.path().join("out.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), reps.len());
    assert_eq!(v[0]["passed"], serde_json::json!(true));
}

#[test]
fn random_helpers_respect_their_contracts() {
    for i in 0..200 {
        let mut rng = instance_rng(7, i);
        let t = 1 + (i as usize) % 2;
        let f = random_family(&mut rng, 6, 9, t);
        assert!(f.len() <= 9 && f.ground_size() <= 6 && alpha(&f).unwrap() >= t);
        let tuple = random_cross_tuple(&mut rng, 6, 9, t);
        assert!(is_cross_t_intersecting(&tuple, t));
    }
}

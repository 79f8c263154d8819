use abelmax_core::catalog::{build_named, default_catalog, GroupSpec};
use abelmax_core::numtheory::g_of;
use abelmax_core::verify::{
    analyze_specs, classify_large_prime_case, equality_scan, flagged_ids, large_primes, run_suite,
    theorem_a_check, two_large_prime_scan, CheckStatus, LargePrimeCase, Subject, Suite, Theorem,
    VerificationReport, VerifyOptions,
};
use proptest::prelude::*;

fn subject(s: &str) -> Subject {
    let spec: GroupSpec = s.parse().unwrap();
    Subject::analyze(spec.id(), build_named(&spec).unwrap()).unwrap()
}

fn subjects(specs: &[&str]) -> Vec<Subject> {
    specs.iter().map(|s| subject(s)).collect()
}

#[test]
fn theorem_a_on_mathieu_11() {
    let c = theorem_a_check(&subject("file:groups/m11.gens"));
    assert_eq!(c.status, CheckStatus::Pass);
    assert_eq!(c.detail_value("m"), Some("11"));
    assert_eq!(c.detail_value("g_m"), Some("665280"));
    assert_eq!(c.detail_value("quotient"), Some("84"));
}

#[test]
fn large_prime_reports() {
    let psl13 = large_primes(&subject("psl2:13"));
    assert_eq!(psl13.m, 13);
    assert_eq!(psl13.large_primes, vec![7, 13]);
    let pgl13 = large_primes(&subject("pgl2:13"));
    assert_eq!(pgl13.large_primes, vec![13]);
}

#[test]
fn two_prime_scan_subsets() {
    let r = two_large_prime_scan(&subjects(&["sym:3", "alt:5", "sym:5", "pgl2:13"])).unwrap();
    assert_eq!(flagged_ids(&r), ["sym:3", "alt:5"]);
    assert!(r.ok());
}

#[test]
fn equality_scan_records_the_open_order_64_step() {
    let r = equality_scan(&subjects(&["sym:4", "alt:5", "sym:6"])).unwrap();
    assert!(r.ok());
    let equal: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| c.detail_value("equal") == Some("1"))
        .map(|c| c.group_id.as_str())
        .collect();
    assert_eq!(equal, ["sym:4"]);
    let open = r.checks.last().unwrap();
    assert_eq!(open.status, CheckStatus::Unverified);
    assert!(!open.passed);
    assert_eq!(r.summary.unverified, 1);
    let s6 = &r.checks[2];
    assert_eq!(s6.detail_value("g_m"), Some(g_of(9).to_string().as_str()));
}

#[test]
fn lemma_suite_covers_sylows_and_explicit_pgroups() {
    let r = run_suite(Suite::Lemma, &subjects(&["sym:8", "sym:6"])).unwrap();
    assert!(r.ok());
    assert!(r.checks.iter().any(|c| c.group_id == "sym:8/sylow2"
        && c.theorem == Theorem::Lemma
        && c.detail_value("k") == Some("7")));
    assert!(r
        .checks
        .iter()
        .any(|c| c.group_id == "sym:6/sylow3" && c.detail_value("s") == Some("2")));
    assert!(r.checks.iter().any(|c| c.group_id == "dihedral:16"));
    assert_eq!(
        r.checks
            .iter()
            .filter(|c| c.theorem == Theorem::Burnside)
            .count(),
        r.checks
            .iter()
            .filter(|c| c.theorem == Theorem::Lemma)
            .count()
    );
}

#[test]
fn classification_is_consistent_across_the_catalog() {
    let options = VerifyOptions {
        workers: 2,
        ..VerifyOptions::default()
    };
    let all = analyze_specs(&default_catalog(), &options).unwrap();
    for s in &all {
        let report = classify_large_prime_case(s).unwrap();
        assert!(report.large_primes.len() <= 2, "{}", s.id);
        for &p in &report.large_primes {
            assert!(2 * p > s.m && s.order().exponent(p) > 0);
        }
        assert_eq!(
            report.case == LargePrimeCase::None,
            report.large_primes.is_empty(),
            "{}",
            s.id
        );
        assert_ne!(report.case, LargePrimeCase::Unclassified, "{}", s.id);
        let order = s.order().to_u64().unwrap();
        if report.case == LargePrimeCase::Case1Frobenius {
            let p = report.large_primes[0];
            assert_eq!(s.group.sylow_subgroup(p).unwrap().order(), p);
            assert_eq!((p - 1) % (order / p), 0, "{}", s.id);
        }
        if report.case == LargePrimeCase::Case4AlmostSimple {
            assert!(!s.group.is_abelian());
        }
        // m(G) >= largest element order and >= |Z(G)|, with equality to |G|
        // exactly for abelian groups
        assert!(s.m >= s.group.exponent_max_order().unwrap() as u64);
        assert!(s.m >= s.group.center().unwrap().order());
        assert_eq!(s.m == order, s.group.is_abelian());
    }
}

#[test]
fn report_serializations_agree() {
    let r = run_suite(
        Suite::All,
        &subjects(&["sym:3", "sym:4", "alt:5", "frobenius:7:3"]),
    )
    .unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), r.checks.len());
    assert_eq!(v["summary"]["total"], r.checks.len());
    let csv = r.to_csv();
    assert_eq!(csv.lines().count(), r.checks.len() + 1);
    let text = r.to_text();
    assert_eq!(text.lines().count(), r.checks.len() + 1);
    assert!(text.ends_with(&format!("{}\n", r.summary_line())));
    let again: VerificationReport = run_suite(
        Suite::All,
        &subjects(&["sym:3", "sym:4", "alt:5", "frobenius:7:3"]),
    )
    .unwrap();
    assert_eq!(again, r);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// |G| divides g(m(G)) for random 2-generated subgroups of S7.
    #[test]
    fn divisibility_holds_on_random_groups(
        a in Just((0..7u32).collect::<Vec<_>>()).prop_shuffle(),
        b in Just((0..7u32).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        use abelmax_core::permgroup::{PermGroup, Permutation};
        let g = PermGroup::new(vec![
            Permutation::from_images(a).unwrap(),
            Permutation::from_images(b).unwrap(),
        ]).unwrap();
        let s = Subject::analyze("random", g).unwrap();
        prop_assert_eq!(theorem_a_check(&s).status, CheckStatus::Pass);
        let goh = run_suite(Suite::Goh, std::slice::from_ref(&s)).unwrap();
        prop_assert!(goh.ok(), "{:?}", goh.checks);
    }
}

use pointproc::verify::{run_suite, Suite};

#[test]
fn every_suite_passes_at_the_default_seed() {
    for s in Suite::ALL {
        let r = run_suite(s, 1).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{s}: {c:?}");
        }
        assert!(r.passed);
    }
}

#[test]
fn bag_laws_cover_the_enumeration() {
    let r = run_suite(Suite::BagLaws, 7).unwrap();
    let get = |name: &str| r.checks.iter().find(|c| c.name == name).unwrap();
    assert_eq!(get("bag union is associative").instances, 200);
    assert!(get("union-count preimage matches composition sums").instances > 1000);
    assert!(get("four equal points split five ways").passed);
}

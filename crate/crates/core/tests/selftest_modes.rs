use vertexlink::selftest::{selftest, Mutation};

#[test]
fn same_seed_same_report() {
    let a = selftest(7, None).unwrap();
    let b = selftest(7, None).unwrap();
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn mutations_break_the_matching_checks() {
    let zeroed = selftest(2024, Some(Mutation::ZeroREntry)).unwrap();
    assert!(!zeroed.line(1).unwrap().passed, "axioms should notice a zeroed R entry");
    let wrong = selftest(2024, Some(Mutation::WrongEigenvalue)).unwrap();
    assert!(!wrong.line(5).unwrap().passed, "minimal polynomial should notice");
    assert!(wrong.line(1).unwrap().passed);
}

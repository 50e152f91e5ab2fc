use super::*;
use proptest::prelude::*;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("raycap").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    let mut s = String::from_utf8(out).unwrap();
    s.push_str(&String::from_utf8(err).unwrap());
    (code, s)
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    let (code, s) = call(&v);
    (code, serde_json::from_str(s.trim()).unwrap_or_else(|e| panic!("{e}: {s}")))
}

#[test]
fn rayclass_examples() {
    let (c, v) = json(&["rayclass", "--field", "Q", "--mod", "5"]);
    assert_eq!((c, v["invariants"].clone()), (0, serde_json::json!([2])));
    let (c, v) = json(&["rayclass", "--d", "-1", "--mod", "3"]);
    assert_eq!((c, v["invariants"].clone()), (0, serde_json::json!([2])));
    assert_eq!(v["identity"]["holds"], true);
    let (c, v) = json(&["rayclass", "--d", "2", "--mod", "1"]);
    assert_eq!((c, v["order"].clone()), (0, serde_json::json!(1)));
    assert_eq!(call(&["rayclass", "--d", "2", "--mod", "4"]).0, EXIT_INVALID);
    assert_eq!(call(&["rayclass", "--d", "8"]).0, EXIT_INVALID);
    assert_eq!(call(&["rayclass"]).0, EXIT_INVALID);
    assert_eq!(call(&["frobnicate"]).0, EXIT_INVALID);
}

#[test]
fn search_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let cs = cert.to_str().unwrap();
    let (c, v) = json(&["search", "--d", "34", "--mod", "1", "--class", "auto-2", "--l", "2", "--n", "1", "--bound", "1000000", "--out", cs]);
    assert_eq!(c, EXIT_OK);
    assert_eq!(v["outcome"]["status"], "found");
    assert_eq!(v["outcome"]["certificate"]["p"], 5);
    let file = CertificateFile::from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert!(file.stamp_ok());

    let (c, v) = json(&["verify", cs]);
    assert_eq!(c, EXIT_OK, "{v}");
    assert_eq!(v["report"]["status"], "success");
    assert!(v["report"]["generator"].is_array());

    // editing without re-stamping is caught by the hash
    let mut bad = file.clone();
    bad.certificate.p = 13;
    std::fs::write(&cert, bad.to_json()).unwrap();
    let (c, v) = json(&["verify", cs]);
    assert_eq!((c, v["hash_ok"].clone()), (EXIT_FAIL, serde_json::json!(false)));
    bad.stamp();
    std::fs::write(&cert, bad.to_json()).unwrap();
    let (c, v) = json(&["verify", cs]);
    assert_eq!(c, EXIT_FAIL);
    assert!(v["report"]["reason"].as_str().unwrap().contains("condition re-check"), "{v}");

    let mut composite = file.clone();
    composite.certificate.n = 2;
    composite.stamp();
    std::fs::write(&cert, composite.to_json()).unwrap();
    let (c, v) = json(&["verify", cs]);
    assert_eq!((c, v["report"]["status"].clone()), (EXIT_UNVERIFIED, serde_json::json!("unverified_composite")));

    std::fs::write(&cert, file.to_json()).unwrap();
    assert_eq!(call(&["verify", cs, "--update"]).0, EXIT_OK);
    let updated = CertificateFile::from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert!(updated.stamp_ok());
    assert_eq!(updated.verification.unwrap().status, crate::biquad::VerifyStatus::Success);
}

#[test]
fn search_exit_codes() {
    let (c, v) = json(&["search", "--d", "34", "--bound", "3"]);
    assert_eq!((c, v["outcome"]["status"].clone()), (EXIT_NOT_FOUND, serde_json::json!("not_found")));
    let (c, v) = json(&["search", "--d", "3", "--class", "trivial", "--bound", "100"]);
    assert_eq!((c, v["outcome"]["certificate"]["p"].clone()), (EXIT_OK, serde_json::json!(13)));
    let (c, v) = json(&["search", "--d", "34", "--n", "2", "--h", "1", "--bound", "100"]);
    assert_eq!((c, v["outcome"]["status"].clone()), (EXIT_POWER_BLOCKED, serde_json::json!("power_blocked")));
    assert_eq!(call(&["search", "--d", "-5"]).0, EXIT_INVALID);
    assert_eq!(call(&["search", "--d", "34", "--class", "1,1"]).0, EXIT_INVALID);
}

#[test]
fn ambig_examples() {
    let (c, v) = json(&["ambig", "--L-disc", "-20", "--mod", "3"]);
    assert_eq!((c, v["equal"].clone()), (0, serde_json::json!(true)));
    let (c, v) = json(&["ambig", "--L-disc", "8", "--mod", "1"]);
    assert_eq!((c, v["formula"].clone(), v["direct"].clone()), (0, serde_json::json!(1), serde_json::json!(1)));
    let (c, v) = json(&["ambig", "--biquad", "34,5"]);
    assert_eq!((c, v["equal"].clone()), (0, serde_json::json!(true)));
    assert_eq!(call(&["ambig", "--L-disc", "3"]).0, EXIT_INVALID);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--json", "--cache-dir", d, "rayclass", "--d", "-14", "--mod", "5"];
    let cold = call(&args);
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 1);
    let warm = call(&args);
    assert_eq!(cold, warm);
    assert_eq!(call(&["--json", "rayclass", "--d", "-14", "--mod", "5"]), cold);
    let s = ["--json", "--cache-dir", d, "search", "--d", "15", "--bound", "1000"];
    assert_eq!(call(&s), call(&s));
}

#[test]
fn selftest_passes() {
    let (c, s) = call(&["--seed", "7", "selftest"]);
    assert_eq!(c, EXIT_OK, "{s}");
    assert_eq!(call(&["--seed", "7", "--json", "selftest"]), call(&["--seed", "7", "--json", "selftest"]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn reports_round_trip(d in -60i64..60, mi in 0usize..4) {
        let m = [1u64, 3, 5, 7][mi];
        prop_assume!(d != 0 && d != 1 && crate::exactmath::is_squarefree(d));
        let (code, s) = call(&["--json", "rayclass", "--d", &d.to_string(), "--mod", &m.to_string()]);
        prop_assert_eq!(code, 0);
        let r: RayClassReport = serde_json::from_str(s.trim()).unwrap();
        let again = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(again.as_str(), s.trim());
        let r2: RayClassReport = serde_json::from_str(&again).unwrap();
        prop_assert_eq!(r, r2);
    }
}

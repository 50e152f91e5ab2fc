use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use raycap_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(raycap_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn field_and_rayclass_handles() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(raycap_field_new(-1, &mut k), RaycapStatus::Ok);
        let mut disc = 0;
        assert_eq!(raycap_field_disc(k, &mut disc), RaycapStatus::Ok);
        assert_eq!(disc, -4);
        let mut g = ptr::null_mut();
        assert_eq!(raycap_rayclass_new(k, 3, &mut g), RaycapStatus::Ok);
        let (mut order, mut rank, mut inv) = (0u64, 0usize, 0u64);
        assert_eq!(raycap_rayclass_order(g, &mut order), RaycapStatus::Ok);
        assert_eq!(raycap_rayclass_rank(g, &mut rank), RaycapStatus::Ok);
        assert_eq!(raycap_rayclass_invariant(g, 0, &mut inv), RaycapStatus::Ok);
        assert_eq!((order, rank, inv), (2, 1, 2));
        assert_eq!(raycap_rayclass_invariant(g, 1, &mut inv), RaycapStatus::InvalidInput);
        raycap_rayclass_free(g);
        assert_eq!(raycap_rayclass_new(k, 4, &mut g), RaycapStatus::InvalidInput);
        raycap_field_free(k);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(raycap_field_new(8, &mut k), RaycapStatus::InvalidInput);
        assert!(!last_error().is_empty());
        assert_eq!(raycap_field_new(2, ptr::null_mut()), RaycapStatus::NullPointer);
        let mut order = 0;
        assert_eq!(raycap_rayclass_order(ptr::null(), &mut order), RaycapStatus::NullPointer);
        let sel = CString::new("auto-2").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(raycap_search(34, 1, sel.as_ptr(), 2, 1, -1, 3, 1, &mut c), RaycapStatus::NotFound);
        assert_eq!(raycap_search(34, 1, sel.as_ptr(), 2, 2, 1, 100, 1, &mut c), RaycapStatus::PowerBlocked);
        assert!(c.is_null());
        raycap_field_free(ptr::null_mut());
        raycap_certificate_free(ptr::null_mut());
        raycap_string_free(ptr::null_mut());
    }
}

#[test]
fn certificate_round_trip() {
    unsafe {
        let sel = CString::new("auto-2").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(raycap_search(34, 1, sel.as_ptr(), 2, 1, -1, 1_000_000, 2, &mut c), RaycapStatus::Ok);
        let mut p = 0;
        assert_eq!(raycap_certificate_prime(c, &mut p), RaycapStatus::Ok);
        assert_eq!(p, 5);
        let mut json = ptr::null_mut();
        assert_eq!(raycap_certificate_to_json(c, &mut json), RaycapStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        let mut c2 = ptr::null_mut();
        assert_eq!(raycap_certificate_from_json(json, &mut c2), RaycapStatus::Ok);
        raycap_string_free(json);
        let mut rep = ptr::null_mut();
        assert_eq!(raycap_verify(c2, 200_000, &mut rep), RaycapStatus::Ok);
        assert!(CStr::from_ptr(rep).to_str().unwrap().contains("\"success\""));
        raycap_string_free(rep);

        let tampered = CString::new(text.replacen("\"p\": 5", "\"p\": 13", 1)).unwrap();
        let mut c3 = ptr::null_mut();
        assert_eq!(raycap_certificate_from_json(tampered.as_ptr(), &mut c3), RaycapStatus::VerifyFailed);
        raycap_certificate_free(c);
        raycap_certificate_free(c2);
    }
}

#[test]
fn ambiguous_counts() {
    let (mut f, mut d) = (0, 0);
    unsafe {
        assert_eq!(raycap_ambig_quadratic(-5, 3, &mut f, &mut d), RaycapStatus::Ok);
    }
    assert_eq!(f, d);
}

#[test]
fn header_declares_the_api() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/raycap.h")).unwrap();
    for name in [
        "raycap_last_error",
        "raycap_field_new",
        "raycap_rayclass_new",
        "raycap_search",
        "raycap_verify",
        "raycap_certificate_from_json",
        "RAYCAP_STATUS_NULL_POINTER",
        "typedef struct RaycapCertificate RaycapCertificate",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compile and run a C program against the header and the static library.
#[test]
fn c_program_links() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libraycap_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use binodet_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    binodet_string_free(s);
    out
}

#[test]
fn worked_example_through_the_abi() {
    let (lambda, mu) = ([3u32, 3, 3], [2u32, 2, 1]);
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(binodet_compute(lambda.as_ptr(), 3, mu.as_ptr(), 3, &mut r), BinodetStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(binodet_report_total(r, &mut s), BinodetStatus::Ok);
        assert_eq!(take(s), "54");
        assert_eq!(binodet_report_partial(r, 2, &mut s), BinodetStatus::Ok);
        assert_eq!(take(s), "12");
        assert_eq!(binodet_report_partial(r, 99, &mut s), BinodetStatus::OutOfRange);

        let n = binodet_report_term_count(r);
        assert_eq!(n, 40);
        let mut entries = [0i64; 3];
        let mut len = 0usize;
        let mut dets = Vec::new();
        for idx in 0..n {
            assert_eq!(binodet_report_term(r, idx, entries.as_mut_ptr(), 3, &mut len, &mut s), BinodetStatus::Ok);
            assert_eq!(len, 3);
            // entries are a11, a21, a22 = k, i, j
            if entries[2] + entries[0] == 2 {
                dets.push(take(s));
            } else {
                binodet_string_free(s);
            }
        }
        assert_eq!(dets, ["0", "3", "6", "3", "3", "-3"]);
        assert_eq!(binodet_report_term(r, n, entries.as_mut_ptr(), 3, &mut len, &mut s), BinodetStatus::OutOfRange);

        assert_eq!(binodet_report_json(r, 2, &mut s), BinodetStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["total"], "12");
        binodet_report_free(r);
    }
}

#[test]
fn errors_are_reported() {
    let mut r = ptr::null_mut();
    unsafe {
        let l = CString::new("3,4").unwrap();
        let m = CString::new("1,1").unwrap();
        assert_eq!(binodet_compute_str(l.as_ptr(), m.as_ptr(), &mut r), BinodetStatus::InvalidInput);
        let msg = CStr::from_ptr(binodet_last_error()).to_str().unwrap();
        assert!(msg.contains("3,4") || msg.contains("decreasing"), "{msg}");
        let l = CString::new("3,3").unwrap();
        let m = CString::new("1").unwrap();
        assert_eq!(binodet_compute_str(l.as_ptr(), m.as_ptr(), &mut r), BinodetStatus::InvalidInput);
        assert_eq!(binodet_compute_str(ptr::null(), m.as_ptr(), &mut r), BinodetStatus::NullPointer);
        assert!(r.is_null());
        binodet_report_free(ptr::null_mut());
        binodet_string_free(ptr::null_mut());
    }
}

#[test]
fn signed_count_of_a_crossing_pair() {
    // A1 = (1,2), A2 = (0,3), B1 = (2,2), B2 = (1,1): one disjoint tuple for
    // each permutation, so they cancel
    let starts = [1i64, 2, 0, 3];
    let ends = [2i64, 2, 1, 1];
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(binodet_signed_count(starts.as_ptr(), ends.as_ptr(), 2, &mut s), BinodetStatus::Ok);
        let lgv = binodet::determinant::determinant(&binodet::determinant::build_matrix_path_counts(
            &binodet::lattice::PointConfiguration::new(
                vec![(1, 2).into(), (0, 3).into()],
                vec![(2, 2).into(), (1, 1).into()],
            ),
        ));
        assert_eq!(lgv, 0.into());
        assert_eq!(take(s), "0");
    }
}

fn target_dir() -> PathBuf {
    // CARGO_TARGET_TMPDIR is <target>/tmp
    Path::new(env!("CARGO_TARGET_TMPDIR")).parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/binodet.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 10);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target_dir().join(profile).join("libbinodet_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let dir = env!("CARGO_MANIFEST_DIR");
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("binodet_smoke");
    let status = Command::new("cc")
        .args([&format!("{dir}/tests/c/smoke.c"), "-I", &format!("{dir}/include")])
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke test exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

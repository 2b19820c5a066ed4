use std::ffi::{CStr, CString};
use std::ptr;

use borsuk_ulam_ffi::*;

fn last_error() -> String {
    let p = bu_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn matrix(rows: usize, entries: &[i64]) -> *mut BuMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { bu_matrix_new(rows, entries.as_ptr(), &mut m) }, BuStatus::Ok);
    m
}

fn analyze(m: *const BuMatrix) -> *mut BuAnalysis {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { bu_analysis_run(m, 1024, false, &mut a) }, BuStatus::Ok);
    a
}

fn summary(a: *const BuAnalysis, i: usize) -> BuClassSummary {
    let mut s = BuClassSummary::default();
    assert_eq!(unsafe { bu_analysis_class(a, i, &mut s) }, BuStatus::Ok);
    s
}

#[test]
fn antipodal_and_stolz() {
    for (entry, index, cup, half) in [(-2, 3, 1, 1), (-4, 2, 0, 0)] {
        let m = matrix(1, &[entry]);
        let a = analyze(m);
        unsafe {
            assert_eq!(bu_analysis_class_count(a), 1);
            assert_eq!(bu_analysis_kernel_dim(a), 1);
            assert!(!bu_analysis_truncated(a));
        }
        let s = summary(a, 0);
        assert_eq!((s.index, s.triple_cup, s.self_linking_half), (index, cup, half));
        assert!(!s.beta_vanishes);
        unsafe {
            bu_analysis_free(a);
            bu_matrix_free(m);
        }
    }
}

#[test]
fn class_bits_and_json() {
    let m = matrix(2, &[2, 0, 0, 2]);
    let a = analyze(m);
    unsafe {
        assert_eq!(bu_matrix_size(m), 2);
        assert_eq!(bu_analysis_class_count(a), 3);
        let mut bits = [9u8; 2];
        assert_eq!(bu_analysis_class_bits(a, 2, bits.as_mut_ptr(), 2), BuStatus::Ok);
        assert_eq!(bits, [1, 1]);
        assert_eq!(summary(a, 2).index, 2);
        assert_eq!(bu_analysis_class_bits(a, 2, bits.as_mut_ptr(), 1), BuStatus::OutOfRange);
        let mut s = BuClassSummary::default();
        assert_eq!(bu_analysis_class(a, 3, &mut s), BuStatus::OutOfRange);
        assert!(last_error().contains("out of range"));

        let json = bu_analysis_to_json(a);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        bu_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["k"], 2);
        assert_eq!(v["classes"][2]["index"], 2);

        let s = bu_matrix_to_string(m);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "[[2,0],[0,2]]");
        bu_string_free(s);
        bu_analysis_free(a);
        bu_matrix_free(m);
    }
}

#[test]
fn lens_and_json_inputs() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(bu_matrix_lens(10, 3, &mut m), BuStatus::Ok);
        let a = analyze(m);
        assert_eq!(summary(a, 0).index, 3);
        bu_analysis_free(a);
        bu_matrix_free(m);

        assert_eq!(bu_matrix_lens(4, 2, &mut m), BuStatus::InvalidInput);
        assert!(last_error().contains("L(4,2)") || last_error().contains("4"));

        let doc = CString::new(r#"{"preset": "lens", "p": 12, "q": 5}"#).unwrap();
        assert_eq!(bu_matrix_from_json(doc.as_ptr(), &mut m), BuStatus::Ok);
        let a = analyze(m);
        assert_eq!(summary(a, 0).index, 2);
        bu_analysis_free(a);
        bu_matrix_free(m);

        let bad = CString::new(r#"{"matrix": [[0, 1], [2, 0]]}"#).unwrap();
        assert_eq!(bu_matrix_from_json(bad.as_ptr(), &mut m), BuStatus::Parse);
        assert!(last_error().contains("asymmetric"));
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(bu_matrix_new(2, [0i64, 1, 2, 0].as_ptr(), &mut m), BuStatus::InvalidInput);
        assert_eq!(bu_matrix_new(1, ptr::null(), &mut m), BuStatus::NullPointer);
        assert_eq!(bu_matrix_from_json(ptr::null(), &mut m), BuStatus::NullPointer);
        let not_utf8 = [0xffu8, 0];
        assert_eq!(bu_matrix_from_json(not_utf8.as_ptr().cast(), &mut m), BuStatus::InvalidUtf8);

        let zeros = matrix(3, &[0; 9]);
        let mut a = ptr::null_mut();
        assert_eq!(bu_analysis_run(zeros, 3, false, &mut a), BuStatus::CapExceeded);
        assert_eq!(bu_analysis_run(zeros, 3, true, &mut a), BuStatus::Ok);
        assert!(bu_analysis_truncated(a));
        assert_eq!(bu_analysis_class_count(a), 3);
        bu_analysis_free(a);
        bu_matrix_free(zeros);

        assert_eq!(bu_analysis_run(ptr::null(), 3, true, &mut a), BuStatus::NullPointer);
        bu_matrix_free(ptr::null_mut());
        bu_analysis_free(ptr::null_mut());
        bu_string_free(ptr::null_mut());
        assert_eq!(bu_analysis_class_count(ptr::null()), 0);
    }
}

#[test]
fn empty_matrix_is_s3() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(bu_matrix_new(0, ptr::null(), &mut m), BuStatus::Ok);
        let a = analyze(m);
        assert_eq!(bu_analysis_class_count(a), 0);
        bu_analysis_free(a);
        bu_matrix_free(m);
    }
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(bu_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

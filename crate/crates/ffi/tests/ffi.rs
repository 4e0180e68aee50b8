use std::ffi::{CStr, CString};
use std::ptr;

use galdual_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gd_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn structure_automorphisms() {
    let json = c(r#"{"domain_size": 3, "relations": [{"name": "P", "arity": 1, "tuples": [[0]]}]}"#);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gd_structure_from_json(json.as_ptr(), &mut s), GdStatus::Ok);
        assert_eq!(gd_structure_size(s), 3);
        let mut g = ptr::null_mut();
        assert_eq!(gd_aut(s, &mut g), GdStatus::Ok);
        assert_eq!(gd_permset_len(g), 2);
        assert_eq!(gd_permset_degree(g), 3);
        let mut images = [0usize; 3];
        assert_eq!(gd_permset_element(g, 1, images.as_mut_ptr(), 3), GdStatus::Ok);
        assert_eq!(images, [0, 2, 1]);
        assert_eq!(gd_permset_element(g, 1, images.as_mut_ptr(), 2), GdStatus::BufferTooSmall);
        assert_eq!(gd_permset_element(g, 5, images.as_mut_ptr(), 3), GdStatus::InvalidInput);
        let mut text = ptr::null_mut();
        assert_eq!(gd_structure_to_json(s, &mut text), GdStatus::Ok);
        assert!(CStr::from_ptr(text).to_str().unwrap().contains("\"domain_size\": 3"));
        gd_string_free(text);
        gd_permset_free(g);
        gd_structure_free(s);
    }
}

#[test]
fn closures_of_cyclic_group() {
    let json = c(r#"{"domain_size": 3, "permutations": [[1, 2, 0]]}"#);
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(gd_permset_from_json(json.as_ptr(), &mut h), GdStatus::Ok);
        let mut g = ptr::null_mut();
        assert_eq!(gd_group_generate(h, &mut g), GdStatus::Ok);
        assert_eq!(gd_permset_len(g), 3);
        let mut k1 = ptr::null_mut();
        assert_eq!(gd_k_closure(h, 1, &mut k1), GdStatus::Ok);
        assert_eq!(gd_permset_len(k1), 6);
        let mut k2 = ptr::null_mut();
        assert_eq!(gd_k_closure(h, 2, &mut k2), GdStatus::Ok);
        assert_eq!(gd_permset_len(k2), 3);
        for p in [h, g, k1, k2] {
            gd_permset_free(p);
        }
    }
}

#[test]
fn sim_equiv_labels() {
    let json = c(r#"{"domain_size": 3, "relations": [{"name": "P", "arity": 1, "tuples": [[0], [1]]}]}"#);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gd_structure_from_json(json.as_ptr(), &mut s), GdStatus::Ok);
        let mut labels = [9usize; 3];
        assert_eq!(gd_sim_equiv(s, labels.as_mut_ptr(), 3), GdStatus::Ok);
        assert_eq!(labels[0], labels[1]);
        assert_ne!(labels[0], labels[2]);
        assert_eq!(gd_sim_equiv(s, labels.as_mut_ptr(), 1), GdStatus::BufferTooSmall);
        gd_structure_free(s);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut s = ptr::null_mut();
        let bad = c("{\"domain_size\": 2,\n \"bogus\": true}");
        assert_eq!(gd_structure_from_json(bad.as_ptr(), &mut s), GdStatus::ParseError);
        assert!(last_error().contains("line 2"), "{}", last_error());
        assert!(s.is_null());
        let invalid = c(r#"{"domain_size": 2, "relations": [{"name": "P", "arity": 1, "tuples": [[5]]}]}"#);
        assert_eq!(gd_structure_from_json(invalid.as_ptr(), &mut s), GdStatus::InvalidInput);
        assert_eq!(gd_structure_from_json(ptr::null(), &mut s), GdStatus::NullPointer);
        assert_eq!(gd_aut(ptr::null(), ptr::null_mut()), GdStatus::NullPointer);
        let big = c(r#"{"domain_size": 12}"#);
        assert_eq!(gd_structure_from_json(big.as_ptr(), &mut s), GdStatus::Ok);
        let mut g = ptr::null_mut();
        assert_eq!(gd_aut(s, &mut g), GdStatus::LimitExceeded);
        gd_structure_free(s);
        assert_eq!(gd_structure_size(ptr::null()), 0);
        assert!(!CStr::from_ptr(gd_version()).to_str().unwrap().is_empty());
    }
}

#[test]
fn law_checks_report_json() {
    unsafe {
        let mut report = ptr::null_mut();
        let law = c("mcgee");
        assert_eq!(gd_check_law_json(law.as_ptr(), ptr::null(), 3, 0, 0, &mut report), GdStatus::Ok);
        let text = CStr::from_ptr(report).to_str().unwrap().to_string();
        gd_string_free(report);
        assert!(text.contains("\"verdict\": \"pass\""));
        assert!(text.contains("\"type (1) invariant quantifiers\": \"16\""));

        let law = c("kras-group");
        let input = c(r#"{"domain_size": 4, "permutations": [[1, 2, 0, 3], [0, 2, 3, 1]]}"#);
        assert_eq!(gd_check_law_json(law.as_ptr(), input.as_ptr(), 0, 0, 0, &mut report), GdStatus::Ok);
        gd_string_free(report);

        let law = c("cor");
        assert_eq!(gd_check_law_json(law.as_ptr(), ptr::null(), 3, 4, 11, &mut report), GdStatus::Ok);
        gd_string_free(report);

        let unknown = c("nope");
        assert_eq!(
            gd_check_law_json(unknown.as_ptr(), ptr::null(), 0, 0, 0, &mut report),
            GdStatus::InvalidInput
        );
    }
}

#[test]
fn law_rejects_wrong_document_kind() {
    unsafe {
        let mut report = ptr::null_mut();
        let law = c("kras-group");
        let s = c(r#"{"domain_size": 3, "relations": [{"name": "P", "arity": 1, "tuples": [[0]]}]}"#);
        assert_eq!(
            gd_check_law_json(law.as_ptr(), s.as_ptr(), 0, 0, 0, &mut report),
            GdStatus::Precondition
        );
        assert!(report.is_null());
    }
}

#[test]
fn header_is_generated_and_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/galdual.h");
    let text = std::fs::read_to_string(header).unwrap();
    for symbol in ["gd_structure_from_json", "gd_aut", "gd_check_law_json", "GD_STATUS_LAW_FAILED", "typedef struct GdStructure GdStructure"] {
        assert!(text.contains(symbol), "{symbol} missing from header");
    }
    if let Ok(status) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).status() {
        assert!(status.success());
    }
}

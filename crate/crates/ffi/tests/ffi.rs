use std::ffi::{CStr, CString};
use std::ptr;

use vconc_ffi::*;

fn last_error() -> String {
    let p = vconc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn kmn(m: i64, n: i64, i: i64) -> *mut VconcCouple {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { vconc_couple_kmn(m, n, i, &mut c) }, VconcStatus::Ok);
    c
}

#[test]
fn orders_through_handles() {
    let c = kmn(3, 7, 0);
    let mut o = 99u32;
    unsafe {
        assert_eq!(vconc_order(c, VconcSide::Plus, &mut o), VconcStatus::Ok);
        assert_eq!(o, 4);
        let mut dim = 0usize;
        assert_eq!(vconc_couple_dim(c, &mut dim), VconcStatus::Ok);
        assert_eq!(dim, 2);
        let mut met = true;
        assert_eq!(vconc_is_metabolic(c, VconcSide::Minus, &mut met), VconcStatus::Ok);
        assert!(!met);
        vconc_couple_free(c);
    }
    let c = kmn(1447, 11, 1);
    unsafe {
        assert_eq!(vconc_order(c, VconcSide::Plus, &mut o), VconcStatus::Ok);
        assert_eq!(o, 1);
        vconc_couple_free(c);
    }
}

#[test]
fn json_round_trip_and_report() {
    let json = CString::new(r#"{"name":"t","ring":"Z","a_plus":[["1","1"],["0","1"]],"a_minus":[["1","0"],["1","1"]]}"#).unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(vconc_couple_from_json(json.as_ptr(), &mut c), VconcStatus::Ok);
        let mut arf = 9u8;
        assert_eq!(vconc_arf(c, VconcSide::Plus, &mut arf), VconcStatus::Ok);
        assert_eq!(arf, 1);
        let mut s = ptr::null_mut();
        assert_eq!(vconc_report_json(c, VconcSide::Plus, &mut s), VconcStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert_eq!(v["dim"], 2);
        vconc_string_free(s);
        vconc_couple_free(c);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let mut c = ptr::null_mut();
    let bad = CString::new(r#"{"name":"t","ring":"Z","a_plus":[["1","0"],["0","1"]],"a_minus":[["1","1"],["1","1"]]}"#).unwrap();
    unsafe {
        assert_eq!(vconc_couple_from_json(bad.as_ptr(), &mut c), VconcStatus::Validation);
        assert!(last_error().contains("skew"), "{}", last_error());
        assert!(c.is_null());
        let name = CString::new("nope").unwrap();
        assert_eq!(vconc_couple_fixture(name.as_ptr(), &mut c), VconcStatus::NotFound);
        assert_eq!(vconc_couple_fixture(ptr::null(), &mut c), VconcStatus::NullPointer);
        let mut o = 0u32;
        assert_eq!(vconc_order(ptr::null(), VconcSide::Plus, &mut o), VconcStatus::NullPointer);
        let k = kmn(3, 7, 0);
        assert_eq!(vconc_order(k, VconcSide::Plus, ptr::null_mut()), VconcStatus::NullPointer);
        assert_eq!(vconc_order(k, VconcSide::Plus, &mut o), VconcStatus::Ok);
        assert!(vconc_last_error().is_null());
        vconc_couple_free(k);
        vconc_couple_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/vconc.h")).unwrap();
    for f in [
        "vconc_last_error",
        "vconc_couple_from_json",
        "vconc_couple_fixture",
        "vconc_couple_kmn",
        "vconc_couple_free",
        "vconc_order",
        "vconc_arf",
        "vconc_report_json",
        "vconc_string_free",
        "VCONC_STATUS_COMPUTATION_LIMIT",
    ] {
        assert!(h.contains(f), "header lacks {f}");
    }
}

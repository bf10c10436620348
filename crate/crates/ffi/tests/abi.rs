use std::ffi::{CStr, CString};
use std::ptr;

use qhom_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    qhom_string_free(p);
    s
}

#[test]
fn ring_invariants_and_qid() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(qhom_ring_new(101, c("x, y, z").as_ptr(), c("y^2, y*z, z^2").as_ptr(), &mut r), QhomStatus::Ok);
        let (mut dim, mut depth, mut cm, mut gor) = (0, 0, false, true);
        assert_eq!(qhom_ring_dim(r, &mut dim), QhomStatus::Ok);
        assert_eq!(qhom_ring_depth(r, &mut depth), QhomStatus::Ok);
        assert_eq!(qhom_ring_is_cm(r, &mut cm), QhomStatus::Ok);
        assert_eq!(qhom_ring_is_gorenstein(r, &mut gor), QhomStatus::Ok);
        assert_eq!((dim, depth, cm, gor), (1, 1, true, false));

        let mut m = ptr::null_mut();
        assert_eq!(qhom_module_free_module(r, [0].as_ptr(), 1, &mut m), QhomStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(qhom_qid_json(m, 0, &mut out), QhomStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["value"]["kind"], "infinite");
        qhom_module_free(m);

        let mut k = ptr::null_mut();
        assert_eq!(qhom_module_residue_field(r, &mut k), QhomStatus::Ok);
        let mut dims = [9i64; 4];
        assert_eq!(qhom_module_hilbert(k, -1, 2, dims.as_mut_ptr()), QhomStatus::Ok);
        assert_eq!(dims, [0, 1, 0, 0]);
        qhom_module_free(k);
        qhom_ring_free(r);
    }
}

#[test]
fn qpd_of_residue_field_over_artinian_ring() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(qhom_ring_new(101, c("x,y").as_ptr(), c("x^2,y^2").as_ptr(), &mut r), QhomStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(qhom_module_cyclic(r, c("x, y").as_ptr(), &mut m), QhomStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(qhom_qpd_json(m, 3, &mut out), QhomStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["value"], serde_json::json!({"kind": "finite", "value": 0}));
        assert!(v["certificate"]["homology"].is_array());
        qhom_module_free(m);
        qhom_ring_free(r);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(qhom_ring_new(4, c("x").as_ptr(), c("").as_ptr(), &mut r), QhomStatus::InvalidInput);
        assert!(r.is_null());
        let msg = CStr::from_ptr(qhom_last_error()).to_str().unwrap();
        assert!(msg.contains("prime"), "{msg}");
        assert_eq!(qhom_ring_new(101, c("x,y").as_ptr(), c("x^2 + y").as_ptr(), &mut r), QhomStatus::NotHomogeneous);
        assert_eq!(qhom_ring_new(101, ptr::null(), c("").as_ptr(), &mut r), QhomStatus::NullPointer);
        assert_eq!(qhom_ring_dim(ptr::null(), ptr::null_mut()), QhomStatus::NullPointer);

        assert_eq!(qhom_ring_new(0, c("x").as_ptr(), c("").as_ptr(), &mut r), QhomStatus::Ok);
        assert!(qhom_last_error().is_null());
        let mut m = ptr::null_mut();
        assert_eq!(qhom_module_cyclic(r, c("x +").as_ptr(), &mut m), QhomStatus::Parse);
        qhom_ring_free(r);
    }
}

#[test]
fn scripts_report_failures_but_still_emit_json() {
    unsafe {
        let script = c("ring R = poly(GF(101), [x]) / ideal(x^2);\nmodule K = residue(R);\nprint depth(K);\nprint depth(Nope);\n");
        let mut out = ptr::null_mut();
        assert_eq!(qhom_run_script(script.as_ptr(), 0, &mut out), QhomStatus::Runtime);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["seed"], 0);
        let version = CStr::from_ptr(qhom_version()).to_str().unwrap();
        assert_eq!(version, env!("CARGO_PKG_VERSION"));
    }
}

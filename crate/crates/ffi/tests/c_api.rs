use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use pham_brieskorn_ffi::*;
use serde_json::Value;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pb_string_free(s) };
    owned
}

fn last_error() -> String {
    let p = pb_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn new_tuple(v: &[u64]) -> *mut PbTuple {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { pb_tuple_new(v.as_ptr(), v.len(), &mut t) }, PbError::Ok);
    t
}

fn status_of(v: &[u64]) -> PbStatus {
    let t = new_tuple(v);
    let mut verdict = ptr::null_mut();
    let mut status = PbStatus::Rigid;
    unsafe {
        assert_eq!(pb_classify(t, &mut verdict), PbError::Ok);
        assert_eq!(pb_verdict_status(verdict, &mut status), PbError::Ok);
        pb_verdict_free(verdict);
        pb_tuple_free(t);
    }
    status
}

#[test]
fn classification_through_handles() {
    assert_eq!(status_of(&[2, 3, 5, 30]), PbStatus::Rigid);
    assert_eq!(status_of(&[2, 2, 3, 4]), PbStatus::NotRigid);
    assert_eq!(status_of(&[3, 3, 3, 3, 3]), PbStatus::ConjecturallyRigid);
}

#[test]
fn tuple_queries() {
    let mut t = ptr::null_mut();
    let text = CString::new("(2, 3, 4, 5)").unwrap();
    assert_eq!(unsafe { pb_tuple_parse(text.as_ptr(), &mut t) }, PbError::Ok);
    assert_eq!(unsafe { pb_tuple_len(t) }, 4);
    let mut cotype = 0usize;
    assert_eq!(unsafe { pb_tuple_cotype(t, &mut cotype) }, PbError::Ok);
    assert_eq!(cotype, 3);
    let mut class = PbGammaClass::NotInGamma;
    assert_eq!(unsafe { pb_tuple_gamma_class(t, &mut class) }, PbError::Ok);
    assert_eq!(class, PbGammaClass::Gamma);
    unsafe { pb_tuple_free(t) };

    let t = new_tuple(&[3, 3, 4, 4]);
    assert_eq!(unsafe { pb_tuple_gamma_class(t, &mut class) }, PbError::Ok);
    assert_eq!(class, PbGammaClass::GammaMinus);
    unsafe { pb_tuple_free(t) };
    assert_eq!(unsafe { pb_tuple_len(ptr::null()) }, 0);
}

#[test]
fn verdict_json_and_trace() {
    let t = new_tuple(&[2, 2, 3, 4]);
    let mut v = ptr::null_mut();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(pb_classify(t, &mut v), PbError::Ok);
        assert_eq!(pb_verdict_json(v, &mut s), PbError::Ok);
        let json: Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(json["status"], "not-rigid");
        assert_eq!(json["trace"]["step"], "double-two");

        assert_eq!(pb_verdict_trace(v, &mut s), PbError::Ok);
        assert!(take_string(s).contains("DoubleTwo"));

        assert_eq!(pb_verdict_witness_json(v, &mut s), PbError::Ok);
        let w: Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(w["id"], json["witness_id"]);
        pb_verdict_free(v);
        pb_tuple_free(t);
    }

    let t = new_tuple(&[2, 3, 5, 30]);
    unsafe {
        assert_eq!(pb_classify(t, &mut v), PbError::Ok);
        s = ptr::null_mut();
        assert_eq!(pb_verdict_witness_json(v, &mut s), PbError::NoWitness);
        assert!(s.is_null());
        assert!(last_error().contains("(2,3,5,30)"));
        pb_verdict_free(v);
        pb_tuple_free(t);
    }
}

#[test]
fn geometry_and_contraction() {
    let t = new_tuple(&[2, 3, 5, 30]);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(pb_geometry_json(t, &mut s), PbError::Ok);
        let report: Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(report["k_squared"], "2/15");
        assert_eq!(report["amplitude"], -2);

        assert_eq!(pb_resolution_graph_json(t, &mut s), PbError::Ok);
        let graph = CString::new(take_string(s)).unwrap();
        assert_eq!(pb_contract_json(graph.as_ptr(), &mut s), PbError::Ok);
        let fin: Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(fin["ambient_k_squared"], 1);
        assert_eq!(fin["curves"].as_array().unwrap().len(), 1);
        pb_tuple_free(t);
    }

    let t = new_tuple(&[2, 3, 5, 7]);
    unsafe {
        assert_eq!(pb_geometry_json(t, &mut s), PbError::Domain);
        pb_tuple_free(t);
    }
}

#[test]
fn errors_are_reported() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(pb_tuple_new([2u64, 0, 3].as_ptr(), 3, &mut t), PbError::InvalidInput);
        assert!(t.is_null());
        assert_eq!(pb_tuple_new([2u64, 3].as_ptr(), 2, &mut t), PbError::InvalidInput);
        assert!(!last_error().is_empty());
        assert_eq!(pb_tuple_new(ptr::null(), 3, &mut t), PbError::NullPointer);
        assert!(last_error().contains("entries"));
        assert_eq!(pb_tuple_parse(ptr::null(), &mut t), PbError::NullPointer);
        let bad = CString::new("2,x,3").unwrap();
        assert_eq!(pb_tuple_parse(bad.as_ptr(), &mut t), PbError::InvalidInput);
        let invalid = [0xffu8, 0];
        assert_eq!(pb_tuple_parse(invalid.as_ptr().cast(), &mut t), PbError::InvalidUtf8);

        let mut s = ptr::null_mut();
        let junk = CString::new("{\"curves\": 3}").unwrap();
        assert_eq!(pb_contract_json(junk.as_ptr(), &mut s), PbError::InvalidInput);
        assert!(s.is_null());

        pb_string_free(ptr::null_mut());
        pb_tuple_free(ptr::null_mut());
        pb_verdict_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(pb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/pham_brieskorn.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15, "{exports:?}");
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for opaque in ["typedef struct pb_tuple pb_tuple;", "typedef struct pb_verdict pb_verdict;"] {
        assert!(header.contains(opaque));
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; header syntax not checked");
        return;
    };
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("use_header.c");
    std::fs::write(
        &src,
        "#include \"pham_brieskorn.h\"\n\
         int check(void) {\n\
           pb_tuple *t = 0;\n\
           uint64_t v[4] = {2, 3, 5, 30};\n\
           if (pb_tuple_new(v, 4, &t) != PB_ERROR_OK) return 1;\n\
           pb_tuple_free(t);\n\
           return 0;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}

use std::ffi::{CStr, CString};
use std::ptr;

use scdt_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    scdt_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(scdt_last_error())
        .to_string_lossy()
        .into_owned()
}

#[test]
fn catalog_profile_and_report() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(
            scdt_code_catalog(cstr("icosahedron").as_ptr(), &mut code),
            ScdtStatus::Ok
        );
        let mut p = ScdtProfile::default();
        assert_eq!(scdt_code_profile(code, &mut p), ScdtStatus::Ok);
        assert_eq!((p.dim, p.size, p.s, p.t), (3, 12, 3, 5));
        assert!(p.tight && p.delsarte && !p.rational);

        let mut text = ptr::null_mut();
        assert_eq!(scdt_code_analyze(code, false, &mut text), ScdtStatus::Ok);
        let report = take(text);
        assert!(report.contains("exception = icosahedron"), "{report}");
        assert!(report.ends_with("verdict: ok\n"));

        assert_eq!(scdt_code_bound(code, &mut text), ScdtStatus::Ok);
        assert!(take(text).contains("bound = 12"));
        scdt_code_free(code);
    }
}

#[test]
fn text_round_trip() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(
            scdt_code_catalog(cstr("clebsch16").as_ptr(), &mut code),
            ScdtStatus::Ok
        );
        let mut text = ptr::null_mut();
        assert_eq!(scdt_code_emit(code, &mut text), ScdtStatus::Ok);
        let emitted = take(text);
        scdt_code_free(code);

        let mut again = ptr::null_mut();
        assert_eq!(
            scdt_code_from_text(cstr(&emitted).as_ptr(), &mut again),
            ScdtStatus::Ok
        );
        let mut p = ScdtProfile::default();
        scdt_code_profile(again, &mut p);
        assert_eq!((p.dim, p.size, p.s, p.t, p.tight), (5, 16, 2, 3, false));
        scdt_code_free(again);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(
            scdt_code_catalog(cstr("dodecahedron").as_ptr(), &mut code),
            ScdtStatus::UnknownName
        );
        assert!(code.is_null());
        assert!(last_error().contains("dodecahedron"));

        let bad = "scdt-code v1\nlabel x\ndim 2\nsize 2\nkind gram\n1 q\n-1 1\n";
        assert_eq!(
            scdt_code_from_text(cstr(bad).as_ptr(), &mut code),
            ScdtStatus::Parse
        );
        assert!(last_error().starts_with("line 6"), "{}", last_error());

        let singular = "scdt-code v1\nlabel x\ndim 2\nsize 2\nkind gram\n1 2\n2 1\n";
        assert_eq!(
            scdt_code_from_text(cstr(singular).as_ptr(), &mut code),
            ScdtStatus::InvalidCode
        );

        assert_eq!(
            scdt_code_load(cstr("/nonexistent/code.txt").as_ptr(), &mut code),
            ScdtStatus::Io
        );
        assert_eq!(
            scdt_code_load(ptr::null(), &mut code),
            ScdtStatus::NullPointer
        );
        assert_eq!(
            scdt_code_catalog(cstr("simplex(4)").as_ptr(), ptr::null_mut()),
            ScdtStatus::NullPointer
        );
        assert_eq!(
            scdt_code_profile(ptr::null(), &mut ScdtProfile::default()),
            ScdtStatus::NullPointer
        );

        let invalid = [0xffu8, 0];
        assert_eq!(
            scdt_code_catalog(invalid.as_ptr().cast(), &mut code),
            ScdtStatus::InvalidUtf8
        );

        scdt_code_free(ptr::null_mut());
        scdt_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(scdt_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

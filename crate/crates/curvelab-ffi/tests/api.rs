use std::ffi::{CStr, CString};
use std::ptr;

use curvelab_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = curvelab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn curve(g: u32, n: u32, w: &str) -> *mut CurvelabCurve {
    let mut out = ptr::null_mut();
    assert_eq!(curvelab_curve_parse(g, n, cstr(w).as_ptr(), &mut out), CurvelabStatus::Ok);
    out
}

unsafe fn multicurve(g: u32, n: u32, w: &str) -> *mut CurvelabMulticurve {
    let mut out = ptr::null_mut();
    assert_eq!(curvelab_multicurve_parse(g, n, cstr(w).as_ptr(), &mut out), CurvelabStatus::Ok, "{}", last_error());
    out
}

#[test]
fn curves_intersect_and_twist() {
    unsafe {
        let (a, b) = (curve(1, 1, "a"), curve(1, 1, "b"));
        let mut i = 0u64;
        assert_eq!(curvelab_curve_intersection(a, b, &mut i), CurvelabStatus::Ok);
        assert_eq!(i, 1);

        let mut t = ptr::null_mut();
        assert_eq!(curvelab_curve_twist(a, b, 3, &mut t), CurvelabStatus::Ok);
        assert_eq!(curvelab_curve_intersection(t, a, &mut i), CurvelabStatus::Ok);
        assert_eq!(i, 3);

        let name = curvelab_curve_name(a);
        assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "a");
        curvelab_string_free(name);

        let mut sep = true;
        assert_eq!(curvelab_curve_is_separating(a, &mut sep), CurvelabStatus::Ok);
        assert!(!sep);
        for c in [a, b, t] {
            curvelab_curve_free(c);
        }
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(curvelab_curve_parse(5, 0, cstr("a").as_ptr(), &mut out), CurvelabStatus::UnsupportedSurface);
        assert!(out.is_null());
        assert!(last_error().contains("S_{5,0}") || last_error().contains("5"), "{}", last_error());

        assert_eq!(curvelab_curve_parse(1, 1, ptr::null(), &mut out), CurvelabStatus::NullArgument);
        assert_eq!(curvelab_curve_parse(1, 1, cstr("q").as_ptr(), &mut out), CurvelabStatus::Parse);

        let (a, c) = (curve(1, 1, "a"), curve(0, 4, "ab"));
        let mut i = 0u64;
        assert_eq!(curvelab_curve_intersection(a, c, &mut i), CurvelabStatus::SurfaceMismatch);
        assert_eq!(curvelab_curve_intersection(a, a, ptr::null_mut()), CurvelabStatus::NullArgument);

        let mut m = ptr::null_mut();
        assert_eq!(curvelab_multicurve_parse(1, 1, cstr("a,b").as_ptr(), &mut m), CurvelabStatus::InvalidInput);
        curvelab_curve_free(a);
        curvelab_curve_free(c);

        let mut snap = ptr::null_mut();
        assert_eq!(curvelab_snapshot_build(9, 0, 5, 3, 1, ptr::null(), &mut snap), CurvelabStatus::InvalidInput);

        curvelab_curve_free(ptr::null_mut());
        curvelab_string_free(ptr::null_mut());
        assert_eq!(curvelab_snapshot_len(ptr::null()), 0);
    }
}

#[test]
fn snapshots_build_store_and_load() {
    unsafe {
        let base = multicurve(0, 5, "ab,cd");
        let mut pants = false;
        assert_eq!(curvelab_multicurve_is_pants(base, &mut pants), CurvelabStatus::Ok);
        assert!(pants);
        assert_eq!(curvelab_multicurve_len(base), 2);

        let mut snap = ptr::null_mut();
        assert_eq!(curvelab_snapshot_build(CurvelabKind::Pants as u32, 0, 5, 3, 3, base, &mut snap), CurvelabStatus::Ok);
        assert!(curvelab_snapshot_len(snap) > 1);
        assert!(curvelab_snapshot_edge_count(snap) > 0);

        let far = multicurve(0, 5, "bc,ad");
        let mut d = 0u64;
        assert_eq!(curvelab_snapshot_distance(snap, base, far, &mut d), CurvelabStatus::Ok);
        assert_eq!(d, 3);

        let mut v = ptr::null_mut();
        assert_eq!(curvelab_snapshot_vertex(snap, 0, &mut v), CurvelabStatus::Ok);
        assert_eq!(curvelab_snapshot_distance(snap, base, v, &mut d), CurvelabStatus::Ok);
        assert_eq!(d, 0);
        assert_eq!(curvelab_snapshot_vertex(snap, usize::MAX, &mut v), CurvelabStatus::InvalidInput);

        let dir = tempfile::tempdir().unwrap();
        let dir_c = cstr(dir.path().to_str().unwrap());
        assert_eq!(curvelab_snapshot_store(snap, dir_c.as_ptr()), CurvelabStatus::Ok);
        let digest = curvelab_snapshot_digest(snap);
        let digest_s = CStr::from_ptr(digest).to_str().unwrap().to_string();

        let mut loaded = ptr::null_mut();
        assert_eq!(curvelab_snapshot_load(dir_c.as_ptr(), digest, &mut loaded), CurvelabStatus::Ok);
        assert_eq!(curvelab_snapshot_len(loaded), curvelab_snapshot_len(snap));

        let path = dir.path().join(format!("{digest_s}.json"));
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replacen("\"depth\": 1", "\"depth\": 2", 1)).unwrap();
        let mut bad = ptr::null_mut();
        assert_eq!(curvelab_snapshot_load(dir_c.as_ptr(), digest, &mut bad), CurvelabStatus::Data);
        assert!(last_error().contains(&digest_s));
        assert_eq!(curvelab_snapshot_load(dir_c.as_ptr(), cstr("nope").as_ptr(), &mut bad), CurvelabStatus::Io);

        curvelab_string_free(digest);
        curvelab_snapshot_free(loaded);
        curvelab_snapshot_free(snap);
        for m in [base, far, v] {
            curvelab_multicurve_free(m);
        }
    }
}

#[test]
fn default_basepoints_exist() {
    unsafe {
        for (kind, g, n, bound) in [(CurvelabKind::Curve, 1, 1, 3), (CurvelabKind::Pants, 0, 5, 2), (CurvelabKind::Sep, 2, 1, 3)] {
            let mut snap = ptr::null_mut();
            assert_eq!(curvelab_snapshot_build(kind as u32, g, n, bound, 1, ptr::null(), &mut snap), CurvelabStatus::Ok, "{}", last_error());
            assert!(curvelab_snapshot_len(snap) >= 1);
            curvelab_snapshot_free(snap);
        }
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(curvelab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/curvelab.h")).unwrap();
    for name in [
        "curvelab_curve_parse",
        "curvelab_curve_intersection",
        "curvelab_snapshot_build",
        "curvelab_snapshot_load",
        "curvelab_last_error",
        "CURVELAB_STATUS_UNREACHABLE",
        "typedef struct CurvelabSnapshot CurvelabSnapshot",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

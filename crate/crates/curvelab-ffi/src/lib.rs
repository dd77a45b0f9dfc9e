//! C ABI over curvelab. Every object crosses the boundary as an opaque
//! handle owned by the caller and released with the matching `_free`.
//! Every fallible call returns a [`CurvelabStatus`]; the message of the
//! most recent failure on the calling thread is available from
//! [`curvelab_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use curvelab::complex::{ComplexKind, ComplexModel, CurvePool, GraphSnapshot};
use curvelab::curve::{surface, Curve, Multicurve};
use curvelab::enumerate::DEFAULT_CAP;
use curvelab::lab::greedy_pants;
use curvelab::mcg::{Move, TwistWord};
use curvelab::surface::SurfaceSig;
use curvelab::Error;

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvelabStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnsupportedSurface = 4,
    SurfaceMismatch = 5,
    InvalidInput = 6,
    Unreachable = 7,
    BudgetExceeded = 8,
    Data = 9,
    Io = 10,
    Panic = 11,
}

/// Complex kinds accepted by [`curvelab_snapshot_build`].
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvelabKind {
    Curve = 0,
    Pants = 1,
    Sep = 2,
    SepPrime = 3,
}

/// Opaque simple closed curve.
pub struct CurvelabCurve(Curve);

/// Opaque multicurve.
pub struct CurvelabMulticurve(Multicurve);

/// Opaque ball in a complex.
pub struct CurvelabSnapshot(GraphSnapshot);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> CurvelabStatus {
    use CurvelabStatus as S;
    match e {
        Error::Parse(_) | Error::InvalidCurve(_) | Error::NotAdmissible(_) | Error::EmptyAfterReduction => S::Parse,
        Error::UnsupportedSurface(_) => S::UnsupportedSurface,
        Error::SurfaceMismatch { .. } | Error::MixedTriangulations => S::SurfaceMismatch,
        Error::Unreachable | Error::UnknownVertex => S::Unreachable,
        Error::BudgetExceeded(_) => S::BudgetExceeded,
        Error::Data(_) => S::Data,
        Error::Io { .. } => S::Io,
        _ => S::InvalidInput,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (CurvelabStatus, String)>) -> CurvelabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CurvelabStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CurvelabStatus::Panic
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, (CurvelabStatus, String)>;
}

impl<T> OrStatus<T> for curvelab::Result<T> {
    fn or_status(self) -> Result<T, (CurvelabStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (CurvelabStatus, String) {
    (CurvelabStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or point to a nul-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (CurvelabStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (CurvelabStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or a live handle of type `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (CurvelabStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` must be null or writable.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), (CurvelabStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn sig(genus: u32, punctures: u32) -> Result<SurfaceSig, (CurvelabStatus, String)> {
    let s = SurfaceSig::new(genus, punctures);
    s.check_supported().or_status()?;
    Ok(s)
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn curvelab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn curvelab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn curvelab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a curve given as a fat-graph word on the surface of genus
/// `genus` with `punctures` punctures.
///
/// # Safety
/// `word` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_parse(genus: u32, punctures: u32, word: *const c_char, out: *mut *mut CurvelabCurve) -> CurvelabStatus {
    guard(|| {
        let s = sig(genus, punctures)?;
        let c = surface(s).or_status()?.parse(text(word, "word")?).or_status()?;
        put(out, Box::into_raw(Box::new(CurvelabCurve(c))))
    })
}

/// # Safety
/// `c` must be null or a curve handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_free(c: *mut CurvelabCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Canonical word of a curve; free with [`curvelab_string_free`].
///
/// # Safety
/// `c` must be null or a live curve handle.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_name(c: *const CurvelabCurve) -> *mut c_char {
    c.as_ref().map_or(std::ptr::null_mut(), |c| into_c_string(c.0.name()))
}

/// Geometric intersection number.
///
/// # Safety
/// `a`, `b` must be live curve handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_intersection(a: *const CurvelabCurve, b: *const CurvelabCurve, out: *mut u64) -> CurvelabStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let i = a.0.intersection(&b.0).or_status()?;
        put(out, i as u64)
    })
}

/// Whether both complementary pieces of the curve are essential.
///
/// # Safety
/// `c` must be a live curve handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_is_separating(c: *const CurvelabCurve, out: *mut bool) -> CurvelabStatus {
    guard(|| put(out, handle(c, "curve")?.0.is_separating()))
}

/// Image of `c` under the `n`-th power of the Dehn twist about `about`.
///
/// # Safety
/// `c`, `about` must be live curve handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_curve_twist(
    c: *const CurvelabCurve,
    about: *const CurvelabCurve,
    n: i32,
    out: *mut *mut CurvelabCurve,
) -> CurvelabStatus {
    guard(|| {
        let (c, about) = (handle(c, "curve")?, handle(about, "twist curve")?);
        let w = TwistWord::new(about.0.sig(), vec![Move::twist("t", about.0.clone(), n)]).or_status()?;
        let img = w.apply(&c.0).or_status()?;
        put(out, Box::into_raw(Box::new(CurvelabCurve(img))))
    })
}

/// Parses a multicurve given as comma-separated words.
///
/// # Safety
/// `words` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_multicurve_parse(
    genus: u32,
    punctures: u32,
    words: *const c_char,
    out: *mut *mut CurvelabMulticurve,
) -> CurvelabStatus {
    guard(|| {
        let s = sig(genus, punctures)?;
        let ctx = surface(s).or_status()?;
        let curves = text(words, "words")?
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| ctx.parse(w))
            .collect::<curvelab::Result<Vec<_>>>()
            .or_status()?;
        let m = Multicurve::new(s, curves).or_status()?;
        put(out, Box::into_raw(Box::new(CurvelabMulticurve(m))))
    })
}

/// # Safety
/// `m` must be null or a multicurve handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn curvelab_multicurve_free(m: *mut CurvelabMulticurve) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of components.
///
/// # Safety
/// `m` must be null or a live multicurve handle.
#[no_mangle]
pub unsafe extern "C" fn curvelab_multicurve_len(m: *const CurvelabMulticurve) -> usize {
    m.as_ref().map_or(0, |m| m.0.len())
}

/// Whether the multicurve is a pants decomposition.
///
/// # Safety
/// `m` must be a live multicurve handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_multicurve_is_pants(m: *const CurvelabMulticurve, out: *mut bool) -> CurvelabStatus {
    guard(|| put(out, handle(m, "multicurve")?.0.is_pants_decomposition()))
}

fn kind_of(kind: u32) -> Result<ComplexKind, (CurvelabStatus, String)> {
    Ok(match kind {
        0 => ComplexKind::Curve,
        1 => ComplexKind::Pants,
        2 => ComplexKind::Sep,
        3 => ComplexKind::SepPrime,
        k => return Err((CurvelabStatus::InvalidInput, format!("unknown complex kind {k}"))),
    })
}

/// Ball of the given radius in a complex (a [`CurvelabKind`] value) over
/// curves of weight at most `bound`. A null `base` picks a default
/// basepoint; otherwise `base` must be a vertex of the complex.
///
/// # Safety
/// `base` must be null or a live multicurve handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_build(
    kind: u32,
    genus: u32,
    punctures: u32,
    bound: u32,
    radius: usize,
    base: *const CurvelabMulticurve,
    out: *mut *mut CurvelabSnapshot,
) -> CurvelabStatus {
    guard(|| {
        let (kind, s) = (kind_of(kind)?, sig(genus, punctures)?);
        let pool = CurvePool::new(s, bound, DEFAULT_CAP).or_status()?;
        let base = match base.as_ref() {
            Some(m) => m.0.clone(),
            None => {
                let missing = || (CurvelabStatus::InvalidInput, format!("no default {kind} vertex at bound {bound}"));
                match kind {
                    ComplexKind::Curve => pool.curves().first().cloned().map(Multicurve::single),
                    ComplexKind::Pants => greedy_pants(s, pool.curves()),
                    ComplexKind::Sep | ComplexKind::SepPrime => pool.separating().into_iter().next(),
                }
                .ok_or_else(missing)?
            }
        };
        let model = ComplexModel::new(kind, &pool);
        let snap = GraphSnapshot::build(&model, base, radius, DEFAULT_CAP).or_status()?;
        put(out, Box::into_raw(Box::new(CurvelabSnapshot(snap))))
    })
}

/// Loads `<dir>/<digest>.json`, verifying its contents against the digest.
///
/// # Safety
/// `dir`, `digest` must be nul-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_load(dir: *const c_char, digest: *const c_char, out: *mut *mut CurvelabSnapshot) -> CurvelabStatus {
    guard(|| {
        let snap = GraphSnapshot::load(Path::new(text(dir, "dir")?), text(digest, "digest")?).or_status()?;
        put(out, Box::into_raw(Box::new(CurvelabSnapshot(snap))))
    })
}

/// Writes the snapshot into `dir` under its digest.
///
/// # Safety
/// `snap` must be a live snapshot handle and `dir` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_store(snap: *const CurvelabSnapshot, dir: *const c_char) -> CurvelabStatus {
    guard(|| {
        handle(snap, "snapshot")?.0.store(Path::new(text(dir, "dir")?)).or_status()?;
        Ok(())
    })
}

/// # Safety
/// `snap` must be null or a snapshot handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_free(snap: *mut CurvelabSnapshot) {
    if !snap.is_null() {
        drop(Box::from_raw(snap));
    }
}

/// Number of vertices.
///
/// # Safety
/// `snap` must be null or a live snapshot handle.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_len(snap: *const CurvelabSnapshot) -> usize {
    snap.as_ref().map_or(0, |s| s.0.len())
}

/// Number of edges.
///
/// # Safety
/// `snap` must be null or a live snapshot handle.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_edge_count(snap: *const CurvelabSnapshot) -> usize {
    snap.as_ref().map_or(0, |s| s.0.edge_count())
}

/// Hex digest of the snapshot contents; free with [`curvelab_string_free`].
///
/// # Safety
/// `snap` must be null or a live snapshot handle.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_digest(snap: *const CurvelabSnapshot) -> *mut c_char {
    snap.as_ref().map_or(std::ptr::null_mut(), |s| into_c_string(s.0.digest()))
}

/// Graph distance between two vertices of the snapshot.
///
/// # Safety
/// All handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_distance(
    snap: *const CurvelabSnapshot,
    a: *const CurvelabMulticurve,
    b: *const CurvelabMulticurve,
    out: *mut u64,
) -> CurvelabStatus {
    guard(|| {
        let s = handle(snap, "snapshot")?;
        let d = s.0.distance_between(&handle(a, "a")?.0, &handle(b, "b")?.0).or_status()?;
        put(out, d as u64)
    })
}

/// Copy of vertex `index`; free with [`curvelab_multicurve_free`].
///
/// # Safety
/// `snap` must be a live snapshot handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvelab_snapshot_vertex(snap: *const CurvelabSnapshot, index: usize, out: *mut *mut CurvelabMulticurve) -> CurvelabStatus {
    guard(|| {
        let s = handle(snap, "snapshot")?;
        if index >= s.0.len() {
            return Err((CurvelabStatus::InvalidInput, format!("vertex {index} out of range")));
        }
        put(out, Box::into_raw(Box::new(CurvelabMulticurve(s.0.vertex(index).clone()))))
    })
}

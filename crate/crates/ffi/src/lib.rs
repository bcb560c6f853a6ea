//! C ABI over `frobkit`.
//!
//! Algebras cross the boundary as opaque `FrobAlgebra` handles owned by the
//! caller and released with `frob_algebra_free`. Every call returns a
//! `FrobStatus`; on failure `frob_last_error` describes the most recent error
//! on the calling thread. Strings returned through out-parameters are owned by
//! the caller and released with `frob_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use frobkit::format::{parse_algebra, parse_quiver, parse_tensor, write_algebra, write_tensor};
use frobkit::{zoo, Algebra, Error, Field};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    FieldMismatch = 5,
    Unsupported = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque algebra handle.
pub struct FrobAlgebra {
    inner: Arc<Algebra>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FrobStatus {
    match e.root() {
        Error::Syntax { .. } => FrobStatus::Parse,
        Error::FieldMismatch { .. } => FrobStatus::FieldMismatch,
        Error::UnsupportedField(_) => FrobStatus::Unsupported,
        Error::InternalConsistency(_) => FrobStatus::Internal,
        _ if matches!(e, Error::Located { .. }) => FrobStatus::Parse,
        _ => FrobStatus::InvalidInput,
    }
}

struct Failure(FrobStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(body: impl FnOnce() -> Outcome) -> FrobStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FrobStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FrobStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(FrobStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FrobStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn algebra<'a>(p: *const FrobAlgebra) -> Result<&'a Arc<Algebra>, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle(out: *mut *mut FrobAlgebra, a: Algebra) -> Outcome {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(FrobAlgebra { inner: Arc::new(a) })));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| Failure(FrobStatus::Internal, "string contains nul".into()))?;
    out.write(c.into_raw());
    Ok(())
}

fn field_of(prime: u64) -> Result<Field, Failure> {
    if prime == 0 {
        Ok(Field::Rational)
    } else {
        Ok(Field::prime(prime)?)
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn frob_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn frob_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases an algebra handle. NULL is ignored.
///
/// # Safety
/// `a` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn frob_algebra_free(a: *mut FrobAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Parses an algebra description file.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_algebra_parse(text: *const c_char, out: *mut *mut FrobAlgebra) -> FrobStatus {
    guard(|| {
        let a = parse_algebra(read_str(text)?)?;
        write_handle(out, a)
    })
}

/// Builds `cyclic N`, `abelian N1,N2,...`, `matrix N` or `truncpoly N` over
/// `F_prime`, or over `Q` when `prime` is 0.
///
/// # Safety
/// `family` and `arg` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_algebra_zoo(
    family: *const c_char,
    arg: *const c_char,
    prime: u64,
    out: *mut *mut FrobAlgebra,
) -> FrobStatus {
    guard(|| {
        let a = zoo::family(field_of(prime)?, read_str(family)?, read_str(arg)?)?;
        write_handle(out, a)
    })
}

/// Path algebra of a quiver description. `bound` 0 means no length bound
/// beyond the one in the file.
///
/// # Safety
/// `quiver` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_algebra_from_quiver(
    quiver: *const c_char,
    prime: u64,
    bound: usize,
    out: *mut *mut FrobAlgebra,
) -> FrobStatus {
    guard(|| {
        let qf = parse_quiver(read_str(quiver)?, field_of(prime)?)?;
        let bound = if bound == 0 { qf.bound } else { Some(bound) };
        let a = zoo::path_algebra(&qf.quiver, bound)?;
        write_handle(out, a)
    })
}

/// Dimension of the algebra, 0 for NULL.
///
/// # Safety
/// `a` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn frob_algebra_dim(a: *const FrobAlgebra) -> usize {
    a.as_ref().map_or(0, |h| h.inner.dim())
}

/// Canonical description file of the algebra.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_algebra_to_string(a: *const FrobAlgebra, out: *mut *mut c_char) -> FrobStatus {
    guard(|| write_string(out, write_algebra(algebra(a)?)))
}

/// Direct product `a × b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_direct_product(
    a: *const FrobAlgebra,
    b: *const FrobAlgebra,
    out: *mut *mut FrobAlgebra,
) -> FrobStatus {
    guard(|| {
        let p = frobkit::direct_product(algebra(a)?, algebra(b)?)?;
        write_handle(out, (*p.algebra).clone())
    })
}

/// Tensor product `a ⊗ b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_tensor_product(
    a: *const FrobAlgebra,
    b: *const FrobAlgebra,
    out: *mut *mut FrobAlgebra,
) -> FrobStatus {
    guard(|| {
        let t = frobkit::tensor_product(algebra(a)?, algebra(b)?)?;
        write_handle(out, t)
    })
}

/// Frobenius dimension.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_frobdim(a: *const FrobAlgebra, out: *mut usize) -> FrobStatus {
    guard(|| write_out(out, frobkit::frobdim(algebra(a)?)))
}

/// Canonical basis of the coproduct space, as tensor files separated by blank
/// lines.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_frobenius_basis(a: *const FrobAlgebra, out: *mut *mut c_char) -> FrobStatus {
    guard(|| {
        let space = frobkit::frobenius_space(algebra(a)?);
        let parts: Vec<String> = space.basis().iter().map(write_tensor).collect();
        write_string(out, parts.join("\n"))
    })
}

/// Separability decision. When `certificate` is not NULL it receives the
/// separability element as a tensor file, or NULL if there is none.
///
/// # Safety
/// `a` must be a live handle; `separable` must be writable; `certificate`
/// must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn frob_is_separable(
    a: *const FrobAlgebra,
    separable: *mut bool,
    certificate: *mut *mut c_char,
) -> FrobStatus {
    guard(|| {
        let v = frobkit::is_separable(algebra(a)?)?;
        write_out(separable, v.separable)?;
        if !certificate.is_null() {
            match &v.certificate {
                Some(e) => write_string(certificate, write_tensor(e))?,
                None => certificate.write(ptr::null_mut()),
            }
        }
        Ok(())
    })
}

/// Semisimplicity over `Q`; `FROB_STATUS_UNSUPPORTED` over `F_p`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frob_semisimple(a: *const FrobAlgebra, out: *mut bool) -> FrobStatus {
    guard(|| write_out(out, frobkit::semisimple_char0(algebra(a)?)?))
}

/// Checks whether a tensor file describes a nearly Frobenius coproduct.
/// `valid` is false when an identity fails; the message is then available
/// from `frob_last_error` even though the call returns `FROB_STATUS_OK`.
///
/// # Safety
/// `a` must be a live handle; `tensor` a nul-terminated string; `valid`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn frob_verify_coproduct(
    a: *const FrobAlgebra,
    tensor: *const c_char,
    valid: *mut bool,
) -> FrobStatus {
    let mut violation = None;
    let status = guard(|| {
        let a = algebra(a)?;
        let t = parse_tensor(read_str(tensor)?, a.field())?;
        let verdict = frobkit::verify_coproduct(a, &t);
        write_out(valid, verdict.is_ok())?;
        violation = verdict.err().map(|v| v.to_string());
        Ok(())
    });
    if let Some(v) = violation {
        set_error(v);
    }
    status
}

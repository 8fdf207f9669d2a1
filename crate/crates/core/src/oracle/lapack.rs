//! Minimal bindings to the divide-and-conquer Hermitian eigensolvers of the
//! system LAPACK (linked through OpenBLAS, see build.rs).  Only the
//! eigenvalue-only drivers are wrapped; the `*-src` build crates are avoided
//! on purpose.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[allow(clippy::too_many_arguments)]
mod ffi {
    use num_complex::Complex;

    extern "C" {
        pub fn zheevd_(
            jobz: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut Complex<f64>,
            lda: *const i32,
            w: *mut f64,
            work: *mut Complex<f64>,
            lwork: *const i32,
            rwork: *mut f64,
            lrwork: *const i32,
            iwork: *mut i32,
            liwork: *const i32,
            info: *mut i32,
        );
        pub fn cheevd_(
            jobz: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut Complex<f32>,
            lda: *const i32,
            w: *mut f32,
            work: *mut Complex<f32>,
            lwork: *const i32,
            rwork: *mut f32,
            lrwork: *const i32,
            iwork: *mut i32,
            liwork: *const i32,
            info: *mut i32,
        );
        pub fn dsyevd_(
            jobz: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut f64,
            lda: *const i32,
            w: *mut f64,
            work: *mut f64,
            lwork: *const i32,
            iwork: *mut i32,
            liwork: *const i32,
            info: *mut i32,
        );
        pub fn ssyevd_(
            jobz: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut f32,
            lda: *const i32,
            w: *mut f32,
            work: *mut f32,
            lwork: *const i32,
            iwork: *mut i32,
            liwork: *const i32,
            info: *mut i32,
        );
    }
}

macro_rules! heevd_impl {
    ($t:ty, $heevd:ident, $syevd:ident) => {
        impl LapackScalar for $t {
            fn heevd_vals(n: usize, a: &mut [Complex<Self>]) -> Result<Vec<Self>> {
                assert_eq!(a.len(), n * n);
                let ni = n as i32;
                let mut w = vec![0 as $t; n];
                let mut info = 0i32;
                let m1 = -1i32;
                let (mut wq, mut rq, mut iq) = (Complex::new(0 as $t, 0 as $t), 0 as $t, 0i32);
                unsafe {
                    ffi::$heevd(
                        &b'N', &b'L', &ni, a.as_mut_ptr(), &ni, w.as_mut_ptr(), &mut wq, &m1,
                        &mut rq, &m1, &mut iq, &m1, &mut info,
                    );
                }
                if info != 0 {
                    return Err(Error::Eigensolver(info));
                }
                let lwork = wq.re as i32;
                let lrwork = rq as i32;
                let liwork = iq.max(1);
                let mut work = vec![Complex::new(0 as $t, 0 as $t); lwork.max(1) as usize];
                let mut rwork = vec![0 as $t; lrwork.max(1) as usize];
                let mut iwork = vec![0i32; liwork as usize];
                unsafe {
                    ffi::$heevd(
                        &b'N', &b'L', &ni, a.as_mut_ptr(), &ni, w.as_mut_ptr(),
                        work.as_mut_ptr(), &lwork, rwork.as_mut_ptr(), &lrwork,
                        iwork.as_mut_ptr(), &liwork, &mut info,
                    );
                }
                if info != 0 {
                    return Err(Error::Eigensolver(info));
                }
                Ok(w)
            }

            fn syevd_vals(n: usize, a: &mut [Self]) -> Result<Vec<Self>> {
                assert_eq!(a.len(), n * n);
                let ni = n as i32;
                let mut w = vec![0 as $t; n];
                let mut info = 0i32;
                let m1 = -1i32;
                let (mut wq, mut iq) = (0 as $t, 0i32);
                unsafe {
                    ffi::$syevd(
                        &b'N', &b'L', &ni, a.as_mut_ptr(), &ni, w.as_mut_ptr(), &mut wq, &m1,
                        &mut iq, &m1, &mut info,
                    );
                }
                if info != 0 {
                    return Err(Error::Eigensolver(info));
                }
                let lwork = wq as i32;
                let liwork = iq.max(1);
                let mut work = vec![0 as $t; lwork.max(1) as usize];
                let mut iwork = vec![0i32; liwork as usize];
                unsafe {
                    ffi::$syevd(
                        &b'N', &b'L', &ni, a.as_mut_ptr(), &ni, w.as_mut_ptr(),
                        work.as_mut_ptr(), &lwork, iwork.as_mut_ptr(), &liwork, &mut info,
                    );
                }
                if info != 0 {
                    return Err(Error::Eigensolver(info));
                }
                Ok(w)
            }
        }
    };
}

/// Scalars with a dense Hermitian eigenvalue driver.
pub trait LapackScalar: Real {
    /// Eigenvalues (ascending) of the Hermitian matrix stored densely in `a`.
    fn heevd_vals(n: usize, a: &mut [Complex<Self>]) -> Result<Vec<Self>>;
    /// Eigenvalues (ascending) of the real symmetric matrix in `a`.
    fn syevd_vals(n: usize, a: &mut [Self]) -> Result<Vec<Self>>;
}

heevd_impl!(f64, zheevd_, dsyevd_);
heevd_impl!(f32, cheevd_, ssyevd_);

//! Gaussian kernels: the full three-oscillator vacuum state and its one- and
//! two-oscillator reductions.
//!
//! Every reduction exists twice: a transcription of the closed-form
//! coefficient expressions, and a generic marginalization that completes the
//! square over the traced coordinates.  The generic route follows
//! mechanically from the full kernel and acts as the in-crate oracle for the
//! closed forms; where the two disagree beyond tolerance the generic route
//! is authoritative.

use num_complex::Complex;

use crate::ermakov::ErmakovState;
use crate::error::{Error, Result};
use crate::model::ModeBasis;
use crate::scalar::{as_f64, lit, Real};

type C<T> = Complex<T>;

/// Full vacuum kernel `rho(x, x') = norm2 * exp(-x G x - x' G* x')`.
#[derive(Debug, Clone)]
pub struct FullKernel<T> {
    pub g: [[C<T>; 3]; 3],
    /// Prefactor `sqrt(w1' w+' w-' / pi^3)`.
    pub norm2: T,
    pub basis: ModeBasis<T>,
    pub modes: [ErmakovState<T>; 3],
}

impl<T: Real> FullKernel<T> {
    /// Product of the three effective frequencies.
    pub fn omega_prime_product(&self) -> T {
        self.modes
            .iter()
            .fold(T::one(), |acc, m| acc * m.omega_prime())
    }

    pub fn eval(&self, x: &[T; 3], xp: &[T; 3]) -> C<T> {
        let mut e = C::new(T::zero(), T::zero());
        for i in 0..3 {
            for j in 0..3 {
                e = e + self.g[i][j] * x[i] * x[j] + self.g[i][j].conj() * xp[i] * xp[j];
            }
        }
        (-e).exp() * self.norm2
    }
}

fn norm2_of<T: Real>(modes: &[ErmakovState<T>; 3]) -> T {
    let w3 = modes
        .iter()
        .fold(T::one(), |acc, m| acc * m.omega_prime());
    (w3 / T::PI().powi(3)).sqrt()
}

/// `2G = U^T diag(v) U`; valid for any basis, including the degenerate path.
pub fn build_full_kernel_generic<T: Real>(
    basis: &ModeBasis<T>,
    modes: &[ErmakovState<T>; 3],
) -> FullKernel<T> {
    let u = &basis.u;
    let vs = [modes[0].v(), modes[1].v(), modes[2].v()];
    let half = lit::<T>(0.5);
    let mut g = [[C::new(T::zero(), T::zero()); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = C::new(T::zero(), T::zero());
            for (k, vk) in vs.iter().enumerate() {
                s = s + *vk * (u[k][i] * u[k][j]);
            }
            g[i][j] = s * half;
        }
    }
    FullKernel {
        g,
        norm2: norm2_of(modes),
        basis: basis.clone(),
        modes: *modes,
    }
}

/// Entrywise closed form of `G` in terms of `z`, `A+-` and the couplings.
/// Requires the analytic (non-degenerate) basis.
pub fn build_full_kernel_closed<T: Real>(
    basis: &ModeBasis<T>,
    modes: &[ErmakovState<T>; 3],
) -> Result<FullKernel<T>> {
    if basis.degenerate {
        return Err(Error::Domain(
            "closed-form kernel entries need the analytic mode basis".into(),
        ));
    }
    let (j12, j13, j23) = (
        basis.couplings.j12,
        basis.couplings.j13,
        basis.couplings.j23,
    );
    let z = basis.z;
    let (ap2, am2) = (basis.a_plus * basis.a_plus, basis.a_minus * basis.a_minus);
    let (v1, vp, vm) = (modes[0].v(), modes[1].v(), modes[2].v());
    let third = lit::<T>(3.0).recip();
    let half = lit::<T>(0.5);
    // unnormalized eigenvector components
    let e1p = -j12 + j23 - z;
    let e1m = -j12 + j23 + z;
    let e2p = j12 - j13 + z;
    let e2m = j12 - j13 - z;
    let e3 = j13 - j23;

    let g11 = (v1 * third + vp * (ap2 * e1p * e1p) + vm * (am2 * e1m * e1m)) * half;
    let g22 = (v1 * third + vp * (ap2 * e2p * e2p) + vm * (am2 * e2m * e2m)) * half;
    let g33 = (v1 * third + (vp * ap2 + vm * am2) * (e3 * e3)) * half;
    let g12 = (v1 * third + vp * (ap2 * e1p * e2p) + vm * (am2 * e1m * e2m)) * half;
    let g13 = (v1 * third + (vp * (ap2 * e1p) + vm * (am2 * e1m)) * e3) * half;
    let g23 = (v1 * third + (vp * (ap2 * e2p) + vm * (am2 * e2m)) * e3) * half;

    Ok(FullKernel {
        g: [[g11, g12, g13], [g12, g22, g23], [g13, g23, g33]],
        norm2: norm2_of(modes),
        basis: basis.clone(),
        modes: *modes,
    })
}

/// Assemble the full kernel, preferring the closed-form entries on the
/// analytic path.
pub fn build_full_kernel<T: Real>(
    basis: &ModeBasis<T>,
    modes: &[ErmakovState<T>; 3],
) -> FullKernel<T> {
    if basis.degenerate {
        build_full_kernel_generic(basis, modes)
    } else {
        build_full_kernel_closed(basis, modes).expect("analytic basis")
    }
}

/// One-oscillator reduced kernel
/// `rho(x,x') = norm * exp(-[(r1 - i i1) x^2 + (r1 + i i1) x'^2 - 2 y x x']/omega)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedKernel1<T> {
    pub omega: T,
    pub y: T,
    pub r1: T,
    pub i1: T,
    /// Prefactor `sqrt(w1' w+' w-' / (pi omega))`.
    pub norm: T,
}

impl<T: Real> ReducedKernel1<T> {
    /// Frequency product recovered from `r1 - y = w3 / 2`.
    pub fn omega_prime_product(&self) -> T {
        lit::<T>(2.0) * (self.r1 - self.y)
    }

    /// Exact trace by Gaussian integration; equals one for a valid state.
    pub fn trace(&self) -> T {
        self.norm * (T::PI() * self.omega / (lit::<T>(2.0) * (self.r1 - self.y))).sqrt()
    }

    pub fn eval(&self, x: T, xp: T) -> C<T> {
        let re = -(self.r1 * (x * x + xp * xp) - lit::<T>(2.0) * self.y * x * xp) / self.omega;
        let im = self.i1 * (x * x - xp * xp) / self.omega;
        C::new(re, im).exp() * self.norm
    }
}

/// Two-oscillator reduced kernel with the quadratic form
/// `(alpha_i, beta_i, gamma_ii)` described in [`ReducedKernel2::eval`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedKernel2<T> {
    pub a: T,
    pub alpha: [T; 4],
    pub beta: [T; 4],
    pub gamma11: T,
    pub gamma22: T,
    /// Prefactor `sqrt(w1' w+' w-' / (pi^2 a))`.
    pub norm: T,
}

impl<T: Real> ReducedKernel2<T> {
    /// Frequency product recovered from the determinant identity
    /// `(a1-g11)(a2-g22) - (a3-a4)^2 = w3 a / 4`.
    pub fn omega_prime_product(&self) -> T {
        let [a1, a2, a3, a4] = self.alpha;
        lit::<T>(4.0) * ((a1 - self.gamma11) * (a2 - self.gamma22) - (a3 - a4) * (a3 - a4))
            / self.a
    }

    /// Exact trace by Gaussian integration; equals one for a valid state.
    pub fn trace(&self) -> T {
        let [a1, a2, a3, a4] = self.alpha;
        let det = (a1 - self.gamma11) * (a2 - self.gamma22) - (a3 - a4) * (a3 - a4);
        self.norm * T::PI() * self.a / (lit::<T>(4.0) * det).sqrt()
    }

    pub fn eval(&self, x1: T, x2: T, y1: T, y2: T) -> C<T> {
        let two = lit::<T>(2.0);
        let [a1, a2, a3, a4] = self.alpha;
        let [b1, b2, b3, b4] = self.beta;
        let re_g = a1 * (x1 * x1 + y1 * y1)
            + a2 * (x2 * x2 + y2 * y2)
            + two * a3 * (x1 * x2 + y1 * y2)
            - two * self.gamma11 * x1 * y1
            - two * self.gamma22 * x2 * y2
            - two * a4 * (x1 * y2 + x2 * y1);
        let im_g = -b1 * (x1 * x1 - y1 * y1) - b2 * (x2 * x2 - y2 * y2)
            - two * b3 * (x1 * x2 - y1 * y2)
            - two * b4 * (x1 * y2 - x2 * y1);
        (C::new(-re_g, -im_g) / self.a).exp() * self.norm
    }
}

/// A reduction result: one or two oscillators kept.
#[derive(Debug, Clone)]
pub enum ReducedKernel<T> {
    One(ReducedKernel1<T>),
    Two(ReducedKernel2<T>),
}

const SCHUR_COND_LIMIT: f64 = 1e12;

/// Marginalize the full kernel over the oscillators not in `keep`
/// (1-based labels) by completing the square in the traced coordinates.
pub fn marginalize_generic<T: Real>(k: &FullKernel<T>, keep: &[usize]) -> Result<ReducedKernel<T>> {
    let mut kept: Vec<usize> = keep.iter().map(|&i| i.wrapping_sub(1)).collect();
    kept.sort_unstable();
    kept.dedup();
    if kept.iter().any(|&i| i > 2) || kept.is_empty() || kept.len() > 2 {
        return Err(Error::Domain(format!(
            "keep set must be one or two oscillators out of {{1,2,3}}, got {keep:?}"
        )));
    }
    let traced: Vec<usize> = (0..3).filter(|i| !kept.contains(i)).collect();
    match kept.len() {
        1 => marginalize_to_one(k, kept[0], &traced).map(ReducedKernel::One),
        _ => {
            debug_assert_eq!(traced.len(), 1);
            marginalize_to_two(k, [kept[0], kept[1]], traced[0]).map(ReducedKernel::Two)
        }
    }
}

/// Keep one oscillator, integrate out the other two.
pub(crate) fn marginalize_to_one<T: Real>(
    k: &FullKernel<T>,
    keep: usize,
    traced: &[usize],
) -> Result<ReducedKernel1<T>> {
    let two = lit::<T>(2.0);
    let g = &k.g;
    // traced block of G + G* is real symmetric positive definite
    let m00 = two * g[traced[0]][traced[0]].re;
    let m11 = two * g[traced[1]][traced[1]].re;
    let m01 = two * g[traced[0]][traced[1]].re;
    let det = m00 * m11 - m01 * m01;
    let tr = m00 + m11;
    let gap = (tr * tr - lit::<T>(4.0) * det).max(T::zero()).sqrt();
    let emax = (tr + gap) / two;
    let emin = det / emax;
    if !(emin > T::zero()) {
        return Err(Error::InvalidState(
            "traced block of the kernel is not positive definite".into(),
        ));
    }
    if emax / emin > lit(SCHUR_COND_LIMIT) {
        return Err(Error::IllConditioned { cond: as_f64(emax / emin) });
    }
    // omega = det(2 Re G_traced); coefficients from the Schur complement
    let omega = det;
    let g0 = g[traced[0]][keep];
    let g1 = g[traced[1]][keep];
    let minv00 = m11 / det;
    let minv11 = m00 / det;
    let minv01 = -m01 / det;
    // bilinear form u^T M^-1 w over the traced 2-space
    let qf = |u0: C<T>, u1: C<T>, w0: C<T>, w1: C<T>| -> C<T> {
        u0 * w0 * minv00 + (u0 * w1 + u1 * w0) * minv01 + u1 * w1 * minv11
    };
    let p = g[keep][keep] - qf(g0, g1, g0, g1);
    let q = qf(g0, g1, g0.conj(), g1.conj());
    let r1 = omega * p.re;
    let i1 = -omega * p.im;
    let y = omega * q.re;
    let norm = (k.omega_prime_product() / (T::PI() * omega)).sqrt();
    Ok(ReducedKernel1 { omega, y, r1, i1, norm })
}

/// Keep two oscillators, integrate out one.
pub(crate) fn marginalize_to_two<T: Real>(
    k: &FullKernel<T>,
    keep: [usize; 2],
    traced: usize,
) -> Result<ReducedKernel2<T>> {
    let two = lit::<T>(2.0);
    let g = &k.g;
    let a = two * g[traced][traced].re;
    if !(a > T::zero()) {
        return Err(Error::InvalidState(
            "traced diagonal entry of the kernel is not positive".into(),
        ));
    }
    let g0 = g[traced][keep[0]];
    let g1 = g[traced][keep[1]];
    let p00 = g[keep[0]][keep[0]] - g0 * g0 / a;
    let p11 = g[keep[1]][keep[1]] - g1 * g1 / a;
    let p01 = g[keep[0]][keep[1]] - g0 * g1 / a;
    // Gamma coefficients: (alpha - i beta) = a * P, cross terms from g_i g_j*
    let c0 = p00 * a;
    let c1 = p11 * a;
    let c2 = p01 * a;
    let q01 = g0 * g1.conj();
    Ok(ReducedKernel2 {
        a,
        alpha: [c0.re, c1.re, c2.re, q01.re],
        beta: [-c0.im, -c1.im, -c2.im, -q01.im],
        gamma11: g0.norm_sqr(),
        gamma22: g1.norm_sqr(),
        norm: (k.omega_prime_product() / (T::PI() * T::PI() * a)).sqrt(),
    })
}

struct ClosedFormInputs<T> {
    z: T,
    ap2: T,
    am2: T,
    d: T,
    e1p: T,
    e1m: T,
    e2p: T,
    e2m: T,
    w1: T,
    wp: T,
    wm: T,
    v1: C<T>,
    vp: C<T>,
    vm: C<T>,
    ld1: T,
    ldp: T,
    ldm: T,
    j12: T,
    j13: T,
    j23: T,
    w3: T,
    degenerate: bool,
}

fn closed_inputs<T: Real>(k: &FullKernel<T>) -> ClosedFormInputs<T> {
    let b = &k.basis;
    let (j12, j13, j23) = (b.couplings.j12, b.couplings.j13, b.couplings.j23);
    let (m1, mp, mm) = (&k.modes[0], &k.modes[1], &k.modes[2]);
    ClosedFormInputs {
        z: b.z,
        ap2: b.a_plus * b.a_plus,
        am2: b.a_minus * b.a_minus,
        d: j13 - j23,
        e1p: -j12 + j23 - b.z,
        e1m: -j12 + j23 + b.z,
        e2p: j12 - j13 + b.z,
        e2m: j12 - j13 - b.z,
        w1: m1.omega_prime(),
        wp: mp.omega_prime(),
        wm: mm.omega_prime(),
        v1: m1.v(),
        vp: mp.v(),
        vm: mm.v(),
        ld1: m1.log_deriv(),
        ldp: mp.log_deriv(),
        ldm: mm.log_deriv(),
        j12,
        j13,
        j23,
        w3: k.omega_prime_product(),
        degenerate: b.degenerate,
    }
}

/// Closed-form reduction keeping the third oscillator.
pub fn reduce_keep_third_closed<T: Real>(k: &FullKernel<T>) -> Result<ReducedKernel1<T>> {
    let i = closed_inputs(k);
    if i.degenerate {
        return Err(Error::Domain(
            "closed-form reduction needs the analytic mode basis".into(),
        ));
    }
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let zp = two * i.j12 - i.j13 - i.j23 + two * i.z;
    let zm = two * i.j12 - i.j13 - i.j23 - two * i.z;
    let d2 = i.d * i.d;
    let re2 = |a: C<T>, b: C<T>| two * (a * b.conj()).re;

    let omega = (i.ap2 * zp * zp * i.w1 * i.wp
        + i.am2 * zm * zm * i.w1 * i.wm
        + i.wp * i.wm)
        / lit::<T>(3.0);
    let y = i.v1.norm_sqr() / lit::<T>(36.0) * (i.ap2 * zp * zp * i.wp + i.am2 * zm * zm * i.wm)
        + d2 * i.w1 / lit::<T>(12.0)
            * (i.ap2 * i.ap2 * zp * zp * i.vp.norm_sqr()
                + i.am2 * i.am2 * zm * zm * i.vm.norm_sqr())
        + i.z * i.z * i.ap2 * i.am2 * d2 * d2
            * (i.ap2 * i.vp.norm_sqr() * i.wm + i.am2 * i.wp * i.vm.norm_sqr())
        + i.ap2 * i.am2 / lit::<T>(6.0)
            * d2
            * (half * zp * zm * i.w1 * re2(i.vp, i.vm) - i.z * zp * i.wp * re2(i.v1, i.vm)
                + i.z * zm * i.wm * re2(i.v1, i.vp));
    let r1 = half * i.w3 + y;
    let i1 = i.ap2 * i.am2 * d2 * i.z
        * (zp * i.w1 * i.wp * i.ldm - zm * i.w1 * i.ldp * i.wm + two * i.z * i.ld1 * i.wp * i.wm);
    let norm = (i.w3 / (T::PI() * omega)).sqrt();
    Ok(ReducedKernel1 { omega, y, r1, i1, norm })
}

/// Closed-form reduction keeping the first oscillator (appendix route).
pub fn reduce_keep_first_closed<T: Real>(k: &FullKernel<T>) -> Result<ReducedKernel1<T>> {
    let i = closed_inputs(k);
    if i.degenerate {
        return Err(Error::Domain(
            "closed-form reduction needs the analytic mode basis".into(),
        ));
    }
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let third = lit::<T>(3.0).recip();
    let xp = i.j12 + i.j23 - two * i.j13 + i.z;
    let xm = i.j12 + i.j23 - two * i.j13 - i.z;
    let re2 = |a: C<T>, b: C<T>| two * (a * b.conj()).re;

    let omega = (i.ap2 * xp * xp * i.w1 * i.wp + i.am2 * xm * xm * i.w1 * i.wm + i.wp * i.wm)
        * third;
    let y = i.v1.norm_sqr() / lit::<T>(36.0) * (i.ap2 * xp * xp * i.wp + i.am2 * xm * xm * i.wm)
        + i.w1 / lit::<T>(12.0)
            * (i.ap2 * i.ap2 * xp * xp * i.e1p * i.e1p * i.vp.norm_sqr()
                + i.am2 * i.am2 * xm * xm * i.e1m * i.e1m * i.vm.norm_sqr())
        + i.ap2 * i.am2 * i.z * i.z * i.d * i.d
            * (i.ap2 * i.e1p * i.e1p * i.vp.norm_sqr() * i.wm
                + i.am2 * i.e1m * i.e1m * i.wp * i.vm.norm_sqr())
        + i.ap2 * i.am2 / lit::<T>(4.0)
            * i.d
            * (-(i.j12 - i.j13) * i.e1m * i.e1p * i.w1 * re2(i.vp, i.vm)
                + two * third * i.z * xp * i.e1m * i.wp * re2(i.v1, i.vm)
                - two * third * i.z * xm * i.e1p * i.wm * re2(i.v1, i.vp));
    let r1 = y + half * i.w3;
    let i1 = -(i.ap2 * i.am2 * i.z * i.d)
        * (xp * i.e1m * i.w1 * i.wp * i.ldm - xm * i.e1p * i.w1 * i.ldp * i.wm
            - two * i.z * i.d * i.ld1 * i.wp * i.wm);
    let norm = (i.w3 / (T::PI() * omega)).sqrt();
    Ok(ReducedKernel1 { omega, y, r1, i1, norm })
}

/// Closed-form reduction dropping the first oscillator: the long
/// coefficient expressions for `(alpha_i, beta_i, gamma_ii)`.
pub fn reduce_drop_first_closed<T: Real>(k: &FullKernel<T>) -> Result<ReducedKernel2<T>> {
    let i = closed_inputs(k);
    if i.degenerate {
        return Err(Error::Domain(
            "closed-form reduction needs the analytic mode basis".into(),
        ));
    }
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let quart = lit::<T>(0.25);
    let sixth = lit::<T>(6.0).recip();
    let twelfth = lit::<T>(12.0).recip();
    let c36 = lit::<T>(36.0).recip();
    let re2 = |a: C<T>, b: C<T>| two * (a * b.conj()).re;

    let zp = two * i.j12 - i.j13 - i.j23 + two * i.z;
    let zm = two * i.j12 - i.j13 - i.j23 - two * i.z;
    let yp = i.j12 + i.j13 - two * i.j23 + i.z;
    let ym = i.j12 + i.j13 - two * i.j23 - i.z;
    let wqp = i.j12 - two * i.j13 + i.j23 + i.z;
    let wqm = i.j12 - two * i.j13 + i.j23 - i.z;
    let ap4 = i.ap2 * i.ap2;
    let am4 = i.am2 * i.am2;
    let apm = i.ap2 * i.am2;
    let v1n = i.v1.norm_sqr();
    let vpn = i.vp.norm_sqr();
    let vmn = i.vm.norm_sqr();
    let (e1p, e1m, e2p, e2m, d) = (i.e1p, i.e1m, i.e2p, i.e2m, i.d);
    let (w1, wp, wm) = (i.w1, i.wp, i.wm);
    let (ld1, ldp, ldm) = (i.ld1, i.ldp, i.ldm);
    let z = i.z;

    let a = w1 * lit::<T>(3.0).recip() + wp * i.ap2 * e1p * e1p + wm * i.am2 * e1m * e1m;

    let alpha1 = v1n * c36
        + quart * vpn * ap4 * e1p * e1p * e2p * e2p
        + quart * vmn * am4 * e1m * e1m * e2m * e2m
        + i.ap2 * sixth * (zp * zp * w1 * wp + (w1 * wp + ld1 * ldp) * e2p * e1p)
        + i.am2 * sixth * (zm * zm * w1 * wm + (w1 * wm + ld1 * ldm) * e2m * e1m)
        + apm * half
            * (lit::<T>(4.0) * z * z * d * d * wp * wm
                + (wp * wm + ldp * ldm) * e2p * e2m * e1m * e1p);

    let beta1 = i.ap2 * sixth * zp * (w1 * ldp * e2p - ld1 * wp * e1p)
        + i.am2 * sixth * zm * (w1 * ldm * e2m - ld1 * wm * e1m)
        + apm * z * d * (wp * ldm * e2m * e1p - ldp * wm * e2p * e1m);

    let alpha2 = v1n * c36
        + quart * vpn * ap4 * d * d * e1p * e1p
        + quart * vmn * am4 * d * d * e1m * e1m
        + i.ap2 * sixth * (yp * yp * w1 * wp + (w1 * wp + ld1 * ldp) * d * e1p)
        + i.am2 * sixth * (ym * ym * w1 * wm + (w1 * wm + ld1 * ldm) * d * e1m)
        + apm * half * d * d
            * (lit::<T>(4.0) * z * z * wp * wm + (wp * wm + ldp * ldm) * e1m * e1p);

    let beta2 = i.ap2 * sixth * yp * (w1 * ldp * d - ld1 * wp * e1p)
        + i.am2 * sixth * ym * (w1 * ldm * d - ld1 * wm * e1m)
        - apm * z * d * d * (wp * ldm * e1p - ldp * wm * e1m);

    let alpha3 = v1n * c36
        + quart * vpn * ap4 * d * e2p * e1p * e1p
        + quart * vmn * am4 * d * e2m * e1m * e1m
        + i.ap2 * twelfth * (two * zp * yp * w1 * wp - (w1 * wp + ld1 * ldp) * e1p * e1p)
        + i.am2 * twelfth * (two * zm * ym * w1 * wm - (w1 * wm + ld1 * ldm) * e1m * e1m)
        + apm * half
            * d
            * (-lit::<T>(4.0) * z * z * d * wp * wm
                + (wp * wm + ldp * ldm) * (i.j12 - i.j13) * e1m * e1p);

    let beta3 = i.ap2 * twelfth
        * (w1 * ldp * (two * d * e2p + e1p * e1p) + lit::<T>(3.0) * ld1 * wp * e1p * e1p)
        + i.am2 * twelfth
            * (w1 * ldm * (two * d * e2m + e1m * e1m) + lit::<T>(3.0) * ld1 * wm * e1m * e1m)
        + apm * half * z * d * (-wp * ldm * e1p * wqm + ldp * wm * e1m * wqp);

    let alpha4 = v1n * c36
        + quart * vpn * ap4 * d * e2p * e1p * e1p
        + quart * vmn * am4 * d * e2m * e1m * e1m
        - i.ap2 * twelfth * e1p * e1p * (w1 * wp + ld1 * ldp)
        - i.am2 * twelfth * e1m * e1m * (w1 * wm + ld1 * ldm)
        + apm * half * (i.j12 - i.j13) * d * e1m * e1p * (wp * wm + ldp * ldm);

    let beta4 = i.ap2 * twelfth * e1p * wqp * (w1 * ldp - ld1 * wp)
        + i.am2 * twelfth * e1m * wqm * (w1 * ldm - ld1 * wm)
        - apm * half * z * d * e1m * e1p * (wp * ldm - ldp * wm);

    let gamma11 = v1n * c36
        + quart * vpn * ap4 * e2p * e2p * e1p * e1p
        + quart * vmn * am4 * e2m * e2m * e1m * e1m
        + i.ap2 * twelfth * re2(i.v1, i.vp) * e2p * e1p
        + i.am2 * twelfth * re2(i.v1, i.vm) * e2m * e1m
        + apm * quart * re2(i.vp, i.vm) * e2p * e2m * e1m * e1p;

    let gamma22 = v1n * c36
        + quart * vpn * ap4 * d * d * e1p * e1p
        + quart * vmn * am4 * d * d * e1m * e1m
        + i.ap2 * twelfth * re2(i.v1, i.vp) * d * e1p
        + i.am2 * twelfth * re2(i.v1, i.vm) * d * e1m
        + apm * quart * re2(i.vp, i.vm) * d * d * e1m * e1p;

    Ok(ReducedKernel2 {
        a,
        alpha: [alpha1, alpha2, alpha3, alpha4],
        beta: [beta1, beta2, beta3, beta4],
        gamma11,
        gamma22,
        norm: (i.w3 / (T::PI() * T::PI() * a)).sqrt(),
    })
}

/// Reduce to the third oscillator (closed form when the basis is analytic).
pub fn reduce_keep_third<T: Real>(k: &FullKernel<T>) -> Result<ReducedKernel1<T>> {
    if k.basis.degenerate {
        marginalize_to_one(k, 2, &[0, 1])
    } else {
        reduce_keep_third_closed(k)
    }
}

/// Reduce to the last two oscillators (closed form when analytic).
pub fn reduce_drop_first<T: Real>(k: &FullKernel<T>) -> Result<ReducedKernel2<T>> {
    if k.basis.degenerate {
        marginalize_to_two(k, [1, 2], 0)
    } else {
        reduce_drop_first_closed(k)
    }
}

/// Reduce to the first oscillator (closed form when analytic).
pub fn reduce_keep_first<T: Real>(k: &FullKernel<T>) -> Result<ReducedKernel1<T>> {
    if k.basis.degenerate {
        marginalize_to_one(k, 0, &[1, 2])
    } else {
        reduce_keep_first_closed(k)
    }
}

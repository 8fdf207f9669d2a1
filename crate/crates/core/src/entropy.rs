//! Mixedness, spectral ladder parameters and entropies of the reduced
//! kernels.
//!
//! A one-oscillator Gaussian kernel has the geometric eigenvalue ladder
//! `p_n = (1 - xi) xi^n`; the two-oscillator kernel factorizes into two such
//! ladders.  The two-mode ladder parameters are computed from the kernel's
//! covariance matrix through the standard two-mode symplectic invariants,
//! which is exact; the coordinate-transformation chain quantities
//! (`eta`, `c`, `kappa`, ...) are carried along as diagnostics.  Note the
//! Hermitian eigenvalues of `kappa` reproduce `chi_plus/chi_minus` only up
//! to `O(Im^2 kappa_12)`, so they are not used for the ladder itself.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gaussian::{ReducedKernel1, ReducedKernel2};
use crate::scalar::{lit, Real};

type C<T> = Complex<T>;

/// Ladder parameter and eigenfunction width of a one-oscillator kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum1<T> {
    pub xi: T,
    pub epsilon: T,
}

/// Intermediates of the two-oscillator diagonalization chain.
#[derive(Debug, Clone, Copy)]
pub struct ChainDiagnostics<T> {
    pub eta: T,
    pub eta_plus: T,
    pub eta_minus: T,
    pub c: [[C<T>; 2]; 2],
    pub kappa: [[C<T>; 2]; 2],
    pub chi: T,
    pub chi_plus: T,
    pub chi_minus: T,
    pub epsilon1: T,
    pub epsilon2: T,
}

/// Ladder parameters of a two-oscillator kernel, `xi1 >= xi2`.
#[derive(Debug, Clone, Copy)]
pub struct Spectrum2<T> {
    pub xi1: T,
    pub xi2: T,
    pub chain: ChainDiagnostics<T>,
}

/// Purity plus Renyi and von Neumann entropies.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport<T> {
    pub purity: T,
    /// `(alpha, S_alpha)` pairs in the caller's order.
    pub s_renyi: Vec<(T, T)>,
    pub s_von: T,
}

/// Renyi orders reported by default.
pub const DEFAULT_ALPHAS: [f64; 3] = [0.5, 2.0, 3.0];

/// `tr rho^2` of a one-oscillator kernel.
pub fn purity_one<T: Real>(k: &ReducedKernel1<T>) -> Result<T> {
    if !(k.r1 > k.y.abs()) {
        return Err(Error::InvalidState(format!(
            "purity needs r1 > |y|, got r1 = {}, y = {}",
            k.r1, k.y
        )));
    }
    Ok(((k.r1 - k.y) / (k.r1 + k.y)).sqrt())
}

/// Ladder parameter `xi = y / (r1 + sqrt(r1^2 - y^2))` and width `epsilon`.
pub fn spectrum_one<T: Real>(k: &ReducedKernel1<T>) -> Result<Spectrum1<T>> {
    let window = lit::<T>(1e-12) * k.r1.abs().max(T::one());
    let y = if k.y < T::zero() {
        if k.y < -window {
            return Err(Error::InvalidState(format!(
                "ladder parameter needs y >= 0, got y = {}",
                k.y
            )));
        }
        T::zero()
    } else {
        k.y
    };
    if !(k.r1 > y) {
        return Err(Error::InvalidState(format!(
            "ladder parameter needs r1 > y, got r1 = {}, y = {}",
            k.r1, k.y
        )));
    }
    let root = ((k.r1 - y) * (k.r1 + y)).sqrt();
    Ok(Spectrum1 {
        xi: y / (k.r1 + root),
        epsilon: lit::<T>(2.0) * root / k.omega,
    })
}

fn von_neumann<T: Real>(xi: T) -> T {
    if xi <= T::zero() {
        return T::zero();
    }
    if xi < lit(1e-300) {
        return xi * (T::one() - xi.ln());
    }
    let one = T::one();
    -(one - xi).ln() - xi / (one - xi) * xi.ln()
}

fn renyi<T: Real>(xi: T, alpha: T) -> T {
    if (alpha - T::one()).abs() < lit(1e-14) {
        return von_neumann(xi);
    }
    if xi <= T::zero() {
        return T::zero();
    }
    let one = T::one();
    (alpha * (one - xi).ln() - (one - xi.powf(alpha)).ln()) / (one - alpha)
}

fn report_for<T: Real>(xis: &[T], alphas: &[T]) -> EntropyReport<T> {
    let purity = xis
        .iter()
        .fold(T::one(), |acc, &xi| acc * (T::one() - xi) / (T::one() + xi));
    let s_von = xis.iter().fold(T::zero(), |acc, &xi| acc + von_neumann(xi));
    let s_renyi = alphas
        .iter()
        .map(|&a| {
            let s = xis.iter().fold(T::zero(), |acc, &xi| acc + renyi(xi, a));
            (a, s)
        })
        .collect();
    EntropyReport { purity, s_renyi, s_von }
}

/// Entropies of a one-oscillator ladder.
pub fn entropies_one<T: Real>(s: &Spectrum1<T>, alphas: &[T]) -> EntropyReport<T> {
    report_for(&[s.xi], alphas)
}

/// `tr rho^2` of a two-oscillator kernel.
pub fn purity_two<T: Real>(k: &ReducedKernel2<T>) -> Result<T> {
    let [a1, a2, a3, a4] = k.alpha;
    let (g11, g22) = (k.gamma11, k.gamma22);
    let m22 = a2 * a2 - g22 * g22;
    let n1 = a1 * m22 - a2 * (a3 * a3 + a4 * a4) + lit::<T>(2.0) * g22 * a3 * a4;
    let n2 = g11 * m22 + g22 * (a3 * a3 + a4 * a4) - lit::<T>(2.0) * a2 * a3 * a4;
    if !(m22 > T::zero()) || !(n1 > n2.abs()) {
        return Err(Error::InvalidState(
            "purity denominators are not positive; kernel is not a valid state".into(),
        ));
    }
    let w3 = k.omega_prime_product();
    Ok(w3 * k.a / lit::<T>(4.0) * (m22 / (n1 * n1 - n2 * n2)).sqrt())
}

fn clamp_ladder<T: Real>(chi_raw: T, what: &str) -> Result<T> {
    let window = lit::<T>(1e-10);
    if chi_raw >= T::one() {
        return Err(Error::InvalidState(format!(
            "{what} = {chi_raw} >= 1: kernel is not a valid state"
        )));
    }
    if chi_raw <= -window {
        return Err(Error::InvalidState(format!(
            "{what} = {chi_raw} below the clamping window"
        )));
    }
    // an exactly-zero ladder parameter comes out of the invariants as
    // +-noise; flush the whole window so Renyi orders below one (which
    // behave like sqrt(chi) there) stay exactly zero
    if chi_raw.abs() < window {
        return Ok(T::zero());
    }
    Ok(chi_raw)
}

/// Both ladder parameters of a two-oscillator kernel.
///
/// `xi1, xi2` come from the symplectic invariants of the kernel's
/// covariance matrix (exact for any valid Gaussian state); the chain record
/// holds the rotated/rescaled coordinate-transformation intermediates.
pub fn spectrum_two<T: Real>(k: &ReducedKernel2<T>) -> Result<Spectrum2<T>> {
    let [a1, a2, a3, _a4] = k.alpha;
    let delta = a1 - a2;
    let eta = (delta * delta + lit::<T>(4.0) * a3 * a3).sqrt();
    let two = lit::<T>(2.0);
    let eta_plus = (a1 + a2 + eta) / two;
    let eta_minus = (a1 + a2 - eta) / two;
    if !(eta_minus > T::zero()) {
        return Err(Error::InvalidState(format!(
            "rotated widths must be positive (alpha1 + alpha2 > eta), got eta- = {eta_minus}"
        )));
    }

    let (nu1, nu2) = symplectic_pair(k)?;
    let xi_of = |nu: T| (two * nu - T::one()) / (two * nu + T::one());
    let chi_of = |xi: T| two * xi / (T::one() + xi * xi);
    let chi_plus = clamp_ladder(chi_of(xi_of(nu1)), "chi_plus")?;
    let chi_minus = clamp_ladder(chi_of(xi_of(nu2)), "chi_minus")?;
    let xi1 = chi_plus / (T::one() + ((T::one() - chi_plus) * (T::one() + chi_plus)).sqrt());
    let xi2 = chi_minus / (T::one() + ((T::one() - chi_minus) * (T::one() + chi_minus)).sqrt());

    let chain = chain_diagnostics(k, eta, eta_plus, eta_minus, chi_plus, chi_minus);
    Ok(Spectrum2 { xi1, xi2, chain })
}

/// Mode-ordered two-mode covariance matrix of the kernel and its
/// symplectic eigenvalues `nu1 >= nu2` (`1/2` for a pure mode).
fn symplectic_pair<T: Real>(k: &ReducedKernel2<T>) -> Result<(T, T)> {
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    let [a1, a2, a3, a4] = k.alpha;
    let [b1, b2, b3, b4] = k.beta;
    let s = two / k.a;
    // rho(x,y) = N exp(-x P x / a - y P* y / a + 2 x D y / a)
    let l = [[s * a1, s * a3], [s * a3, s * a2]];
    let m = [[-s * b1, -s * b3], [-s * b3, -s * b2]];
    let wr = [[s * k.gamma11, s * a4], [s * a4, s * k.gamma22]];
    let wi = [[T::zero(), -s * b4], [s * b4, T::zero()]];
    let kk = [
        [m[0][0] - wi[0][0], m[0][1] - wi[0][1]],
        [m[1][0] - wi[1][0], m[1][1] - wi[1][1]],
    ];
    let f1 = [
        [l[0][0] - wr[0][0], l[0][1] - wr[0][1]],
        [l[1][0] - wr[1][0], l[1][1] - wr[1][1]],
    ];
    let f2 = [
        [l[0][0] + wr[0][0], l[0][1] + wr[0][1]],
        [l[1][0] + wr[1][0], l[1][1] + wr[1][1]],
    ];
    let det_f1 = f1[0][0] * f1[1][1] - f1[0][1] * f1[1][0];
    if !(det_f1 > T::zero()) || !(f1[0][0] > T::zero()) {
        return Err(Error::InvalidState(
            "kernel diagonal is not positive definite".into(),
        ));
    }
    let f1inv = [
        [f1[1][1] / det_f1, -f1[0][1] / det_f1],
        [-f1[1][0] / det_f1, f1[0][0] / det_f1],
    ];
    let mul = |x: &[[T; 2]; 2], y: &[[T; 2]; 2]| -> [[T; 2]; 2] {
        let mut out = [[T::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        out
    };
    let tr = |x: &[[T; 2]; 2]| -> [[T; 2]; 2] { [[x[0][0], x[1][0]], [x[0][1], x[1][1]]] };
    let scale2 = |x: &[[T; 2]; 2], c: T| -> [[T; 2]; 2] {
        [[x[0][0] * c, x[0][1] * c], [x[1][0] * c, x[1][1] * c]]
    };
    let sxx = scale2(&f1inv, half);
    let sxp = scale2(&mul(&f1inv, &tr(&kk)), half);
    let kf = mul(&kk, &mul(&f1inv, &tr(&kk)));
    let spp = [
        [(f2[0][0] + kf[0][0]) * half, (f2[0][1] + kf[0][1]) * half],
        [(f2[1][0] + kf[1][0]) * half, (f2[1][1] + kf[1][1]) * half],
    ];

    // sigma in mode order (x1, p1, x2, p2)
    let mut sig = [[T::zero(); 4]; 4];
    let idx = [(0usize, false), (0, true), (1, false), (1, true)];
    for (r, &(i, rp)) in idx.iter().enumerate() {
        for (cidx, &(j, cp)) in idx.iter().enumerate() {
            sig[r][cidx] = match (rp, cp) {
                (false, false) => sxx[i][j],
                (false, true) => sxp[i][j],
                (true, false) => sxp[j][i],
                (true, true) => spp[i][j],
            };
        }
    }
    let det_mode = |i: usize, j: usize| -> T {
        sig[2 * i][2 * j] * sig[2 * i + 1][2 * j + 1]
            - sig[2 * i][2 * j + 1] * sig[2 * i + 1][2 * j]
    };
    let delta = det_mode(0, 0) + det_mode(1, 1) + two * det_mode(0, 1);
    let det4 = det4x4(&sig);
    let disc = (delta * delta - lit::<T>(4.0) * det4).max(T::zero()).sqrt();
    let nu1_sq = (delta + disc) / two;
    if !(nu1_sq > T::zero()) {
        return Err(Error::InvalidState(
            "covariance matrix has no positive symplectic eigenvalue".into(),
        ));
    }
    let nu1 = nu1_sq.sqrt();
    let nu2 = (det4.max(T::zero()) / nu1_sq).sqrt();
    Ok((nu1, nu2))
}

fn det4x4<T: Real>(m: &[[T; 4]; 4]) -> T {
    let mut a = *m;
    let mut det = T::one();
    for col in 0..4 {
        let mut piv = col;
        for r in col + 1..4 {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col] == T::zero() {
            return T::zero();
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = det * a[col][col];
        for r in col + 1..4 {
            let f = a[r][col] / a[col][col];
            for cc in col..4 {
                a[r][cc] = a[r][cc] - f * a[col][cc];
            }
        }
    }
    det
}

fn chain_diagnostics<T: Real>(
    k: &ReducedKernel2<T>,
    eta: T,
    eta_plus: T,
    eta_minus: T,
    chi_plus: T,
    chi_minus: T,
) -> ChainDiagnostics<T> {
    let [a1, a2, a3, a4] = k.alpha;
    let b4 = k.beta[3];
    let delta = a1 - a2;
    let zero = T::zero();
    let d = [
        [C::new(k.gamma11, zero), C::new(a4, -b4)],
        [C::new(a4, b4), C::new(k.gamma22, zero)],
    ];
    // rotation diagonalizing the real quadratic block; falls back to the
    // identity/swap when the off-diagonal coupling vanishes
    let scale = a1.abs().max(a2.abs()).max(T::one());
    let o: [[T; 2]; 2] = if a3.abs() > lit::<T>(1e-14) * scale {
        let gap = eta - delta;
        let n = (lit::<T>(2.0) * eta * gap).sqrt();
        [
            [lit::<T>(2.0) * a3 / n, gap / n],
            [-gap / n, lit::<T>(2.0) * a3 / n],
        ]
    } else if delta >= zero {
        [[T::one(), zero], [zero, T::one()]]
    } else {
        [[zero, T::one()], [-T::one(), zero]]
    };
    let mut c = [[C::new(zero, zero); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut s = C::new(zero, zero);
            for p in 0..2 {
                for q in 0..2 {
                    s = s + d[p][q] * (o[i][p] * o[j][q]);
                }
            }
            c[i][j] = s;
        }
    }
    let den = (eta_plus * eta_minus).sqrt();
    let kappa = [
        [c[0][0] / eta_plus, c[0][1] / den],
        [c[1][0] / den, c[1][1] / eta_minus],
    ];
    let two = lit::<T>(2.0);
    let unit = |chi: T| (two * ((T::one() - chi) * (T::one() + chi)).sqrt()) / k.a;
    ChainDiagnostics {
        eta,
        eta_plus,
        eta_minus,
        c,
        kappa,
        chi: chi_plus - chi_minus,
        chi_plus,
        chi_minus,
        epsilon1: unit(chi_plus),
        epsilon2: unit(chi_minus),
    }
}

/// Entropies of a two-oscillator kernel's ladder pair.
pub fn entropies_two<T: Real>(s: &Spectrum2<T>, alphas: &[T]) -> EntropyReport<T> {
    report_for(&[s.xi1, s.xi2], alphas)
}

/// Entropies of the complementary pair through the kept-first-oscillator
/// kernel; by purity of the full state this reproduces [`entropies_two`].
pub fn entropies_via_a<T: Real>(k: &ReducedKernel1<T>, alphas: &[T]) -> Result<EntropyReport<T>> {
    let s = spectrum_one(k)?;
    Ok(entropies_one(&s, alphas))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{marginalize_generic, reduce_drop_first, reduce_keep_first, reduce_keep_third, ReducedKernel};
    use crate::scenario::{presets, Scenario};

    fn ln2() -> f64 {
        std::f64::consts::LN_2
    }

    #[test]
    fn zero_ladder_gives_zero_entropies() {
        let s = Spectrum1 { xi: 0.0f64, epsilon: 1.0 };
        let r = entropies_one(&s, &[0.5, 1.0, 2.0, 3.0]);
        assert_eq!(r.s_von, 0.0);
        assert_eq!(r.purity, 1.0);
        for (_, v) in r.s_renyi {
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn half_ladder_entropy_matches_direct_summation() {
        // independent oracle: -sum p_n ln p_n over the geometric ladder
        let xi: f64 = 0.5;
        let mut s_sum = 0.0;
        for n in 0..=200 {
            let p = (1.0 - xi) * xi.powi(n);
            s_sum -= p * p.ln();
        }
        let s = Spectrum1 { xi, epsilon: 1.0 };
        let r = entropies_one(&s, &[]);
        assert!((r.s_von - s_sum).abs() < 1e-12);
        assert!((r.s_von - 2.0 * ln2()).abs() < 1e-12);
    }

    #[test]
    fn renyi_two_is_minus_log_purity() {
        for &xi in &[0.01f64, 0.3, 0.77, 0.999] {
            let s = Spectrum1 { xi, epsilon: 1.0 };
            let r = entropies_one(&s, &[2.0]);
            assert!((r.s_renyi[0].1 + r.purity.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn von_neumann_is_alpha_to_one_limit() {
        for &xi in &[0.1f64, 0.45, 0.9] {
            let s = Spectrum1 { xi, epsilon: 1.0 };
            let r = entropies_one(&s, &[1.0 - 1e-4, 1.0 + 1e-4]);
            let mid = 0.5 * (r.s_renyi[0].1 + r.s_renyi[1].1);
            assert!((mid - r.s_von).abs() < 1e-7);
        }
    }

    #[test]
    fn renyi_is_nonincreasing_in_alpha() {
        let alphas: Vec<f64> = (1..40).map(|i| 0.1 * i as f64).collect();
        for &xi in &[0.05f64, 0.4, 0.8] {
            let s = Spectrum1 { xi, epsilon: 1.0 };
            let r = entropies_one(&s, &alphas);
            for w in r.s_renyi.windows(2) {
                assert!(w[1].1 <= w[0].1 + 1e-12, "not monotone at {:?}", w);
            }
        }
    }

    #[test]
    fn entropies_are_additive_over_ladders() {
        let chain_stub = |xi1: f64, xi2: f64| Spectrum2 {
            xi1,
            xi2,
            chain: ChainDiagnostics {
                eta: 0.0,
                eta_plus: 1.0,
                eta_minus: 1.0,
                c: [[Complex::new(0.0, 0.0); 2]; 2],
                kappa: [[Complex::new(0.0, 0.0); 2]; 2],
                chi: 0.0,
                chi_plus: 0.0,
                chi_minus: 0.0,
                epsilon1: 1.0,
                epsilon2: 1.0,
            },
        };
        let s = chain_stub(0.3, 0.2);
        let r12 = entropies_two(&s, &[]);
        let r1 = entropies_two(&chain_stub(0.3, 0.0), &[]);
        let r2 = entropies_two(&chain_stub(0.0, 0.2), &[]);
        assert!((r12.s_von - r1.s_von - r2.s_von).abs() < 1e-14);
    }

    #[test]
    fn decoupled_state_is_pure_everywhere() {
        use crate::model::{CouplingSchedule, ParamProfile};
        let schedule: CouplingSchedule<f64> = CouplingSchedule {
            k0: ParamProfile::Quench { initial: 4.0, quenched: 6.0 },
            j12: ParamProfile::Constant(0.0),
            j13: ParamProfile::Constant(0.0),
            j23: ParamProfile::Constant(0.0),
        };
        let sc = Scenario::new(schedule, 5.0).unwrap();
        for &t in &[0.0, 0.9, 3.3] {
            let k = sc.kernel_at(t).unwrap();
            let kc = reduce_keep_third(&k).unwrap();
            assert!(kc.y.abs() < 1e-12, "decoupled y = {}", kc.y);
            assert!((purity_one(&kc).unwrap() - 1.0).abs() < 1e-10);
            let k2 = reduce_drop_first(&k).unwrap();
            assert!((purity_two(&k2).unwrap() - 1.0).abs() < 1e-10);
            let s2 = spectrum_two(&k2).unwrap();
            assert!(s2.xi1.abs() < 1e-9 && s2.xi2.abs() < 1e-9);
            // decoupled kernel has no cross couplings at all
            assert!(k2.alpha[2].abs() < 1e-12 && k2.alpha[3].abs() < 1e-12);
            assert!(k2.beta[2].abs() < 1e-12 && k2.beta[3].abs() < 1e-12);
        }
    }

    #[test]
    fn purity_matches_ladder_identity_on_figure_configs() {
        for schedule in [presets::fig1::<f64>(), presets::fig2::<f64>(), presets::fig3::<f64>()] {
            let sc = Scenario::new(schedule, 6.0).unwrap();
            for i in 0..30 {
                let t = 0.2 * i as f64;
                let k = sc.kernel_at(t).unwrap();
                let kc = reduce_keep_third(&k).unwrap();
                let s1 = spectrum_one(&kc).unwrap();
                let p1 = purity_one(&kc).unwrap();
                assert!((p1 - (1.0 - s1.xi) / (1.0 + s1.xi)).abs() < 1e-12);
                let k2 = reduce_drop_first(&k).unwrap();
                let s2 = spectrum_two(&k2).unwrap();
                let p2 = purity_two(&k2).unwrap();
                let p2xi =
                    (1.0 - s2.xi1) / (1.0 + s2.xi1) * (1.0 - s2.xi2) / (1.0 + s2.xi2);
                assert!((p2 - p2xi).abs() < 1e-9, "purity ladder identity at t={t}");
            }
        }
    }

    #[test]
    fn cross_route_entropies_agree_on_figure_configs() {
        for schedule in [presets::fig1::<f64>(), presets::fig2::<f64>(), presets::fig3::<f64>()] {
            let sc = Scenario::new(schedule, 6.0).unwrap();
            for &t in &[0.5, 1.0, 1.5, 3.0] {
                let k = sc.kernel_at(t).unwrap();
                let k2 = reduce_drop_first(&k).unwrap();
                let s2 = spectrum_two(&k2).unwrap();
                let bc = entropies_two(&s2, &[0.5, 2.0]);
                let ka = reduce_keep_first(&k).unwrap();
                let via_a = entropies_via_a(&ka, &[0.5, 2.0]).unwrap();
                assert!(
                    (bc.s_von - via_a.s_von).abs() < 1e-9,
                    "cross-route S_von at t={t}: {} vs {}",
                    bc.s_von,
                    via_a.s_von
                );
                for (x, y) in bc.s_renyi.iter().zip(&via_a.s_renyi) {
                    assert!((x.1 - y.1).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn block_diagonal_kernel_reduces_to_two_one_mode_ladders() {
        // two independent single-oscillator kernels glued together
        let one: ReducedKernel1<f64> = ReducedKernel1 { omega: 2.0, y: 0.35, r1: 1.1, i1: 0.2, norm: 1.0 };
        let other = ReducedKernel1 { omega: 2.0, y: 0.15, r1: 0.9, i1: -0.1, norm: 1.0 };
        let k2 = ReducedKernel2 {
            a: 2.0,
            alpha: [one.r1, other.r1, 0.0, 0.0],
            beta: [one.i1, other.i1, 0.0, 0.0],
            gamma11: one.y,
            gamma22: other.y,
            norm: 1.0,
        };
        let s2 = spectrum_two(&k2).unwrap();
        let xa = spectrum_one(&one).unwrap().xi;
        let xb = spectrum_one(&other).unwrap().xi;
        let (hi, lo) = if xa >= xb { (xa, xb) } else { (xb, xa) };
        assert!((s2.xi1 - hi).abs() < 1e-12);
        assert!((s2.xi2 - lo).abs() < 1e-12);
    }

    #[test]
    fn marginalize_enum_roundtrip() {
        let sc = Scenario::new(presets::fig1::<f64>(), 2.0).unwrap();
        let k = sc.kernel_at(1.3).unwrap();
        match marginalize_generic(&k, &[3]).unwrap() {
            ReducedKernel::One(r) => {
                let closed = reduce_keep_third(&k).unwrap();
                assert!((r.omega - closed.omega).abs() < 1e-9 * closed.omega.abs());
            }
            _ => panic!("expected one-oscillator kernel"),
        }
        assert!(marginalize_generic(&k, &[]).is_err());
        assert!(marginalize_generic(&k, &[1, 2, 3]).is_err());
        assert!(marginalize_generic(&k, &[4]).is_err());
    }
}

//! Per-mode Ermakov dynamics.
//!
//! Each normal mode carries a scale factor `b(t)` obeying
//! `b'' + lambda(t) b = lambda(0) / b^3` with `b(0) = 1`, `b'(0) = 0`.
//! Sudden quenches admit the closed form implemented in [`solve_quench`];
//! arbitrary profiles go through the adaptive Dormand-Prince integrator in
//! [`solve_ode`].

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::interp_linear;
use crate::scalar::{as_f64, lit, Real};

/// State of one mode's scale factor at a fixed time.
///
/// `omega0_sq` is the mode eigenvalue at `t = 0` (always positive for a
/// normalizable initial vacuum); the effective frequency and the complex
/// kernel parameter are derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErmakovState<T> {
    pub b: T,
    pub bdot: T,
    pub omega0_sq: T,
}

impl<T: Real> ErmakovState<T> {
    pub fn initial(omega0_sq: T) -> Self {
        ErmakovState { b: T::one(), bdot: T::zero(), omega0_sq }
    }

    /// Effective frequency `omega(0) / b^2`.
    pub fn omega_prime(&self) -> T {
        self.omega0_sq.sqrt() / (self.b * self.b)
    }

    /// Logarithmic derivative `b'/b`.
    pub fn log_deriv(&self) -> T {
        self.bdot / self.b
    }

    /// Complex width parameter `omega' - i b'/b` of the mode's Gaussian.
    pub fn v(&self) -> Complex<T> {
        Complex::new(self.omega_prime(), -self.log_deriv())
    }
}

/// Time profile of one mode's eigenvalue `lambda(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ModeProfile<T> {
    Quench { wi_sq: T, wf_sq: T },
    Constant { w_sq: T },
    Tabulated { knots: Vec<(T, T)> },
}

impl<T: Real> ModeProfile<T> {
    pub fn omega0_sq(&self) -> T {
        match self {
            ModeProfile::Quench { wi_sq, .. } => *wi_sq,
            ModeProfile::Constant { w_sq } => *w_sq,
            ModeProfile::Tabulated { knots } => knots[0].1,
        }
    }

    /// Eigenvalue at `t > 0` (quench profiles report the final value).
    pub fn omega_sq_at(&self, t: T) -> T {
        match self {
            ModeProfile::Quench { wi_sq, wf_sq } => {
                if t == T::zero() {
                    *wi_sq
                } else {
                    *wf_sq
                }
            }
            ModeProfile::Constant { w_sq } => *w_sq,
            ModeProfile::Tabulated { knots } => interp_linear(knots, t),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let ModeProfile::Tabulated { knots } = self {
            if knots.is_empty() {
                return Err(Error::Domain("empty tabulated mode profile".into()));
            }
            for w in knots.windows(2) {
                if w[1].0 <= w[0].0 {
                    return Err(Error::Domain(
                        "tabulated mode profile knots must be strictly increasing".into(),
                    ));
                }
            }
        }
        if !(self.omega0_sq() > T::zero()) {
            return Err(Error::Domain(format!(
                "initial mode eigenvalue must be positive for a normalizable vacuum, got {}",
                self.omega0_sq()
            )));
        }
        Ok(())
    }
}

/// Closed-form scale factor after a sudden quench `wi_sq -> wf_sq`.
///
/// `b^2 = (wf - wi)/(2 wf) C(t) + (wf + wi)/(2 wf)` with
/// `C = cos(2 sqrt(wf) t)` for `wf > 0` and `cosh(2 sqrt(-wf) t)` for
/// `wf < 0` (analytic continuation of the oscillatory branch).
pub fn solve_quench<T: Real>(wi_sq: T, wf_sq: T, t: T) -> Result<ErmakovState<T>> {
    if !(wi_sq > T::zero()) {
        return Err(Error::Domain(format!(
            "pre-quench eigenvalue must be positive, got {wi_sq}"
        )));
    }
    if wf_sq == T::zero() {
        return Err(Error::Domain(
            "post-quench eigenvalue of zero (free particle) is unsupported".into(),
        ));
    }
    if !(t >= T::zero()) {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    if t == T::zero() {
        return Ok(ErmakovState::initial(wi_sq));
    }
    let two = lit::<T>(2.0);
    let (c, cdot) = if wf_sq > T::zero() {
        let w = wf_sq.sqrt();
        ((two * w * t).cos(), -two * w * (two * w * t).sin())
    } else {
        let m = (-wf_sq).sqrt();
        ((two * m * t).cosh(), two * m * (two * m * t).sinh())
    };
    let amp = (wf_sq - wi_sq) / (two * wf_sq);
    let b_sq = amp * c + (wf_sq + wi_sq) / (two * wf_sq);
    let b = b_sq.sqrt();
    let bdot = amp * cdot / (two * b);
    Ok(ErmakovState { b, bdot, omega0_sq: wi_sq })
}

/// Options for the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions<T> {
    pub reltol: T,
    pub abstol: T,
    /// Step ceiling; also bounds the dense-output interpolation error.
    pub max_step: T,
    pub max_steps: usize,
}

impl<T: Real> Default for OdeOptions<T> {
    fn default() -> Self {
        OdeOptions {
            reltol: lit(1e-10),
            abstol: lit(1e-12),
            max_step: lit(1e-2),
            max_steps: 40_000_000,
        }
    }
}

const B_FLOOR: f64 = 1e-8;

/// Solution trajectory: accepted integrator knots plus cubic Hermite
/// interpolation between them (exact at `t = 0` by construction).
#[derive(Debug, Clone)]
pub struct ErmakovTrajectory<T> {
    ts: Vec<T>,
    bs: Vec<T>,
    bdots: Vec<T>,
    bddots: Vec<T>,
    omega0_sq: T,
}

impl<T: Real> ErmakovTrajectory<T> {
    pub fn omega0_sq(&self) -> T {
        self.omega0_sq
    }

    pub fn t_end(&self) -> T {
        *self.ts.last().unwrap()
    }

    /// Accepted integrator knots.
    pub fn knots(&self) -> impl Iterator<Item = (T, ErmakovState<T>)> + '_ {
        let w0 = self.omega0_sq;
        self.ts
            .iter()
            .zip(self.bs.iter().zip(&self.bdots))
            .map(move |(&t, (&b, &bdot))| (t, ErmakovState { b, bdot, omega0_sq: w0 }))
    }

    /// Hermite-interpolated state at `t` inside the integration window.
    pub fn state_at(&self, t: T) -> Result<ErmakovState<T>> {
        if !(t >= T::zero() && t <= self.t_end()) {
            return Err(Error::Domain(format!(
                "query time {t} outside trajectory window [0, {}]",
                self.t_end()
            )));
        }
        let idx = match self.ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => {
                return Ok(ErmakovState {
                    b: self.bs[i],
                    bdot: self.bdots[i],
                    omega0_sq: self.omega0_sq,
                })
            }
            Err(i) => i - 1,
        };
        let h = self.ts[idx + 1] - self.ts[idx];
        let s = (t - self.ts[idx]) / h;
        let hermite = |y0: T, d0: T, y1: T, d1: T| {
            let one = T::one();
            let two = lit::<T>(2.0);
            let three = lit::<T>(3.0);
            let s2 = s * s;
            let s3 = s2 * s;
            y0 * (two * s3 - three * s2 + one)
                + d0 * h * (s3 - two * s2 + s)
                + y1 * (three * s2 - two * s3)
                + d1 * h * (s3 - s2)
        };
        let b = hermite(
            self.bs[idx],
            self.bdots[idx],
            self.bs[idx + 1],
            self.bdots[idx + 1],
        );
        let bdot = hermite(
            self.bdots[idx],
            self.bddots[idx],
            self.bdots[idx + 1],
            self.bddots[idx + 1],
        );
        Ok(ErmakovState { b, bdot, omega0_sq: self.omega0_sq })
    }

    /// `n` evenly spaced interpolated samples over the whole window.
    pub fn sample_uniform(&self, n: usize) -> Result<Vec<(T, ErmakovState<T>)>> {
        if n < 2 {
            return Err(Error::Domain("need at least two samples".into()));
        }
        let step = self.t_end() / lit::<T>((n - 1) as f64);
        (0..n)
            .map(|i| {
                let t = if i == n - 1 {
                    self.t_end()
                } else {
                    step * lit::<T>(i as f64)
                };
                self.state_at(t).map(|s| (t, s))
            })
            .collect()
    }
}

/// Integrate the Ermakov equation up to `tmax` at relative tolerance
/// `reltol` (allowed range `[1e-13, 1e-6]`).
pub fn solve_ode<T: Real>(
    profile: &ModeProfile<T>,
    tmax: T,
    reltol: T,
) -> Result<ErmakovTrajectory<T>> {
    let opts = OdeOptions { reltol, ..Default::default() };
    solve_ode_with(profile, tmax, &opts)
}

/// Like [`solve_ode`] with full control over the step parameters.
pub fn solve_ode_with<T: Real>(
    profile: &ModeProfile<T>,
    tmax: T,
    opts: &OdeOptions<T>,
) -> Result<ErmakovTrajectory<T>> {
    integrate(profile, tmax, opts, &[])
}

/// Integrate while stepping exactly onto every time in `times` (sorted,
/// within `[0, tmax]`), so those states carry no interpolation error.
pub fn solve_ode_grid<T: Real>(
    profile: &ModeProfile<T>,
    times: &[T],
    opts: &OdeOptions<T>,
) -> Result<Vec<(T, ErmakovState<T>)>> {
    let tmax = *times
        .last()
        .ok_or_else(|| Error::Domain("empty time grid".into()))?;
    let traj = integrate(profile, tmax, opts, times)?;
    times.iter().map(|&t| traj.state_at(t).map(|s| (t, s))).collect()
}

fn validate_reltol<T: Real>(reltol: T) -> Result<()> {
    if reltol < lit(1e-13) || reltol > lit(1e-6) {
        return Err(Error::Domain(format!(
            "reltol {reltol} outside supported range [1e-13, 1e-6]"
        )));
    }
    Ok(())
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

fn integrate<T: Real>(
    profile: &ModeProfile<T>,
    tmax: T,
    opts: &OdeOptions<T>,
    mandatory: &[T],
) -> Result<ErmakovTrajectory<T>> {
    profile.validate()?;
    validate_reltol(opts.reltol)?;
    if !(tmax > T::zero()) {
        return Err(Error::Domain(format!("tmax must be positive, got {tmax}")));
    }
    let w0 = profile.omega0_sq();
    let floor = lit::<T>(B_FLOOR);
    let rhs = |t: T, y: [T; 2]| -> Result<[T; 2]> {
        let b = y[0];
        if b < floor {
            return Err(Error::Singular { t: as_f64(t), b: as_f64(b) });
        }
        Ok([y[1], w0 / (b * b * b) - profile.omega_sq_at(t) * b])
    };

    let mut checkpoints: Vec<T> = mandatory
        .iter()
        .copied()
        .filter(|&t| t > T::zero() && t < tmax)
        .collect();
    checkpoints.push(tmax);
    checkpoints.dedup_by(|a, b| *a == *b);
    let mut next_cp = 0usize;

    let mut t = T::zero();
    let mut y = [T::one(), T::zero()];
    let mut dy = rhs(t, y)?;

    let mut ts = vec![t];
    let mut bs = vec![y[0]];
    let mut bdots = vec![y[1]];
    let mut bddots = vec![dy[1]];

    // initial step from the RHS magnitude, bounded by max_step
    let scale = T::one() + w0.abs() + profile.omega_sq_at(T::zero()).abs();
    let mut h = (opts.reltol.powf(lit(0.2)) / scale.sqrt())
        .min(opts.max_step)
        .max(lit(1e-12));

    let order_inv = lit::<T>(0.2);
    let safety = lit::<T>(0.9);
    let mut nsteps = 0usize;
    while t < tmax {
        nsteps += 1;
        if nsteps > opts.max_steps {
            return Err(Error::Integration(format!(
                "step budget exhausted at t = {}",
                as_f64(t)
            )));
        }
        h = h.min(opts.max_step);
        while next_cp < checkpoints.len() && checkpoints[next_cp] <= t {
            next_cp += 1;
        }
        if next_cp < checkpoints.len() {
            let gap = checkpoints[next_cp] - t;
            if h >= gap {
                h = gap;
            } else if h > gap * lit(0.5) {
                h = gap * lit(0.5);
            }
        }

        let mut k = [[T::zero(); 2]; 7];
        k[0] = dy;
        let mut failed = false;
        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = lit::<T>(A[stage - 1][j]);
                ys[0] = ys[0] + h * a * kj[0];
                ys[1] = ys[1] + h * a * kj[1];
            }
            match rhs(t + h * lit(C[stage - 1]), ys) {
                Ok(d) => k[stage] = d,
                Err(Error::Singular { .. }) => {
                    failed = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if failed {
            h = h * lit(0.25);
            if h < lit(1e-14) {
                return Err(Error::Singular { t: as_f64(t), b: as_f64(y[0]) });
            }
            continue;
        }

        // 5th-order solution is stage row 6 of A; k[6] is FSAL
        let mut ynew = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            let a = lit::<T>(A[5][j]);
            ynew[0] = ynew[0] + h * a * kj[0];
            ynew[1] = ynew[1] + h * a * kj[1];
        }

        let mut err = T::zero();
        let mut e_comp = [T::zero(); 2];
        for (j, kj) in k.iter().enumerate() {
            let ej = lit::<T>(E[j]);
            e_comp[0] = e_comp[0] + ej * kj[0];
            e_comp[1] = e_comp[1] + ej * kj[1];
        }
        for i in 0..2 {
            let sc = opts.abstol + opts.reltol * y[i].abs().max(ynew[i].abs());
            let r = h * e_comp[i] / sc;
            err = err + r * r;
        }
        err = (err / lit(2.0)).sqrt();

        if err <= T::one() {
            t = t + h;
            y = ynew;
            if y[0] < floor {
                return Err(Error::Singular { t: as_f64(t), b: as_f64(y[0]) });
            }
            dy = rhs(t, y)?;
            ts.push(t);
            bs.push(y[0]);
            bdots.push(y[1]);
            bddots.push(dy[1]);
        }
        let factor = if err == T::zero() {
            lit(5.0)
        } else {
            (safety * err.powf(-order_inv)).max(lit(0.2)).min(lit(5.0))
        };
        h = h * factor;
        if h < lit(1e-14) {
            return Err(Error::Integration(format!(
                "step size underflow at t = {}",
                as_f64(t)
            )));
        }
    }

    Ok(ErmakovTrajectory { ts, bs, bdots, bddots, omega0_sq: w0 })
}

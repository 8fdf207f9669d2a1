//! Coupling matrix of the three-oscillator chain and its eigen-decomposition.
//!
//! The Hamiltonian couples three unit-mass oscillators through a common
//! frequency parameter `k0` and pairwise spring constants `j12`, `j13`,
//! `j23`, all of which may depend on time.  Everything downstream consumes
//! the orthogonal normal-mode basis produced by [`decompose`].

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Time profile of a single coupling parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamProfile<T> {
    /// Sudden quench: `initial` exactly at `t = 0`, `quenched` for `t > 0`.
    Quench { initial: T, quenched: T },
    /// Time-independent value.
    Constant(T),
    /// Piecewise-linear profile over strictly increasing time knots,
    /// clamped to the end values outside the knot range.
    Tabulated(Vec<(T, T)>),
}

impl<T: Real> ParamProfile<T> {
    pub fn at(&self, t: T) -> T {
        match self {
            ParamProfile::Quench { initial, quenched } => {
                if t == T::zero() {
                    *initial
                } else {
                    *quenched
                }
            }
            ParamProfile::Constant(v) => *v,
            ParamProfile::Tabulated(knots) => interp_linear(knots, t),
        }
    }

    pub fn initial(&self) -> T {
        match self {
            ParamProfile::Quench { initial, .. } => *initial,
            ParamProfile::Constant(v) => *v,
            ParamProfile::Tabulated(knots) => knots[0].1,
        }
    }

    pub fn is_sudden(&self) -> bool {
        !matches!(self, ParamProfile::Tabulated(_))
    }

    fn validate(&self, name: &str) -> Result<()> {
        match self {
            ParamProfile::Tabulated(knots) => {
                if knots.is_empty() {
                    return Err(Error::Domain(format!("{name}: empty tabulated profile")));
                }
                for w in knots.windows(2) {
                    if w[1].0 <= w[0].0 {
                        return Err(Error::Domain(format!(
                            "{name}: tabulated knots must be strictly increasing"
                        )));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

pub(crate) fn interp_linear<T: Real>(knots: &[(T, T)], t: T) -> T {
    let n = knots.len();
    if t <= knots[0].0 {
        return knots[0].1;
    }
    if t >= knots[n - 1].0 {
        return knots[n - 1].1;
    }
    let idx = knots.partition_point(|&(tk, _)| tk <= t);
    let (t0, v0) = knots[idx - 1];
    let (t1, v1) = knots[idx];
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

/// Time profiles of all four coupling parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSchedule<T> {
    pub k0: ParamProfile<T>,
    pub j12: ParamProfile<T>,
    pub j13: ParamProfile<T>,
    pub j23: ParamProfile<T>,
}

impl<T: Real> CouplingSchedule<T> {
    pub fn validate(&self) -> Result<()> {
        self.k0.validate("k0")?;
        self.j12.validate("j12")?;
        self.j13.validate("j13")?;
        self.j23.validate("j23")
    }

    /// True when every parameter is a sudden quench or constant, so the
    /// per-mode Ermakov equations have the closed-form solution.
    pub fn is_sudden(&self) -> bool {
        self.k0.is_sudden() && self.j12.is_sudden() && self.j13.is_sudden() && self.j23.is_sudden()
    }
}

/// Coupling parameter values at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingsAt<T> {
    pub k0: T,
    pub j12: T,
    pub j13: T,
    pub j23: T,
    pub t: T,
}

/// Evaluate a schedule at `t >= 0`.  A quench parameter reports its initial
/// value only at `t = 0` exactly.
pub fn couplings_at<T: Real>(schedule: &CouplingSchedule<T>, t: T) -> Result<CouplingsAt<T>> {
    if !(t >= T::zero()) {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    Ok(CouplingsAt {
        k0: schedule.k0.at(t),
        j12: schedule.j12.at(t),
        j13: schedule.j13.at(t),
        j23: schedule.j23.at(t),
        t,
    })
}

/// Symmetric coupling matrix of the quadratic form in positions.
pub fn build_coupling_matrix<T: Real>(c: &CouplingsAt<T>) -> [[T; 3]; 3] {
    let CouplingsAt { k0, j12, j13, j23, .. } = *c;
    [
        [k0 + j12 + j13, -j12, -j13],
        [-j12, k0 + j12 + j23, -j23],
        [-j13, -j23, k0 + j13 + j23],
    ]
}

/// Normal-mode basis of the coupling matrix.
///
/// Rows of `u` are the normalized eigenvectors: the symmetric mode
/// `(1,1,1)/sqrt(3)` with eigenvalue `lambda1 = k0`, then the `+` and `-`
/// modes with eigenvalues `lambda_plus >= lambda_minus`.  `a_plus` and
/// `a_minus` are the normalization factors of the analytic eigenvectors;
/// they are only meaningful when `degenerate` is false.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis<T> {
    pub z: T,
    pub lambda1: T,
    pub lambda_plus: T,
    pub lambda_minus: T,
    pub a_plus: T,
    pub a_minus: T,
    pub u: [[T; 3]; 3],
    pub degenerate: bool,
    /// Coupling values this basis was computed from.
    pub couplings: CouplingsAt<T>,
}

impl<T: Real> ModeBasis<T> {
    pub fn eigenvalues(&self) -> [T; 3] {
        [self.lambda1, self.lambda_plus, self.lambda_minus]
    }
}

/// Default relative tolerance below which the analytic eigenvector
/// parametrization is abandoned for the numeric fallback.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Splitting parameter `z`; vanishes iff all three couplings are equal.
pub fn splitting<T: Real>(j12: T, j13: T, j23: T) -> T {
    let s = j12 * j12 + j13 * j13 + j23 * j23 - (j12 * j13 + j12 * j23 + j13 * j23);
    s.max(T::zero()).sqrt()
}

/// Diagonalize the coupling matrix.
///
/// The analytic parametrization divides by `z` and by `j13 - j23`; when
/// either falls below `tol` relative to the coupling scale the routine
/// switches to a Jacobi eigensolve with deterministic mode assignment
/// (symmetric mode by direction matching, remaining eigenvalues sorted
/// descending, first nonzero component of each eigenvector positive).
pub fn decompose<T: Real>(c: &CouplingsAt<T>, tol: T) -> ModeBasis<T> {
    let CouplingsAt { k0, j12, j13, j23, .. } = *c;
    let scale = T::one()
        .max(k0.abs())
        .max(j12.abs())
        .max(j13.abs())
        .max(j23.abs());
    let z = splitting(j12, j13, j23);
    let d = j13 - j23;

    if z > tol * scale && d.abs() > tol * scale {
        let lambda1 = k0;
        let s = j12 + j13 + j23;
        let (lambda_plus, lambda_minus) = (k0 + s + z, k0 + s - z);
        let six = lit::<T>(6.0);
        let two = lit::<T>(2.0);
        // 2z +- (j13 + j23 - 2 j12) is nonnegative: the two expressions are
        // -Z_minus and Z_plus, whose product is 3(j13-j23)^2 >= 0 with
        // Z_plus >= Z_minus.
        let w = j13 + j23 - two * j12;
        let a_plus = ((two * z + w).max(T::zero()) / (six * z)).sqrt() / d;
        let a_minus = ((two * z - w).max(T::zero()) / (six * z)).sqrt() / d;
        let r3 = lit::<T>(3.0).sqrt().recip();
        let mut u = [
            [r3, r3, r3],
            [
                a_plus * (-j12 + j23 - z),
                a_plus * (j12 - j13 + z),
                a_plus * d,
            ],
            [
                a_minus * (-j12 + j23 + z),
                a_minus * (j12 - j13 - z),
                a_minus * d,
            ],
        ];
        polish_rows(&mut u);
        ModeBasis {
            z,
            lambda1,
            lambda_plus,
            lambda_minus,
            a_plus,
            a_minus,
            u,
            degenerate: false,
            couplings: *c,
        }
    } else {
        decompose_numeric(c, z)
    }
}

/// One Gram-Schmidt pass over the analytic eigenvector rows.  The rows are
/// orthonormal in exact arithmetic; near-degenerate couplings amplify the
/// rounding of the raw parametrization, and the pass strips that noise
/// without moving the vectors beyond it.
fn polish_rows<T: Real>(u: &mut [[T; 3]; 3]) {
    for r in 1..3 {
        for p in 0..r {
            let dot = u[r][0] * u[p][0] + u[r][1] * u[p][1] + u[r][2] * u[p][2];
            for k in 0..3 {
                u[r][k] = u[r][k] - dot * u[p][k];
            }
        }
        let norm = (u[r][0] * u[r][0] + u[r][1] * u[r][1] + u[r][2] * u[r][2]).sqrt();
        for k in 0..3 {
            u[r][k] = u[r][k] / norm;
        }
    }
}

fn decompose_numeric<T: Real>(c: &CouplingsAt<T>, z: T) -> ModeBasis<T> {
    let k = build_coupling_matrix(c);
    let (vals, vecs) = jacobi_eigh3(&k);

    // pick the eigenvector most aligned with (1,1,1)/sqrt(3)
    let r3 = lit::<T>(3.0).sqrt().recip();
    let mut best = 0;
    let mut best_dot = T::zero();
    for (i, v) in vecs.iter().enumerate() {
        let dot = ((v[0] + v[1] + v[2]) * r3).abs();
        if dot > best_dot {
            best_dot = dot;
            best = i;
        }
    }
    let mut rest: Vec<usize> = (0..3).filter(|&i| i != best).collect();
    if vals[rest[0]] < vals[rest[1]] {
        rest.swap(0, 1);
    }
    let order = [best, rest[0], rest[1]];

    let mut u = [[T::zero(); 3]; 3];
    for (row, &idx) in order.iter().enumerate() {
        let mut v = vecs[idx];
        let thresh = lit::<T>(1e-12);
        if let Some(first) = v.iter().find(|x| x.abs() > thresh) {
            if *first < T::zero() {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
        }
        u[row] = v;
    }

    ModeBasis {
        z,
        lambda1: vals[order[0]],
        lambda_plus: vals[order[1]],
        lambda_minus: vals[order[2]],
        a_plus: T::zero(),
        a_minus: T::zero(),
        u,
        degenerate: true,
        couplings: *c,
    }
}

/// Cyclic Jacobi eigensolver for a symmetric 3x3 matrix.
/// Returns eigenvalues and the matching unit eigenvectors.
pub(crate) fn jacobi_eigh3<T: Real>(m: &[[T; 3]; 3]) -> ([T; 3], [[T; 3]; 3]) {
    let mut a = *m;
    let mut v = [[T::zero(); 3]; 3];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let eps = T::epsilon() * lit::<T>(1e2);
    for _sweep in 0..64 {
        let off = (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]).sqrt();
        let diag = (a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2])
            .sqrt()
            .max(T::one());
        if off <= eps * diag {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if a[p][q].abs() <= T::epsilon() * diag {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (lit::<T>(2.0) * a[p][q]);
            let t = {
                let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                sign / (theta.abs() + (theta * theta + T::one()).sqrt())
            };
            let cos = (t * t + T::one()).sqrt().recip();
            let sin = t * cos;
            for k in 0..3 {
                let (akp, akq) = (a[k][p], a[k][q]);
                a[k][p] = cos * akp - sin * akq;
                a[k][q] = sin * akp + cos * akq;
            }
            for k in 0..3 {
                let (apk, aqk) = (a[p][k], a[q][k]);
                a[p][k] = cos * apk - sin * aqk;
                a[q][k] = sin * apk + cos * aqk;
            }
            for row in v.iter_mut() {
                let (vp, vq) = (row[p], row[q]);
                row[p] = cos * vp - sin * vq;
                row[q] = sin * vp + cos * vq;
            }
        }
    }
    let vals = [a[0][0], a[1][1], a[2][2]];
    // columns of v are eigenvectors; return as rows
    let vecs = [
        [v[0][0], v[1][0], v[2][0]],
        [v[0][1], v[1][1], v[2][1]],
        [v[0][2], v[1][2], v[2][2]],
    ];
    (vals, vecs)
}

pub(crate) fn mat3_mul<T: Real>(a: &[[T; 3]; 3], b: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = T::zero();
            for (k, bk) in b.iter().enumerate() {
                s = s + a[i][k] * bk[j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub(crate) fn mat3_transpose<T: Real>(a: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for (j, row) in a.iter().enumerate() {
            out[i][j] = row[i];
        }
    }
    out
}

/// Reconstruct the coupling matrix from a basis, `U^T K_D U`.
pub fn reconstruct<T: Real>(basis: &ModeBasis<T>) -> [[T; 3]; 3] {
    let lam = basis.eigenvalues();
    let mut kd_u = basis.u;
    for (i, row) in kd_u.iter_mut().enumerate() {
        for x in row.iter_mut() {
            *x = *x * lam[i];
        }
    }
    mat3_mul(&mat3_transpose(&basis.u), &kd_u)
}

#[cfg(test)]
pub(crate) fn frobenius3<T: Real>(m: &[[T; 3]; 3]) -> T {
    let mut s = T::zero();
    for row in m {
        for x in row {
            s = s + *x * *x;
        }
    }
    s.sqrt()
}

/// Largest absolute deviation of `U U^T` from the identity.
pub fn orthogonality_defect<T: Real>(basis: &ModeBasis<T>) -> T {
    let p = mat3_mul(&basis.u, &mat3_transpose(&basis.u));
    let mut worst = T::zero();
    for i in 0..3 {
        for (j, pij) in p[i].iter().enumerate() {
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max((*pij - target).abs());
        }
    }
    worst
}

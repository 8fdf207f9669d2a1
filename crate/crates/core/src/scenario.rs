//! Wiring from a coupling schedule to the time-dependent kernel.
//!
//! The mode basis is evaluated at the current couplings while each mode's
//! scale factor evolves from the initial eigenvalues, so the kernel at time
//! `t` combines `decompose(couplings_at(t))` with the three Ermakov states
//! started from `decompose(couplings_at(0))`.

use crate::ermakov::{solve_ode_with, ErmakovState, ErmakovTrajectory, ModeProfile, OdeOptions};
use crate::error::{Error, Result};
use crate::gaussian::{build_full_kernel, FullKernel};
use crate::model::{couplings_at, decompose, CouplingSchedule, ModeBasis, DEGENERACY_TOL};
use crate::scalar::{lit, Real};

/// Mode-resolved evolution for one coupling schedule.
pub enum Scenario<T: Real> {
    /// All parameters quench or constant: closed-form scale factors.
    Sudden(SuddenScenario<T>),
    /// At least one tabulated parameter: numerically integrated modes.
    General(GeneralScenario<T>),
}

impl<T: Real> Scenario<T> {
    /// Build the scenario, integrating mode trajectories up to `t_end`
    /// when the schedule is not sudden.
    pub fn new(schedule: CouplingSchedule<T>, t_end: T) -> Result<Self> {
        schedule.validate()?;
        if schedule.is_sudden() {
            SuddenScenario::new(schedule).map(Scenario::Sudden)
        } else {
            GeneralScenario::new(schedule, t_end).map(Scenario::General)
        }
    }

    pub fn schedule(&self) -> &CouplingSchedule<T> {
        match self {
            Scenario::Sudden(s) => &s.schedule,
            Scenario::General(s) => &s.schedule,
        }
    }

    pub fn basis_at(&self, t: T) -> Result<ModeBasis<T>> {
        let c = couplings_at(self.schedule(), t)?;
        Ok(decompose(&c, lit(DEGENERACY_TOL)))
    }

    pub fn modes_at(&self, t: T) -> Result<[ErmakovState<T>; 3]> {
        match self {
            Scenario::Sudden(s) => s.modes_at(t),
            Scenario::General(s) => s.modes_at(t),
        }
    }

    pub fn kernel_at(&self, t: T) -> Result<FullKernel<T>> {
        let basis = self.basis_at(t)?;
        let modes = self.modes_at(t)?;
        Ok(build_full_kernel(&basis, &modes))
    }
}

/// Closed-form evolution for sudden schedules.
pub struct SuddenScenario<T: Real> {
    pub schedule: CouplingSchedule<T>,
    pub lambda_initial: [T; 3],
    pub lambda_final: [T; 3],
}

impl<T: Real> SuddenScenario<T> {
    pub fn new(schedule: CouplingSchedule<T>) -> Result<Self> {
        if !schedule.is_sudden() {
            return Err(Error::Domain(
                "closed-form scenario needs quench or constant parameters".into(),
            ));
        }
        let ci = couplings_at(&schedule, T::zero())?;
        let bi = decompose(&ci, lit(DEGENERACY_TOL));
        let lambda_initial = bi.eigenvalues();
        for lam in lambda_initial {
            if !(lam > T::zero()) {
                return Err(Error::Domain(format!(
                    "initial mode eigenvalue {lam} is not positive; the initial vacuum is not normalizable"
                )));
            }
        }
        // any positive time sees the final couplings
        let cf = couplings_at(&schedule, lit(1.0))?;
        let bf = decompose(&cf, lit(DEGENERACY_TOL));
        Ok(SuddenScenario {
            schedule,
            lambda_initial,
            lambda_final: bf.eigenvalues(),
        })
    }

    pub fn modes_at(&self, t: T) -> Result<[ErmakovState<T>; 3]> {
        if t == T::zero() {
            return Ok([
                ErmakovState::initial(self.lambda_initial[0]),
                ErmakovState::initial(self.lambda_initial[1]),
                ErmakovState::initial(self.lambda_initial[2]),
            ]);
        }
        let mut out = [ErmakovState::initial(T::one()); 3];
        for i in 0..3 {
            out[i] =
                crate::ermakov::solve_quench(self.lambda_initial[i], self.lambda_final[i], t)?;
        }
        Ok(out)
    }
}

/// Number of samples used to tabulate each mode eigenvalue profile.
const PROFILE_SAMPLES: usize = 4001;

/// Numerically integrated evolution for tabulated schedules.
pub struct GeneralScenario<T: Real> {
    pub schedule: CouplingSchedule<T>,
    trajectories: [ErmakovTrajectory<T>; 3],
}

impl<T: Real> GeneralScenario<T> {
    pub fn new(schedule: CouplingSchedule<T>, t_end: T) -> Result<Self> {
        if !(t_end > T::zero()) {
            return Err(Error::Domain("t_end must be positive".into()));
        }
        let step = t_end / lit::<T>((PROFILE_SAMPLES - 1) as f64);
        let mut knots: [Vec<(T, T)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for i in 0..PROFILE_SAMPLES {
            let t = if i == PROFILE_SAMPLES - 1 {
                t_end
            } else {
                step * lit::<T>(i as f64)
            };
            let c = couplings_at(&schedule, t)?;
            let b = decompose(&c, lit(DEGENERACY_TOL));
            let lam = b.eigenvalues();
            for (k, &l) in lam.iter().enumerate() {
                knots[k].push((t, l));
            }
        }
        let opts = OdeOptions::default();
        let mut trajectories = Vec::with_capacity(3);
        for k in knots.iter() {
            let profile = ModeProfile::Tabulated { knots: k.clone() };
            trajectories.push(solve_ode_with(&profile, t_end, &opts)?);
        }
        let trajectories: [ErmakovTrajectory<T>; 3] = trajectories
            .try_into()
            .map_err(|_| Error::Integration("mode trajectory construction failed".into()))?;
        Ok(GeneralScenario { schedule, trajectories })
    }

    pub fn modes_at(&self, t: T) -> Result<[ErmakovState<T>; 3]> {
        Ok([
            self.trajectories[0].state_at(t)?,
            self.trajectories[1].state_at(t)?,
            self.trajectories[2].state_at(t)?,
        ])
    }
}

/// The three quenched parameter sets used throughout the examples and the
/// acceptance suite.
pub mod presets {
    use crate::model::{CouplingSchedule, ParamProfile};
    use crate::scalar::{lit, Real};

    fn quench<T: Real>(initial: f64, quenched: f64) -> ParamProfile<T> {
        ParamProfile::Quench { initial: lit(initial), quenched: lit(quenched) }
    }

    /// Strong quench of every parameter.
    pub fn fig1<T: Real>() -> CouplingSchedule<T> {
        CouplingSchedule {
            k0: quench(4.0, 6.0),
            j12: quench(1.0, 2.0),
            j13: quench(3.0, 4.0),
            j23: quench(8.0, 7.0),
        }
    }

    /// Constant `k0`, quenched couplings.
    pub fn fig2<T: Real>() -> CouplingSchedule<T> {
        CouplingSchedule {
            k0: ParamProfile::Constant(lit(0.1)),
            j12: quench(1.0, 2.0),
            j13: quench(2.5, 3.5),
            j23: quench(3.0, 4.0),
        }
    }

    /// `k0` quenched to a negative value (exponential branch).
    pub fn fig3<T: Real>() -> CouplingSchedule<T> {
        CouplingSchedule {
            k0: quench(0.1, -0.1),
            j12: quench(1.0, 2.0),
            j13: quench(2.5, 3.5),
            j23: quench(3.0, 4.0),
        }
    }
}

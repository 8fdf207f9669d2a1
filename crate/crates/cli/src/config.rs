//! JSON scenario configuration.
//!
//! ```json
//! {
//!   "schedule": {
//!     "k0":  {"initial": 4.0, "final": 6.0},
//!     "j12": {"initial": 1.0, "final": 2.0},
//!     "j13": 3.0,
//!     "j23": {"knots": [[0.0, 8.0], [2.0, 7.0]]}
//!   },
//!   "t_start": 0.0,
//!   "t_end": 5.0,
//!   "samples": 500,
//!   "alphas": [0.5, 2.0, 3.0],
//!   "outputs": {"csv": "sweep.csv", "plot": "sweep.gp"},
//!   "oracle": false
//! }
//! ```
//!
//! A parameter profile is either a bare number (constant), an
//! `initial`/`final` pair (sudden quench at `t = 0`), or a list of
//! `[time, value]` knots (piecewise linear).

use anyhow::{bail, Context};
use serde::Deserialize;

use osc3::entropy::DEFAULT_ALPHAS;
use osc3::model::{CouplingSchedule, ParamProfile};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ProfileCfg {
    Constant(f64),
    Quench {
        initial: f64,
        #[serde(rename = "final")]
        target: f64,
    },
    Tabulated {
        knots: Vec<(f64, f64)>,
    },
}

impl ProfileCfg {
    fn to_profile(&self) -> ParamProfile<f64> {
        match self {
            ProfileCfg::Constant(v) => ParamProfile::Constant(*v),
            ProfileCfg::Quench { initial, target } => {
                ParamProfile::Quench { initial: *initial, quenched: *target }
            }
            ProfileCfg::Tabulated { knots } => ParamProfile::Tabulated(knots.clone()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleCfg {
    pub k0: ProfileCfg,
    pub j12: ProfileCfg,
    pub j13: ProfileCfg,
    pub j23: ProfileCfg,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputsCfg {
    pub csv: Option<String>,
    pub plot: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schedule: ScheduleCfg,
    #[serde(default)]
    pub t_start: f64,
    pub t_end: f64,
    pub samples: usize,
    pub alphas: Option<Vec<f64>>,
    #[serde(default)]
    pub outputs: OutputsCfg,
    #[serde(default)]
    pub oracle: bool,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let cfg: ScenarioConfig = serde_json::from_str(text).context("parsing configuration")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.t_start < 0.0 {
            bail!("t_start must be nonnegative");
        }
        if !(self.t_end > self.t_start) {
            bail!("t_end must exceed t_start");
        }
        if self.samples < 2 {
            bail!("samples must be at least 2");
        }
        if let Some(alphas) = &self.alphas {
            if alphas.iter().any(|&a| !(a > 0.0)) {
                bail!("every Renyi order must be positive");
            }
        }
        self.schedule()
            .validate()
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(())
    }

    pub fn schedule(&self) -> CouplingSchedule<f64> {
        CouplingSchedule {
            k0: self.schedule.k0.to_profile(),
            j12: self.schedule.j12.to_profile(),
            j13: self.schedule.j13.to_profile(),
            j23: self.schedule.j23.to_profile(),
        }
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.alphas.clone().unwrap_or_else(|| DEFAULT_ALPHAS.to_vec())
    }

    /// Built-in named parameter sets over `t in [0, 5]` at 500 samples.
    pub fn named(name: &str) -> anyhow::Result<Self> {
        let quench = |initial: f64, target: f64| ProfileCfg::Quench { initial, target };
        let schedule = match name {
            "fig1" => ScheduleCfg {
                k0: quench(4.0, 6.0),
                j12: quench(1.0, 2.0),
                j13: quench(3.0, 4.0),
                j23: quench(8.0, 7.0),
            },
            "fig2" => ScheduleCfg {
                k0: ProfileCfg::Constant(0.1),
                j12: quench(1.0, 2.0),
                j13: quench(2.5, 3.5),
                j23: quench(3.0, 4.0),
            },
            "fig3" => ScheduleCfg {
                k0: quench(0.1, -0.1),
                j12: quench(1.0, 2.0),
                j13: quench(2.5, 3.5),
                j23: quench(3.0, 4.0),
            },
            other => bail!("unknown scenario {other:?}; expected fig1, fig2 or fig3"),
        };
        Ok(ScenarioConfig {
            schedule,
            t_start: 0.0,
            t_end: 5.0,
            samples: 500,
            alphas: None,
            outputs: OutputsCfg::default(),
            oracle: false,
        })
    }
}

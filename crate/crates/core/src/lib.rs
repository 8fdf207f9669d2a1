//! Gaussian dynamics of three coupled oscillators with time-dependent
//! couplings: normal-mode decomposition, Ermakov scale factors, reduced
//! density kernels, and the resulting mixedness and entanglement entropies,
//! with brute-force grid oracles for every closed form.
//!
//! The numeric core is generic over the scalar type (`f32`/`f64`, see
//! [`scalar::Real`]); the `*64` aliases at the crate root cover the common
//! case.

pub mod entropy;
pub mod ermakov;
pub mod error;
pub mod gaussian;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod scenario;

pub use error::{Error, Result};
pub use scalar::Real;

pub type CouplingSchedule64 = model::CouplingSchedule<f64>;
pub type CouplingsAt64 = model::CouplingsAt<f64>;
pub type ModeBasis64 = model::ModeBasis<f64>;
pub type ErmakovState64 = ermakov::ErmakovState<f64>;
pub type FullKernel64 = gaussian::FullKernel<f64>;
pub type ReducedKernel164 = gaussian::ReducedKernel1<f64>;
pub type ReducedKernel264 = gaussian::ReducedKernel2<f64>;
pub type EntropyReport64 = entropy::EntropyReport<f64>;
pub type GridSpec64 = oracle::GridSpec<f64>;
pub type Scenario64 = scenario::Scenario<f64>;

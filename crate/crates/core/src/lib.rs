//! A deterministic, annual-step social-ecological macroeconomic simulator.
//!
//! The model couples four blocks that advance together one year at a time:
//!
//! * **Demographics** — a cohort grid (gender × ten-year age band × skill)
//!   with survival, ageing, skill promotion and declining births.
//! * **Economy** — a demand-driven six-sector input–output core embedded in
//!   a stock-flow-consistent web of five institutional agents (households,
//!   firms, government, banks, rest of world), with a progressive income
//!   tax, transfer benefits and a decile income distribution.
//! * **Environment** — territorial and footprint pressure accounts for five
//!   pressures, compared against per-capita ecological boundaries.
//! * **Welfare accounting** — two Index of Sustainable Economic Welfare
//!   variants (a narrow territorial ledger and a broader footprint ledger
//!   including capital change), an index of actual economic welfare, and a
//!   doughnut report of boundary overshoots and social outcome thresholds.
//!
//! Policy levers (carbon tax with an integral controller, tax-and-benefit
//! redistribution, working-time reduction) phase in over a configurable
//! window and can be combined freely in scenario files.
//!
//! Everything is computed with pure arithmetic on calibration inputs — no
//! randomness — so a run is reproducible bit for bit.

pub mod config;
pub mod demographics;
pub mod doughnut;
pub mod economy;
pub mod engine;
pub mod environment;
pub mod error;
pub mod isew;
pub mod num;
pub mod policy;
pub mod reference;
pub mod report;

pub use config::{Calibration, ScenarioSpec};
pub use engine::{run_scenario, Trajectory};
pub use error::{ModelError, Result};

/// Scalar type used by the concrete model.  The numerical kernels in
/// [`num`] are generic over [`num::Real`]; the model itself instantiates
/// them at `f64`.
pub type Scalar = f64;

/// Monetary amounts, in euros per year at constant base-year prices.
pub type Money = Scalar;

/// Head counts (persons); fractional values arise from cohort arithmetic.
pub type Persons = Scalar;

/// Hours (weekly in time-use profiles, annual in labour aggregates).
pub type Hours = Scalar;

/// First simulated year; calibration levels refer to this year.
pub const BASE_YEAR: i32 = 2020;

/// Default final simulated year.
pub const DEFAULT_END_YEAR: i32 = 2070;

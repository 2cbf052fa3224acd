//! Contactless vital-sign monitoring from radar slow-time data.
//!
//! The crate implements the classic processing chain end to end:
//! a synthetic scenario generator ([`simulator`]), subject extraction
//! ([`preprocessing`]), phase demodulation with wrap-resilient recovery
//! ([`demod`]), time-frequency body-movement mitigation ([`rbm`]), and
//! adaptive breathing/heart-rate estimation with a Kalman selection stage
//! ([`estimation`]). [`pipeline`] wires the blocks together and [`eval`]
//! scores the output against simulator ground truth.

pub mod config;
pub mod demod;
pub mod error;
pub mod estimation;
pub mod eval;
pub mod filter;
pub mod io;
pub mod pipeline;
pub mod preprocessing;
pub mod rbm;
pub mod signal;
pub mod simulator;

pub use error::Error;
pub use signal::{Band, DisplacementSignal, PhaseSeries, RadarCube, SampleQuality, SlowTimeSignal};

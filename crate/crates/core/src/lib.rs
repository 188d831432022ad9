//! Steady-state heat transport through resonant two-level or harmonic sites
//! placed between two thermal baths.
//!
//! Two independent engines answer the same questions. [`local`] and
//! [`global`] hold the closed forms for currents, contrast, conductance and
//! their peak structure. [`numerics`] builds Lindblad generators on the full
//! Hilbert space, finds their stationary states and evaluates heat flows,
//! entanglement and entropy production, and also provides a collision model
//! and the moment equations. [`sweep`], [`table`] and [`plot`] turn either
//! engine into reproducible CSV data and SVG figures; [`verify`] compares
//! the two on seeded random draws.
//!
//! Each capability has a runnable program under `examples/`:
//! `heat_current`, `rectification`, `conductance`, `ndtc`, `chain`,
//! `strong_coupling`, `entanglement`, `collision_model`, `moments` and
//! `figure_sweep`.
//!
//! Natural units: ħ = k_B = 1.

// `!(x > 0.0)` is used on purpose so that NaN is rejected as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod global;
pub mod local;
pub mod model;
pub mod numerics;
pub mod plot;
pub mod point;
pub mod roots;
pub mod sweep;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use model::{ModelParams, Side, Statistics};

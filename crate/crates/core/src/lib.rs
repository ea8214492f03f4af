//! Finite-dimensional quantum measurement models with separable interaction
//! channels.
//!
//! A measurement model `(K, ν, P)` couples a system on `H` to a probe on `K`
//! through `ν(ρ) = Σ_y α_y(ρ) ⊗ γ_y` and reads the probe with the observable
//! `P`. The crate builds the induced instruments and observables, their
//! sequential and conditioned products, and the statistics of real-valued
//! models, and ships randomized cross-checks ([`verify`]) that compare every
//! closed form against an explicit computation on the composite space.

pub mod catalog;
pub mod channel;
pub mod error;
pub mod matrix;
pub mod model;
pub mod objects;
pub mod random;
pub mod stats;
pub mod verify;

pub use channel::{apply_separable, conditioned_channel, product_channel, SeparableChannel};
pub use error::{Error, Result};
pub use matrix::{Complex64, ComplexMatrix, Tolerance};
pub use model::{
    conditioned_instruments, conditioned_mm, measured_instrument, measured_instrument_direct,
    measured_observable_mm, sequential_product_instruments, sequential_product_mm,
    MeasurementModel,
};
pub use objects::{
    Effect, Instrument, Observable, Operation, Outcome, ProbabilityDistribution, State,
    StochasticKernel,
};
pub use stats::{StochasticOperator, UncertaintyReport};

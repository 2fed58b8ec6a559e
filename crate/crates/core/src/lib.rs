//! Simulation of conditional phase gates acting on the two circular
//! polarizations of a single cavity mode, driven by one V-type three-level
//! atom.
//!
//! The crate covers:
//! - the truncated atom-field product space and its interaction-picture
//!   Hamiltonian ([`hilbert`]);
//! - closed-form computational-basis dynamics and the integer search for
//!   gate timings ([`analytic`]);
//! - fixed-step numerical integration of the Schrödinger equation
//!   ([`dynamics`]);
//! - gate fidelity, projected concurrence, and unit conversions
//!   ([`metrics`]);
//! - the experiment runners producing traces and parameter maps
//!   ([`experiments`]).
//!
//! All computations are deterministic: fixed inputs produce bit-identical
//! results.

pub mod analytic;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod hilbert;
pub mod metrics;

pub use analytic::{
    amplitude_cjk, rabi_frequencies, search_solutions, solution_parameters, table_solutions,
    GateKind, GateSolution,
};
pub use dynamics::{evolve, evolve_sampled, IntegratorConfig};
pub use error::{Error, Result};
pub use experiments::{concurrence_map, fidelity_trace, velocity_bfield_map, Axis, ExperimentGrid};
pub use hilbert::{
    coherent_product_state, hamiltonian_at, AtomLevel, ModelParams, StateVector, SystemBasis,
};
pub use metrics::{
    bfield_to_detuning, concurrence_computational, fidelity_from_amplitudes, gate_fidelity, Engine,
    PhysicalSetup,
};

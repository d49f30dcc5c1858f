//! Simulation of dissipative entanglement transport between two cavity-QED
//! nodes coupled by a chiral 1D waveguide.
//!
//! Each node holds N qubits coupled to a ring-cavity mode; the cavities
//! emit into a shared waveguide with independent left- and right-moving
//! rates. High chirality turns the pair into a cascaded system, letting
//! Bell, W and Dicke states stored in the first node reappear in the
//! second with high fidelity, carried entirely by dissipation.
//!
//! The crate is organized as a library with one thin CLI binary; the
//! `examples/` directory holds one runnable example per capability.
//!
//! - [`hilbert`]: sector-restricted basis enumeration and sparse operators
//! - [`states`]: Bell / Dicke / superposition families, embeddings, traces
//! - [`model`]: network description to Hamiltonian + collapse operators
//! - [`dynamics`]: RK4 master-equation integration and the exact oracle
//! - [`measures`]: concurrence, fidelity, peak extraction
//! - [`explore`]: sweeps, coupling optimization, robustness, loss scans
//! - [`cli`]: experiment configs, runners and figure presets

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod explore;
pub mod hilbert;
pub mod measures;
pub mod model;
pub mod states;

mod linalg;

pub use error::{Error, Result};

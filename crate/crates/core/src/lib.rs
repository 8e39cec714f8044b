//! Evolutionary variational quantum eigensolver.
//!
//! Circuits are grown layer by layer from the gate set {I, U3, CU3} and
//! evolved in a speciated population to minimize `⟨ψ|H|ψ⟩`. The crate also
//! ships the pieces needed to check results: a dense state-vector
//! simulator, exact diagonalization, brute-force Max-Cut, fixed-ansatz VQE
//! baselines and a shot/depolarizing noise model.
//!
//! Qubit ordering is little-endian: qubit 0 is the least significant bit of
//! a basis-state index, and position `k` of a Pauli string acts on qubit `k`.

pub mod baselines;
pub mod error;
pub mod evaluator;
pub mod evolution;
pub mod genome;
pub mod hamiltonian;
pub mod harness;
pub mod noise;
pub mod optimizers;
pub mod simulator;

pub use error::{Error, Result};

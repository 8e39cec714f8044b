//! Energy evaluation of circuits, exact or sampled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hamiltonian::{Hamiltonian, PauliSum};
use crate::noise::{noisy_shot_expectation, NoiseConfig};
use crate::simulator::{expectation, simulate, Circuit, Observable, StateVector};

/// How circuit energies are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evaluator {
    /// Exact `⟨ψ|H|ψ⟩` from the simulated amplitudes.
    #[default]
    Statevector,
    /// Finite-shot estimate, optionally under depolarizing noise.
    Shots(NoiseConfig),
}

impl Evaluator {
    pub fn is_exact(&self) -> bool {
        matches!(self, Evaluator::Statevector)
    }
}

/// A Hamiltonian paired with an evaluation mode.
#[derive(Clone, Debug)]
pub struct EnergyModel<'h> {
    hamiltonian: &'h Hamiltonian,
    pauli: Option<PauliSum>,
    evaluator: Evaluator,
}

impl<'h> EnergyModel<'h> {
    /// Sampled modes measure Pauli terms, so dense Hamiltonians are expanded
    /// in the Pauli basis up front.
    pub fn new(hamiltonian: &'h Hamiltonian, evaluator: Evaluator) -> Result<Self> {
        let pauli = match evaluator {
            Evaluator::Statevector => None,
            Evaluator::Shots(cfg) => {
                cfg.validate()?;
                Some(hamiltonian.to_pauli_sum()?)
            }
        };
        Ok(EnergyModel {
            hamiltonian,
            pauli,
            evaluator,
        })
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        self.hamiltonian
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.evaluator
    }

    pub fn n_qubits(&self) -> usize {
        self.hamiltonian.n_qubits()
    }

    pub fn is_exact(&self) -> bool {
        self.evaluator.is_exact()
    }

    pub fn energy<R: Rng + ?Sized>(&self, circuit: &Circuit, rng: &mut R) -> Result<f64> {
        match (&self.evaluator, &self.pauli) {
            (Evaluator::Shots(cfg), Some(p)) => noisy_shot_expectation(circuit, p, cfg, rng),
            _ => self.exact_energy(circuit),
        }
    }

    /// Noise-free energy regardless of mode.
    pub fn exact_energy(&self, circuit: &Circuit) -> Result<f64> {
        expectation(&simulate(circuit)?, self.hamiltonian)
    }

    pub fn exact_state_energy(&self, state: &StateVector) -> Result<f64> {
        expectation(state, self.hamiltonian)
    }
}

/// Deterministic child generator keyed by `parts`, independent of the order
/// in which streams are requested.
pub fn substream(seed: u64, parts: &[u64]) -> ChaCha8Rng {
    let mut x = splitmix64(seed);
    for &p in parts {
        x = splitmix64(x ^ splitmix64(p.wrapping_add(0x632b_e59b_d9b4_e019)));
    }
    ChaCha8Rng::seed_from_u64(x)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

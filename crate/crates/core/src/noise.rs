//! Finite-shot energy estimation and a depolarizing channel realized as
//! stochastic Pauli insertions.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::PauliSum;
use crate::simulator::{binomial, expectation, simulate, Angles, Circuit, Gate, Observable, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NoiseConfig {
    /// Measurements per Pauli term per energy estimate.
    pub shots: u64,
    /// Depolarizing probability after each U3.
    pub p1: f64,
    /// Depolarizing probability after each CU3, applied to both qubits.
    pub p2: f64,
    /// Noisy circuit realizations per energy estimate; the shots are split
    /// evenly between them.
    pub trajectories: usize,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            shots: 1300,
            p1: 0.0,
            p2: 0.0,
            trajectories: 1,
        }
    }
}

impl NoiseConfig {
    pub fn shots_only(shots: u64) -> Self {
        NoiseConfig {
            shots,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::Config("evaluator.shots must be at least 1".into()));
        }
        if self.trajectories == 0 {
            return Err(Error::Config("evaluator.trajectories must be at least 1".into()));
        }
        for (name, p) in [("p1", self.p1), ("p2", self.p2)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("evaluator.{name} = {p} is outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0
    }
}

const PAULI_ANGLES: [Angles; 3] = [Angles::X, Angles::Y, Angles::Z];

/// One realization of the depolarizing channel: after each U3, with
/// probability `p1`, a uniformly random X/Y/Z (as a U3) is inserted on its
/// qubit; after each CU3 the same happens with probability `p2`
/// independently on control and target.
pub fn depolarize_trajectory<R: Rng + ?Sized>(
    circuit: &Circuit,
    p1: f64,
    p2: f64,
    rng: &mut R,
) -> Result<Circuit> {
    for p in [p1, p2] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!("depolarizing probability {p} outside [0, 1]")));
        }
    }
    let mut out = Circuit::new(circuit.n_qubits());
    let mut errors = Vec::new();
    for layer in circuit.layers() {
        errors.clear();
        for gate in layer.gates() {
            let p = match gate {
                Gate::Identity { .. } => continue,
                Gate::U3 { .. } => p1,
                Gate::Cu3 { .. } => p2,
            };
            for qubit in gate.qubits() {
                if p > 0.0 && rng.random_bool(p) {
                    let angles = PAULI_ANGLES[rng.random_range(0..3)];
                    errors.push(Gate::U3 { qubit, angles });
                }
            }
        }
        out.push_layer(layer.gates().to_vec())?;
        if !errors.is_empty() {
            out.push_layer(errors.clone())?;
        }
    }
    Ok(out)
}

/// Per term: number of `+1` parities in `shots` samples of `state`.
fn sample_term_parities<R: Rng + ?Sized>(
    state: &StateVector,
    h: &PauliSum,
    shots: u64,
    counts: &mut [u64],
    rng: &mut R,
) -> Result<()> {
    for (term, count) in h.terms().iter().zip(counts.iter_mut()) {
        if term.pauli.is_identity() {
            *count += shots;
            continue;
        }
        let mut rotated = state.clone();
        rotated.rotate_to_measurement_basis(&term.pauli)?;
        let support = term.pauli.support_mask();
        let p_even: f64 = rotated
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(x, _)| (x & support).count_ones() % 2 == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        *count += binomial(shots, p_even, rng);
    }
    Ok(())
}

fn combine(h: &PauliSum, counts: &[u64], shots: u64) -> f64 {
    h.terms()
        .iter()
        .zip(counts)
        .map(|(t, &k)| t.coefficient * (2.0 * k as f64 / shots as f64 - 1.0))
        .sum()
}

/// Energy estimate from `shots` measurements of each Pauli term, measured
/// independently in its own rotated basis.
pub fn shot_expectation<R: Rng + ?Sized>(
    circuit: &Circuit,
    h: &PauliSum,
    shots: u64,
    rng: &mut R,
) -> Result<f64> {
    let state = simulate(circuit)?;
    shot_expectation_state(&state, h, shots, rng)
}

pub fn shot_expectation_state<R: Rng + ?Sized>(
    state: &StateVector,
    h: &PauliSum,
    shots: u64,
    rng: &mut R,
) -> Result<f64> {
    if shots == 0 {
        return Err(Error::Config("shots must be at least 1".into()));
    }
    if h.n_qubits() != state.n_qubits() {
        return Err(Error::Shape(format!(
            "hamiltonian acts on {} qubits, state has {}",
            h.n_qubits(),
            state.n_qubits()
        )));
    }
    let mut counts = vec![0u64; h.terms().len()];
    sample_term_parities(state, h, shots, &mut counts, rng)?;
    Ok(combine(h, &counts, shots))
}

/// Shot-based estimate under depolarizing noise. The shot budget is split
/// across `trajectories` independently sampled noisy circuits.
pub fn noisy_shot_expectation<R: Rng + ?Sized>(
    circuit: &Circuit,
    h: &PauliSum,
    config: &NoiseConfig,
    rng: &mut R,
) -> Result<f64> {
    config.validate()?;
    if config.is_noiseless() {
        return shot_expectation(circuit, h, config.shots, rng);
    }
    let runs = (config.trajectories as u64).min(config.shots);
    let mut counts = vec![0u64; h.terms().len()];
    for t in 0..runs {
        let shots = config.shots / runs + u64::from(t < config.shots % runs);
        let noisy = depolarize_trajectory(circuit, config.p1, config.p2, rng)?;
        let state = simulate(&noisy)?;
        sample_term_parities(&state, h, shots, &mut counts, rng)?;
    }
    Ok(combine(h, &counts, config.shots))
}

/// Exact expectation averaged over `trajectories` noisy realizations.
pub fn trajectory_expectation<H: Observable + ?Sized, R: Rng + ?Sized>(
    circuit: &Circuit,
    h: &H,
    p1: f64,
    p2: f64,
    trajectories: usize,
    rng: &mut R,
) -> Result<f64> {
    if trajectories == 0 {
        return Err(Error::Config("trajectories must be at least 1".into()));
    }
    let mut sum = 0.0;
    for _ in 0..trajectories {
        let noisy = depolarize_trajectory(circuit, p1, p2, rng)?;
        sum += expectation(&simulate(&noisy)?, h)?;
    }
    Ok(sum / trajectories as f64)
}

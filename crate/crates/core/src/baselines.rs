//! Fixed-ansatz VQE and the best product-state energy, as reference points
//! for evolved circuits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluator::{substream, EnergyModel, Evaluator};
use crate::hamiltonian::Hamiltonian;
use crate::optimizers::{nelder_mead, Objective, Optimizer};
use crate::simulator::{Angles, Circuit, Gate, Observable, MAX_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// One Ry rotation per qubit per rotation layer.
    Ry,
    /// Ry followed by Rz on every qubit.
    RyRz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entanglement {
    /// CX on neighbours `(k, k+1)`.
    Linear,
    /// CX on every pair `k < j`.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub family: Family,
    pub entanglement: Entanglement,
    pub depth: usize,
    pub n_qubits: usize,
}

impl AnsatzSpec {
    fn per_qubit(&self) -> usize {
        match self.family {
            Family::Ry => 1,
            Family::RyRz => 2,
        }
    }

    pub fn parameter_count(&self) -> usize {
        self.per_qubit() * self.n_qubits * (self.depth + 1)
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n_qubits;
        match self.entanglement {
            Entanglement::Linear => (1..n).map(|k| (k - 1, k)).collect(),
            Entanglement::Full => (0..n).flat_map(|k| (k + 1..n).map(move |j| (k, j))).collect(),
        }
    }

    pub fn entangler_count(&self) -> usize {
        self.pairs().len() * self.depth
    }

    fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return Err(Error::Size(format!(
                "ansatz needs 1..={MAX_QUBITS} qubits, got {}",
                self.n_qubits
            )));
        }
        Ok(())
    }
}

/// A heuristic ansatz: a rotation layer, then `depth` blocks of entanglers
/// followed by another rotation layer. Ry(θ) is U3(θ, 0, 0); Ry then Rz(φ)
/// is U3(θ, φ, 0) up to global phase. Each entangler is CU3(π, 0, π) in a
/// layer of its own.
#[derive(Clone, Debug, PartialEq)]
pub struct Ansatz {
    spec: AnsatzSpec,
    pairs: Vec<(usize, usize)>,
}

pub fn build_ansatz(spec: AnsatzSpec) -> Result<Ansatz> {
    spec.validate()?;
    Ok(Ansatz {
        spec,
        pairs: spec.pairs(),
    })
}

impl Ansatz {
    pub fn spec(&self) -> &AnsatzSpec {
        &self.spec
    }

    pub fn parameter_count(&self) -> usize {
        self.spec.parameter_count()
    }

    pub fn circuit(&self, params: &[f64]) -> Result<Circuit> {
        if params.len() != self.parameter_count() {
            return Err(Error::Shape(format!(
                "ansatz takes {} parameters, got {}",
                self.parameter_count(),
                params.len()
            )));
        }
        let n = self.spec.n_qubits;
        let k = self.spec.per_qubit();
        let mut circuit = Circuit::new(n);
        for (block, chunk) in params.chunks(n * k).enumerate() {
            if block > 0 {
                for &(control, target) in &self.pairs {
                    circuit.push_layer(vec![Gate::Cu3 {
                        control,
                        target,
                        angles: Angles::X,
                    }])?;
                }
            }
            let rotations = chunk
                .chunks(k)
                .enumerate()
                .map(|(qubit, p)| Gate::U3 {
                    qubit,
                    angles: Angles::new(p[0], p.get(1).copied().unwrap_or(0.0), 0.0),
                })
                .collect();
            circuit.push_layer(rotations)?;
        }
        Ok(circuit)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VqeResult {
    pub energy: f64,
    pub params: Vec<f64>,
    pub evaluations: usize,
}

/// Optimizes all ansatz parameters jointly from a uniform start in [−π, π].
pub fn run_vqe(
    spec: AnsatzSpec,
    h: &Hamiltonian,
    optimizer: &Optimizer,
    evaluator: Evaluator,
    max_iter: usize,
    seed: u64,
) -> Result<VqeResult> {
    let ansatz = build_ansatz(spec)?;
    if spec.n_qubits != h.n_qubits() {
        return Err(Error::Shape(format!(
            "ansatz has {} qubits, hamiltonian {}",
            spec.n_qubits,
            h.n_qubits()
        )));
    }
    let model = EnergyModel::new(h, evaluator)?;
    let mut rng = substream(seed, &[0]);
    let mut noise_rng = substream(seed, &[1]);
    let x0: Vec<f64> = (0..ansatz.parameter_count())
        .map(|_| rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI))
        .collect();
    let mut obj = Objective::new(x0.len(), |x: &[f64]| {
        ansatz
            .circuit(x)
            .and_then(|c| model.energy(&c, &mut noise_rng))
            .unwrap_or(f64::NAN)
    });
    let res = optimizer.minimize(&mut obj, &x0, max_iter, &mut rng)?;
    Ok(VqeResult {
        energy: res.best_value,
        params: res.best_params,
        evaluations: res.evaluations,
    })
}

const SEPARABLE_ITERATIONS: usize = 2000;

/// Lowest energy found over product states `⊗ U3(θ_k, φ_k, 0)|0⟩`, the
/// minimum of `restarts` Nelder-Mead runs from random starts.
pub fn optimal_separable_energy(h: &Hamiltonian, restarts: usize, seed: u64) -> Result<f64> {
    if restarts == 0 {
        return Err(Error::Config("restarts must be at least 1".into()));
    }
    let spec = AnsatzSpec {
        family: Family::RyRz,
        entanglement: Entanglement::Linear,
        depth: 0,
        n_qubits: h.n_qubits(),
    };
    let ansatz = build_ansatz(spec)?;
    let model = EnergyModel::new(h, Evaluator::Statevector)?;
    let values = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(substream(seed, &[r as u64]).random());
            let x0: Vec<f64> = (0..ansatz.parameter_count())
                .map(|_| rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI))
                .collect();
            let mut obj = Objective::new(x0.len(), |x: &[f64]| {
                ansatz
                    .circuit(x)
                    .and_then(|c| model.exact_energy(&c))
                    .unwrap_or(f64::NAN)
            });
            Ok(nelder_mead(&mut obj, &x0, SEPARABLE_ITERATIONS, 1e-14)?.best_value)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{random_hermitian, PauliSum};

    fn spec(family: Family, entanglement: Entanglement, depth: usize, n: usize) -> AnsatzSpec {
        AnsatzSpec {
            family,
            entanglement,
            depth,
            n_qubits: n,
        }
    }

    fn cu3_count(c: &Circuit) -> usize {
        c.cu3_count()
    }

    #[test]
    fn parameter_and_entangler_counts() {
        let cases = [
            (spec(Family::Ry, Entanglement::Linear, 0, 4), 4, 0),
            (spec(Family::Ry, Entanglement::Linear, 2, 4), 12, 6),
            (spec(Family::RyRz, Entanglement::Full, 1, 3), 12, 3),
        ];
        for (s, params, entanglers) in cases {
            let a = build_ansatz(s).unwrap();
            assert_eq!(a.parameter_count(), params);
            assert_eq!(s.entangler_count(), entanglers);
            let c = a.circuit(&vec![0.3; params]).unwrap();
            assert_eq!(cu3_count(&c), entanglers);
        }
    }

    #[test]
    fn vqe_on_z_and_zz() {
        let z: Hamiltonian = PauliSum::from_strs(&[(1.0, "Z")]).unwrap().into();
        let r = run_vqe(
            spec(Family::Ry, Entanglement::Linear, 0, 1),
            &z,
            &Optimizer::default(),
            Evaluator::Statevector,
            300,
            1,
        )
        .unwrap();
        assert!((r.energy + 1.0).abs() < 1e-4, "{r:?}");

        let zz: Hamiltonian = PauliSum::from_strs(&[(1.0, "ZZ")]).unwrap().into();
        let r = run_vqe(
            spec(Family::Ry, Entanglement::Linear, 1, 2),
            &zz,
            &Optimizer::default(),
            Evaluator::Statevector,
            500,
            2,
        )
        .unwrap();
        assert!((r.energy + 1.0).abs() < 1e-3, "{r:?}");
    }

    #[test]
    fn separable_energy() {
        let z: Hamiltonian = PauliSum::from_strs(&[(1.0, "Z")]).unwrap().into();
        assert!((optimal_separable_energy(&z, 3, 0).unwrap() + 1.0).abs() < 1e-6);

        let xxzz: Hamiltonian = PauliSum::from_strs(&[(1.0, "XX"), (1.0, "ZZ")]).unwrap().into();
        let sep = optimal_separable_energy(&xxzz, 8, 0).unwrap();
        let exact = xxzz.exact_ground_energy().unwrap();
        assert!((exact + 2.0).abs() < 1e-9);
        assert!(sep > exact + 0.5, "{sep}");

        let ising: Hamiltonian = PauliSum::from_strs(&[(1.0, "ZZI"), (-0.5, "IZZ"), (0.3, "ZIZ"), (0.2, "IIZ")])
            .unwrap()
            .into();
        let sep = optimal_separable_energy(&ising, 10, 1).unwrap();
        assert!((sep - ising.exact_ground_energy().unwrap()).abs() < 1e-4);
    }

    #[test]
    fn vqe_respects_variational_bound() {
        let h: Hamiltonian = random_hermitian(3, 5).unwrap().into();
        let exact = h.exact_ground_energy().unwrap();
        for d in 0..3 {
            let r = run_vqe(
                spec(Family::RyRz, Entanglement::Full, d, 3),
                &h,
                &Optimizer::default(),
                Evaluator::Statevector,
                200,
                d as u64,
            )
            .unwrap();
            assert!(r.energy >= exact - 1e-9);
        }
    }
}

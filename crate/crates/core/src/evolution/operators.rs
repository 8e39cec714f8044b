use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evaluator::EnergyModel;
use crate::genome::{build_circuit, random_gene, GeneInstance, GeneRegistry, Genome};
use crate::optimizers::{Objective, Optimizer};
use crate::simulator::{new_zero_state, Circuit};

/// How the topological mutation initializes the entanglers it adds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    /// Every new gate starts at the identity.
    #[default]
    IdentityInitialized,
    /// New CU3 gates are fixed CX gates that are never optimized.
    FixedCx,
}

/// Appends an instance of a freshly sampled gene (τ).
pub fn mutate_topological<R: Rng + ?Sized>(
    genome: &Genome,
    registry: &mut GeneRegistry,
    n_qubits: usize,
    growth: Growth,
    rng: &mut R,
) -> Result<Genome> {
    let predecessor = match genome.last() {
        Some(inst) => Some(registry.get(inst.gene)?.clone()),
        None => None,
    };
    let gene = random_gene(n_qubits, predecessor.as_ref(), rng, registry)?;
    let instance = match growth {
        Growth::IdentityInitialized => GeneInstance::identity(gene),
        Growth::FixedCx => GeneInstance::with_fixed_cx(gene),
    };
    let mut out = genome.clone();
    out.push(instance);
    Ok(out)
}

/// Keeps a uniformly random prefix of length `1..=len` (ρ). Empty genomes
/// are returned unchanged.
pub fn mutate_removal<R: Rng + ?Sized>(genome: &Genome, rng: &mut R) -> Genome {
    let mut out = genome.clone();
    if !genome.is_empty() {
        out.truncate(rng.random_range(1..=genome.len()));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    /// Energy of the returned parameters, as reported by the last
    /// optimizer call (or a single evaluation when nothing was free).
    pub energy: f64,
    pub evaluations: usize,
    /// Layers in the order they were optimized.
    pub visit_order: Vec<usize>,
}

/// Layer-wise parameter optimization of genomes.
pub struct ParameterSearch<'a> {
    pub registry: &'a GeneRegistry,
    pub model: &'a EnergyModel<'a>,
    pub optimizer: &'a Optimizer,
    /// Iteration budget per layer per optimizer call.
    pub opt_iterations: usize,
}

impl ParameterSearch<'_> {
    fn n_qubits(&self) -> usize {
        self.model.n_qubits()
    }

    pub fn circuit(&self, genome: &Genome) -> Result<Circuit> {
        build_circuit(genome, self.registry, self.n_qubits())
    }

    pub fn energy<R: Rng + ?Sized>(&self, genome: &Genome, rng: &mut R) -> Result<f64> {
        self.model.energy(&self.circuit(genome)?, rng)
    }

    /// Optimizes the free parameters of layer `index` with every other layer
    /// held fixed. Returns `None` when the layer has nothing to optimize.
    pub fn optimize_layer<R: Rng + ?Sized>(
        &self,
        genome: &mut Genome,
        index: usize,
        rng: &mut R,
    ) -> Result<Option<(f64, usize)>> {
        let inst = &genome.genes()[index];
        let gene = self.registry.get(inst.gene)?;
        let free = inst.free_parameters(gene);
        if free.is_empty() {
            return Ok(None);
        }
        let x0: Vec<f64> = free.iter().map(|&i| inst.params[i]).collect();
        let mut noise_rng = ChaCha8Rng::seed_from_u64(rng.random());

        let circuit = self.circuit(genome)?;
        let n = self.n_qubits();
        let result = if self.model.is_exact() {
            // layers before `index` never change during this call
            let mut prefix = new_zero_state(n)?;
            for layer in &circuit.layers()[..index] {
                prefix.apply_layer(layer)?;
            }
            let suffix = &circuit.layers()[index + 1..];
            let mut scratch = genome.genes()[index].clone();
            let mut obj = Objective::new(free.len(), |x: &[f64]| {
                for (&i, v) in free.iter().zip(x) {
                    scratch.params[i] = *v;
                }
                let run = || -> Result<f64> {
                    let mut s = prefix.clone();
                    let mut layer = Circuit::new(n);
                    layer.push_layer(scratch.gates(gene)?)?;
                    s.apply_layer(&layer.layers()[0])?;
                    for l in suffix {
                        s.apply_layer(l)?;
                    }
                    self.model.exact_state_energy(&s)
                };
                run().unwrap_or(f64::NAN)
            });
            self.optimizer.minimize(&mut obj, &x0, self.opt_iterations, rng)?
        } else {
            let mut trial = genome.clone();
            let mut obj = Objective::new(free.len(), |x: &[f64]| {
                let inst = &mut trial.genes_mut()[index];
                for (&i, v) in free.iter().zip(x) {
                    inst.params[i] = *v;
                }
                self.energy(&trial, &mut noise_rng).unwrap_or(f64::NAN)
            });
            self.optimizer.minimize(&mut obj, &x0, self.opt_iterations, rng)?
        };

        let inst = &mut genome.genes_mut()[index];
        for (&i, v) in free.iter().zip(&result.best_params) {
            inst.params[i] = *v;
        }
        Ok(Some((result.best_value, result.evaluations)))
    }

    /// Optimizes the given layers in order, then reports the final energy.
    pub fn optimize_layers<R: Rng + ?Sized>(
        &self,
        genome: &mut Genome,
        order: &[usize],
        rng: &mut R,
    ) -> Result<SearchOutcome> {
        let mut energy = None;
        let mut evaluations = 0;
        for &i in order {
            if let Some((e, evals)) = self.optimize_layer(genome, i, rng)? {
                energy = Some(e);
                evaluations += evals;
            }
        }
        let energy = match energy {
            Some(e) => e,
            None => {
                evaluations += 1;
                self.energy(genome, rng)?
            }
        };
        Ok(SearchOutcome {
            energy,
            evaluations,
            visit_order: order.to_vec(),
        })
    }

    /// Optimizes only the last gene instance.
    pub fn optimize_last<R: Rng + ?Sized>(&self, genome: &mut Genome, rng: &mut R) -> Result<SearchOutcome> {
        let order: Vec<usize> = genome.len().checked_sub(1).into_iter().collect();
        self.optimize_layers(genome, &order, rng)
    }

    /// Parameter-search mutation (π): every layer once, in random order.
    pub fn mutate_parameter<R: Rng + ?Sized>(&self, genome: &mut Genome, rng: &mut R) -> Result<SearchOutcome> {
        let mut order: Vec<usize> = (0..genome.len()).collect();
        order.shuffle(rng);
        self.optimize_layers(genome, &order, rng)
    }
}
